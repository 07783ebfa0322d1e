"""Group invariants of finite presentations: abelianization via Smith normal
form, and homomorphism counts into small finite groups."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .presentation import Presentation, abelianization_matrix, build, tietze_simplify


# -- Smith normal form ---------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal ``d1 | d2 | ...`` of length ``min(rows, cols)``, non-negative,
    zeros last.  Exact integer arithmetic; pivots on least absolute value."""
    a = [[int(v) for v in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                # fold the offending row in so a smaller remainder appears
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a smaller remainder exists in the pivot row or column: move it to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            _, pi, pj = min(cand)
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (min(rows, cols) - len(diag))


def abelian_invariants(p: Presentation) -> list[int]:
    """Torsion coefficients greater than 1, then one 0 per free rank.

    ``Z`` gives ``[0]``, ``Z/3`` gives ``[3]``, the trivial group ``[]``.
    """
    m = abelianization_matrix(p)
    diag = smith_normal_form(m) if m else []
    nonzero = [d for d in diag if d]
    return [d for d in nonzero if d > 1] + [0] * (p.rank - len(nonzero))


# -- finite groups ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements ``0..order-1`` with a multiplication table; 0 is the identity."""

    name: str
    table: np.ndarray
    identity: int = 0
    inverse: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0 or t.min() < 0 or t.max() >= n:
            raise ValueError(f"{self.name}: not a square table over 0..n-1")
        e = self.identity
        idx = np.arange(n)
        if not (np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)):
            raise ValueError(f"{self.name}: element {e} is not an identity")
        if not np.array_equal(t[t[:, :, None], idx[None, None, :]], t[idx[:, None, None], t[None, :, :]]):
            raise ValueError(f"{self.name}: multiplication is not associative")
        hits = t == e
        if not (hits.sum(axis=1) == 1).all():
            raise ValueError(f"{self.name}: some element has no inverse")
        inv = hits.argmax(axis=1)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def conjugacy_classes(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        t, inv = self.table, self.inverse
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({int(t[t[g, x], inv[g]]) for g in range(self.order)})
            seen.update(cls)
            out.append(cls)
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "table": self.table.tolist()}


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Cycle notation on points ``1..degree``, e.g. ``(1 2 3)(4 5)``; the
    result maps point ``i-1`` to ``perm[i-1]`` (0-based)."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\(([^()]*)\)", "", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    pts = [[int(v) for v in re.split(r"[\s,]+", c.strip()) if v] for c in cycles]
    n = max([degree or 0] + [v for c in pts for v in c])
    perm = list(range(n))
    for c in pts:
        if min(c, default=1) < 1 or len(set(c)) != len(c):
            raise ValueError(f"bad cycle {c}")
        for i, v in enumerate(c):
            perm[v - 1] = c[(i + 1) % len(c)] - 1
    return tuple(perm)


def permutation_group(name: str, generators: Sequence[str | Sequence[int]], degree: int | None = None) -> FiniteGroup:
    """Closure of the generators; products compose right to left."""
    perms = [parse_cycles(g, degree) if isinstance(g, str) else tuple(g) for g in generators]
    n = max([degree or 0] + [len(p) for p in perms])
    perms = [tuple(p) + tuple(range(len(p), n)) for p in perms]
    ident = tuple(range(n))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in perms:
                y = tuple(g[x[i]] for i in range(n))
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    arr = np.array(elems, dtype=np.int64).reshape(len(elems), n)
    # (a*b)(i) = a(b(i))
    comp = np.take_along_axis(
        np.broadcast_to(arr[:, None, :], (len(elems), len(elems), n)),
        np.broadcast_to(arr[None, :, :], (len(elems), len(elems), n)),
        axis=2,
    )
    lookup = {e: i for i, e in enumerate(elems)}
    table = np.array([[lookup[tuple(comp[i, j])] for j in range(len(elems))] for i in range(len(elems))])
    return FiniteGroup(name, table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    n = g.order * m
    idx = np.arange(n)
    a, b = idx // m, idx % m
    table = g.table[a[:, None], a[None, :]] * m + h.table[b[:, None], b[None, :]]
    return FiniteGroup(f"{g.name}x{h.name}", table, identity=g.identity * m + h.identity)


def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", np.zeros((1, 1), dtype=np.int64))


def default_panel() -> list[FiniteGroup]:
    return [
        permutation_group("S3", ["(1 2 3)", "(1 2)"]),
        permutation_group("D4", ["(1 2 3 4)", "(1 3)"]),
        permutation_group("A4", ["(1 2 3)", "(2 3 4)"]),
        permutation_group("S4", ["(1 2 3 4)", "(1 2)"]),
    ]


def load_group(path: str | Path) -> FiniteGroup:
    """JSON file with ``name`` and either ``generators`` (cycle notation,
    optional ``degree``) or ``table``."""
    data = json.loads(Path(path).read_text())
    return group_from_json(data)


def group_from_json(data: dict) -> FiniteGroup:
    if "table" in data:
        return FiniteGroup(data["name"], np.array(data["table"]), int(data.get("identity", 0)))
    return permutation_group(data["name"], data["generators"], data.get("degree"))


# -- homomorphism counting ------------------------------------------------------

class HomCountBudgetError(RuntimeError):
    pass


def _generator_order(p: Presentation) -> list[int]:
    remaining = set(range(p.rank))
    order: list[int] = []
    gens_of = [r.generators() for r in p.relators]
    while remaining:
        done = set(order)

        def score(g):
            closes = sum(1 for s in gens_of if g in s and s <= done | {g})
            touches = sum(1 for s in gens_of if g in s)
            return (-closes, -touches, g)

        g = min(remaining, key=score)
        order.append(g)
        remaining.remove(g)
    return order


def _evaluate_rows(G: FiniteGroup, rows: np.ndarray, col: dict[int, int], letters) -> np.ndarray:
    acc = np.full(rows.shape[0], G.identity, dtype=np.int64)
    for g, e in letters:
        v = rows[:, col[g]]
        if e < 0:
            v = G.inverse[v]
        acc = G.table[acc, v]
    return acc


def count_homs(p: Presentation, G: FiniteGroup, max_rows: int = 4_000_000) -> int:
    """Exact count of generator assignments satisfying every relator.

    Generators are assigned level by level over numpy row blocks; a relator
    is checked as soon as its last generator is assigned.  The first
    generator runs over conjugacy-class representatives weighted by class
    size, which is exact because conjugating a homomorphism gives another.
    """
    if p.rank == 0:
        return 1
    order = _generator_order(p)
    pos = {g: i for i, g in enumerate(order)}
    check_at: dict[int, list] = {}
    for r in p.relators:
        if not r:
            continue
        level = max(pos[g] for g in r.generators())
        check_at.setdefault(level, []).append(r.letters)
    classes = G.conjugacy_classes()
    rows = np.array([[c[0]] for c in classes], dtype=np.int64)
    weights = np.array([len(c) for c in classes], dtype=np.int64)
    n = G.order
    col = {order[0]: 0}
    for level in range(p.rank):
        if level > 0:
            if rows.shape[0] * n > max_rows:
                raise HomCountBudgetError(
                    f"hom count into {G.name} exceeds {max_rows} partial assignments at generator {level + 1}/{p.rank}"
                )
            rows = np.concatenate(
                [np.repeat(rows, n, axis=0), np.tile(np.arange(n), rows.shape[0])[:, None]], axis=1
            )
            weights = np.repeat(weights, n)
            col[order[level]] = level
        for letters in check_at.get(level, []):
            keep = _evaluate_rows(G, rows, col, letters) == G.identity
            rows, weights = rows[keep], weights[keep]
        if rows.shape[0] == 0:
            return 0
    return int(weights.sum())


def count_homs_exhaustive(p: Presentation, G: FiniteGroup) -> int:
    """Reference count over all ``|G|^rank`` assignments, in plain Python."""
    table = G.table.tolist()
    inv = G.inverse.tolist()
    e = G.identity
    rels = [r.letters for r in p.relators]
    total = 0
    for assign in itertools.product(range(G.order), repeat=p.rank):
        ok = True
        for letters in rels:
            acc = e
            for g, s in letters:
                v = assign[g]
                acc = table[acc][v if s > 0 else inv[v]]
            if acc != e:
                ok = False
                break
        total += ok
    return total


# -- signatures -------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantSignature:
    abelian_invariants: tuple[int, ...]
    hom_counts: tuple[tuple[str, int], ...]

    def to_json(self) -> dict:
        return {"abelian_invariants": list(self.abelian_invariants), "hom_counts": dict(self.hom_counts)}

    def __str__(self) -> str:
        counts = " ".join(f"{k}:{v}" for k, v in self.hom_counts)
        return f"abelian={list(self.abelian_invariants)} {counts}"


def presentation_signature(p: Presentation, groups: Sequence[FiniteGroup], budget: int = 200) -> InvariantSignature:
    q = tietze_simplify(p, budget)
    return InvariantSignature(
        tuple(abelian_invariants(q)), tuple((G.name, count_homs(q, G)) for G in groups)
    )


def signature(d, scheme, groups: Sequence[FiniteGroup] | None = None, budget: int = 200) -> InvariantSignature:
    return presentation_signature(build(d, scheme), default_panel() if groups is None else groups, budget)
