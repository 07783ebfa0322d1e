"""Virtual knot diagrams as ribbon graphs, and oriented Reidemeister moves.

A diagram is stored as the cyclic sequence of passes met while walking along
the knot, virtual crossings included.  Edge ``k`` runs from pass ``k`` to
pass ``k + 1`` (indices mod the number of passes).  Every crossing is met
twice: once on its *x-strand* and once on its *y-strand*.  The four incident
edges, listed clockwise, are::

    [x, y, z, a] = [x-strand in, y-strand in, x-strand out, y-strand out]

so the y-strand is the one crossing the x-strand from its left to its right
(equivalently, the x-strand crosses the y-strand from right to left).  For a
classical crossing the y-strand is the over strand when the sign is +1 and
the under strand when it is -1.  These are exactly the labels used by the
crossing relations in :mod:`knotgroups.presentation`.

Local rotations are therefore fixed by the crossing data, which makes the
diagram a ribbon graph; a genuine planar diagram is one of genus 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .gauss import GaussCode, Parity, make_code

CLASSICAL = "C"
VIRTUAL = "V"

MOVE_KINDS = ("R1a", "R1b", "R2co", "R2contra", "R3", "VR1", "VR2", "VR3", "VR4", "Detour")
CLASSICAL_KINDS = ("R1a", "R1b", "R2co", "R2contra", "R3")
VIRTUAL_KINDS = ("VR1", "VR2", "VR3", "VR4", "Detour")


class DiagramError(ValueError):
    pass


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    id: int
    kind: str
    sign: int  # +1/-1 for classical, 0 for virtual

    @property
    def classical(self) -> bool:
        return self.kind == CLASSICAL


@dataclass(frozen=True)
class Diagram:
    passes: tuple[tuple[int, str], ...]  # (crossing id, "x" or "y")
    crossings: tuple[Crossing, ...]
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(sorted(self.crossings, key=lambda c: c.id)))
        object.__setattr__(self, "_index", {c.id: c for c in self.crossings})
        self._validate()

    def _validate(self):
        seen: dict[int, list[str]] = {}
        for cid, strand in self.passes:
            if strand not in ("x", "y"):
                raise DiagramError(f"bad strand tag {strand!r}")
            seen.setdefault(cid, []).append(strand)
        if set(seen) != set(self._index):
            raise DiagramError("passes and crossing table disagree")
        for cid, strands in seen.items():
            if sorted(strands) != ["x", "y"]:
                raise DiagramError(f"crossing {cid} must be met once on each strand")
            c = self._index[cid]
            if c.kind == CLASSICAL and c.sign not in (1, -1):
                raise DiagramError(f"classical crossing {cid} needs sign +-1")
            if c.kind == VIRTUAL and c.sign != 0:
                raise DiagramError(f"virtual crossing {cid} must have sign 0")
            if c.kind not in (CLASSICAL, VIRTUAL):
                raise DiagramError(f"unknown crossing kind {c.kind!r}")
        if genus(self) != 0:
            raise DiagramError("diagram is not planar (ribbon graph has positive genus)")

    # -- basic queries -----------------------------------------------------
    def crossing(self, cid: int) -> Crossing:
        return self._index[cid]

    @property
    def n_passes(self) -> int:
        return len(self.passes)

    @property
    def n_classical(self) -> int:
        return sum(1 for c in self.crossings if c.kind == CLASSICAL)

    @property
    def n_virtual(self) -> int:
        return sum(1 for c in self.crossings if c.kind == VIRTUAL)

    def pass_index(self, cid: int, strand: str) -> int:
        return self.passes.index((cid, strand))

    def role(self, k: int) -> str | None:
        """Over/under role of pass ``k`` ("O"/"U"), None for virtual."""
        cid, strand = self.passes[k]
        c = self._index[cid]
        if c.kind != CLASSICAL:
            return None
        return "O" if (strand == "y") == (c.sign > 0) else "U"

    def ports(self, cid: int) -> tuple[int, int, int, int]:
        """Edge ids ``[x, y, z, a]`` at crossing ``cid``."""
        m = self.n_passes
        jx = self.pass_index(cid, "x")
        jy = self.pass_index(cid, "y")
        return ((jx - 1) % m, (jy - 1) % m, jx, jy)

    def gauss_code(self) -> GaussCode:
        """Signed, over/under-marked Gauss code of the classical crossings."""
        triples = []
        for k, (cid, _) in enumerate(self.passes):
            c = self._index[cid]
            if c.kind == CLASSICAL:
                triples.append((cid, self.role(k), c.sign))
        return make_code(triples)

    def classical_word(self) -> list[int]:
        return [cid for cid, _ in self.passes if self._index[cid].kind == CLASSICAL]

    def parity(self, cid: int) -> Parity:
        if self._index[cid].kind != CLASSICAL:
            raise DiagramError("parity is defined for classical crossings only")
        word = self.classical_word()
        i = word.index(cid)
        j = word.index(cid, i + 1)
        return Parity.EVEN if (j - i - 1) % 2 == 0 else Parity.ODD

    def parities(self) -> dict[int, Parity]:
        return {c.id: self.parity(c.id) for c in self.crossings if c.kind == CLASSICAL}

    def semi_arcs(self, corollary: bool) -> tuple[int, dict[int, tuple[int, int, int, int]]]:
        """Number of semi-arcs and the ``[x, y, z, a]`` semi-arc labels per
        crossing in scope.

        In corollary mode semi-arcs end at every crossing, so they are the
        edges.  Otherwise virtual crossings are transparent and semi-arcs run
        between classical passes.  A crossingless circle is one semi-arc.
        """
        m = self.n_passes
        if corollary:
            if m == 0:
                return 1, {}
            return m, {c.id: self.ports(c.id) for c in self.crossings}
        cpos = [k for k, (cid, _) in enumerate(self.passes) if self._index[cid].kind == CLASSICAL]
        if not cpos:
            return 1, {}
        arc_of_edge = {}
        t = len(cpos) - 1
        for k in range(m):
            if t + 1 < len(cpos) and cpos[t + 1] == k:
                t += 1
            elif k == cpos[0]:
                t = 0
            arc_of_edge[k] = t
        labels = {}
        for c in self.crossings:
            if c.kind == CLASSICAL:
                labels[c.id] = tuple(arc_of_edge[e] for e in self.ports(c.id))
        return len(cpos), labels

    def next_id(self) -> int:
        return max((c.id for c in self.crossings), default=0) + 1

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        m = self.n_passes
        return {
            "crossings": [
                {"id": c.id, "kind": c.kind, "sign": c.sign, "ports": list(self.ports(c.id))}
                for c in self.crossings
            ],
            "arcs": [[self.passes[k][0], self.passes[(k + 1) % m][0]] for k in range(m)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        parts = []
        for k, (cid, strand) in enumerate(self.passes):
            c = self._index[cid]
            if c.kind == CLASSICAL:
                parts.append(f"{self.role(k)}{cid}{'+' if c.sign > 0 else '-'}")
            else:
                parts.append(f"V{cid}{strand}")
        return ",".join(parts) or "unknot"


def diagram_from_json(data: dict | str) -> Diagram:
    if isinstance(data, str):
        data = json.loads(data)
    crossings = [Crossing(int(c["id"]), c["kind"], int(c["sign"])) for c in data["crossings"]]
    if not crossings:
        return Diagram((), ())
    ports = {int(c["id"]): [int(p) for p in c["ports"]] for c in data["crossings"]}
    arcs = data["arcs"]
    heads = {}
    for cid, ps in ports.items():
        heads[ps[0]] = (cid, "x")
        heads[ps[1]] = (cid, "y")
    tails = {}
    for cid, ps in ports.items():
        tails[(cid, "x")] = ps[2]
        tails[(cid, "y")] = ps[3]
    if len(heads) != len(arcs) or len(tails) != len(arcs):
        raise DiagramError("port table does not match the arc list")
    visited = []
    e = 0
    while True:
        head = heads[e]
        if int(arcs[e][1]) != head[0]:
            raise DiagramError(f"arc {e} does not end at crossing {head[0]}")
        visited.append(head)
        e = tails[head]
        if e == 0:
            break
        if len(visited) > len(arcs):
            raise DiagramError("arcs do not close up")
    if len(visited) != len(arcs):
        raise DiagramError("arcs do not form a single circuit (links are not supported)")
    passes = (visited[-1],) + tuple(visited[:-1])
    return Diagram(passes, tuple(crossings))


# -- ribbon graph structure ------------------------------------------------

def _rotation(d: Diagram) -> dict[tuple[int, int], tuple[int, int]]:
    """Clockwise successor of each half-edge ``(edge, 0=tail|1=head)``."""
    succ = {}
    for c in d.crossings:
        x, y, z, a = d.ports(c.id)
        ring = [(x, 1), (y, 1), (z, 0), (a, 0)]
        for i in range(4):
            succ[ring[i]] = ring[(i + 1) % 4]
    return succ


def faces(d: Diagram) -> list[list[tuple[int, bool]]]:
    """Faces as boundary walks of ``(edge, along_orientation)`` steps.

    Each walk keeps its face on the left.  For the crossingless circle edge 0
    is the circle itself.
    """
    m = d.n_passes
    if m == 0:
        return [[(0, True)], [(0, False)]]
    succ = _rotation(d)
    seen = set()
    out = []
    for start in sorted(succ):
        if start in seen:
            continue
        walk = []
        h = start
        while h not in seen:
            seen.add(h)
            edge, end = h
            walk.append((edge, end == 0))
            h = succ[(edge, 1 - end)]
        out.append(walk)
    return out


def genus(d: Diagram) -> int:
    m = d.n_passes
    if m == 0:
        return 0
    v = len(d.crossings)
    f = len(faces(d))
    chi = v - m + f
    return (2 - chi) // 2


def _edge_ends(d: Diagram, k: int) -> tuple[int, int]:
    m = d.n_passes
    return d.passes[k][0], d.passes[(k + 1) % m][0]


def canonical_key(d: Diagram) -> tuple:
    """Invariant of the diagram up to relabeling and choice of basepoint."""
    m = d.n_passes
    if m == 0:
        return ()
    best = None
    for r in range(m):
        ids: dict[int, int] = {}
        key = []
        for k in range(m):
            cid, strand = d.passes[(r + k) % m]
            if cid not in ids:
                ids[cid] = len(ids)
            c = d.crossing(cid)
            key.append((ids[cid], strand, c.kind, c.sign))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return best


def isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return canonical_key(d1) == canonical_key(d2)


# -- realization of Gauss codes ---------------------------------------------

def unknot() -> Diagram:
    return Diagram((), ())


def _strand_for(role: str, sign: int) -> str:
    return "y" if (role == "O") == (sign > 0) else "x"


def realize_diagram(code: GaussCode, order: Sequence[int] | None = None) -> Diagram:
    """Planar diagram whose classical Gauss code is ``code``.

    A code whose ribbon graph is already planar is returned without virtual
    crossings (unless an explicit vertex ``order`` is given, which forces a
    fresh drawing).  Otherwise the crossings are placed on a line in label
    order (or ``order``), each edge is routed through semicircles above or
    below the line, edges being processed in traversal order and each free
    choice of side taken to cross as few already placed pieces as possible.
    The resulting intersections become virtual crossings, after which virtual
    kinks and virtual bigons are removed.
    """
    if not code.fully_marked:
        raise DiagramError("realization needs a Gauss code with over/under roles and signs")
    if not code.passes:
        return unknot()
    passes = tuple((p.label, _strand_for(p.role, p.sign)) for p in code.passes)
    crossings = tuple(Crossing(c, CLASSICAL, code.sign(c)) for c in range(1, code.n_crossings + 1))
    if order is None:
        try:
            return Diagram(passes, crossings)
        except DiagramError:
            pass
        order = list(range(1, code.n_crossings + 1))
    for jitter in range(32):
        d = _draw(passes, crossings, list(order), jitter)
        if d is not None:
            return _strip_virtual(d)
    raise DiagramError("could not find a drawing without triple points")


def _draw(passes, crossings, order, jitter: int = 0) -> Diagram | None:
    """None when three arcs meet in a point; ``jitter`` moves the points
    off the integer lattice without changing their order on the line."""
    m = len(passes)

    def shift(i: int) -> Fraction:
        return Fraction(jitter * (i * i % 11 + 1), 384)

    pos = {cid: 4 * i + 1 + shift(i) for i, cid in enumerate(order)}
    fresh = 4 * len(order) + 1

    def port(k: int, head: bool):
        # clockwise [x, y, z, a] sits at [up, right, down, left]
        cid, strand = passes[k]
        c = pos[cid]
        if head:
            return (c, "up") if strand == "x" else (c + 1, None)
        return (c, "down") if strand == "x" else (c - 1, None)

    pieces: list[tuple[str, int, int, int, int]] = []  # (half, start, end, edge, order)

    def cost(half, a, b):
        lo, hi = min(a, b), max(a, b)
        n = 0
        for h, s, e, _, _ in pieces:
            if h != half:
                continue
            l2, h2 = min(s, e), max(s, e)
            if lo < l2 < hi < h2 or l2 < lo < h2 < hi:
                n += 1
        return n

    for k in range(m):
        (pa, ha) = port(k, head=False)
        (pb, hb) = port((k + 1) % m, head=True)
        if ha and hb and ha != hb:
            t = fresh + shift(fresh)
            fresh += 2
            pieces.append((ha, pa, t, k, 0))
            pieces.append((hb, t, pb, k, 1))
            continue
        half = ha or hb
        if half is None:
            half = "up" if cost("up", pa, pb) <= cost("down", pa, pb) else "down"
        pieces.append((half, pa, pb, k, 0))

    events: dict[int, list[tuple[int, Fraction, int, str]]] = {k: [] for k in range(m)}
    vid = max(c.id for c in crossings) + 1
    new_crossings = list(crossings)
    for i in range(len(pieces)):
        h1, s1, e1, k1, o1 = pieces[i]
        for j in range(i + 1, len(pieces)):
            h2, s2, e2, k2, o2 = pieces[j]
            if h1 != h2:
                continue
            lo1, hi1, lo2, hi2 = min(s1, e1), max(s1, e1), min(s2, e2), max(s2, e2)
            if not (lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1):
                continue
            c1, c2 = Fraction(s1 + e1, 2), Fraction(s2 + e2, 2)
            r1, r2 = Fraction(hi1 - lo1, 2), Fraction(hi2 - lo2, 2)
            x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))
            dir1 = 1 if e1 > s1 else -1
            dir2 = 1 if e2 > s2 else -1
            cross = dir1 * dir2 * (1 if c2 > c1 else -1)
            if h1 == "down":
                cross = -cross
            strand1, strand2 = ("y", "x") if cross > 0 else ("x", "y")
            events[k1].append((o1, (x - s1) / (e1 - s1), vid, strand1))
            events[k2].append((o2, (x - s2) / (e2 - s2), vid, strand2))
            new_crossings.append(Crossing(vid, VIRTUAL, 0))
            vid += 1

    new_passes = []
    for k in range(m):
        new_passes.append(passes[k])
        ev = sorted(events[k])
        if len({(o, f) for o, f, _, _ in ev}) != len(ev):
            return None
        for _, _, cid, strand in ev:
            new_passes.append((cid, strand))
    return Diagram(tuple(new_passes), tuple(new_crossings))


def _strip_virtual(d: Diagram) -> Diagram:
    while True:
        sites = enumerate_sites(d, "VR1", "undo") + enumerate_sites(d, "VR2", "undo")
        if not sites:
            return d
        d = apply_move(d, sites[0])


# -- move sites ---------------------------------------------------------------

@dataclass(frozen=True)
class MoveSite:
    kind: str
    direction: str  # "apply" or "undo"
    location: tuple
    params: tuple = ()

    def param(self, name, default=None):
        return dict(self.params).get(name, default)

    def __str__(self) -> str:
        extra = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}:{self.direction}@{self.location}" + (f"[{extra}]" if extra else "")


def _edges(d: Diagram) -> list[int]:
    return list(range(max(d.n_passes, 1)))


def enumerate_sites(d: Diagram, kind: str, direction: str = "apply") -> list[MoveSite]:
    """All applicable sites of one move kind, in a deterministic order.

    R3-type moves are their own inverse, so their undo sites equal their
    apply sites.  Detour sites (re-drawing with another crossing order) exist
    in the apply direction only.
    """
    if kind not in MOVE_KINDS:
        raise MoveError(f"unknown move kind {kind!r}")
    if direction not in ("apply", "undo"):
        raise MoveError(f"unknown direction {direction!r}")
    if kind in ("R1a", "R1b", "VR1"):
        return _r1_sites(d, kind, direction)
    if kind in ("R2co", "R2contra", "VR2"):
        return _r2_sites(d, kind, direction)
    if kind in ("R3", "VR3", "VR4"):
        return [replace(s, direction=direction) for s in _triangle_sites(d, kind)]
    if direction == "undo":
        return []
    n = d.n_classical
    return [MoveSite("Detour", "apply", (), (("shift", r),)) for r in range(min(max(n, 1), 4))]


def _r1_sites(d: Diagram, kind: str, direction: str) -> list[MoveSite]:
    virtual = kind == "VR1"
    if direction == "apply":
        side = {"R1a": "left", "R1b": "right", "VR1": None}[kind]
        out = []
        for k in _edges(d):
            if virtual:
                for s in ("left", "right"):
                    out.append(MoveSite(kind, "apply", (k,), (("side", s),)))
            else:
                for of in (True, False):
                    out.append(MoveSite(kind, "apply", (k,), (("side", side), ("over_first", of))))
        return out
    out = []
    m = d.n_passes
    for c in d.crossings:
        if c.classical == virtual:
            continue
        i = d.pass_index(c.id, "x")
        j = d.pass_index(c.id, "y")
        if (i - j) % m not in (1, m - 1):
            continue
        if not virtual and m > 2:
            # the loop lies to the left iff the second pass is on the y-strand
            first = i if (j - i) % m == 1 else j
            left = d.passes[(first + 1) % m][1] == "y"
            if kind != ("R1a" if left else "R1b"):
                continue
        # with a single crossing the loop can be read on either side
        out.append(MoveSite(kind, "undo", (c.id,)))
    return out


def _r2_sites(d: Diagram, kind: str, direction: str) -> list[MoveSite]:
    virtual = kind == "VR2"
    fs = faces(d)
    out = []
    if direction == "apply":
        for fi, walk in enumerate(fs):
            for i in range(len(walk)):
                for j in range(i, len(walk)):
                    (k1, al1), (k2, al2) = walk[i], walk[j]
                    if i != j and k1 == k2:
                        continue
                    parallel = i != j and al1 != al2
                    if not virtual and kind != ("R2co" if parallel else "R2contra"):
                        continue
                    variants = ("early", "late") if i == j else (None,)
                    overs = (None,) if virtual else (1, 2)
                    for var in variants:
                        for ov in overs:
                            params = (("face", fi),)
                            if var is not None:
                                params += (("pusher", var),)
                            if ov is not None:
                                params += (("over", ov),)
                            loc = ((k1, al1),) if i == j else ((k1, al1), (k2, al2))
                            out.append(MoveSite(kind, "apply", loc, params))
        return out
    m = d.n_passes
    for walk in fs:
        if len(walk) != 2:
            continue
        (k1, _), (k2, _) = walk
        if k1 == k2:
            continue
        u1, v1 = _edge_ends(d, k1)
        u2, v2 = _edge_ends(d, k2)
        if u1 == v1 or {u1, v1} != {u2, v2}:
            continue
        cu, cv = d.crossing(u1), d.crossing(v1)
        if cu.kind != cv.kind or cu.classical == virtual:
            continue
        if not virtual:
            if d.role(k1) != d.role((k1 + 1) % m) or cu.sign == cv.sign:
                continue
            parallel = u1 == u2
            if kind != ("R2co" if parallel else "R2contra"):
                continue
        out.append(MoveSite(kind, "undo", tuple(sorted((u1, v1))), (("edges", (min(k1, k2), max(k1, k2))),)))
    return sorted(set(out), key=lambda s: (s.location, s.params))


def _triangle_sites(d: Diagram, kind: str) -> list[MoveSite]:
    out = []
    for walk in faces(d):
        if len(walk) != 3:
            continue
        edges = [k for k, _ in walk]
        if len(set(edges)) != 3:
            continue
        verts = [_edge_ends(d, k)[0] for k in edges]
        if len(set(verts)) != 3:
            continue
        kinds = [d.crossing(v).kind for v in verts]
        n_classical = kinds.count(CLASSICAL)
        if kind == "R3":
            if n_classical != 3:
                continue
            if len({al for _, al in walk}) != 1:
                continue  # only the cyclically oriented triangle
            m = d.n_passes
            tops = sum(1 for k in edges if d.role(k) == d.role((k + 1) % m) == "O")
            bottoms = sum(1 for k in edges if d.role(k) == d.role((k + 1) % m) == "U")
            if tops != 1 or bottoms != 1:
                continue
        elif kind == "VR3" and n_classical != 0:
            continue
        elif kind == "VR4" and n_classical != 1:
            continue
        out.append(MoveSite(kind, "apply", tuple(sorted(edges))))
    return sorted(set(out), key=lambda s: s.location)


# -- applying moves -------------------------------------------------------------

def apply_move(d: Diagram, site: MoveSite) -> Diagram:
    """Apply a move; raises MoveError if the site does not match ``d``."""
    try:
        if site.kind in ("R1a", "R1b", "VR1"):
            out = _apply_r1(d, site)
        elif site.kind in ("R2co", "R2contra", "VR2"):
            out = _apply_r2(d, site)
        elif site.kind in ("R3", "VR3", "VR4"):
            out = _apply_triangle(d, site)
        elif site.kind == "Detour":
            out = _apply_detour(d, site)
        else:
            raise MoveError(f"unknown move kind {site.kind!r}")
    except DiagramError as exc:
        raise MoveError(f"{site} is not applicable: {exc}") from exc
    return out


def _check_member(d: Diagram, site: MoveSite):
    if site not in enumerate_sites(d, site.kind, site.direction):
        raise MoveError(f"{site} is not an applicable site of this diagram")


def _insert(passes: list, k: int, new: list, m: int) -> list:
    if m == 0:
        return list(new)
    return passes[: k + 1] + list(new) + passes[k + 1 :]


def _apply_r1(d: Diagram, site: MoveSite) -> Diagram:
    _check_member(d, site)
    virtual = site.kind == "VR1"
    if site.direction == "undo":
        (cid,) = site.location
        passes = tuple(p for p in d.passes if p[0] != cid)
        return Diagram(passes, tuple(c for c in d.crossings if c.id != cid))
    (k,) = site.location
    left = site.param("side") == "left"
    second = "y" if left else "x"
    first = "x" if left else "y"
    cid = d.next_id()
    if virtual:
        c = Crossing(cid, VIRTUAL, 0)
    else:
        second_over = not site.param("over_first")
        sign = 1 if left == second_over else -1
        c = Crossing(cid, CLASSICAL, sign)
    passes = _insert(list(d.passes), k, [(cid, first), (cid, second)], d.n_passes)
    return Diagram(tuple(passes), d.crossings + (c,))


def _apply_r2(d: Diagram, site: MoveSite) -> Diagram:
    _check_member(d, site)
    virtual = site.kind == "VR2"
    if site.direction == "undo":
        ids = set(site.location)
        passes = tuple(p for p in d.passes if p[0] not in ids)
        return Diagram(passes, tuple(c for c in d.crossings if c.id not in ids))
    m = d.n_passes
    c_id = d.next_id()
    d_id = c_id + 1
    if len(site.location) == 1:
        ((k1, al1),) = site.location
        parallel = False
    else:
        (k1, al1), (k2, al2) = site.location
        parallel = al1 != al2
    face_left = al1
    # y-strand at the first crossing met by the pushing strand
    strand1_y_at_c = (face_left and not parallel) or (not face_left and parallel)
    s1c, s1d = ("y", "x") if strand1_y_at_c else ("x", "y")
    s2c, s2d = ("x", "y") if strand1_y_at_c else ("y", "x")
    if virtual:
        cc, cd = Crossing(c_id, VIRTUAL, 0), Crossing(d_id, VIRTUAL, 0)
    else:
        over1 = site.param("over") == 1
        # y-strand is over exactly when the sign is positive
        sign_c = 1 if (s1c == "y") == over1 else -1
        cc, cd = Crossing(c_id, CLASSICAL, sign_c), Crossing(d_id, CLASSICAL, -sign_c)
    strand1 = [(c_id, s1c), (d_id, s1d)]
    strand2 = [(c_id, s2c), (d_id, s2d)] if parallel else [(d_id, s2d), (c_id, s2c)]
    passes = list(d.passes)
    if len(site.location) == 1:
        new = strand1 + strand2 if site.param("pusher") == "early" else strand2 + strand1
        passes = _insert(passes, k1, new, m)
    else:
        # insert at the later edge first so the earlier index stays valid
        for k, new in sorted([(k1, strand1), (k2, strand2)], reverse=True):
            passes = _insert(passes, k, new, m)
    return Diagram(tuple(passes), d.crossings + (cc, cd))


def _apply_triangle(d: Diagram, site: MoveSite) -> Diagram:
    _check_member(d, site)
    m = d.n_passes
    passes = list(d.passes)
    for k in site.location:
        i, j = k, (k + 1) % m
        passes[i], passes[j] = passes[j], passes[i]
    return Diagram(tuple(passes), d.crossings)


def _apply_detour(d: Diagram, site: MoveSite) -> Diagram:
    _check_member(d, site)
    code = d.gauss_code()
    if not code.passes:
        return unknot()
    labels = list(range(1, code.n_crossings + 1))
    r = site.param("shift") % len(labels)
    return realize_diagram(code, order=labels[r:] + labels[:r])


def sites(d: Diagram, kinds: Iterable[str] = MOVE_KINDS) -> list[MoveSite]:
    out = []
    for kind in kinds:
        for direction in ("apply", "undo"):
            if kind in ("R3", "VR3", "VR4") and direction == "undo":
                continue
            out.extend(enumerate_sites(d, kind, direction))
    return out
