"""Knot-group presentations parametrized by free-group automorphisms.

Each semi-arc of a diagram is a generator; each crossing contributes two
relators, written ``lhs * rhs^-1``:

========  ==========================  ===========================
crossing  first relation              second relation
========  ==========================  ===========================
positive  z = y theta(x a^-1)         a = phi(y)
negative  z = phi^-1(x)               a = theta^-1(z^-1 y) x
virtual   a = eta(y)                  z = eta^-1(x)
========  ==========================  ===========================

with ``x, y, z, a`` the semi-arcs at the crossing as documented in
:mod:`knotgroups.diagram`.  The automorphisms are required to commute in the
quotient, which is imposed by one relator ``f(g(w)) * g(f(w))^-1`` per
generator ``w`` and per required pair ``(f, g)``.  Imposing it on generators
suffices: two homomorphisms that agree on generators agree everywhere.

When ``eta`` is given, semi-arcs end at virtual crossings too; otherwise
virtual crossings are transparent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import CLASSICAL, Diagram
from .gauss import Parity
from .words import (
    ConcreteAutomorphism,
    Word,
    apply,
    commutes,
    identity,
    inner,
)


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class ParityAutomorphisms:
    """``theta`` and ``phi`` for even crossings (E, e) and odd ones (O, o)."""

    E: ConcreteAutomorphism
    O: ConcreteAutomorphism
    e: ConcreteAutomorphism
    o: ConcreteAutomorphism


@dataclass(frozen=True)
class AutomorphismScheme:
    j: int
    theta: ConcreteAutomorphism
    phi: ConcreteAutomorphism
    eta: ConcreteAutomorphism | None = None
    parity: ParityAutomorphisms | None = None
    extra_names: tuple[str, ...] = ()
    # "free": the required pairs must commute as automorphisms of the free
    # group; "quotient": commutator relators alone enforce it
    commutation: str = "free"
    name: str = ""

    @property
    def corollary(self) -> bool:
        return self.eta is not None

    @property
    def rank(self) -> int:
        return self.theta.rank

    def roles(self) -> dict[str, ConcreteAutomorphism]:
        """Automorphisms by role name; parity roles collapse onto ``theta``
        and ``phi`` when the even and odd choices coincide."""
        out: dict[str, ConcreteAutomorphism] = {}
        if self.parity is None:
            out["theta"], out["phi"] = self.theta, self.phi
        else:
            p = self.parity
            if p.E == p.O:
                out["theta"] = p.E
            else:
                out["E"], out["O"] = p.E, p.O
            if p.e == p.o:
                out["phi"] = p.e
            else:
                out["e"], out["o"] = p.e, p.o
        if self.eta is not None:
            out["eta"] = self.eta
        return out

    def role_of(self, kind: str, parity: Parity) -> str:
        """Role name standing for ``theta`` (kind "theta") or ``phi`` at a
        crossing of the given parity."""
        roles = self.roles()
        if kind == "theta":
            return "theta" if "theta" in roles else ("E" if parity == Parity.EVEN else "O")
        return "phi" if "phi" in roles else ("e" if parity == Parity.EVEN else "o")

    def required_pairs(self) -> list[tuple[str, str]]:
        roles = self.roles()
        thetas = [r for r in ("theta", "E", "O") if r in roles]
        phis = [r for r in ("phi", "e", "o") if r in roles]
        if self.parity is None:
            pairs = [("theta", "phi")]
        else:
            t = {r: r for r in thetas}
            f = {r: r for r in phis}
            te, to = t.get("E", "theta"), t.get("O", "theta")
            pe, po = f.get("e", "phi"), f.get("o", "phi")
            pairs = [(te, pe), (to, po), (te, to), (pe, po)]
        if self.eta is not None:
            pairs += [(r, "eta") for r in thetas] + [(r, "eta") for r in phis]
        out = []
        for f, g in pairs:
            if f != g and (f, g) not in out:
                out.append((f, g))
        return out


def _check_scheme(s: AutomorphismScheme, rank: int):
    roles = s.roles()
    for name, f in roles.items():
        if f.rank != rank:
            raise SchemeError(f"rank mismatch: {name} acts on F_{f.rank}, presentation needs F_{rank}")
    if s.commutation == "free":
        for f, g in s.required_pairs():
            if not commutes(roles[f], roles[g]):
                raise SchemeError(f"commutation violation: {f} and {g} do not commute")
    elif s.commutation != "quotient":
        raise SchemeError(f"unknown commutation mode {s.commutation!r}")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    provenance: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.provenance:
            object.__setattr__(self, "provenance", tuple("" for _ in self.relators))
        if len(self.provenance) != len(self.relators):
            raise ValueError("one provenance tag per relator")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [[[self.generators[g], e] for g, e in r.letters] for r in self.relators],
            "provenance": list(self.provenance),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __str__(self) -> str:
        rels = ", ".join(r.to_text(self.generators) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


def presentation_from_json(data: dict | str) -> Presentation:
    if isinstance(data, str):
        data = json.loads(data)
    gens = tuple(data["generators"])
    index = {g: i for i, g in enumerate(gens)}
    rels = tuple(Word.from_letters((index[g], int(e)) for g, e in r) for r in data["relators"])
    prov = tuple(data.get("provenance") or ())
    return Presentation(gens, rels, prov)


def generator_names(d: Diagram, s: AutomorphismScheme) -> tuple[str, ...]:
    m, _ = d.semi_arcs(s.corollary)
    return tuple(f"a{i + 1}" for i in range(m)) + tuple(s.extra_names)


def build(d: Diagram, s: AutomorphismScheme) -> Presentation:
    m, labels = d.semi_arcs(s.corollary)
    rank = m + s.j
    if len(s.extra_names) not in (0, s.j):
        raise SchemeError("one name per extra generator")
    _check_scheme(s, rank)
    names = tuple(f"a{i + 1}" for i in range(m)) + (
        tuple(s.extra_names) if s.extra_names else tuple(f"g{i + 1}" for i in range(s.j))
    )
    roles = s.roles()
    parities = d.parities() if s.parity is not None else {}
    relators: list[Word] = []
    prov: list[str] = []

    def add(rel: Word, tag: str):
        if rel and rel not in relators:
            relators.append(rel)
            prov.append(tag)

    for cid in sorted(labels):
        c = d.crossing(cid)
        x, y, z, a = (Word.gen(i) for i in labels[cid])
        if c.kind == CLASSICAL:
            par = parities.get(cid, Parity.EVEN)
            theta = roles[s.role_of("theta", par)]
            phi = roles[s.role_of("phi", par)]
            if c.sign > 0:
                rels = [z * (y * apply(theta, x * a.inverse())).inverse(), a * apply(phi, y).inverse()]
                tag = "C+"
            else:
                rels = [
                    z * apply(phi.inverse(), x).inverse(),
                    a * (apply(theta.inverse(), z.inverse() * y) * x).inverse(),
                ]
                tag = "C-"
        else:
            eta = s.eta
            rels = [a * apply(eta, y).inverse(), z * apply(eta.inverse(), x).inverse()]
            tag = "V"
        for i, r in enumerate(rels):
            add(r, f"crossing {cid} {tag} rel {i}")

    for f, g in s.required_pairs():
        F, G = roles[f], roles[g]
        for w in range(rank):
            gen = Word.gen(w)
            add(apply(F, apply(G, gen)) * apply(G, apply(F, gen)).inverse(), f"commute {f},{g} on {names[w]}")
    return Presentation(names, tuple(relators), tuple(prov))


# -- presets ------------------------------------------------------------------

PRESETS = ("pi1", "quandle", "biquandle", "S", "I", "VG", "EG", "WG", "QG")
COROLLARY_PRESETS = ("VG", "EG", "WG", "QG")


def preset(name: str, d: Diagram) -> AutomorphismScheme:
    """Named specializations.

    pi1: all identity.  quandle: theta conjugation by an extra generator t,
    phi = Id.  biquandle: theta = Id, phi conjugation by s.  S: phi = theta.
    I: phi = theta^-1.  The virtual-crossing family uses extras s, t, q with
    phi, theta, eta conjugation by s, t, q (VG); q trivial (EG); q = s (WG);
    s trivial (QG).
    """
    if name not in PRESETS:
        raise SchemeError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    corollary = name in COROLLARY_PRESETS
    m, _ = d.semi_arcs(corollary)
    extras = {
        "pi1": (),
        "quandle": ("t",),
        "biquandle": ("s",),
        "S": ("s",),
        "I": ("s",),
        "VG": ("s", "t", "q"),
        "EG": ("s", "t"),
        "WG": ("s", "t"),
        "QG": ("t", "q"),
    }[name]
    rank = m + len(extras)
    idx = {n: m + i for i, n in enumerate(extras)}
    ident = identity(rank)

    def conj(n):
        return inner(rank, idx[n], f"inner({n})")

    if name == "pi1":
        theta, phi, eta = ident, ident, None
    elif name == "quandle":
        theta, phi, eta = conj("t"), ident, None
    elif name == "biquandle":
        theta, phi, eta = ident, conj("s"), None
    elif name == "S":
        theta = conj("s")
        phi, eta = theta, None
    elif name == "I":
        theta = conj("s")
        phi, eta = theta.inverse(), None
    elif name == "VG":
        theta, phi, eta = conj("t"), conj("s"), conj("q")
    elif name == "EG":
        theta, phi, eta = conj("t"), conj("s"), ident
    elif name == "WG":
        theta, phi = conj("t"), conj("s")
        eta = phi
    else:  # QG
        theta, phi, eta = conj("t"), ident, conj("q")
    return AutomorphismScheme(
        j=len(extras),
        theta=theta,
        phi=phi,
        eta=eta,
        extra_names=extras,
        commutation="quotient",
        name=name,
    )


def with_parity(s: AutomorphismScheme, E, O, e, o) -> AutomorphismScheme:
    return AutomorphismScheme(
        j=s.j, theta=E, phi=e, eta=s.eta, parity=ParityAutomorphisms(E, O, e, o),
        extra_names=s.extra_names, commutation=s.commutation, name=s.name,
    )


# -- abelianization -------------------------------------------------------------

def abelianization_matrix(p: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [[r.exponent_sum(g) for g in range(p.rank)] for r in p.relators]


# -- Tietze simplification --------------------------------------------------------

def _cyclic_key(w: Word) -> tuple:
    letters = w.letters
    if not letters:
        return ()
    cands = []
    for seq in (letters, w.inverse().letters):
        for i in range(len(seq)):
            cands.append(seq[i:] + seq[:i])
    return min(cands)


def _substitute(w: Word, g: int, image: Word) -> Word:
    syl: list[tuple[int, int]] = []
    inv = image.inverse()
    for h, k in w.syllables:
        if h != g:
            syl.append((h, k))
            continue
        piece = image if k > 0 else inv
        for _ in range(abs(k)):
            syl.extend(piece.syllables)
    return Word(tuple(syl))


def _solve_for(r: Word, g: int) -> Word:
    """Given relator ``u g^e v`` with a single occurrence of ``g``, return
    the word ``g`` equals."""
    letters = r.letters
    i = next(t for t, (h, _) in enumerate(letters) if h == g)
    e = letters[i][1]
    u = Word.from_letters(letters[:i])
    v = Word.from_letters(letters[i + 1 :])
    if e > 0:
        return u.inverse() * v.inverse()
    return v * u


def _cleanup(rels: list[Word], prov: list[str]) -> tuple[list[Word], list[str]]:
    out, tags, keys = [], [], set()
    for r, t in zip(rels, prov):
        r = r.cyclically_reduced()
        if not r:
            continue
        k = _cyclic_key(r)
        if k in keys:
            continue
        keys.add(k)
        out.append(r)
        tags.append(t)
    return out, tags


def _prefix_table(sl: tuple) -> tuple[int, dict[tuple, list[tuple]]]:
    n = len(sl)
    h = n // 2 + 1
    inv = tuple((g, -e) for g, e in reversed(sl))
    table: dict[tuple, list[tuple]] = {}
    if n >= 2:
        for seq in (sl, inv):
            for i in range(n):
                cj = seq[i:] + seq[:i]
                table.setdefault(cj[:h], []).append(cj)
    return h, table


def _shorten_pass(rels: list[Word], budget: int) -> int:
    """One sweep of overlap shortening; returns the number of rewrites.

    A relator ``r`` containing a cyclic subword ``u`` such that ``u v`` is a
    cyclic conjugate of another relator (or its inverse) with ``|u| > |v|``
    has ``u`` replaced by ``v^-1``.
    """
    cyclic = [r.cyclically_reduced().letters for r in rels]
    tables = [_prefix_table(sl) for sl in cyclic]
    done = 0
    for ri in range(len(rels)):
        if done >= budget:
            break
        rl = cyclic[ri]
        L = len(rl)
        rr = rl + rl
        best = None
        for si, (h, table) in enumerate(tables):
            if si == ri or not table or L < h:
                continue
            n = len(cyclic[si])
            for start in range(L):
                for cj in table.get(rr[start : start + h], ()):
                    ul = h
                    while ul < min(n, L) and rr[start + ul] == cj[ul]:
                        ul += 1
                    gain = 2 * ul - n
                    if best is None or gain > best[0]:
                        best = (gain, start, ul, cj)
        if best is None:
            continue
        _, start, ul, cj = best
        vinv = Word.from_letters(cj[ul:]).inverse()
        rest = Word.from_letters(rr[start + ul : start + L])
        new = (vinv * rest).cyclically_reduced()
        rels[ri] = new
        cyclic[ri] = new.letters
        tables[ri] = _prefix_table(new.letters)
        done += 1
    return done


def tietze_simplify(p: Presentation, budget: int = 200, max_length: int = 400) -> Presentation:
    """Best-effort simplification with a hard step budget.

    Steps: drop trivial and duplicate relators (up to cyclic permutation and
    inversion); eliminate a generator occurring exactly once in some relator,
    preferring short relators and cheap substitutions and skipping any that
    would push a relator past ``max_length``; finally shorten relators using
    long overlaps with other relators.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    gens = list(p.generators)
    rels = list(p.relators)
    prov = list(p.provenance)
    alive = list(range(len(gens)))
    steps = 0
    while steps < budget:
        rels, prov = _cleanup(rels, prov)
        best = None
        lengths = [len(w) for w in rels]
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, w in enumerate(rels):
            counts: dict[int, int] = {}
            for h, k in w.syllables:
                counts[h] = counts.get(h, 0) + abs(k)
            for h, c in counts.items():
                occ.setdefault(h, []).append((i, c))
        for g in sorted(occ):
            total = sum(c for _, c in occ[g])
            for ri, c in occ[g]:
                if c != 1:
                    continue
                # r is cyclically reduced, so the image of g has length |r| - 1
                img_len = lengths[ri] - 1
                longest = max((lengths[i] + k * (img_len - 1) for i, k in occ[g] if i != ri), default=0)
                if longest > max_length:
                    continue
                key = (lengths[ri], (total - 1) * img_len, g, ri)
                if best is None or key < best[0]:
                    best = (key, ri, g)
        if best is None:
            break
        _, ri, g = best
        image = _solve_for(rels[ri], g)
        rels = [_substitute(w, g, image) for i, w in enumerate(rels) if i != ri]
        prov = [t for i, t in enumerate(prov) if i != ri]
        alive.remove(g)
        steps += 1
    while steps < budget:
        done = _shorten_pass(rels, budget - steps)
        if not done:
            break
        steps += done
        rels, prov = _cleanup(rels, prov)
    rels, prov = _cleanup(rels, prov)
    renumber = {g: i for i, g in enumerate(alive)}
    new_rels = tuple(Word(tuple((renumber[h], k) for h, k in r.syllables)) for r in rels)
    return Presentation(tuple(gens[g] for g in alive), new_rels, tuple(prov))
