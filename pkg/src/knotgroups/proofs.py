"""Symbolic checks of the R3 and virtual R4 relations, parity constraints
and the parity no-go identifications.

Local pictures are encoded as lists of :class:`CrossingSpec`; the outputs
are obtained by solving the crossing relations forward from the inputs
``a, b, c``.  In the R3 pictures strand ``B`` lies on top, ``A`` in the
middle and ``C`` at the bottom; each crossing is tagged with its strand pair
so a parity case can assign operators per pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .formal import (
    NO_DECLS,
    CommutationDecl,
    FormalWord,
    Op,
    evaluate,
    normalize,
    normalize_ops,
    parse_formal,
)
from .gauss import Parity
from .words import ConcreteAutomorphism, Word, from_images, identity

EVEN, ODD = Parity.EVEN, Parity.ODD


@dataclass(frozen=True)
class CrossingSpec:
    kind: str  # "+", "-" or "v"
    x_in: str
    y_in: str
    z_out: str
    a_out: str
    pair: str = ""


R3_LHS = (
    CrossingSpec("+", "r", "a", "x", "s", "AC"),
    CrossingSpec("+", "s", "b", "z", "t", "BA"),
    CrossingSpec("-", "t", "c", "y", "r", "BC"),
)
R3_RHS = (
    CrossingSpec("+", "a", "p", "m", "y", "BA"),
    CrossingSpec("+", "c", "m", "q", "z", "AC"),
    CrossingSpec("-", "b", "q", "p", "x", "BC"),
)
VR4_LHS = (
    CrossingSpec("+", "r", "a", "x", "s"),
    CrossingSpec("v", "t", "c", "y", "r"),
    CrossingSpec("v", "s", "b", "z", "t"),
)
VR4_RHS = (
    CrossingSpec("+", "c", "m", "q", "z"),
    CrossingSpec("v", "a", "p", "m", "y"),
    CrossingSpec("v", "b", "q", "p", "x"),
)

R3_CASES = {
    "Even3": {"AC": EVEN, "BA": EVEN, "BC": EVEN},
    "Case1": {"AC": ODD, "BA": ODD, "BC": EVEN},
    "Case2": {"AC": EVEN, "BA": ODD, "BC": ODD},
    "Case3": {"AC": ODD, "BA": EVEN, "BC": ODD},
}
PLAIN = {EVEN: ("theta", "phi"), ODD: ("theta", "phi")}
PARITY = {EVEN: ("E", "e"), ODD: ("O", "o")}
OUTPUTS = ("x", "y", "z")


class UnsolvableError(ValueError):
    pass


def solve(specs: Sequence[CrossingSpec], inputs: Iterable[str], operators, eta: str = "eta") -> dict[str, FormalWord]:
    """Express every arc in terms of the inputs.

    ``operators(spec)`` gives the ``(theta, phi)`` symbols for a classical
    crossing.  Positive: ``z = y theta(x a^-1)``, ``a = phi(y)``.  Negative:
    ``z = phi^-1(x)``, ``a = theta^-1(z^-1 y) x``.  Virtual: ``a = eta(y)``,
    ``z = eta^-1(x)``.
    """
    known = {v: FormalWord.var(v) for v in inputs}
    pending = [(s, out) for s in specs for out in ("z", "a")]
    while pending:
        progress = False
        for item in list(pending):
            s, out = item
            val = _try(s, out, known, operators, eta)
            if val is not None:
                known[s.z_out if out == "z" else s.a_out] = normalize(val)
                pending.remove(item)
                progress = True
        if not progress:
            raise UnsolvableError("crossing relations do not determine every arc from the inputs")
    return known


def _try(s: CrossingSpec, out: str, k: dict, operators, eta: str):
    def have(*names):
        return all(n in k for n in names)

    if s.kind == "v":
        if out == "a" and have(s.y_in):
            return k[s.y_in].apply(eta)
        if out == "z" and have(s.x_in):
            return k[s.x_in].apply(eta, -1)
        return None
    theta, phi = operators(s)
    if s.kind == "+":
        if out == "a" and have(s.y_in):
            return k[s.y_in].apply(phi)
        if out == "z" and have(s.x_in, s.y_in, s.a_out):
            return k[s.y_in] * (k[s.x_in] * k[s.a_out].inverse()).apply(theta)
        return None
    if out == "z" and have(s.x_in):
        return k[s.x_in].apply(phi, -1)
    if out == "a" and have(s.x_in, s.y_in, s.z_out):
        return (k[s.z_out].inverse() * k[s.y_in]).apply(theta, -1) * k[s.x_in]
    return None


def r3_reduce(side: str, case: str = "Even3", assignment: Mapping[Parity, tuple[str, str]] | None = None) -> dict[str, FormalWord]:
    """Outputs ``x, y, z`` of one side of the R3 move in terms of ``a, b, c``.

    ``assignment`` maps a parity to its ``(theta, phi)`` symbols; by default
    ``theta, phi`` for ``Even3`` and ``E, e`` / ``O, o`` otherwise.
    """
    if case not in R3_CASES:
        raise KeyError(f"unknown R3 case {case!r}")
    if assignment is None:
        assignment = PLAIN if case == "Even3" else PARITY
    parity = R3_CASES[case]
    specs = {"LHS": R3_LHS, "RHS": R3_RHS}[side.upper()]
    arcs = solve(specs, "abc", lambda s: assignment[parity[s.pair]])
    return {o: arcs[o] for o in OUTPUTS}


def r3_report(case: str, decls: CommutationDecl, assignment=None) -> dict[str, bool]:
    lhs = r3_reduce("LHS", case, assignment)
    rhs = r3_reduce("RHS", case, assignment)
    return {o: normalize(lhs[o], decls) == normalize(rhs[o], decls) for o in OUTPUTS}


def check_r3_invariance(case: str, decls: CommutationDecl, assignment=None) -> bool:
    return all(r3_report(case, decls, assignment).values())


def vr4_reduce(side: str) -> dict[str, FormalWord]:
    specs = {"LHS": VR4_LHS, "RHS": VR4_RHS}[side.upper()]
    arcs = solve(specs, "abc", lambda s: ("theta", "phi"))
    return {o: arcs[o] for o in OUTPUTS}


def vr4_check(decls: CommutationDecl) -> bool:
    lhs, rhs = vr4_reduce("LHS"), vr4_reduce("RHS")
    return all(normalize(lhs[o], decls) == normalize(rhs[o], decls) for o in OUTPUTS)


# -- printed relations ---------------------------------------------------------------

# Outputs of the parity R3 cases as printed in the source, keyed by
# (case, output); each value is (LHS side, RHS side).  Case 2 x is omitted
# because its printed RHS has unbalanced brackets.
PRINTED = {
    ("Even3", "x"): ("a b^-1 c theta(phi(b a^-1))", "a b^-1 c phi(theta(b a^-1))"),
    ("Even3", "y"): ("b", "b"),
    ("Even3", "z"): ("b theta(phi(a b^-1))", "b phi(theta(a b^-1))"),
    ("Case1", "x"): (
        "a O(E^-1(e^-1(o(b^-1)) c) o(b a^-1))",
        "E^-1(O(a o(e^-1(b^-1)) c o(O(o(e^-1(b)) a^-1) e^-1(b^-1)))) b",
    ),
    ("Case1", "y"): ("e^-1(o(b))", "o(e^-1(b))"),
    ("Case1", "z"): ("b O(o(a) o(b^-1))", "o(e^-1(b) O(a o(e^-1(b))))"),
    ("Case2", "y"): ("b", "b"),
    ("Case2", "z"): ("b O(e(a) o(b^-1))", "e(o^-1(b) O(a b^-1))"),
    ("Case3", "x"): ("a b^-1 c O(e(b) o(a^-1))", "a b^-1 E^-1(O(c o(E(b a^-1)) b^-1)) b"),
    ("Case3", "y"): ("o^-1(e(b))", "e(o^-1(b))"),
    ("Case3", "z"): ("b E(o(a) e(b^-1))", "b o(E(a b^-1))"),
}


def printed(case: str, output: str) -> tuple[FormalWord, FormalWord]:
    lhs, rhs = PRINTED[(case, output)]
    return parse_formal(lhs), parse_formal(rhs)


@dataclass(frozen=True)
class TranscriptionCheck:
    case: str
    output: str
    side: str
    derived: FormalWord
    printed: FormalWord
    matches: bool


def audit_printed() -> list[TranscriptionCheck]:
    """Compare every printed output with the derived one, syntactically."""
    out = []
    for (case, o), (lt, rt) in PRINTED.items():
        for side, text in (("LHS", lt), ("RHS", rt)):
            derived = normalize(r3_reduce(side, case)[o])
            shown = normalize(parse_formal(text))
            out.append(TranscriptionCheck(case, o, side, derived, shown, derived == shown))
    return out


# -- constraint extraction ----------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    kind: str  # "trivial", "commute", "identify", "identity" or "other"
    symbols: tuple[str, ...] = ()
    relation: tuple[Op, ...] = ()
    inverse: bool = False  # for "identify": first = second^-1

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "commute":
            return f"[{self.symbols[0]},{self.symbols[1]}]"
        if self.kind == "identify":
            f, g = self.symbols
            return f"{f} = {g}^-1" if self.inverse else f"{f} = {g}"
        if self.kind == "identity":
            return f"{self.symbols[0]} = Id"
        if not self.relation:
            return "unclassified"
        return " ".join(n if e > 0 else f"{n}^-1" for n, e in self.relation) + " = Id"


def extract_constraint(
    equation: tuple[FormalWord, FormalWord],
    substitution: Iterable[str] = (),
    decls: CommutationDecl = NO_DECLS,
) -> tuple[FormalWord, FormalWord]:
    """Set the named variables to 1, normalize, and cancel the longest
    common prefix and suffix of the two sides."""
    subs = {v: None for v in substitution}
    lhs = normalize(equation[0].substitute(subs), decls).letters
    rhs = normalize(equation[1].substitute(subs), decls).letters
    i = 0
    while i < min(len(lhs), len(rhs)) and lhs[i] == rhs[i]:
        i += 1
    lhs, rhs = lhs[i:], rhs[i:]
    j = 0
    while j < min(len(lhs), len(rhs)) and lhs[-1 - j] == rhs[-1 - j]:
        j += 1
    return FormalWord(lhs[: len(lhs) - j]), FormalWord(rhs[: len(rhs) - j])


def _pad(u: FormalWord, v: FormalWord):
    """Pair letters of two residual sides; a missing letter on one side is
    read as that variable with no operators."""
    if len(u) == len(v):
        return list(zip(u.letters, v.letters))
    if len(u) == 0 and len(v) == 1:
        ops, var, e = v.letters[0]
        return [(((), var, e), v.letters[0])]
    if len(v) == 0 and len(u) == 1:
        ops, var, e = u.letters[0]
        return [(u.letters[0], ((), var, e))]
    return None


def interpret(residual: tuple[FormalWord, FormalWord], decls: CommutationDecl = NO_DECLS) -> Constraint:
    """Read a residual equation letter by letter as one operator identity
    ``ops_left * ops_right^-1 = Id`` and classify it."""
    u, v = residual
    if not u and not v:
        return Constraint("trivial")
    pairs = _pad(u, v)
    if pairs is None:
        return Constraint("other")
    rels = set()
    for (o1, x1, e1), (o2, x2, e2) in pairs:
        if (x1, e1) != (x2, e2):
            return Constraint("other")
        inv2 = tuple((n, -k) for n, k in reversed(o2))
        rels.add(normalize_ops(o1 + inv2, decls))
    if len(rels) != 1:
        return Constraint("other")
    rel = rels.pop()
    names = [n for n, _ in rel]
    if not rel:
        return Constraint("trivial")
    if len(rel) == 1:
        return Constraint("identity", (rel[0][0],), rel)
    if len(rel) == 2 and names[0] != names[1]:
        (f, k1), (g, k2) = rel
        return Constraint("identify", tuple(sorted((f, g), key=decls.alphabet.index)), rel, inverse=(k1 == k2))
    if len(rel) == 4 and names[0] == names[2] and names[1] == names[3] and names[0] != names[1]:
        if rel[0][1] == -rel[2][1] and rel[1][1] == -rel[3][1]:
            return Constraint("commute", tuple(sorted(names[:2], key=decls.alphabet.index)), rel)
    return Constraint("other", (), rel)


@dataclass(frozen=True)
class Extraction:
    source: str
    substitution: tuple[str, ...]
    residual: tuple[FormalWord, FormalWord]
    constraint: Constraint


def derived_equation(case: str, output: str, assignment=None) -> tuple[FormalWord, FormalWord]:
    return r3_reduce("LHS", case, assignment)[output], r3_reduce("RHS", case, assignment)[output]


# substitution steps giving the four parity commutators
COMMUTATOR_STEPS = (
    ("Case1", "x", ("a", "b")),
    ("Case1", "y", ()),
    ("Case1", "z", ("b",)),
    ("Even3", "z", ("b",)),
)


def four_commutators(source: str = "derived") -> list[Extraction]:
    """Commutators forced by the Case 1 relations, plus ``[E, e]`` from the
    all-even case with ``theta = E`` and ``phi = e``.  ``source`` selects the
    derived relations or the printed ones."""
    out = []
    for case, o, subs in COMMUTATOR_STEPS:
        if source == "printed" and case != "Even3":
            eq = printed(case, o)
        else:
            eq = derived_equation(case, o, PARITY)
        res = extract_constraint(eq, subs)
        out.append(Extraction(f"{case}.{o}", subs, res, interpret(res)))
    return out


PARITY_COMMUTATORS = (("E", "O"), ("e", "o"), ("O", "o"), ("E", "e"))
PARITY_DECLS = CommutationDecl.of(PARITY_COMMUTATORS)

FAMILIES = {
    "B": (("E", "Id"), ("O", "Id")),
    "S": (("e", "E"), ("o", "O")),
    "I": (("o", "O^-1"), ("e", "E^-1")),
    "Q": (("o", "Id"), ("e", "Id")),
}
# relation each family is tested on
NO_GO_EQUATION = {"B": ("Case3", "z"), "S": ("Case3", "z"), "I": ("Case3", "z"), "Q": ("Case3", "x")}
SUBSTITUTION_ORDER = ((), ("a",), ("b",), ("a", "b"))


@dataclass(frozen=True)
class NoGoResult:
    family: str
    equation: str
    substitution: tuple[str, ...]
    residual: tuple[FormalWord, FormalWord]
    constraint: Constraint

    @property
    def forced(self) -> tuple[str, str] | None:
        c = self.constraint
        if c.kind == "identify" and not c.inverse and set(c.symbols) in ({"E", "O"}, {"e", "o"}):
            return c.symbols
        return None


def family_decls(family: str) -> CommutationDecl:
    return PARITY_DECLS.with_identify(*FAMILIES[family])


def no_go_check(family: str, source: str = "printed") -> NoGoResult:
    """Apply the family's identifications and the four commutators to a
    relation and return the first substitution whose residual forces an
    even/odd identification.

    ``source="printed"`` uses the family's printed test relation;
    ``"derived"`` scans every derived parity R3 relation.  Without a forced
    identification the first non-trivial residual is returned.
    """
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}")
    decls = family_decls(family)
    if source == "printed":
        candidates = [(NO_GO_EQUATION[family], printed(*NO_GO_EQUATION[family]))]
    else:
        candidates = [((c, o), derived_equation(c, o, PARITY)) for c in ("Case1", "Case2", "Case3") for o in OUTPUTS]
    result = None
    for (case, o), eq in candidates:
        for subs in SUBSTITUTION_ORDER:
            res = extract_constraint(eq, subs, decls)
            found = NoGoResult(family, f"{case}.{o}", subs, res, interpret(res, decls))
            if found.forced:
                return found
            if result is None or found.constraint.kind != "trivial":
                result = result if result is not None and result.constraint.kind != "trivial" else found
    return result


# -- concrete counterexamples -------------------------------------------------------------------

def transvection(rank: int, i: int, j: int, name: str = "") -> ConcreteAutomorphism:
    """``x_i -> x_i x_j``, fixing the other generators."""
    return from_images(rank, {i: Word(((i, 1), (j, 1)))}, {i: Word(((i, 1), (j, -1)))}, name or f"T{i}{j}")


BLOCK_RANK = 4


def family_automorphisms(family: str, distinguish: bool = True) -> dict[str, ConcreteAutomorphism]:
    """Concrete E, O, e, o for a family, all pairwise commuting.

    With ``distinguish`` the even and odd maps act on the disjoint blocks
    ``{x0, x1}`` and ``{x2, x3}``; without it they coincide.
    """
    n = BLOCK_RANK
    one, two = transvection(n, 0, 1), transvection(n, 2, 3)
    if not distinguish:
        two = one
    ident = identity(n)
    if family == "B":
        ops = {"E": ident, "O": ident, "e": one, "o": two}
    elif family == "S":
        ops = {"E": one, "O": two, "e": one, "o": two}
    elif family == "I":
        ops = {"E": one, "O": two, "e": one.inverse(), "o": two.inverse()}
    elif family == "Q":
        ops = {"E": one, "O": two, "e": ident, "o": ident}
    else:
        raise KeyError(f"unknown family {family!r}")
    return ops


def reduced_words(rank: int, max_len: int):
    """All reduced words of length at most ``max_len``, shortest first."""
    yield Word()
    layer = [Word()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            last = w.letters[-1] if w.letters else None
            for g in range(rank):
                for e in (1, -1):
                    if last == (g, -e):
                        continue
                    nxt.append(w * Word(((g, e),)))
        yield from nxt
        layer = nxt


@dataclass(frozen=True)
class Counterexample:
    case: str
    output: str
    values: dict
    lhs: Word
    rhs: Word


def find_counterexample(
    equations: Mapping[str, tuple[FormalWord, FormalWord]],
    ops: Mapping[str, ConcreteAutomorphism],
    rank: int,
    max_len: int = 6,
    variables: Sequence[str] = ("a", "b", "c"),
) -> Counterexample | None:
    """Search variable values by increasing total length, each at most
    ``max_len``, for an equation whose two sides evaluate differently."""
    words_by_len: dict[int, list[Word]] = {}
    gen = reduced_words(rank, max_len)

    def words(n: int) -> list[Word]:
        while n not in words_by_len or (n + 1 not in words_by_len and n < max_len):
            w = next(gen, None)
            if w is None:
                break
            words_by_len.setdefault(len(w), []).append(w)
        return words_by_len.get(n, [])

    k = len(variables)
    for total in range(0, k * max_len + 1):
        for lens in itertools.product(range(max_len + 1), repeat=k):
            if sum(lens) != total:
                continue
            for combo in itertools.product(*(words(l) for l in lens)):
                values = dict(zip(variables, combo))
                for name, (lhs, rhs) in equations.items():
                    lv, rv = evaluate(lhs, ops, values), evaluate(rhs, ops, values)
                    if lv != rv:
                        case, _, out = name.partition(".")
                        return Counterexample(case, out, values, lv, rv)
    return None


def parity_equations(cases: Iterable[str] = ("Case1", "Case2", "Case3")) -> dict[str, tuple[FormalWord, FormalWord]]:
    return {f"{c}.{o}": derived_equation(c, o, PARITY) for c in cases for o in OUTPUTS}


def refute_family(family: str, max_len: int = 6, distinguish: bool = True) -> Counterexample | None:
    return find_counterexample(parity_equations(), family_automorphisms(family, distinguish), BLOCK_RANK, max_len)
