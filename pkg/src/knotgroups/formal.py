"""Free-group words whose letters carry strings of formal automorphisms.

A letter ``(ops, var, exp)`` stands for ``f1(f2(...fk(var)))^exp`` with
``ops = ((f1, e1), ..., (fk, ek))`` listed outermost first.  Operators act as
homomorphisms, so applying ``f`` to a word prepends ``f`` to every letter.

Operator strings live in the group generated by the operator symbols subject
to the declared commutations and identifications (a right-angled Artin
group).  Their canonical form: identified symbols are rewritten to their
class representative, inverse pairs separated only by commuting symbols are
cancelled, and the lexicographically least word of the commutation class is
chosen.  With canonical operator strings, equality of formal words is free
reduction plus syntactic comparison.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .words import ConcreteAutomorphism, Word, apply

Op = tuple[str, int]
Letter = tuple[tuple[Op, ...], str, int]

DEFAULT_ALPHABET = ("theta", "phi", "eta", "E", "O", "e", "o")
ALIASES = {"θ": "theta", "φ": "phi", "ϕ": "phi", "η": "eta"}


class FormalError(ValueError):
    pass


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for ops, var, e in letters:
        if out and out[-1][0] == ops and out[-1][1] == var and out[-1][2] == -e:
            out.pop()
        else:
            out.append((ops, var, e))
    return tuple(out)


@dataclass(frozen=True)
class FormalWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "FormalWord":
        return cls(((((), name, exp)),))

    def __mul__(self, other: "FormalWord") -> "FormalWord":
        return FormalWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "FormalWord":
        return FormalWord(tuple((ops, v, -e) for ops, v, e in reversed(self.letters)))

    def apply(self, op: str, exp: int = 1) -> "FormalWord":
        return FormalWord(tuple((((op, exp),) + ops, v, e) for ops, v, e in self.letters))

    def apply_ops(self, ops: Sequence[Op]) -> "FormalWord":
        w = self
        for name, e in reversed(tuple(ops)):
            w = w.apply(name, e)
        return w

    def variables(self) -> set[str]:
        return {v for _, v, _ in self.letters}

    def operators(self) -> set[str]:
        return {n for ops, _, _ in self.letters for n, _ in ops}

    def substitute(self, values: Mapping[str, "FormalWord | None"]) -> "FormalWord":
        """Replace variables; ``None`` maps a variable to the identity."""
        out: list[Letter] = []
        for ops, v, e in self.letters:
            if v not in values:
                out.append((ops, v, e))
                continue
            w = values[v]
            if w is None:
                continue
            w = w.apply_ops(ops)
            out.extend((w if e > 0 else w.inverse()).letters)
        return FormalWord(tuple(out))

    def to_text(self) -> str:
        if not self.letters:
            return "1"
        groups: list[tuple[tuple[Op, ...], list[str]]] = []
        for ops, v, e in self.letters:
            tok = v if e > 0 else f"{v}^-1"
            if groups and groups[-1][0] == ops:
                groups[-1][1].append(tok)
            else:
                groups.append((ops, [tok]))
        parts = []
        for ops, toks in groups:
            body = " ".join(toks)
            if ops:
                names = ",".join(n if e > 0 else f"{n}^-1" for n, e in ops)
                parts.append(f"[{names}]({body})")
            else:
                parts.append(body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


# -- declarations ----------------------------------------------------------------

@dataclass(frozen=True)
class CommutationDecl:
    """Declared commuting operator pairs and identifications.

    ``identify`` holds rules ``(lhs, rhs, exp)`` read as ``lhs = rhs^exp``;
    ``rhs`` is ``None`` for the identity.  Plain equalities (``exp == 1``) are
    closed into classes whose representative is the earliest symbol in the
    alphabet.
    """

    commute: frozenset[frozenset[str]] = frozenset()
    identify: tuple[tuple[str, str | None, int], ...] = ()
    alphabet: tuple[str, ...] = DEFAULT_ALPHABET
    _rep: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]
    _rules: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        names = set(self.alphabet)
        for p in self.commute:
            for n in p:
                if n not in names:
                    raise FormalError(f"unknown operator symbol {n!r}")
        order = {n: i for i, n in enumerate(self.alphabet)}
        parent = {n: n for n in self.alphabet}

        def find(n):
            while parent[n] != n:
                n = parent[n]
            return n

        for lhs, rhs, e in self.identify:
            for n in (lhs, rhs):
                if n is not None and n not in names:
                    raise FormalError(f"unknown operator symbol {n!r}")
            if rhs is not None and e == 1:
                a, b = find(lhs), find(rhs)
                if a != b:
                    lo, hi = sorted((a, b), key=order.__getitem__)
                    parent[hi] = lo
        rep = {n: find(n) for n in self.alphabet}
        rules = {}
        for lhs, rhs, e in self.identify:
            if rhs is None or e != 1:
                key = rep[lhs]
                target = None if rhs is None else rep[rhs]
                if key in rules and rules[key] != (target, e):
                    raise FormalError(f"conflicting identifications for {lhs!r}")
                rules[key] = (target, e)
        object.__setattr__(self, "_rep", rep)
        object.__setattr__(self, "_rules", rules)
        for n in self.alphabet:
            self.resolve(n)  # cycle check

    @classmethod
    def of(cls, commute: Iterable[Sequence[str]] = (), identify: Iterable[Sequence] = (), alphabet=DEFAULT_ALPHABET):
        pairs = frozenset(frozenset(_canon_name(n) for n in p) for p in commute)
        rules = []
        for item in identify:
            lhs, rhs = _canon_name(item[0]), item[1]
            rules.append((lhs,) + _parse_target(rhs))
        return cls(pairs, tuple(rules), tuple(alphabet))

    @classmethod
    def from_json(cls, data: Mapping | str) -> "CommutationDecl":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.of(data.get("commute", ()), data.get("identify", ()), tuple(data.get("alphabet", DEFAULT_ALPHABET)))

    def to_json(self) -> dict:
        def target(rhs, e):
            if rhs is None:
                return "Id"
            return rhs if e == 1 else f"{rhs}^-1"

        return {
            "commute": sorted(sorted(p) for p in self.commute),
            "identify": [[lhs, target(rhs, e)] for lhs, rhs, e in self.identify],
        }

    def with_commute(self, *pairs: Sequence[str]) -> "CommutationDecl":
        return CommutationDecl(self.commute | {frozenset(p) for p in pairs}, self.identify, self.alphabet)

    def without_commute(self, *pairs: Sequence[str]) -> "CommutationDecl":
        return CommutationDecl(self.commute - {frozenset(p) for p in pairs}, self.identify, self.alphabet)

    def with_identify(self, *rules: Sequence) -> "CommutationDecl":
        extra = tuple((_canon_name(r[0]),) + _parse_target(r[1]) for r in rules)
        return CommutationDecl(self.commute, self.identify + extra, self.alphabet)

    def resolve(self, name: str, _seen: frozenset = frozenset()) -> tuple[Op, ...]:
        """Operator string that ``name`` is rewritten to (empty for Id)."""
        if name not in self._rep:
            raise FormalError(f"unknown operator symbol {name!r}")
        r = self._rep[name]
        if r not in self._rules:
            return ((r, 1),)
        if r in _seen:
            raise FormalError(f"cyclic identification through {r!r}")
        target, e = self._rules[r]
        if target is None:
            return ()
        inner = self.resolve(target, _seen | {r})
        return inner if e == 1 else tuple((n, -k) for n, k in reversed(inner))

    def commutes(self, a: str, b: str) -> bool:
        if a == b:
            return True
        reps = {frozenset(self._rep[n] for n in p) for p in self.commute}
        return frozenset((a, b)) in reps


def _canon_name(n: str) -> str:
    return ALIASES.get(n, n)


def _parse_target(rhs) -> tuple[str | None, int]:
    if rhs is None:
        return (None, 1)
    text = str(rhs).strip()
    if text in ("Id", "I", "1", "id"):
        return (None, 1)
    m = re.fullmatch(r"(\S+?)(\^-1)?", text)
    return (_canon_name(m.group(1)), -1 if m.group(2) else 1)


NO_DECLS = CommutationDecl()


# -- normal forms ------------------------------------------------------------------

def normalize_ops(ops: Sequence[Op], decls: CommutationDecl) -> tuple[Op, ...]:
    expanded: list[Op] = []
    for n, e in ops:
        img = decls.resolve(n)
        expanded.extend(img if e == 1 else tuple((m, -k) for m, k in reversed(img)))
    # cancel f^e against a later f^-e when everything between commutes with f
    out: list[Op] = []
    for n, e in expanded:
        hit = None
        for i in range(len(out) - 1, -1, -1):
            m, k = out[i]
            if m == n and k == -e:
                hit = i
                break
            if not decls.commutes(m, n):
                break
        if hit is None:
            out.append((n, e))
        else:
            del out[hit]
    # lexicographically least representative of the commutation class
    rank = {n: i for i, n in enumerate(decls.alphabet)}

    def key(op):
        return (rank[op[0]], -op[1])

    rest = out
    result: list[Op] = []
    while rest:
        best = None
        for i, (n, e) in enumerate(rest):
            if all(decls.commutes(m, n) and (m, k) != (n, e) for m, k in rest[:i]):
                if best is None or key((n, e)) < key(rest[best]):
                    best = i
        result.append(rest.pop(best))
    return tuple(result)


def normalize(w: FormalWord, decls: CommutationDecl = NO_DECLS) -> FormalWord:
    alphabet = set(decls.alphabet)
    for n in w.operators():
        if n not in alphabet:
            raise FormalError(f"unknown operator symbol {n!r}")
    return FormalWord(tuple((normalize_ops(ops, decls), v, e) for ops, v, e in w.letters))


def equal(u: FormalWord, v: FormalWord, decls: CommutationDecl = NO_DECLS) -> bool:
    return normalize(u, decls) == normalize(v, decls)


# -- text syntax ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\^-1|\^-?\d+|1(?![0-9])|[A-Za-z_θφϕη][A-Za-z_0-9]*|\[|\]|\(|\)|,)")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormalError(f"cannot parse {text!r} at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_formal(text: str, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> FormalWord:
    """Parse e.g. ``a b^-1 c [theta,phi](b a^-1)``.

    Operator application is ``[f,g^-1](...)`` or
    ``f(...)`` for a single operator; parentheses group; ``^-1`` and ``^k``
    apply to the preceding factor.  Any other identifier is a variable.
    """
    ops_set = set(alphabet)
    toks = _tokenize(text)
    if toks == ["1"] or not toks:
        return FormalWord()
    pos = 0

    def peek(k=0):
        return toks[pos + k] if pos + k < len(toks) else None

    def take(expect=None):
        nonlocal pos
        t = peek()
        if t is None or (expect is not None and t != expect):
            raise FormalError(f"expected {expect!r} in {text!r}, got {t!r}")
        pos += 1
        return t

    def oplist():
        take("[")
        ops = []
        while True:
            name = _canon_name(take())
            if name not in ops_set:
                raise FormalError(f"unknown operator symbol {name!r}")
            e = 1
            if peek() == "^-1":
                take()
                e = -1
            ops.append((name, e))
            if peek() == ",":
                take()
                continue
            take("]")
            return ops

    def expr(stop):
        w = FormalWord()
        while peek() is not None and peek() not in stop:
            w = w * factor()
        return w

    def factor():
        t = peek()
        if t == "[":
            ops = oplist()
            take("(")
            base = expr({")"}).apply_ops(ops)
            take(")")
        elif t == "(":
            take()
            base = expr({")"})
            take(")")
        elif t is not None and _canon_name(t) in ops_set and (peek(1) == "(" or (peek(1) == "^-1" and peek(2) == "(")):
            name = _canon_name(take())
            e = -1 if peek() == "^-1" else 1
            if e < 0:
                take()
            take("(")
            base = expr({")"}).apply(name, e)
            take(")")
        elif t is not None and re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", t):
            take()
            if t in ops_set:
                raise FormalError(f"operator {t!r} used as a variable")
            base = FormalWord.var(t)
        elif t == "1":
            take()
            base = FormalWord()
        else:
            raise FormalError(f"unexpected token {t!r} in {text!r}")
        p = peek()
        if p is not None and p.startswith("^"):
            take()
            k = int(p[1:])
            out = FormalWord()
            piece = base if k >= 0 else base.inverse()
            for _ in range(abs(k)):
                out = out * piece
            return out
        return base

    w = expr(set())
    if pos != len(toks):
        raise FormalError(f"trailing tokens in {text!r}")
    return w


# -- concrete evaluation ---------------------------------------------------------------------

def evaluate(w: FormalWord, ops: Mapping[str, ConcreteAutomorphism], values: Mapping[str, Word]) -> Word:
    """Interpret operators as concrete automorphisms and variables as words."""
    syl: list[tuple[int, int]] = []
    for op_string, v, e in w.letters:
        x = values[v]
        for name, k in reversed(op_string):
            f = ops[name]
            x = apply(f if k > 0 else f.inverse(), x)
        syl.extend((x if e > 0 else x.inverse()).syllables)
    return Word(tuple(syl))
