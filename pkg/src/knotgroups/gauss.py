"""Gauss codes of virtual knots: parsing, serialization and crossing parity."""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from enum import Enum


class GaussCodeError(ValueError):
    pass


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Pass:
    label: int  # dense id, 1-based, in first-occurrence order
    role: str | None = None  # "O", "U" or None when unmarked
    sign: int | None = None  # +1, -1 or None when unmarked


@dataclass(frozen=True)
class GaussCode:
    passes: tuple[Pass, ...]
    letters: bool = False  # written in single-letter mode
    tokens: tuple[str, ...] = ()  # original label token for each dense id

    @property
    def n_crossings(self) -> int:
        return len(self.passes) // 2

    @property
    def roles_marked(self) -> bool:
        return bool(self.passes) and self.passes[0].role is not None

    @property
    def signs_marked(self) -> bool:
        return bool(self.passes) and self.passes[0].sign is not None

    @property
    def fully_marked(self) -> bool:
        return not self.passes or (self.roles_marked and self.signs_marked)

    def sign(self, label: int) -> int | None:
        for p in self.passes:
            if p.label == label:
                return p.sign
        raise KeyError(label)

    def positions(self, label: int) -> tuple[int, int]:
        idx = [i for i, p in enumerate(self.passes) if p.label == label]
        if len(idx) != 2:
            raise KeyError(label)
        return idx[0], idx[1]

    def label_id(self, label: int | str) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 1 <= label <= self.n_crossings:
                return label
            raise GaussCodeError(f"unknown crossing {label!r}")
        if label in self.tokens:
            return self.tokens.index(label) + 1
        raise GaussCodeError(f"unknown crossing {label!r}")

    def __str__(self) -> str:
        return serialize_gauss(self)


_MARKED = re.compile(r"^([OUou])?(\d+)([+-])?$")


def parse_gauss(text: str) -> GaussCode:
    """Parse a Gauss code.

    Two forms are accepted: a run of single letters (``abcacb``), which is
    unmarked, or comma/whitespace separated tokens ``[OU]?<int>[+-]?``
    (``O1+,U2+,O3+,U1+,O2+,U3+``).
    """
    body = text.strip()
    if not body:
        return GaussCode(())
    if re.fullmatch(r"[A-Za-z\s,]+", body):
        raw = [(ch, None, None) for ch in body if ch.isalpha()]
        letters = True
    else:
        raw = []
        for tok in re.split(r"[\s,]+", body):
            if not tok:
                continue
            m = _MARKED.match(tok)
            if not m:
                raise GaussCodeError(f"bad pass token {tok!r}")
            role = m.group(1).upper() if m.group(1) else None
            sign = {"+": 1, "-": -1, None: None}[m.group(3)]
            raw.append((m.group(2), role, sign))
        letters = False
    return _normalize(raw, letters)


def _normalize(raw: list[tuple[str, str | None, int | None]], letters: bool) -> GaussCode:
    order: list[str] = []
    for tok, _, _ in raw:
        if tok not in order:
            order.append(tok)
    for tok in order:
        n = sum(1 for t, _, _ in raw if t == tok)
        if n != 2:
            raise GaussCodeError(f"crossing {tok!r} occurs {n} times, expected 2")
    roles = [r for _, r, _ in raw]
    if any(r is not None for r in roles) and any(r is None for r in roles):
        raise GaussCodeError("over/under roles must be marked on every pass or on none")
    signs: dict[str, int | None] = {}
    for tok, _, s in raw:
        if s is None:
            continue
        if signs.get(tok, s) != s:
            raise GaussCodeError(f"crossing {tok!r} carries conflicting signs")
        signs[tok] = s
    if signs and len(signs) != len(order):
        raise GaussCodeError("signs must be marked on every crossing or on none")
    if roles and roles[0] is not None:
        for tok in order:
            rs = sorted(r for t, r, _ in raw if t == tok)
            if rs != ["O", "U"]:
                what = "Over" if rs == ["O", "O"] else "Under"
                raise GaussCodeError(f"crossing {tok!r} has two {what} passes")
    ids = {tok: i + 1 for i, tok in enumerate(order)}
    passes = tuple(Pass(ids[t], r, signs.get(t)) for t, r, _ in raw)
    return GaussCode(passes, letters, tuple(order))


def serialize_gauss(code: GaussCode) -> str:
    if not code.passes:
        return ""
    if code.letters and code.n_crossings <= 26 and not code.roles_marked and not code.signs_marked:
        return "".join(string.ascii_lowercase[p.label - 1] for p in code.passes)
    parts = []
    for p in code.passes:
        s = "" if p.sign is None else ("+" if p.sign > 0 else "-")
        parts.append(f"{p.role or ''}{p.label}{s}")
    return ",".join(parts)


def make_code(passes: list[tuple[int, str | None, int | None]]) -> GaussCode:
    """Build a normalized code from ``(label, role, sign)`` triples with
    arbitrary integer labels."""
    return _normalize([(str(l), r, s) for l, r, s in passes], False)


def parity_of(code: GaussCode, label: int | str) -> Parity:
    """Even iff an even number of symbols sit strictly between the two
    occurrences of ``label``."""
    i, j = code.positions(code.label_id(label))
    return Parity.EVEN if (j - i - 1) % 2 == 0 else Parity.ODD


def parities(code: GaussCode) -> dict[int, Parity]:
    return {c: parity_of(code, c) for c in range(1, code.n_crossings + 1)}
