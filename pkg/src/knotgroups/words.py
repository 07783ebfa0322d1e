"""Freely reduced words in a finitely generated free group, and automorphisms
given by generator images."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]  # (generator index, +1 or -1)


def _reduce_syllables(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g, k in syllables:
        if k == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += k
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, k])
    return tuple((g, k) for g, k in out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.

    Letters are kept run-length compressed as ``(generator, power)`` syllables;
    since the word is reduced, syllable equality is letter equality.
    """

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce_syllables(self.syllables))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        return cls(tuple((g, e) for g, e in letters))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    @property
    def letters(self) -> tuple[Letter, ...]:
        out = []
        for g, k in self.syllables:
            e = 1 if k > 0 else -1
            out.extend([(g, e)] * abs(k))
        return tuple(out)

    def __len__(self) -> int:
        return sum(abs(k) for _, k in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return Word(tuple((g, -k) for g, k in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, g: int) -> int:
        return sum(k for h, k in self.syllables if h == g)

    def occurrences(self, g: int) -> int:
        return sum(abs(k) for h, k in self.syllables if h == g)

    def cyclically_reduced(self) -> "Word":
        s = list(self.syllables)
        while len(s) >= 2 and s[0][0] == s[-1][0]:
            g = s[0][0]
            total = s[0][1] + s[-1][1]
            s = s[1:-1]
            if total:
                s = [(g, total)] + s
            s = list(_reduce_syllables(s))
        return Word(tuple(s))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g] if names is not None else f"x{g}"
            parts.append(name if e == 1 else f"{name}^-1")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({self.to_text()!r})"


IDENTITY = Word()


def multiply(u: Word, v: Word) -> Word:
    return Word(u.syllables + v.syllables)


def product(words: Iterable[Word]) -> Word:
    syl: list[tuple[int, int]] = []
    for w in words:
        syl.extend(w.syllables)
    return Word(tuple(syl))


_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(\^(-?\d+))?")


def parse_word(text: str, names: Sequence[str] | None = None) -> Word:
    """Parse juxtaposed tokens such as ``x3 x1^-1``.

    With ``names`` given, tokens are looked up by name; otherwise tokens must
    look like ``x<index>``.
    """
    text = text.strip()
    if text in ("", "1", "e"):
        return IDENTITY
    index = {n: i for i, n in enumerate(names)} if names is not None else None
    syl = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse word {text!r} near {text[pos:m.start()]!r}")
        pos = m.end()
        tok, power = m.group(1), int(m.group(3) or 1)
        if index is not None:
            if tok not in index:
                raise ValueError(f"unknown generator {tok!r}")
            g = index[tok]
        else:
            if not re.fullmatch(r"x\d+", tok):
                raise ValueError(f"generator token {tok!r} is not of the form x<int>")
            g = int(tok[1:])
        syl.append((g, power))
    if text[pos:].strip():
        raise ValueError(f"trailing garbage in word {text!r}")
    return Word(tuple(syl))


class AutomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class ConcreteAutomorphism:
    """Automorphism of the free group of the given rank, given by the images of
    the generators together with the images under its inverse."""

    rank: int
    image: tuple[Word, ...]
    inverse_image: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.image) != self.rank or len(self.inverse_image) != self.rank:
            raise AutomorphismError("image tables must have one entry per generator")
        for w in self.image + self.inverse_image:
            if any(g >= self.rank or g < 0 for g in w.generators()):
                raise AutomorphismError(f"image word {w} uses a generator outside rank {self.rank}")
        for g in range(self.rank):
            x = Word.gen(g)
            if _evaluate(self.image, _evaluate(self.inverse_image, x)) != x or _evaluate(
                self.inverse_image, _evaluate(self.image, x)
            ) != x:
                raise AutomorphismError(f"inverse images do not invert {self.name or 'map'} on generator {g}")

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def inverse(self) -> "ConcreteAutomorphism":
        name = self.name[:-3] if self.name.endswith("^-1") else (self.name + "^-1" if self.name else "")
        return ConcreteAutomorphism(self.rank, self.inverse_image, self.image, name)

    def is_identity(self) -> bool:
        return all(self.image[g] == Word.gen(g) for g in range(self.rank))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConcreteAutomorphism):
            return NotImplemented
        return self.rank == other.rank and self.image == other.image

    def __hash__(self) -> int:
        return hash((self.rank, self.image))


def _evaluate(images: Sequence[Word], w: Word) -> Word:
    syl: list[tuple[int, int]] = []
    for g, k in w.syllables:
        img = images[g] if k > 0 else images[g].inverse()
        for _ in range(abs(k)):
            syl.extend(img.syllables)
    return Word(tuple(syl))


def apply(f: ConcreteAutomorphism, w: Word) -> Word:
    return _evaluate(f.image, w)


def compose(f: ConcreteAutomorphism, g: ConcreteAutomorphism) -> ConcreteAutomorphism:
    """``f o g``: first ``g``, then ``f``."""
    if f.rank != g.rank:
        raise AutomorphismError("rank mismatch")
    image = tuple(apply(f, g.image[i]) for i in range(f.rank))
    inv = tuple(apply(g.inverse(), f.inverse_image[i]) for i in range(f.rank))
    name = f"{f.name}{g.name}" if f.name and g.name else ""
    return ConcreteAutomorphism(f.rank, image, inv, name)


def commutes(f: ConcreteAutomorphism, g: ConcreteAutomorphism) -> bool:
    if f.rank != g.rank:
        raise AutomorphismError("rank mismatch")
    return all(apply(f, g.image[i]) == apply(g, f.image[i]) for i in range(f.rank))


def identity(rank: int) -> ConcreteAutomorphism:
    gens = tuple(Word.gen(i) for i in range(rank))
    return ConcreteAutomorphism(rank, gens, gens, "Id")


def inner(rank: int, by: Word | int, name: str = "") -> ConcreteAutomorphism:
    """Conjugation ``w -> s w s^-1``."""
    s = Word.gen(by) if isinstance(by, int) else by
    si = s.inverse()
    image = tuple(s * Word.gen(i) * si for i in range(rank))
    inv = tuple(si * Word.gen(i) * s for i in range(rank))
    return ConcreteAutomorphism(rank, image, inv, name or f"inner({s.to_text()})")


def from_images(rank: int, images: Mapping[int, Word], inverse_images: Mapping[int, Word], name: str = "") -> ConcreteAutomorphism:
    """Generators missing from the tables are fixed."""
    image = tuple(images.get(i, Word.gen(i)) for i in range(rank))
    inv = tuple(inverse_images.get(i, Word.gen(i)) for i in range(rank))
    return ConcreteAutomorphism(rank, image, inv, name)


def automorphism_from_json(spec: Mapping, names: Sequence[str] | None = None) -> ConcreteAutomorphism:
    """Read ``{"rank": k, "images": {...}, "inverse_images": {...}}`` or the
    ``{"inner_by": "x5"}`` preset (which then needs ``rank`` too)."""
    rank = int(spec["rank"])
    if names is None:
        names = [f"x{i}" for i in range(rank)]
    index = {n: i for i, n in enumerate(names)}
    if "inner_by" in spec:
        return inner(rank, parse_word(spec["inner_by"], names))
    images = {index[k]: parse_word(v, names) for k, v in spec.get("images", {}).items()}
    inv = {index[k]: parse_word(v, names) for k, v in spec.get("inverse_images", {}).items()}
    return from_images(rank, images, inv, spec.get("name", ""))
