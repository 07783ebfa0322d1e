"""Bundled sample knots."""

from __future__ import annotations

import os
from pathlib import Path

from .diagram import Diagram, diagram_from_json, realize_diagram, unknot
from .gauss import GaussCode, parse_gauss

CORPUS_ENV = "KNOTGROUPS_CORPUS"

CODES = {
    "unknot": "",
    "kink": "O1+,U1+",
    "trefoil": "O1+,U2+,O3+,U1+,O2+,U3+",
    "figure-eight": "O1-,U2-,O3+,U4+,O2-,U1-,O4+,U3+",
    "virtual-trefoil": "O1+,O2+,U1+,U2+",
    "abcacb": "abcacb",
}
# unmarked codes carry parity data only and cannot be drawn
DIAGRAM_NAMES = ("unknot", "kink", "trefoil", "figure-eight", "virtual-trefoil")
CLASSICAL_NAMES = ("unknot", "kink", "trefoil", "figure-eight")


def code(name: str) -> GaussCode:
    if name in CODES:
        return parse_gauss(CODES[name])
    path = _user_file(name, ".gauss")
    if path is None:
        raise KeyError(f"unknown knot {name!r}")
    return parse_gauss(path.read_text())


def diagram(name: str) -> Diagram:
    if name in CODES:
        c = code(name)
        if c.passes and not c.fully_marked:
            raise KeyError(f"{name!r} is an unmarked code and has no diagram")
        return realize_diagram(c) if c.passes else unknot()
    path = _user_file(name, ".json")
    if path is not None:
        return diagram_from_json(path.read_text())
    return realize_diagram(code(name))


def _user_file(name: str, suffix: str) -> Path | None:
    root = os.environ.get(CORPUS_ENV)
    if not root:
        return None
    p = Path(root) / f"{name}{suffix}"
    return p if p.is_file() else None


def names() -> list[str]:
    out = list(CODES)
    root = os.environ.get(CORPUS_ENV)
    if root and Path(root).is_dir():
        for p in sorted(Path(root).iterdir()):
            if p.suffix in (".gauss", ".json") and p.stem not in out:
                out.append(p.stem)
    return out
