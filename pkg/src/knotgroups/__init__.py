"""Group invariants of virtual knots from automorphism schemes on free groups."""

from .diagram import Diagram, apply_move, enumerate_sites, realize_diagram, unknot
from .gauss import GaussCode, Parity, parities, parity_of, parse_gauss, serialize_gauss
from .invariants import abelian_invariants, count_homs, default_panel, signature
from .presentation import AutomorphismScheme, Presentation, build, preset, tietze_simplify
from .words import Word, parse_word

__all__ = [
    "AutomorphismScheme",
    "Diagram",
    "GaussCode",
    "Parity",
    "Presentation",
    "Word",
    "abelian_invariants",
    "apply_move",
    "build",
    "count_homs",
    "default_panel",
    "enumerate_sites",
    "parities",
    "parity_of",
    "parse_gauss",
    "parse_word",
    "preset",
    "realize_diagram",
    "serialize_gauss",
    "signature",
    "tietze_simplify",
    "unknot",
]
