"""Seeded random move sequences and empirical move-invariance checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .diagram import MOVE_KINDS, Diagram, MoveSite, apply_move, enumerate_sites
from .invariants import FiniteGroup, InvariantSignature, default_panel, signature
from .presentation import AutomorphismScheme, preset

# moves still drawn above the crossing cap: count-neutral ones, and detour,
# which re-draws and can shed virtual crossings
_ALLOWED_WHEN_CAPPED = {"R3", "VR3", "VR4", "Detour"}


@dataclass(frozen=True)
class WalkConfig:
    steps: int = 50
    seed: int = 0
    kinds: tuple[str, ...] = MOVE_KINDS
    # above this many crossings only moves that do not add crossings are drawn
    max_crossings: int = 10


def _choices(d: Diagram, cfg: WalkConfig, capped: bool) -> list[tuple[str, str]]:
    out = []
    for kind in cfg.kinds:
        for direction in ("apply", "undo"):
            if kind == "Detour" and direction == "undo":
                continue
            if capped and direction == "apply" and kind not in _ALLOWED_WHEN_CAPPED:
                continue
            out.append((kind, direction))
    return out


def random_walk(d: Diagram, cfg: WalkConfig):
    """Yield ``(site, diagram)`` after each move.

    Each step picks a move kind and direction uniformly among those with at
    least one site, then a site uniformly.  The crossing cap is lifted for a
    step that would otherwise have no move.
    """
    rng = random.Random(cfg.seed)
    for _ in range(cfg.steps):
        options = []
        for capped in dict.fromkeys((len(d.crossings) >= cfg.max_crossings, False)):
            for kind, direction in _choices(d, cfg, capped):
                sites = enumerate_sites(d, kind, direction)
                if sites:
                    options.append(sites)
            if options:
                break
        if not options:
            return
        sites = rng.choice(options)
        site = rng.choice(sites)
        d = apply_move(d, site)
        yield site, d


@dataclass
class MoveCheck:
    step: int
    site: MoveSite
    diagram: Diagram
    signature: InvariantSignature
    ok: bool


@dataclass
class WalkReport:
    knot: str
    scheme: str
    seed: int
    initial: InvariantSignature
    checks: list[MoveCheck] = field(default_factory=list)
    moves: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "scheme": self.scheme,
            "seed": self.seed,
            "pass": self.ok,
            "initial": self.initial.to_json(),
            "moves": self.moves,
            "checks": [
                {"step": c.step, "move": str(c.site), "ok": c.ok, "signature": c.signature.to_json(), "diagram": str(c.diagram)}
                for c in self.checks
            ],
        }


def verify_moves(
    d: Diagram,
    scheme: str | Callable[[Diagram], AutomorphismScheme],
    cfg: WalkConfig = WalkConfig(),
    groups: Sequence[FiniteGroup] | None = None,
    check_every: int = 1,
    knot: str = "",
) -> WalkReport:
    """Compare the signature of ``d`` with that after every ``check_every``
    moves and after the last move.  ``scheme`` is a preset name or a
    function building a scheme for a diagram (the rank follows the diagram)."""
    make = (lambda x: preset(scheme, x)) if isinstance(scheme, str) else scheme
    name = scheme if isinstance(scheme, str) else getattr(scheme, "__name__", "custom")
    groups = default_panel() if groups is None else list(groups)
    initial = signature(d, make(d), groups)
    report = WalkReport(knot, name, cfg.seed, initial)
    last = None
    for i, (site, cur) in enumerate(random_walk(d, cfg), start=1):
        report.moves.append(str(site))
        last = (i, site, cur)
        if check_every and i % check_every == 0:
            sig = signature(cur, make(cur), groups)
            report.checks.append(MoveCheck(i, site, cur, sig, sig == initial))
    if last is not None and (not report.checks or report.checks[-1].step != last[0]):
        i, site, cur = last
        sig = signature(cur, make(cur), groups)
        report.checks.append(MoveCheck(i, site, cur, sig, sig == initial))
    return report
