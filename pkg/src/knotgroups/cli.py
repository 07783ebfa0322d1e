"""Command-line entry point.

Exit codes: 0 on success, 1 when a verification fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import corpus
from .diagram import Diagram, DiagramError, MoveError, diagram_from_json, realize_diagram, unknot
from .formal import FormalError
from .gauss import GaussCodeError, parities, parse_gauss, serialize_gauss
from .invariants import (
    HomCountBudgetError,
    abelian_invariants,
    count_homs,
    default_panel,
    group_from_json,
    presentation_signature,
    trivial_group,
)
from .presentation import (
    PRESETS,
    AutomorphismScheme,
    ParityAutomorphisms,
    Presentation,
    SchemeError,
    build,
    generator_names,
    presentation_from_json,
    preset,
    tietze_simplify,
)
from .words import AutomorphismError, automorphism_from_json, identity


class InputError(Exception):
    pass


# -- input resolution --------------------------------------------------------------

def _read_source(args) -> tuple[str, str]:
    """Return ``(kind, payload)`` for the knot given on the command line."""
    if getattr(args, "gauss", None) is not None:
        return "gauss", args.gauss
    if getattr(args, "knot", None):
        return "knot", args.knot
    if getattr(args, "input", None):
        path = Path(args.input)
        if not path.is_file():
            raise InputError(f"no such file: {path}")
        return "file", path.read_text()
    raise InputError("give --gauss, --knot or --input")


def load_diagram(args) -> tuple[Diagram, str]:
    kind, payload = _read_source(args)
    if kind == "knot":
        try:
            return corpus.diagram(payload), payload
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from exc
    text = payload.strip()
    if text.startswith("{"):
        return diagram_from_json(text), "input"
    code = parse_gauss(text)
    if not code.passes:
        return unknot(), "unknot"
    if not code.fully_marked:
        raise InputError("drawing a diagram needs over/under roles and signs on every pass")
    return realize_diagram(code), text


def load_presentation(args) -> Presentation:
    if getattr(args, "presentation", None):
        path = Path(args.presentation)
        if not path.is_file():
            raise InputError(f"no such file: {path}")
        return presentation_from_json(path.read_text())
    d, _ = load_diagram(args)
    return build(d, load_scheme(args, d))


def load_scheme(args, d: Diagram) -> AutomorphismScheme:
    if getattr(args, "scheme", None):
        path = Path(args.scheme)
        if not path.is_file():
            raise InputError(f"no such file: {path}")
        return scheme_from_json(json.loads(path.read_text()), d)
    return preset(getattr(args, "preset", None) or "pi1", d)


def scheme_from_json(data: dict, d: Diagram) -> AutomorphismScheme:
    """``{"j": 1, "extra_names": ["s"], "theta": {...}, "phi": {...},
    "eta": {...}, "parity": {"E": ..., "O": ..., "e": ..., "o": ...},
    "commutation": "free"}``; automorphism specs may omit ``rank``."""
    corollary = data.get("eta") is not None
    j = int(data.get("j", 0))
    extra = tuple(data.get("extra_names", ()))
    stub = AutomorphismScheme(j, identity(1), identity(1), identity(1) if corollary else None, extra_names=extra)
    names = generator_names(d, stub) + (() if extra else tuple(f"g{i + 1}" for i in range(j)))
    rank = len(names)

    def auto(spec):
        if spec is None:
            return identity(rank)
        return automorphism_from_json({"rank": rank, **spec}, names)

    theta, phi = auto(data.get("theta")), auto(data.get("phi"))
    eta = auto(data["eta"]) if corollary else None
    par = None
    if data.get("parity"):
        p = data["parity"]
        par = ParityAutomorphisms(auto(p.get("E")), auto(p.get("O")), auto(p.get("e")), auto(p.get("o")))
        theta, phi = par.E, par.e
    return AutomorphismScheme(
        j, theta, phi, eta, par, extra, data.get("commutation", "free"), data.get("name", "custom")
    )


def load_groups(args):
    if not getattr(args, "group", None):
        return default_panel()
    panel = {g.name: g for g in default_panel() + [trivial_group()]}
    out = []
    for item in args.group:
        if item in panel:
            out.append(panel[item])
            continue
        path = Path(item)
        if not path.is_file():
            raise InputError(f"unknown group {item!r}: not a panel name or a file")
        out.append(group_from_json(json.loads(path.read_text())))
    return out


# -- output ----------------------------------------------------------------------------------

def emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- verbs -----------------------------------------------------------------------------------------

def cmd_parse(args) -> int:
    kind, payload = _read_source(args)
    if kind == "knot":
        code = corpus.code(payload)
    else:
        code = parse_gauss(payload)
    data = {
        "code": serialize_gauss(code),
        "crossings": code.n_crossings,
        "roles_marked": code.roles_marked,
        "signs_marked": code.signs_marked,
    }
    text = f"{data['code'] or '(empty)'}  crossings={code.n_crossings}"
    if code.passes and code.fully_marked:
        d = realize_diagram(code)
        data["diagram"] = d.to_json()
        text += f"  classical={d.n_classical} virtual={d.n_virtual}\n{d.dumps()}"
    emit(args, data, text)
    return 0


def cmd_parity(args) -> int:
    kind, payload = _read_source(args)
    code = corpus.code(payload) if kind == "knot" else parse_gauss(payload)
    par = parities(code)
    labels = {i: code.tokens[i - 1] for i in par}
    data = {labels[i]: str(p) for i, p in par.items()}
    emit(args, data, " ".join(f"{labels[i]}:{p}" for i, p in par.items()))
    return 0


def cmd_build(args) -> int:
    p = load_presentation(args)
    emit(args, p.to_json(), _presentation_text(p))
    return 0


def _presentation_text(p: Presentation) -> str:
    lines = [f"generators: {', '.join(p.generators)}"]
    for r, tag in zip(p.relators, p.provenance):
        lines.append(f"  {r.to_text(p.generators)}    [{tag}]")
    return "\n".join(lines)


def cmd_simplify(args) -> int:
    p = tietze_simplify(load_presentation(args), args.budget)
    emit(args, p.to_json(), _presentation_text(p))
    return 0


def cmd_abelian(args) -> int:
    p = load_presentation(args)
    inv = abelian_invariants(tietze_simplify(p, args.budget))
    emit(args, {"abelian_invariants": inv}, " ".join(map(str, inv)) or "trivial")
    return 0


def cmd_homcount(args) -> int:
    p = tietze_simplify(load_presentation(args), args.budget)
    counts = {G.name: count_homs(p, G) for G in load_groups(args)}
    emit(args, counts, " ".join(f"{k}:{v}" for k, v in counts.items()))
    return 0


def cmd_signature(args) -> int:
    sig = presentation_signature(load_presentation(args), load_groups(args), args.budget)
    emit(args, sig.to_json(), str(sig))
    return 0


def cmd_verify_moves(args) -> int:
    from .experiments import WalkConfig, verify_moves

    d, name = load_diagram(args)
    if args.scheme:
        data = json.loads(Path(args.scheme).read_text())
        scheme = lambda x: scheme_from_json(data, x)  # noqa: E731
    else:
        scheme = args.preset or "pi1"
    cfg = WalkConfig(steps=args.moves, seed=args.seed, max_crossings=args.max_crossings)
    report = verify_moves(d, scheme, cfg, load_groups(args), args.check_every, name)
    status = "PASS" if report.ok else "FAIL"
    lines = [f"seed={args.seed} knot={name} scheme={report.scheme} moves={len(report.moves)}",
             f"initial: {report.initial}"]
    for c in report.checks:
        lines.append(f"  step {c.step:3d} {'ok ' if c.ok else 'BAD'} {c.site}  {c.signature}")
    lines.append(f"{status}: signature {'constant' if report.ok else 'changed'}")
    emit(args, report.to_json(), "\n".join(lines))
    return 0 if report.ok else 1


def cmd_verify_theorems(args) -> int:
    from .report import theorem_checks

    rows = theorem_checks(args.case)
    ok = all(r["pass"] for r in rows if r.get("expected", True))
    width = max(len(r["check"]) for r in rows)
    lines = [f"{r['check']:<{width}}  {'PASS' if r['pass'] else 'FAIL'}  {r['detail']}" for r in rows]
    lines.append("PASS" if ok else "FAIL")
    emit(args, {"pass": ok, "checks": rows}, "\n".join(lines))
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------------------------

def _add_source(p, presentation=False):
    p.add_argument("--gauss", help="Gauss code text")
    p.add_argument("--knot", help=f"corpus name ({', '.join(corpus.names())}) or a file stem under ${corpus.CORPUS_ENV}")
    p.add_argument("--input", help="file with a Gauss code or diagram JSON")
    if presentation:
        p.add_argument("--presentation", help="presentation JSON file")
        p.add_argument("--preset", choices=PRESETS, help="automorphism preset (default pi1)")
        p.add_argument("--scheme", help="automorphism scheme JSON file")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotgroups", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="normalize a Gauss code and draw it")
    _add_source(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("parity", help="parity of every crossing")
    _add_source(p)
    p.set_defaults(func=cmd_parity)

    for verb, func, helptext in (
        ("build", cmd_build, "build a presentation"),
        ("simplify", cmd_simplify, "build and simplify a presentation"),
        ("abelian", cmd_abelian, "abelian invariants"),
        ("homcount", cmd_homcount, "homomorphism counts into finite groups"),
        ("signature", cmd_signature, "abelian invariants plus homomorphism counts"),
    ):
        p = sub.add_parser(verb, help=helptext)
        _add_source(p, presentation=True)
        p.add_argument("--budget", type=int, default=200, help="simplification step budget")
        if verb in ("homcount", "signature"):
            p.add_argument("--group", action="append", help="panel name (S3, D4, A4, S4, 1) or group JSON file; repeatable")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-moves", help="signature stays constant along a seeded random move sequence")
    _add_source(p)
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--scheme")
    p.add_argument("--moves", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-crossings", type=int, default=10)
    p.add_argument("--check-every", type=int, default=1)
    p.add_argument("--group", action="append")
    p.set_defaults(func=cmd_verify_moves)

    p = sub.add_parser("verify-theorems", help="symbolic checks of the invariance and no-go claims")
    p.add_argument(
        "--case",
        default="all",
        choices=["all", "even3", "vr4", "case1", "case2", "case3", "constraints", "nogo", "transcription"],
    )
    p.set_defaults(func=cmd_verify_theorems)
    return parser


INPUT_ERRORS = (
    InputError,
    GaussCodeError,
    DiagramError,
    MoveError,
    SchemeError,
    AutomorphismError,
    FormalError,
    json.JSONDecodeError,
    KeyError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except HomCountBudgetError as exc:
        return _fail(args, "budget", str(exc), 1)
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return _fail(args, type(exc).__name__, str(msg), 2)


def _fail(args, kind: str, message: str, code: int) -> int:
    if args.json:
        print(json.dumps({"error": kind, "message": message}))
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
