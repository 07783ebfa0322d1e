#!/usr/bin/env python3
"""Random-move invariance sweep over the bundled corpus."""

import argparse
import json
import time

from knotgroups import corpus
from knotgroups.experiments import WalkConfig, verify_moves

DEFAULT_PRESETS = ("pi1", "quandle", "biquandle", "S", "I", "VG", "EG")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="+", default=list(DEFAULT_PRESETS))
    ap.add_argument("--knots", nargs="+", default=list(corpus.DIAGRAM_NAMES))
    ap.add_argument("--moves", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--check-every", type=int, default=1)
    ap.add_argument("--out", help="write per-walk reports as JSON lines")
    args = ap.parse_args()

    ok = True
    sink = open(args.out, "w") if args.out else None
    for name in args.knots:
        d = corpus.diagram(name)
        for p in args.presets:
            t = time.perf_counter()
            rep = verify_moves(d, p, WalkConfig(steps=args.moves, seed=args.seed), check_every=args.check_every, knot=name)
            ok &= rep.ok
            print(f"{name:16s} {p:10s} {'PASS' if rep.ok else 'FAIL'}  {len(rep.moves)} moves  {time.perf_counter() - t:6.2f} s  {rep.initial}")
            if sink:
                sink.write(json.dumps(rep.to_json()) + "\n")
    if sink:
        sink.close()
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
