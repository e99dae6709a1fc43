"""Command-line entry point: ``gbl <study> --config FILE --out DIR``."""

import argparse
import dataclasses
import json
import sys
import time

from . import backend
from .study import STUDY_KINDS, StudyConfig, StudyError, run_study
from .superposition import CausticError, ConfigError


def build_parser():
    p = argparse.ArgumentParser(prog="gbl", description="Gaussian beam summation studies")
    sub = p.add_subparsers(dest="command", required=True)
    for kind in STUDY_KINDS:
        sp = sub.add_parser(kind, help=f"run a {kind} study")
        sp.add_argument("--config", required=True, help="JSON study config")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--workers", type=int, default=1, help="threads for ray tracing and beam sums")
        sp.add_argument("--alpha", type=float, default=None, help="override cutoff radius (inf disables)")
        sp.add_argument("--dt", type=float, default=None, help="override RK4 step")
    return p


def load_config(args):
    cfg = StudyConfig.load(args.config)
    if cfg.study != args.command:
        raise StudyError(f"config {args.config} describes a {cfg.study!r} study, not {args.command!r}")
    changes = {}
    if args.alpha is not None:
        changes["alpha"] = None if args.alpha == float("inf") else args.alpha
    if args.dt is not None:
        changes["dt"] = args.dt
    return dataclasses.replace(cfg, **changes) if changes else cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("gbl: --workers must be at least 1", file=sys.stderr)
        return 2
    try:
        cfg = load_config(args)
        t0 = time.perf_counter()
        result, paths = run_study(cfg, args.out, workers=args.workers)
    except (StudyError, ConfigError, CausticError, ValueError) as exc:
        print(f"gbl: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - t0
    print(f"{cfg.study}: {len(paths)} files in {args.out} ({elapsed:.1f} s, backend {backend()})")
    if hasattr(result, "summary"):
        s = result.summary()
        print(json.dumps({k: s[k] for k in ("slope", "residual") if k in s}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
