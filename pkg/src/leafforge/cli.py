"""``leafforge`` command line.

Exit codes: 0 decided, 1 exhausted within the search bound, 2 input error,
3 hypothesis or premise violated, 4 a report failed verification.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import reports
from .documents import load_document
from .errors import LeafforgeError, SpecError, Unsupported
from .quasimorphisms import PremiseViolated


def _default_bound() -> int:
    raw = os.environ.get("LEAFFORGE_BOUND")
    if raw is None:
        return 6
    try:
        b = int(raw)
    except ValueError:
        raise SpecError(f"LEAFFORGE_BOUND must be an integer, got {raw!r}") from None
    if b < 1:
        raise SpecError("LEAFFORGE_BOUND must be >= 1")
    return b


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=_positive, default=None,
                        help="search box half-width (default 6, or $LEAFFORGE_BOUND)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--timing", action="store_true",
                        help="append wall-clock time as a trailing field")

    p = argparse.ArgumentParser(prog="leafforge",
                                description="Plane fields, closed leaves and related bounds on 4-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distribution", parents=[common], help="existence of an oriented 2-plane field")
    d.add_argument("spec")
    d.add_argument("--search", action="store_true", help="also search for a witness pair")

    lf = sub.add_parser("leaf", parents=[common], help="can a surface class be a closed leaf")
    lf.add_argument("spec")
    lf.add_argument("cls", metavar="CLASS")
    lf.add_argument("genus", type=int)

    gs = sub.add_parser("genus-spectrum", parents=[common], help="leaf outcome for genus 1..GMAX")
    gs.add_argument("spec")
    gs.add_argument("cls", metavar="CLASS")
    gs.add_argument("gmax", type=_positive)

    b = sub.add_parser("bounds", parents=[common], help="section and multisection bounds")
    b.add_argument("g", type=int)
    b.add_argument("h", type=int)
    b.add_argument("k", type=int)

    la = sub.add_parser("lantern", parents=[common], help="linear identity from one lantern relation")
    for name in ("a", "b", "c"):
        la.add_argument(name, type=_positive)

    r = sub.add_parser("replay", parents=[common], help="replay the unboundedness chain")
    r.add_argument("c", type=_rational)
    r.add_argument("x1", type=_rational)
    r.add_argument("x2", type=_rational)

    v = sub.add_parser("verify", parents=[common], help="re-verify a JSON report")
    v.add_argument("report")
    return p


def _run(args) -> tuple[dict, int]:
    bound = args.bound if args.bound is not None else _default_bound()
    cmd = args.command
    if cmd == "distribution":
        return reports.distribution_report(load_document(args.spec),
                                           bound if args.search else None, args.jobs)
    if cmd == "leaf":
        return reports.leaf_report(load_document(args.spec), args.cls, args.genus, bound, args.jobs)
    if cmd == "genus-spectrum":
        return reports.spectrum_report(load_document(args.spec), args.cls, args.gmax, bound, args.jobs)
    if cmd == "bounds":
        return reports.bounds_report(args.g, args.h, args.k)
    if cmd == "lantern":
        return reports.lantern_report(args.a, args.b, args.c)
    if cmd == "replay":
        return reports.replay_report(args.c, args.x1, args.x2)
    if cmd == "verify":
        try:
            with open(args.report) as fh:
                rep = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read report {args.report}: {exc}") from exc
        if not isinstance(rep, dict):
            raise SpecError("report must be a JSON object")
        failures = reports.verify_report(rep)
        out = {"command": "verify", "report": args.report, "of": rep.get("command"),
               "verified": not failures, "failures": failures}
        return out, reports.EXIT_OK if not failures else reports.EXIT_UNVERIFIED
    raise SpecError(f"unknown command {cmd}")  # argparse prevents this


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and reports.EXIT_INPUT
    t0 = time.perf_counter()
    try:
        rep, code = _run(args)
    except Unsupported as exc:
        print(f"leafforge: unsupported: {exc} [hypothesis: {exc.hypothesis}]", file=sys.stderr)
        return reports.EXIT_HYPOTHESIS
    except PremiseViolated as exc:
        print(f"leafforge: premise violated: {exc}", file=sys.stderr)
        return reports.EXIT_HYPOTHESIS
    except (LeafforgeError, ValueError) as exc:
        print(f"leafforge: error: {exc}", file=sys.stderr)
        return reports.EXIT_INPUT
    if args.timing:
        rep["timing"] = f"{time.perf_counter() - t0:.4f} s"
    text = reports.render_json(rep) if args.format == "json" else reports.render_text(rep)
    print(text)
    if code == reports.EXIT_HYPOTHESIS and rep.get("premise"):
        print(f"leafforge: premise violated: {rep['premise']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
