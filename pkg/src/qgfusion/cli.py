"""Command line entry point: ``qgfusion <subcommand> ...``.

Exit status is 0 when every executed check passes, 1 when some check fails
and 2 on invalid arguments.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import verify
from .dimensions import DIM_TOL
from .notation import parse_weight
from .rootsystem import CartanType, build_root_system


def parse_range(text: str) -> list[int]:
    """``"16:200"`` (inclusive), ``"9,11,13"``, ``"17"`` or ``"19:99:2"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            bits = [int(b) for b in part.split(":")]
            step = bits[2] if len(bits) > 2 else 1
            out.extend(range(bits[0], bits[1] + 1, step))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _type(token: str) -> str:
    try:
        return str(CartanType.parse(token))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "jsonl"), default="table",
                        help="human table or structured records (default: table)")
    common.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    common.add_argument("--tol", type=float, default=DIM_TOL, help=f"comparison tolerance (default {DIM_TOL})")
    common.add_argument("--dps", type=int, help="evaluate sine products with mpmath at this many digits "
                        "(same as QGFUSION_DPS)")

    p = argparse.ArgumentParser(prog="qgfusion", description="Fusion rings and dimensions of C(g, q, l).")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("labels", parents=[common], help="list the alcove labels")
    s.add_argument("type", type=_type)
    s.add_argument("level", type=int)
    s.add_argument("--order", choices=("default", "paired"), default="default")

    s = sub.add_parser("fusion", parents=[common], help="fusion matrix N_lambda")
    s.add_argument("type", type=_type)
    s.add_argument("level", type=int)
    s.add_argument("weight", help='e.g. "1,0,0,0", "L1", "2L1+L4", "λ8"')
    s.add_argument("--order", choices=("default", "paired"), default="default")

    s = sub.add_parser("dims", parents=[common], help="dim_q and FPdim of every label")
    s.add_argument("type", type=_type)
    s.add_argument("level", type=int)
    s.add_argument("z", type=int)

    s = sub.add_parser("scan", parents=[common], help="pseudo-unitarity verdict for every admissible z")
    s.add_argument("type", type=_type)
    s.add_argument("level", type=int)
    s.add_argument("--method", choices=("auto", "global", "lemma"), default="auto")

    s = sub.add_parser("verify-g2", parents=[common], help="G2 inequality sweep and anchors")
    s.add_argument("--levels", type=parse_range, default=None,
                   help=f"default 8:{verify.DEFAULT_CAPS['G2']}")
    s.add_argument("--no-scan", action="store_true", help="skip the pseudo-unitarity scans")

    s = sub.add_parser("verify-f4", parents=[common], help="F4 inequality sweep and identity")
    s.add_argument("--levels", type=parse_range, default=None,
                   help=f"default 15:{verify.DEFAULT_CAPS['F4']}")
    s.add_argument("--no-scan", action="store_true")

    s = sub.add_parser("verify-bc", parents=[common], help="so_{2k+1} inequality sweep")
    s.add_argument("--k", type=parse_range, default=None, help=f"default 2:{verify.DEFAULT_CAPS['k']}")
    s.add_argument("--levels", type=parse_range, default=None,
                   help=f"default odd 2k+3:{verify.DEFAULT_CAPS['BC']}")
    s.add_argument("--no-scan", action="store_true")

    s = sub.add_parser("equivalences", parents=[common], help="run the Grothendieck equivalence battery")
    s.add_argument("--case", action="append", help="run only this case (repeatable); see --list")
    s.add_argument("--list", action="store_true", help="print case names and exit")
    return p


def run(args) -> verify.Report:
    if args.cmd == "labels":
        return verify.table_labels(args.type, args.level, args.order)
    if args.cmd == "fusion":
        lam = parse_weight(args.weight, build_root_system(args.type))
        return verify.table_fusion(args.type, args.level, lam, args.order)
    if args.cmd == "dims":
        return verify.table_dims(args.type, args.level, args.z, args.tol)
    if args.cmd == "scan":
        return verify.table_scan(args.type, args.level, args.tol, args.method)
    if args.cmd == "verify-g2":
        return verify.verify_inequality_g2(args.levels, args.tol, scan=not args.no_scan)
    if args.cmd == "verify-f4":
        return verify.verify_inequality_f4(args.levels, args.tol, scan=not args.no_scan)
    if args.cmd == "verify-bc":
        return verify.verify_inequality_bc(args.k, args.levels, args.tol, scan=not args.no_scan)
    if args.cmd == "equivalences":
        return verify.check_equivalences(args.case)
    raise AssertionError(args.cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dps:
        os.environ["QGFUSION_DPS"] = str(args.dps)
    if args.cmd == "equivalences" and args.list:
        print("\n".join(name for name, _ in verify.equivalence_cases()))
        return 0
    if args.cmd == "equivalences" and args.case:
        known = {name for name, _ in verify.equivalence_cases()}
        unknown = [c for c in args.case if c not in known]
        if unknown:
            parser.error(f"unknown case(s) {unknown}; use --list")
    try:
        report = run(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"qgfusion: error: {exc}", file=sys.stderr)
        return 2
    text = report.render(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
