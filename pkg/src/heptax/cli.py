"""Command line interface: ``heptax {solve,det,verify,gen,bench}``.

Exit codes: 0 success, 2 singular, 3 parse/validation error,
4 zero pivot in float64 mode, 5 anything else.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import fileio
from .bands import BAND_NAMES, CyclicHeptaBands, matvec
from .bench import relative_residual, residual_inf, run_bench, write_csv
from .cyclic import det_cyclic, solve_cyclic
from .errors import (
    BreakdownInFloatMode,
    HeptaxError,
    ParseError,
    SingularCornerBlock,
    SingularMatrix,
    ValidationError,
)
from .hepta_lu import determinant, factorize, solve
from .oracle import PROFILES, GenSpec, generate
from .scalar import Mode, ZeroTest, format_rational

log = logging.getLogger("heptax")

EXIT_OK = 0
EXIT_SINGULAR = 2
EXIT_INVALID = 3
EXIT_BREAKDOWN = 4
EXIT_INTERNAL = 5


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return repr(v)


def _zero_test(args, bands) -> ZeroTest:
    # --tol is relative to the largest band entry
    if args.tol == 0.0 or args.mode != "f64":
        return ZeroTest(0.0)
    scale = max(abs(float(v)) for name in BAND_NAMES for v in getattr(bands, name))
    return ZeroTest(args.tol * scale)


def _load_system(args):
    sf = fileio.load(args.input)
    mode = Mode(args.mode)
    bands = sf.to_bands(mode)
    return sf, bands, sf.rhs_as(mode), mode


def cmd_solve(args) -> int:
    sf, bands, rhs, mode = _load_system(args)
    zt = _zero_test(args, bands)
    solver = solve_cyclic if sf.kind == "cyclic" else solve
    kwargs = {"parallel": args.parallel} if sf.kind == "cyclic" else {}
    try:
        report = solver(bands, rhs, zt, **kwargs)
    except BreakdownInFloatMode:
        if not args.fallback_symbolic:
            raise
        log.warning("zero pivot in float64 mode, rerunning in symbolic mode")
        bands, rhs = sf.to_bands(Mode.SYMBOLIC), sf.rhs_as(Mode.SYMBOLIC)
        report = solver(bands, rhs, ZeroTest(0.0), **kwargs)
    x = list(report.x)
    res = residual_inf(sf.to_bands(Mode.F64), sf.rhs_as(Mode.F64), x)
    rel = relative_residual(sf.to_bands(Mode.F64), sf.rhs_as(Mode.F64), x)
    print(f"det: {_fmt(report.det)}")
    print(f"substitutions_used: {report.substitutions_used}")
    print(f"mode: {report.mode.value}")
    print(f"residual_inf: {res!r}")
    print(f"relative_residual: {rel!r}")
    if args.out:
        fileio.save(args.out, x, det=report.det, substitutions_used=report.substitutions_used)
    else:
        print("x: " + " ".join(_fmt(v) for v in x))
    return EXIT_OK


def cmd_det(args) -> int:
    sf, bands, _rhs, _mode = _load_system(args)
    zt = _zero_test(args, bands)
    if isinstance(bands, CyclicHeptaBands):
        det = det_cyclic(bands, zt)
    else:
        det = determinant(factorize(bands, zt))
    print(_fmt(det))
    return EXIT_OK


def cmd_verify(args) -> int:
    sf, bands, rhs, mode = _load_system(args)
    if mode is Mode.SYMBOLIC:
        mode = Mode.RATIONAL
        bands, rhs = sf.to_bands(mode), sf.rhs_as(mode)
    x = fileio.load_solution(args.solution)
    if len(x) != sf.order:
        raise ParseError(f"solution has length {len(x)}, expected {sf.order}")
    if mode is Mode.F64:
        res = residual_inf(bands, rhs, x)
    else:
        exact = [Fraction(v) for v in x]
        res = max(abs(u - v) for u, v in zip(matvec(bands, exact), rhs))
    print(f"residual_inf: {_fmt(res)}")
    print(f"relative_residual: {relative_residual(bands, rhs, x)!r}")
    return EXIT_OK


def cmd_gen(args) -> int:
    mode = "f64" if args.mode == "f64" else "rational"
    spec = GenSpec(
        n=args.order, seed=args.seed, profile=args.profile, mode=mode, kind=args.kind, k=args.k
    )
    bands, rhs = generate(spec)
    fileio.save(args.out, fileio.SystemFile.from_bands(bands, rhs, mode))
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    mode = "f64" if args.mode == "f64" else "rational"
    rows = run_bench(
        sizes,
        reps=args.reps,
        profile=args.profile,
        mode=mode,
        kind=args.kind,
        seed=args.seed,
        oracle_max=args.oracle_max,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], default="f64")
    common.add_argument(
        "--tol", type=float, default=0.0,
        help="float64 zero-pivot tolerance, relative to the largest entry (default 0: exact test)",
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="heptax", description="Solve (cyclic) heptadiagonal linear systems."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve a system file")
    p.add_argument("input")
    p.add_argument("--out", help="write the solution as JSON")
    p.add_argument("--parallel", action="store_true", help="run the three banded solves on threads")
    p.add_argument(
        "--fallback-symbolic", action="store_true",
        help="on a float64 zero pivot, rerun in symbolic mode instead of failing",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("det", parents=[common], help="print the determinant")
    p.add_argument("input")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("verify", parents=[common], help="residual of a solution")
    p.add_argument("input")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="write a random system file")
    p.add_argument("--kind", choices=["cyclic", "hepta"], default="cyclic")
    p.add_argument("-n", "--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=PROFILES, default="diagonally-dominant")
    p.add_argument("--k", type=int, default=1, help="zero leading pivots (1-3)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="timing and operation-count CSV")
    p.add_argument("--sizes", default="1000,2000,4000")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--profile", choices=PROFILES, default="diagonally-dominant")
    p.add_argument("--kind", choices=["cyclic", "hepta"], default="cyclic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-max", type=int, default=512)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (SingularMatrix, SingularCornerBlock) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SINGULAR
    except BreakdownInFloatMode as exc:
        print(f"breakdown: {exc}", file=sys.stderr)
        return EXIT_BREAKDOWN
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HeptaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
