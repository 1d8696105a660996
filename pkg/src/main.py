"""
Command-line entry point.

    python -m src.main check --class general --lambda 1,0.5,0.25 --omega 0.8,0.75,0.2
    python -m src.main range --class doubly-stochastic --lambda 1,0.4,0.1

Exit codes: 0 when the verdict passes, 1 when it fails, 2 on usage or input errors.
"""
import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from config.config import CLASS_LABELS, DEFAULT_KMAX, SWEEP_DEFAULT_GRID
from src.core.bounds import bound_constants, canonical_completion, dominant_constant, omega1_range
from src.core.conditions import check, necessary_conditions, perron_check, realizable
from src.core.construct import construct, normalize_unit
from src.core.errors import EmptyRange, InfeasibleInput, InvalidArgument, Niep3Error, OutOfRange
from src.core.spectra import (
    DiagonalTriple,
    MatrixClass,
    RealTriple,
    Spectrum,
    Tolerance,
    canonicalize_diagonal,
    canonicalize_spectrum,
)
from src.reporting.formatters import (
    audit_to_dict,
    constants_to_dict,
    construction_to_dict,
    diagonal_to_list,
    interval_to_dict,
    necessary_to_dict,
    necessity_to_dict,
    power_sums_to_dict,
    report_to_dict,
    spectrum_to_dict,
    verification_to_dict,
)
from src.reporting.storage import ResultStorage
from src.reporting.sweep import RegionSweep
from src.utils.config_loader import load_settings
from src.utils.logger import get_logger, set_level
from src.verification.eigen import power_sum_diagnostics, verify
from src.verification.oracle import ScanConfig, gap_allowance, necessity_trial, range_audit

logger = get_logger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class Context:
    tol: Tolerance
    settings: dict
    storage: ResultStorage


def parse_numbers(text: str, flag: str, count: int = 3) -> List[float]:
    try:
        values = [float(token) for token in text.split(",")]
    except ValueError as e:
        raise InvalidArgument(f"argument {flag}: {e}")
    if len(values) != count:
        raise InvalidArgument(f"argument {flag}: expected {count} comma-separated numbers, got {len(values)}")
    return values


def parse_spectrum_literal(text: str, tol: Tolerance) -> Spectrum:
    """`x,y,z` reals or `a,b+ci,b-ci` with an `i` suffix on imaginary parts."""
    tokens = [token.strip() for token in text.split(",")]
    if len(tokens) != 3:
        raise InvalidArgument(f"argument --lambda: expected 3 comma-separated values, got {len(tokens)}")
    try:
        values = [complex(token.replace("i", "j")) for token in tokens]
    except ValueError as e:
        raise InvalidArgument(f"argument --lambda: cannot parse {text!r}: {e}")
    try:
        return canonicalize_spectrum(values, tol)
    except Niep3Error as e:
        raise InvalidArgument(f"argument --lambda: {e}")


def parse_abc(text: str, tol: Tolerance) -> Spectrum:
    a, b, c = parse_numbers(text, "--abc")
    try:
        return canonicalize_spectrum([a, complex(b, c), complex(b, -c)], tol)
    except Niep3Error as e:
        raise InvalidArgument(f"argument --abc: {e}")


def spectrum_from_args(args, tol: Tolerance, required: bool = True) -> Optional[Spectrum]:
    if args.abc is not None:
        return parse_abc(args.abc, tol)
    if args.lam is not None:
        return parse_spectrum_literal(args.lam, tol)
    if required:
        raise InvalidArgument("one of the arguments --lambda --abc is required")
    return None


def diagonal_from_args(args, required: bool = True) -> Optional[DiagonalTriple]:
    if args.omega is None:
        if required:
            raise InvalidArgument("argument --omega is required")
        return None
    return canonicalize_diagonal(parse_numbers(args.omega, "--omega"))


def cmd_check(args, ctx: Context) -> int:
    s = spectrum_from_args(args, ctx.tol)
    d = diagonal_from_args(args)
    report = check(args.matrix_class, s, d, ctx.tol)
    payload = {"lambda": spectrum_to_dict(s), "omega": diagonal_to_list(d), **report_to_dict(report)}
    ctx.storage.save_json(payload, args.out)
    logger.info(f"check {args.matrix_class.label}: overall={report.overall}")
    return EXIT_PASS if report.overall else EXIT_FAIL


def cmd_realizable(args, ctx: Context) -> int:
    s = spectrum_from_args(args, ctx.tol)
    report = realizable(args.matrix_class, s, ctx.tol)
    payload = {
        "lambda": spectrum_to_dict(s),
        **report_to_dict(report),
        "perron": report_to_dict(perron_check(s, ctx.tol)),
    }
    ctx.storage.save_json(payload, args.out)
    if not report.satisfied:
        for description in payload["failed"]:
            print(f"failing condition: {description}", file=sys.stderr)
    return EXIT_PASS if report.satisfied else EXIT_FAIL


def cmd_range(args, ctx: Context) -> int:
    s = spectrum_from_args(args, ctx.tol)
    interval = omega1_range(args.matrix_class, s, ctx.tol)
    payload = {
        "class": args.matrix_class.label,
        "lambda": spectrum_to_dict(s),
        **interval_to_dict(interval),
        "constants": constants_to_dict(bound_constants(s, ctx.tol)),
    }
    if isinstance(s, RealTriple) and args.matrix_class in (
        MatrixClass.SYMMETRIC_STOCHASTIC,
        MatrixClass.DOUBLY_STOCHASTIC,
    ):
        payload["dominant"], payload["tie"] = dominant_constant(s, ctx.tol)

    if args.omega1 is not None:
        try:
            completion = canonical_completion(args.matrix_class, s, args.omega1, ctx.tol)
            payload["completion"] = diagonal_to_list(completion)
        except OutOfRange as e:
            payload["completion"] = None
            payload["completion_error"] = str(e)

    ctx.storage.save_json(payload, args.out)
    feasible = not interval.empty and payload.get("completion", True) is not None
    return EXIT_PASS if feasible else EXIT_FAIL


def cmd_construct(args, ctx: Context) -> int:
    s = spectrum_from_args(args, ctx.tol)
    if args.omega is None and args.omega1 is None:
        raise InvalidArgument("construct needs --omega or --omega1")
    try:
        if args.omega is not None:
            d = diagonal_from_args(args)
        else:
            d = canonical_completion(args.matrix_class, s, args.omega1, ctx.tol)
        result = construct(args.matrix_class, s, d, ctx.tol)
    except (InfeasibleInput, OutOfRange) as e:
        payload = {"class": args.matrix_class.label, "lambda": spectrum_to_dict(s), "feasible": False, "reason": str(e)}
        if isinstance(e, InfeasibleInput) and e.report is not None:
            payload["report"] = report_to_dict(e.report)
        ctx.storage.save_json(payload, args.out)
        return EXIT_FAIL

    matrix, claimed, claimed_diag = result.matrix, s, d
    if args.normalize:
        matrix = normalize_unit(result, s, ctx.tol)
        claimed = s.scaled(1.0 / s.lambda1)
        claimed_diag = canonicalize_diagonal([w / s.lambda1 for w in d.values()])

    report = verify(matrix, claimed, claimed_diag, ctx.tol)
    payload = {
        "lambda": spectrum_to_dict(s),
        "omega": diagonal_to_list(d),
        "feasible": True,
        "normalized": bool(args.normalize),
        **construction_to_dict(result),
        "matrix": matrix.to_list(),
        "verification": verification_to_dict(report),
    }
    ctx.storage.save_json(payload, args.out)
    passed = report.spectrum_match and report.diagonal_match and args.matrix_class in report.classes_satisfied
    if not passed:
        logger.error(f"Constructed {args.matrix_class.label} matrix failed verification: {payload['verification']}")
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_verify(args, ctx: Context) -> int:
    matrix = ctx.storage.load_matrix(args.matrix)
    claimed = spectrum_from_args(args, ctx.tol, required=False)
    claimed_diag = diagonal_from_args(args, required=False)
    report = verify(matrix, claimed, claimed_diag, ctx.tol)
    payload = {"matrix": matrix.to_list(), **verification_to_dict(report)}
    ctx.storage.save_json(payload, args.out)

    target = args.matrix_class or MatrixClass.GENERAL
    passed = (
        target in report.classes_satisfied
        and report.spectrum_match is not False
        and report.diagonal_match is not False
    )
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_sweep(args, ctx: Context) -> int:
    frame = RegionSweep(args.grid or SWEEP_DEFAULT_GRID, ctx.tol).build()
    ctx.storage.save_csv(frame, args.out)
    return EXIT_PASS


def cmd_diagnose(args, ctx: Context) -> int:
    cfg = ScanConfig.from_settings(ctx.settings, grid_n=args.grid, seed=args.seed, trials=args.trials)
    necessity = necessity_trial(args.matrix_class, cfg, ctx.tol)
    payload = {
        "class": args.matrix_class.label,
        "config": {"grid_n": cfg.grid_n, "seed": cfg.seed, "trials": cfg.trials},
        "necessity": necessity_to_dict(necessity),
    }
    passed = not necessity.failures

    s = spectrum_from_args(args, ctx.tol, required=False)
    if s is not None:
        payload["lambda"] = spectrum_to_dict(s)
        try:
            audit = range_audit(args.matrix_class, s, cfg, ctx.tol)
            allowance = gap_allowance(cfg, s)
            payload["audit"] = {**audit_to_dict(audit), "allowed_gap": allowance}
            passed = passed and audit.max_endpoint_gap <= allowance
        except EmptyRange as e:
            payload["audit"] = {"error": str(e)}
        payload["power_sums"] = power_sums_to_dict(power_sum_diagnostics(s, args.kmax, ctx.tol))
        payload["necessary_conditions"] = necessary_to_dict(necessary_conditions(s, args.kmax, ctx.tol))

    ctx.storage.save_json(payload, args.out)
    logger.info(f"diagnose {args.matrix_class.label}: {len(necessity.failures)} counterexamples")
    return EXIT_PASS if passed else EXIT_FAIL


def _matrix_class(text: str) -> MatrixClass:
    try:
        return MatrixClass.from_label(text)
    except InvalidArgument as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="relative tolerance (overrides NIEP3_TOL and config.yaml)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    spectral = argparse.ArgumentParser(add_help=False)
    spectrum = spectral.add_mutually_exclusive_group()
    spectrum.add_argument("--lambda", dest="lam", metavar="LIST", help="x,y,z or a,b+ci,b-ci")
    spectrum.add_argument("--abc", metavar="A,B,C", help="the list {a, b+ci, b-ci}")

    class_help = f"one of {', '.join(CLASS_LABELS.values())}"

    parser = argparse.ArgumentParser(
        prog="niep3", description="3x3 nonnegative inverse eigenvalue problem with prescribed diagonal"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, spectral], help="test Ω against a class condition set")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, required=True, help=class_help)
    p.add_argument("--omega", metavar="W1,W2,W3", required=True)

    p = sub.add_parser("realizable", parents=[common, spectral], help="eigenvalue-only realizability")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, required=True, help=class_help)

    p = sub.add_parser("range", parents=[common, spectral], help="exact feasible interval of ω1")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, required=True, help=class_help)
    p.add_argument("--omega1", type=float, help="also report the canonical completion at this ω1")

    p = sub.add_parser("construct", parents=[common, spectral], help="build and verify a realizing matrix")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, required=True, help=class_help)
    target = p.add_mutually_exclusive_group()
    target.add_argument("--omega", metavar="W1,W2,W3")
    target.add_argument("--omega1", type=float, help="use the canonical completion at this ω1")
    p.add_argument("--normalize", action="store_true", help="scale stochastic outputs to λ1 = 1")

    p = sub.add_parser("verify", parents=[common, spectral], help="verify a matrix read from a JSON file")
    p.add_argument("--matrix", default="-", help="JSON file with a 3x3 array, '-' for stdin")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, help=class_help)
    p.add_argument("--omega", metavar="W1,W2,W3", help="claimed diagonal")

    p = sub.add_parser("sweep", parents=[common], help="CSV table over region R with λ1 = 1")
    p.add_argument("--grid", type=int, help=f"points per axis (default {SWEEP_DEFAULT_GRID})")

    p = sub.add_parser("diagnose", parents=[common, spectral], help="necessity trials and range audit")
    p.add_argument("--class", dest="matrix_class", type=_matrix_class, required=True, help=class_help)
    p.add_argument("--grid", type=int, help="scan resolution")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--kmax", type=int, default=DEFAULT_KMAX, help="highest power sum")
    return parser


COMMANDS = {
    "check": cmd_check,
    "realizable": cmd_realizable,
    "range": cmd_range,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "diagnose": cmd_diagnose,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code in (0, None) else EXIT_USAGE

    try:
        settings = load_settings()
        set_level(settings["logging"]["level"])
        rel = args.tol if args.tol is not None else float(settings["tolerance"]["rel"])
        try:
            tol = Tolerance(rel=rel)
        except InvalidArgument as e:
            raise InvalidArgument(f"argument --tol: {e}")
        return COMMANDS[args.command](args, Context(tol, settings, ResultStorage()))
    except Niep3Error as e:
        print(f"niep3 {args.command}: error: {e}", file=sys.stderr)
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
