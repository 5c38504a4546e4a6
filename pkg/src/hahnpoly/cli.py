"""Command-line surface.

Exit codes: 0 success, 1 invalid input, 2 classification negative
(admissibility/regularity failure), 3 verification mismatch.
Rationals are always rendered as strings like "3/7", never floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .qnum import AdmissibilityError, HahnFrame, PearsonPair
from .functional import DEFAULT_DEPTH, solve_moments
from .classical import PRESETS, RegularityError, check_regular, get_preset, recurrence
from .verify import run_suites

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2
EXIT_MISMATCH = 3

DEPTH_ENV = "HAHNPOLY_DEPTH"


class InputError(Exception):
    pass


def _parse_rational(text: str, field: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{field}: {text!r} is not a rational (expected 'p' or 'p/q')")


def _default_depth(fallback: int) -> int:
    raw = os.environ.get(DEPTH_ENV)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{DEPTH_ENV}: {raw!r} is not an integer")


def _resolve_pair(args) -> tuple[PearsonPair, HahnFrame]:
    explicit = [f for f in ("a", "b", "c", "d", "e", "q", "omega")
                if getattr(args, f, None) is not None]
    if args.preset is not None:
        if explicit:
            raise InputError("--preset is mutually exclusive with explicit pair/frame flags")
        try:
            preset = get_preset(args.preset)
        except KeyError as exc:
            raise InputError(str(exc))
        return preset.pear, preset.frame
    if args.q is None or args.omega is None:
        raise InputError("an explicit pair needs --q and --omega (or use --preset)")
    q = _parse_rational(args.q, "q")
    omega = _parse_rational(args.omega, "omega")
    coeffs = {f: _parse_rational(getattr(args, f) or "0", f) for f in ("a", "b", "c", "d", "e")}
    try:
        frame = HahnFrame(q, omega)
        pear = PearsonPair(**coeffs)
    except ValueError as exc:
        raise InputError(str(exc))
    return pear, frame


def _emit(payload: dict, fmt: str, human_lines, csv_rows):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        for row in csv_rows():
            print(",".join(str(cell) for cell in row))
    else:
        for line in human_lines():
            print(line)


def cmd_classify(args) -> int:
    pear, frame = _resolve_pair(args)
    depth = args.n if args.n is not None else _default_depth(12)
    report = check_regular(pear, frame, depth)
    payload = report.to_json_dict()

    def human():
        if report.regular:
            yield f"regular up to N={depth} (d-indices checked through {report.checked_d_through})"
        else:
            index, condition = report.first_regularity_failure
            yield f"not regular: {condition} at n={index}"
        yield f"psi has degree one: {report.psi_degree_one}"

    def csv_rows():
        yield ("field", "value")
        for k, v in payload.items():
            yield (k, json.dumps(v) if isinstance(v, dict) else v)

    _emit(payload, args.format, human, csv_rows)
    return EXIT_OK if report.regular else EXIT_NEGATIVE


def cmd_recurrence(args) -> int:
    pear, frame = _resolve_pair(args)
    depth = args.n if args.n is not None else _default_depth(12)
    try:
        table = recurrence(pear, frame, depth)
    except RegularityError as exc:
        print(json.dumps({"error": str(exc), "report": exc.report.to_json_dict()}), file=sys.stderr)
        return EXIT_NEGATIVE
    payload = table.to_json_dict()

    def human():
        for n in range(depth + 1):
            gamma = table.gamma[n] if n else "-"
            yield f"n={n}: beta={table.beta[n]} gamma={gamma}"
        for n, p in enumerate(table.polys[: min(5, len(table.polys))]):
            yield f"P_{n} = {p!r}"

    def csv_rows():
        yield ("n", "beta", "gamma")
        for n in range(depth + 1):
            yield (n, table.beta[n], table.gamma[n] if n else "")

    _emit(payload, args.format, human, csv_rows)
    return EXIT_OK


def cmd_moments(args) -> int:
    pear, frame = _resolve_pair(args)
    depth = args.n if args.n is not None else _default_depth(DEFAULT_DEPTH)
    y0 = _parse_rational(args.y0, "y0") if args.y0 is not None else Fraction(1)
    try:
        u = solve_moments(pear, frame, y0, depth)
    except AdmissibilityError as exc:
        print(json.dumps({"error": str(exc), "index": exc.index}), file=sys.stderr)
        return EXIT_NEGATIVE
    power = u.power_moments()
    payload = u.to_json_dict()
    payload["powerMoments"] = [str(m) for m in power]

    def human():
        for n in range(depth + 1):
            yield f"n={n}: y={u.moments[n]} power={power[n]}"

    def csv_rows():
        yield ("n", "y_moment", "power_moment")
        for n in range(depth + 1):
            yield (n, u.moments[n], power[n])

    _emit(payload, args.format, human, csv_rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = ["gram", "rodrigues", "norms", "identities"] if args.suite == "all" else [args.suite]
    pear = frame = None
    if args.preset is not None or any(
        getattr(args, f, None) is not None for f in ("a", "b", "c", "d", "e", "q", "omega")
    ):
        pear, frame = _resolve_pair(args)
    depth = args.n if args.n is not None else _default_depth(8)
    y0 = _parse_rational(args.y0, "y0") if args.y0 is not None else Fraction(1)
    try:
        checks = run_suites(
            pear, frame, suites,
            depth=depth, test_degree=args.test_degree, y0=y0, fuzz_moment=args.fuzz_moment,
            label=args.preset or "pair",
        )
    except (AdmissibilityError, RegularityError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_NEGATIVE
    passed = all(c.passed for c in checks)
    payload = {
        "suites": suites,
        "passed": passed,
        "checks": [c.to_json_dict() for c in checks],
    }

    def human():
        for c in checks:
            yield f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f"  ({c.detail})" if c.detail else "")
        yield f"{sum(c.passed for c in checks)}/{len(checks)} checks passed"

    def csv_rows():
        yield ("name", "passed", "detail")
        for c in checks:
            yield (c.name, c.passed, c.detail)

    _emit(payload, args.format, human, csv_rows)
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_presets(args) -> int:
    payload = {
        name: {
            "a": str(p.pear.a), "b": str(p.pear.b), "c": str(p.pear.c),
            "d": str(p.pear.d), "e": str(p.pear.e),
            "q": str(p.frame.q), "omega": str(p.frame.omega),
            "description": p.description,
        }
        for name, p in PRESETS.items()
    }

    def human():
        for name, p in PRESETS.items():
            yield f"{name}: {p.description}"

    def csv_rows():
        yield ("name", "a", "b", "c", "d", "e", "q", "omega")
        for name, p in PRESETS.items():
            yield (name, p.pear.a, p.pear.b, p.pear.c, p.pear.d, p.pear.e, p.frame.q, p.frame.omega)

    _emit(payload, args.format, human, csv_rows)
    return EXIT_OK


def _add_pair_flags(sub):
    for flag in ("a", "b", "c", "d", "e"):
        sub.add_argument(f"--{flag}", help=f"coefficient {flag} as a rational string")
    sub.add_argument("--q", help="frame parameter q as a rational string")
    sub.add_argument("--omega", help="frame parameter omega as a rational string")
    sub.add_argument("--preset", help="named preset (mutually exclusive with explicit flags)")
    sub.add_argument("--n", type=int, help=f"depth (default from ${DEPTH_ENV})")
    sub.add_argument("--y0", help="value of <u, 1> as a rational string (default 1)")
    sub.add_argument("--format", choices=["json", "csv", "human"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hahnpoly",
        description="Classify Pearson pairs for the Hahn operator and generate/verify "
        "their orthogonal polynomial sequences, in exact rational arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regularity report for a pair")
    _add_pair_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("recurrence", help="beta_n, gamma_n and the monic polynomials")
    _add_pair_flags(p)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("moments", help="Y-basis and power-basis moment tables")
    _add_pair_flags(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify", help="run exact verification suites")
    _add_pair_flags(p)
    p.add_argument("--suite", choices=["gram", "rodrigues", "norms", "identities", "all"],
                   default="all")
    p.add_argument("--test-degree", type=int, default=8)
    p.add_argument("--fuzz-moment", type=int,
                   help="corrupt moment y_k before the gram suite (expected to fail)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", help="list the shipped preset catalog")
    p.add_argument("--format", choices=["json", "csv", "human"], default="json")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
