"""Command-line front end.

Subcommands: ``genericity``, ``count``, ``classify``, ``solve``.  Map
files are plain text, one definition per line::

    # comment
    f1 = -x^2*y + z
    f2 = y^2 + x
    f3 = x^2*y*z + z^2 + y
    u  = 9 - x^2 - y^2 - z^2    (optional region)

Exit codes are a contract: 0 ok, 2 genericity failure, 3 degenerate
form, 4 infinite-dimensional quotient, 5 oracle disagreement, 6 numeric
breakdown, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .groebner import MonomialOrder, buchberger, contains_one
from .numoracle import (
    DEFAULT_TOLERANCES,
    NumericBreakdown,
    Tolerances,
    oracle_count,
    solve_variety,
)
from .poly import ParseError, PolyMap, Polynomial, parse
from .singularity import classify_point, genericity_generators
from .traceforms import CountReport, InvalidWeights, analyze

EXIT_OK = 0
EXIT_GENERICITY = 2
EXIT_DEGENERATE = 3
EXIT_INFINITE = 4
EXIT_DISAGREEMENT = 5
EXIT_NUMERIC = 6
EXIT_USAGE = 64

_SOLVE_RETRIES = 3

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "genericity_failed": EXIT_GENERICITY,
    "degenerate_form": EXIT_DEGENERATE,
    "infinite_dimensional": EXIT_INFINITE,
}


class MapFileError(ValueError):
    pass


@dataclass
class MapFile:
    f1: Polynomial
    f2: Polynomial
    f3: Polynomial
    u: Polynomial | None

    @property
    def poly_map(self) -> PolyMap:
        return PolyMap(self.f1, self.f2, self.f3)


def parse_map_text(text: str, source: str = "<input>") -> MapFile:
    entries: dict[str, Polynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MapFileError(
                f"{source}:{lineno}: expected 'key = expression', got {line!r}"
            )
        key, _, expr = line.partition("=")
        key = key.strip()
        if key not in ("f1", "f2", "f3", "u"):
            raise MapFileError(f"{source}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise MapFileError(f"{source}:{lineno}: duplicate definition of {key!r}")
        try:
            entries[key] = parse(expr)
        except ParseError as exc:
            raise MapFileError(f"{source}:{lineno}: in {key}: {exc}") from exc
    for key in ("f1", "f2", "f3"):
        if key not in entries:
            raise MapFileError(f"{source}: missing required key {key!r}")
    return MapFile(
        f1=entries["f1"], f2=entries["f2"], f3=entries["f3"], u=entries.get("u")
    )


def load_map_file(path: str) -> MapFile:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise MapFileError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_map_text(text, source=path)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MapFileError(f"not a rational number: {text!r}") from exc


def _parse_triple(text: str, what: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise MapFileError(f"{what} needs three comma-separated rationals: {text!r}")
    return tuple(_parse_rational(p) for p in parts)


def _fraction_str(value: Fraction) -> str:
    return str(value)


def _default_seed() -> int:
    env = os.environ.get("SWT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise MapFileError(f"SWT_SEED must be an integer, got {env!r}")


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which collides with the
    # genericity-failure code; usage problems must exit 64
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _report_json(report: CountReport, order: MonomialOrder) -> dict:
    return {
        "status": report.status,
        "status_detail": report.status_detail,
        "genericity": report.genericity,
        "dimA": report.dim_a,
        "sigma_theta": report.sigma_theta,
        "sigma_psi": report.sigma_psi,
        "sigma_phi1": report.sigma_phi1,
        "sigma_phi2": report.sigma_phi2,
        "total": report.total,
        "positive": report.positive,
        "negative": report.negative,
        "in_region": None
        if report.in_region is None
        else {
            "total_in": report.in_region.total_in,
            "positive_in": report.in_region.positive_in,
            "negative_in": report.in_region.negative_in,
        },
        "alphas": [_fraction_str(a) for a in report.alphas],
        "order": order.value,
    }


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _report_text(report: CountReport) -> list[str]:
    lines = [f"status: {report.status}"
             + (f" ({report.status_detail})" if report.status_detail else "")]
    checked = [
        f"{name} {'trivial' if ok else 'NOT trivial'}"
        for name, ok in report.genericity.items()
        if ok is not None
    ]
    if checked:
        lines.append("genericity: " + ", ".join(checked))
    if report.dim_a is not None:
        lines.append(f"dim A = {report.dim_a}")
    sigs = []
    for label, value in (
        ("Theta", report.sigma_theta),
        ("Psi", report.sigma_psi),
        ("Phi1", report.sigma_phi1),
        ("Phi2", report.sigma_phi2),
    ):
        if value is not None:
            sigs.append(f"sigma({label}) = {value}")
    if sigs:
        lines.append("  ".join(sigs))
    lines.append("alphas: " + ", ".join(_fraction_str(a) for a in report.alphas))
    if report.total is not None:
        lines.append(
            f"swallowtails: total {report.total}, "
            f"positive {report.positive}, negative {report.negative}"
        )
    if report.in_region is not None:
        r = report.in_region
        lines.append(
            f"in region u > 0: total {r.total_in}, "
            f"positive {r.positive_in}, negative {r.negative_in}"
        )
    return lines


def cmd_genericity(args) -> int:
    mapfile = load_map_file(args.file)
    gens = genericity_generators(mapfile.poly_map)
    verdicts = {
        name: contains_one(buchberger(ideal, args.order))
        for name, ideal in (("I1", gens.i1), ("I2", gens.i2), ("I3", gens.i3))
    }
    if args.json:
        _emit_json({"genericity": verdicts})
    else:
        for name, ok in verdicts.items():
            print(f"{name}: {'trivial' if ok else 'NOT trivial'}")
    return EXIT_OK if all(verdicts.values()) else EXIT_GENERICITY


def cmd_count(args) -> int:
    mapfile = load_map_file(args.file)
    region = None
    if args.region:
        if mapfile.u is None:
            raise MapFileError(f"{args.file}: --region requires a 'u =' line")
        region = mapfile.u
    analysis = analyze(
        mapfile.poly_map, alphas=args.alphas, order=args.order, u=region
    )
    report = analysis.report
    if args.json:
        _emit_json(_report_json(report, args.order))
    else:
        for line in _report_text(report):
            print(line)
    return _STATUS_EXIT[report.status]


def cmd_classify(args) -> int:
    mapfile = load_map_file(args.file)
    point = _parse_triple(args.point, "--point")
    result = classify_point(mapfile.poly_map, point)
    diag = result.diagnostics
    if args.json:
        _emit_json(
            {
                "verdict": result.verdict.value,
                "sign": result.sign,
                "witness_pair": list(result.witness_pair)
                if result.witness_pair
                else None,
                "diagnostics": {
                    "h_values": [
                        _fraction_str(v) for v in diag.h_values
                    ]
                    if diag.h_values is not None
                    else None,
                    "df_rank": diag.df_rank,
                    "g_value": _fraction_str(diag.g_value)
                    if diag.g_value is not None
                    else None,
                },
            }
        )
    else:
        print(f"verdict: {result.verdict.value}")
        if result.sign is not None:
            print(f"sign: {'+1' if result.sign > 0 else '-1'}")
        if result.witness_pair is not None:
            print(f"witness pair: {result.witness_pair}")
        print(f"rank Df = {diag.df_rank}")
        if diag.h_values is not None:
            print(
                "H = (J, X, Y) = ("
                + ", ".join(_fraction_str(v) for v in diag.h_values)
                + ")"
            )
        if diag.g_value is not None:
            print(f"Z * det DH = {_fraction_str(diag.g_value)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    mapfile = load_map_file(args.file)
    tol = Tolerances(
        imag=args.imag_tol,
        residual=args.tol,
        cluster=args.cluster_tol,
        sign=args.sign_tol,
    )
    analysis = analyze(
        mapfile.poly_map, alphas=args.alphas, order=args.order, u=mapfile.u
    )
    report = analysis.report
    if report.status != "ok":
        if args.json:
            _emit_json(_report_json(report, args.order))
        else:
            for line in _report_text(report):
                print(line)
        return _STATUS_EXIT[report.status]

    points = None
    failure = None
    for attempt in range(_SOLVE_RETRIES):
        try:
            points = solve_variety(
                analysis.qa,
                analysis.gb,
                analysis.generators.i,
                tol=tol,
                seed=args.seed + attempt,
            )
            break
        except NumericBreakdown as exc:
            failure = exc
    if points is None:
        print(f"numeric breakdown after {_SOLVE_RETRIES} attempts: {failure}",
              file=sys.stderr)
        return EXIT_NUMERIC

    oracle = oracle_count(
        mapfile.poly_map, points, report, u=mapfile.u, tol=tol
    )
    if args.json:
        _emit_json(
            {
                "points": [
                    {
                        "coords": list(p.coords),
                        "residual": p.residual,
                        "cluster_size": p.cluster_size,
                    }
                    for p in oracle.points
                ],
                "signs": oracle.signs,
                "total": oracle.total,
                "positive": oracle.positive,
                "negative": oracle.negative,
                "agreement": oracle.agreement,
                "problems": oracle.problems,
                "count_report": _report_json(report, args.order),
            }
        )
    else:
        for p, s in zip(oracle.points, oracle.point_signs):
            sign = {1: "+1", -1: "-1", None: "?"}[s]
            print(
                f"point ({p.coords[0]:+.9f}, {p.coords[1]:+.9f}, "
                f"{p.coords[2]:+.9f})  sign {sign}  residual {p.residual:.2e}"
                f"  multiplicity {p.cluster_size}"
            )
        print(f"total {oracle.total}, positive {oracle.positive}, "
              f"negative {oracle.negative}")
        print(f"agreement with exact counts: {'yes' if oracle.agreement else 'NO'}")
        for problem in oracle.problems:
            print(f"problem: {problem}")
    return EXIT_OK if oracle.agreement else EXIT_DISAGREEMENT


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="swt",
        description="Count and classify signed swallowtails of polynomial "
        "maps from R^3 to R^3, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_alphas=True):
        p.add_argument("file", help="map file (f1 =, f2 =, f3 =, optional u =)")
        if with_alphas:
            p.add_argument(
                "--alphas",
                type=lambda s: _parse_triple(s, "--alphas"),
                default=(Fraction(1), Fraction(1), Fraction(1)),
                help="three rational pair weights for (1,2),(1,3),(2,3); "
                "default 1,1,1",
            )
        p.add_argument(
            "--order",
            type=MonomialOrder,
            choices=list(MonomialOrder),
            default=MonomialOrder.DEGREVLEX,
            metavar="{degrevlex,deglex,lex}",
            help="monomial order (default degrevlex)",
        )
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="solver seed (overrides SWT_SEED; default 0)",
        )

    p_gen = sub.add_parser("genericity", help="check the three genericity ideals")
    add_common(p_gen, with_alphas=False)
    p_gen.set_defaults(func=cmd_genericity)

    p_count = sub.add_parser("count", help="count swallowtails with signs")
    add_common(p_count)
    p_count.add_argument(
        "--region",
        action="store_true",
        help="also count inside {u > 0} (requires a 'u =' line)",
    )
    p_count.set_defaults(func=cmd_count)

    p_classify = sub.add_parser("classify", help="classify a single rational point")
    add_common(p_classify, with_alphas=False)
    p_classify.add_argument(
        "--point", required=True, help="rational point px,py,pz"
    )
    p_classify.set_defaults(func=cmd_classify)

    p_solve = sub.add_parser(
        "solve", help="locate real points numerically and cross-check the counts"
    )
    add_common(p_solve)
    p_solve.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_TOLERANCES.residual,
        help="residual tolerance for accepting points (default 1e-6)",
    )
    p_solve.add_argument(
        "--imag-tol", type=float, default=DEFAULT_TOLERANCES.imag,
        help="imaginary-part cutoff (default 1e-8)",
    )
    p_solve.add_argument(
        "--cluster-tol", type=float, default=DEFAULT_TOLERANCES.cluster,
        help="clustering radius (default 1e-6)",
    )
    p_solve.add_argument(
        "--sign-tol", type=float, default=DEFAULT_TOLERANCES.sign,
        help="sign resolution cutoff (default 1e-9)",
    )
    p_solve.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "seed", None) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (MapFileError, ParseError, InvalidWeights) as exc:
        print(f"swt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
