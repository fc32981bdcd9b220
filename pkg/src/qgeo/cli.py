"""qgeo command line.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 property violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import verify
from .entanglement import (
    ancilla_state,
    cnot_in_basis,
    generate_joint_state,
    negativity,
    negativity_closed_form,
)
from .geometry import MC_REGISTRY, PauliAxis, metric_eval, pauli, tangent_from_observable
from .matrixcore import eigh
from .states import BlochVector, bloch_to_density

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3

RELATION_HEADER = ["shell", "nx", "ny", "nz", "axis", "negativity", "metric", "sqrt_metric", "mixedness", "ratio"]
MONOTONICITY_HEADER = [
    "sample",
    "family",
    "k_before",
    "k_transformed",
    "k_fixed",
    "violation_transformed",
    "violation_fixed",
    "trace_adjustment",
    "negativity_before",
    "negativity_after",
]


def fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def fmt_complex(z: complex) -> str:
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"


def _json_num(x):
    if x is None:
        return None
    x = float(x)
    return None if math.isnan(x) else x


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _bloch_arg(text: str) -> tuple[float, float, float]:
    values = _floats(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"--bloch needs three components, got {text!r}")
    return tuple(values)


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_metric(args) -> int:
    n = BlochVector(*args.bloch)
    rho = bloch_to_density(n)
    tangent = tangent_from_observable(rho, pauli(args.axis))
    c = MC_REGISTRY[args.mc]
    k = metric_eval(rho, tangent, c)
    lam = eigh(rho.mat).eigenvalues
    if args.json:
        _write(
            _json_text(
                {
                    "bloch": list(args.bloch),
                    "axis": args.axis,
                    "mc_function": c.name,
                    "extension": c.extension,
                    "metric": k,
                    "eigenvalues": [float(v) for v in lam],
                    "tangent": [[[z.real, z.imag] for z in row] for row in tangent.mat.tolist()],
                }
            ),
            None,
        )
        return EXIT_OK
    print(f"mc_function: {c.name}{' (extension)' if c.extension else ''}")
    print(f"axis: {args.axis}")
    print(f"metric: {fmt(k)}")
    print(f"eigenvalues: {' '.join(fmt(v) for v in lam)}")
    print("tangent:")
    for row in tangent.mat.tolist():
        print("  " + "  ".join(fmt_complex(z) for z in row))
    return EXIT_OK


def cmd_negativity(args) -> int:
    n = BlochVector(*args.bloch)
    joint = generate_joint_state(bloch_to_density(n), ancilla_state(args.axis), cnot_in_basis(args.axis))
    matrix_route = negativity(joint)
    closed = negativity_closed_form(n, args.axis)
    print(f"negativity_matrix: {fmt(matrix_route)}")
    print(f"negativity_closed_form: {fmt(closed)}")
    print(f"difference: {fmt(abs(matrix_route - closed))}")
    return EXIT_OK


def cmd_x_scenario(args) -> int:
    variants = verify.x_scenario_variants(BlochVector(*args.bloch))
    for key, value in variants.items():
        print(f"{key}: {fmt(value)}")
    return EXIT_OK


def relation_rows(report: verify.SweepReport):
    for s in report.samples:
        yield [
            fmt(s.shell),
            fmt(s.n.nx),
            fmt(s.n.ny),
            fmt(s.n.nz),
            s.axis.value,
            fmt(s.negativity),
            fmt(s.metric),
            fmt(s.sqrt_metric),
            fmt(s.mixedness),
            fmt(s.ratio),
        ]


def relation_summary(report: verify.SweepReport, comparison: verify.ComparisonReport) -> dict:
    shells = []
    for row in comparison.shells:
        lo, hi = report.ratio_spread_per_shell[row.shell]
        shells.append(
            {
                "shell": row.shell,
                "mixedness": _json_num(row.mixedness),
                "measured_coefficient": _json_num(row.measured_coefficient),
                "paper_coefficient": _json_num(row.paper_coefficient),
                "oracle_coefficient": _json_num(row.oracle_coefficient),
                "paper_over_measured": _json_num(row.paper_over_measured),
                "paper_relative_deviation": _json_num(row.paper_relative_deviation),
                "oracle_relative_deviation": _json_num(row.oracle_relative_deviation),
                "reference_metric_over_measured": _json_num(row.reference_metric_over_measured),
                "ratio_min": _json_num(lo),
                "ratio_max": _json_num(hi),
                "relative_spread": _json_num(report.relative_spread(row.shell)),
                "excluded": report.excluded_per_shell[row.shell],
            }
        )
    spread = report.max_relative_spread()
    return {
        "axis": report.axis.value,
        "samples": len(report.samples),
        "max_relative_spread": spread,
        "spread_tolerance": verify.SPREAD_TOL,
        "invariant_holds": spread < verify.SPREAD_TOL,
        "shells": shells,
    }


def cmd_verify_relation(args) -> int:
    report = verify.sweep_bloch_ball(args.shells, args.dirs, args.axis)
    comparison = verify.coefficient_vs_paper(report)
    summary = relation_summary(report, comparison)
    _write(_csv_text(RELATION_HEADER, relation_rows(report)), args.out)
    _write(_json_text(summary), args.summary)
    if not summary["invariant_holds"]:
        print(f"ratio spread {summary['max_relative_spread']:.3e} exceeds tolerance", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def monotonicity_rows(report: verify.MonotonicityReport):
    for r in report.records:
        yield [
            r.sample,
            r.family,
            fmt(r.k_before),
            fmt(r.k_transformed),
            fmt(r.k_fixed),
            fmt(r.violation_transformed),
            fmt(r.violation_fixed),
            fmt(r.trace_adjustment),
            fmt(r.negativity_before),
            fmt(r.negativity_after),
        ]


def monotonicity_summary(report: verify.MonotonicityReport) -> dict:
    return {
        "seed": report.seed,
        "samples": report.samples,
        "tolerance_transformed": verify.MONOTONE_TOL,
        "tolerance_covariance": verify.COVARIANCE_TOL,
        "max_violation_transformed": report.max_violation_transformed,
        "max_covariance_deviation": report.max_covariance_deviation,
        "ok": report.ok(),
        "families": {
            name: {
                "evaluated": f.evaluated,
                "skipped": f.skipped,
                "max_violation_transformed": f.max_violation_transformed,
                "max_violation_fixed": f.max_violation_fixed,
                "max_negativity_violation": f.max_negativity_violation,
                "max_covariance_deviation": f.max_covariance_deviation,
                "max_trace_adjustment": f.max_trace_adjustment,
            }
            for name, f in report.families.items()
        },
    }


def cmd_monotonicity(args) -> int:
    report = verify.monotonicity_scan(args.samples, args.seed, args.channels)
    summary = monotonicity_summary(report)
    if args.out is not None:
        _write(_csv_text(MONOTONICITY_HEADER, monotonicity_rows(report)), args.out)
    if args.summary is not None:
        _write(_json_text(summary), args.summary)
    print(f"{'family':<18} {'n':>5} {'transformed':>12} {'fixed':>12} {'negativity':>12} {'covariance':>12}")
    for name, f in summary["families"].items():
        cov = "-" if f["max_covariance_deviation"] is None else f"{f['max_covariance_deviation']:.3e}"
        print(
            f"{name:<18} {f['evaluated']:>5} {f['max_violation_transformed']:>12.3e} "
            f"{f['max_violation_fixed']:>12.3e} {f['max_negativity_violation']:>12.3e} {cov:>12}"
        )
    if not report.ok():
        print("contractivity violated beyond tolerance", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _channel_list(text: str) -> tuple[str, ...]:
    if text == "all":
        return verify.CHANNEL_FAMILIES
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in names if t not in verify.CHANNEL_FAMILIES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown channel families {bad}; choose from {', '.join(verify.CHANNEL_FAMILIES)} or 'all'"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgeo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    axes = [a.value for a in PauliAxis]

    p = sub.add_parser("metric", help="monotone metric of i[rho, sigma_axis]")
    p.add_argument("--bloch", type=_bloch_arg, required=True, help="nx,ny,nz")
    p.add_argument("--axis", choices=axes, default="z")
    p.add_argument("--mc", choices=sorted(MC_REGISTRY), default="wigner-yanase")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("negativity", help="negativity after the copy gate")
    p.add_argument("--bloch", type=_bloch_arg, required=True, help="nx,ny,nz")
    p.add_argument("--axis", choices=axes, default="z")
    p.set_defaults(func=cmd_negativity)

    p = sub.add_parser("x-scenario", help="x-axis negativity under each ancilla reading")
    p.add_argument("--bloch", type=_bloch_arg, required=True, help="nx,ny,nz")
    p.set_defaults(func=cmd_x_scenario)

    p = sub.add_parser("verify-relation", help="sweep negativity / sqrt(metric) over the Bloch ball")
    p.add_argument("--shells", type=_floats, default=list(verify.DEFAULT_SHELLS))
    p.add_argument("--dirs", type=int, default=verify.DEFAULT_DIRECTIONS)
    p.add_argument("--axis", choices=axes, default="z")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--summary", help="JSON path (default: stdout)")
    p.set_defaults(func=cmd_verify_relation)

    p = sub.add_parser("monotonicity", help="contractivity scan under sampled channels")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--channels", type=_channel_list, default=verify.CHANNEL_FAMILIES)
    p.add_argument("--out", help="CSV path")
    p.add_argument("--summary", help="JSON path")
    p.set_defaults(func=cmd_monotonicity)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"qgeo: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    sys.exit(main())
