"""Command-line front end: ``run`` writes a sweep CSV, ``validate`` prints a
closed-form vs Monte Carlo report."""

import argparse
import csv
import math
import os
import sys
import tempfile
from pathlib import Path

from . import analytic
from .channel import ConfigError, SystemConfig, default_config_path
from .montecarlo import AXES, ci_halfwidth, estimate_outage, sweep, within_standard_errors

CSV_HEADER = [
    "axis", "value",
    "p_oc_mc", "p_oc_ci", "p_oc_literal", "p_oc_corrected",
    "p_od_mc", "p_od_ci", "p_od_analytic",
    "case1", "case2", "case3", "case4",
    "trials", "seed",
]  # fmt: skip
AGREEMENT_SE = 3.0


def fmt(x):
    """Locale-independent float formatting with 9 significant digits."""
    return format(float(x), ".9g")


def _parse_values(text, axis):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("--values must list at least one value")
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--values for {axis}: {exc}") from None


def curve_rows(curve, trials, seed, variant="both"):
    rows = []
    for pt in curve.points:
        value = str(pt.value) if curve.axis == "n_pairs" and not pt.failed else fmt(pt.value)
        if pt.failed:
            rows.append([curve.axis, value] + ["nan"] * 11 + [str(trials), str(seed)])
            continue
        est = pt.estimate
        literal = fmt(pt.p_oc_literal) if variant in ("both", analytic.LITERAL) else ""
        corrected = fmt(pt.p_oc_corrected) if variant in ("both", analytic.CORRECTED) else ""
        rows.append(
            [
                curve.axis, value,
                fmt(est.p_oc_hat), fmt(est.ci_halfwidth_oc), literal, corrected,
                fmt(est.p_od_hat), fmt(est.ci_halfwidth_od), fmt(pt.p_od_analytic),
                *(str(c) for c in est.case_histogram),
                str(trials), str(seed),
            ]
        )  # fmt: skip
    return rows


def _write_csv_atomic(path, rows):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_run(args):
    cfg = SystemConfig.from_json(args.config)
    values = _parse_values(args.values, args.axis)
    curve = sweep(cfg, args.axis, values, args.trials, args.seed, workers=args.workers)
    _write_csv_atomic(args.out, curve_rows(curve, args.trials, args.seed, args.variant))
    for pt in curve.points:
        if pt.failed:
            print(f"point {args.axis}={pt.value} failed: {pt.error}", file=sys.stderr)
    return 1 if curve.failed else 0


def _check_line(label, p_hat, ci, reference, trials, mandatory):
    ok = within_standard_errors(p_hat, reference, trials, AGREEMENT_SE)
    verdict = "PASS" if ok else "FAIL"
    tag = "" if mandatory else " (informational)"
    return (
        f"{label}: mc={fmt(p_hat)} ± {fmt(ci)} closed_form={fmt(reference)} "
        f"gap={fmt(p_hat - reference)} {verdict}{tag}"
    ), ok


def validation_report(cfg, trials, seed, workers=1):
    """Build the report lines and the overall verdict for one configuration."""
    est = estimate_outage(cfg, trials, seed, workers)
    cell = analytic.cellular_outage_terms(cfg)
    d2d = analytic.d2d_outage_terms(cfg)
    delta_bound, mu_bound = analytic.alpha_bounds(cfg)
    literal = analytic.cellular_outage(cfg, analytic.LITERAL)
    corrected = analytic.cellular_outage(cfg, analytic.CORRECTED)
    p_od = analytic.d2d_outage(cfg)
    ratio = "inf" if cfg.rho == 1.0 else fmt(cfg.rho / (1.0 - cfg.rho))

    lines = [
        f"trials: {trials}  seed: {seed}  n_pairs: {cfg.n_pairs}  alpha: {fmt(cfg.alpha)}  "
        f"rho: {fmt(cfg.rho)}  r_ct: {fmt(cfg.r_ct)}  r_dt: {fmt(cfg.r_dt)}",
        f"alpha bound (cellular): {fmt(delta_bound)}",
        f"alpha bound (d2d): {fmt(mu_bound)}",
        f"cellular bound derivation: 1 - r_ct/log2(1 + rho/(1-rho)) = "
        f"1 - {fmt(cfg.r_ct)}/log2(1 + {ratio}) = {fmt(delta_bound)}",
    ]
    results = []
    pair_draws = trials * cfg.n_pairs
    checks = [
        ("no pair decodes (P1)", est.p_no_decoder_hat, trials, cell.p1, True),
        ("per-pair decode failure (p)", est.pair_decode_failure_hat, pair_draws, cell.p, True),
        ("DU_i2 phase-1 success (phi)", est.pair_du2_success_hat, pair_draws, d2d.phi, True),
        ("cellular outage, corrected", est.p_oc_hat, trials, corrected, True),
        ("cellular outage, literal", est.p_oc_hat, trials, literal, False),
        ("d2d outage, four-branch closed form", est.p_od_hat, trials, p_od, False),
    ]
    for label, p_hat, n, ref, mandatory in checks:
        line, ok = _check_line(label, p_hat, ci_halfwidth(p_hat, n), ref, n, mandatory)
        lines.append(line)
        if mandatory:
            results.append(ok)
    lines.append(
        f"cellular outage: mc={fmt(est.p_oc_hat)} ± {fmt(est.ci_halfwidth_oc)} "
        f"literal={fmt(literal)} corrected={fmt(corrected)} "
        f"literal-corrected={fmt(literal - corrected)}"
    )
    lines.append("case histogram: " + " ".join(f"case{i + 1}={c}" for i, c in enumerate(est.case_histogram)))
    passed = all(results)
    lines.append(f"overall: {'PASS' if passed else 'FAIL'}")
    return lines, passed


def cmd_validate(args):
    cfg = SystemConfig.from_json(args.config)
    lines, passed = validation_report(cfg, args.trials, args.seed, args.workers)
    print("\n".join(lines))
    return 0 if passed else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="d2drelay", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    default_cfg = str(default_config_path())
    workers = max(1, os.cpu_count() or 1)

    run = sub.add_parser("run", help="sweep one parameter and write a CSV")
    run.add_argument("--config", default=default_cfg)
    run.add_argument("--axis", required=True, choices=AXES)
    run.add_argument("--values", required=True, help="comma-separated axis values")
    run.add_argument("--trials", type=_positive_int, required=True)
    run.add_argument("--seed", type=int, required=True)
    run.add_argument("--out", required=True)
    run.add_argument("--variant", choices=("literal", "corrected", "both"), default="both")
    run.add_argument("--workers", type=_positive_int, default=workers)
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", help="compare closed forms against Monte Carlo")
    val.add_argument("--config", default=default_cfg)
    val.add_argument("--trials", type=_positive_int, required=True)
    val.add_argument("--seed", type=int, required=True)
    val.add_argument("--workers", type=_positive_int, default=workers)
    val.set_defaults(func=cmd_validate)
    return parser


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
