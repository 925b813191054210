"""Command-line front end.

Three subcommands:

- ``threshold``: read a one-column CSV series, run the pipeline, emit a JSON
  report.
- ``validate``: run the pipeline on one generated path and the Monte Carlo
  oracle on L paths, compare.
- ``app``: run an application harness (scan | changepoint | bandit) from a
  JSON spec file and write its artifacts to an output directory.

Exit codes: 0 success, 1 statistical warnings only, 2 input error, 3 fit
failure.  Log level comes from the THRESHOLD_MACHINE_LOG environment
variable.  All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .applications import (
    BanditSpec,
    ErGraphSpec,
    MmdStreamSpec,
    bandit_run,
    change_point_run,
    scan_series,
)
from .errors import (
    DegenerateHeightsError,
    DtmError,
    NoClustersError,
    ParseError,
    TooFewExceedancesError,
)
from .generators import GeneratorSpec, generate
from .mc_oracle import empirical_max_cdf, mc_threshold, sup_norm_gap
from .pipeline import DtmConfig, ThresholdReport, run_dtm

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_WARNINGS = 1
EXIT_INPUT_ERROR = 2
EXIT_FIT_FAILURE = 3

_FIT_ERRORS = (TooFewExceedancesError, DegenerateHeightsError, NoClustersError)

log = logging.getLogger("threshold_machine")


def _manifest(command: str, config: dict, seed) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        "seed": seed,
    }


def _report_payload(report: ThresholdReport, n: int) -> dict:
    p = report.model.params
    return {
        "threshold": report.threshold,
        "mu": p.mu,
        "sigma": p.sigma,
        "xi": p.xi,
        "theta": report.model.theta,
        "n": n,
        "n_u": report.theta_est.n_u,
        "cutoff": report.model.cutoff,
        "alpha": report.config.alpha,
        "warnings": list(report.warnings),
        "seed": report.config.seed,
    }


def _emit(payload: dict, out: str | None, fmt: str = "json") -> None:
    if fmt == "csv":
        lines = ["key,value"]
        for key, value in sorted(payload.items()):
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True).replace('"', "'")
            lines.append(f"{key},{value}")
        text = "\n".join(lines)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _error_payload(code: str, message: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "error": {"code": code, "message": message}}


def _read_series(path: str) -> np.ndarray:
    try:
        raw = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    values = []
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(f"{path} contains no data")
    start = 0
    try:
        float(lines[0].split(",")[0])
    except ValueError:
        start = 1  # header line
    for ln in lines[start:]:
        field = ln.split(",")[0].strip()
        try:
            values.append(float(field))
        except ValueError as e:
            raise ParseError(f"non-numeric value {field!r} in {path}") from e
    if not values:
        raise ParseError(f"{path} contains no numeric rows")
    return np.asarray(values)


def _dtm_config(args, seed: int) -> DtmConfig:
    kwargs = dict(alpha=args.alpha, seed=seed, bootstrap_reps=args.bootstrap_reps,
                  min_exceedances=args.min_exceedances)
    if args.cutoff is not None:
        kwargs["cutoff"] = args.cutoff
    if args.quantile is not None:
        kwargs["cutoff_quantile"] = args.quantile
    return DtmConfig(**kwargs)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_threshold(args) -> int:
    seed = args.seed
    if seed is None:
        warnings.warn("no --seed given; bootstrap seed defaults to 0", UserWarning)
        seed = 0
    series = _read_series(args.input)
    log.info("read %d values from %s", len(series), args.input)
    cfg = _dtm_config(args, seed)
    report = run_dtm(series, cfg)
    log.info("threshold %.6g at alpha %.4g", report.threshold, cfg.alpha)
    payload = _report_payload(report, len(series))
    payload["manifest"] = _manifest("threshold", dataclasses.asdict(cfg), seed)
    _emit(payload, args.out, args.format)
    return EXIT_WARNINGS if report.warnings else EXIT_OK


def _cmd_validate(args) -> int:
    if args.seed is None:
        raise ParseError("validate requires --seed for reproducibility")
    spec_dict = _load_json_arg(args.spec)
    spec_dict.setdefault("n", args.n)
    spec_dict.setdefault("seed", args.seed)
    spec = GeneratorSpec.from_dict(spec_dict)
    series = generate(spec)
    cfg = _dtm_config(args, args.seed)
    report = run_dtm(series, cfg)
    # oracle replicates derive from a shifted seed so they are independent of
    # the fitted path
    dist = empirical_max_cdf(spec.with_seed(spec.seed + 10_000), args.mc_reps)
    gap = sup_norm_gap(dist, report.model)
    mc_x = mc_threshold(dist, args.alpha)
    payload = {
        "dtm_threshold": report.threshold,
        "mc_threshold": mc_x,
        "sup_norm_gap": gap,
        "gap_tolerance": args.gap_tolerance,
        "passed": bool(gap <= args.gap_tolerance),
        "fit": _report_payload(report, spec.n),
        "manifest": _manifest(
            "validate",
            {"spec": spec.to_dict(), "L": args.mc_reps, "alpha": args.alpha,
             "gap_tolerance": args.gap_tolerance},
            args.seed,
        ),
    }
    _emit(payload, args.out, args.format)
    if not payload["passed"]:
        return EXIT_WARNINGS
    return EXIT_WARNINGS if report.warnings else EXIT_OK


def _load_json_arg(value: str) -> dict:
    text = value
    if not value.lstrip().startswith("{"):
        try:
            text = Path(value).read_text()
        except OSError as e:
            raise ParseError(f"cannot read spec {value}: {e}") from e
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON spec: {e}") from e
    if not isinstance(d, dict):
        raise ParseError("spec JSON must be an object")
    return d


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_app(args) -> int:
    if args.seed is None:
        raise ParseError("app requires --seed for reproducibility")
    spec_dict = _load_json_arg(args.spec)
    spec_dict.setdefault("seed", args.seed)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runner = {"scan": _app_scan, "changepoint": _app_changepoint, "bandit": _app_bandit}[args.harness]
    summary = runner(spec_dict, outdir, args)
    summary["manifest"] = _manifest(f"app:{args.harness}", spec_dict, args.seed)
    _emit(summary, str(outdir / "summary.json"))
    print(f"wrote {outdir}/summary.json")
    return EXIT_OK


def _app_scan(spec_dict: dict, outdir: Path, args) -> dict:
    alphas = spec_dict.pop("alphas", [0.1, 0.05, 0.03, 0.01])
    n_subgraphs = spec_dict.pop("n_subgraphs", 5000)
    mc_reps = spec_dict.pop("mc_reps", 100)
    quantile = spec_dict.pop("cutoff_quantile", 0.95)
    spec = ErGraphSpec(**spec_dict)
    series = scan_series(spec, n_subgraphs)
    _write_csv(outdir / "scan_series.csv", ["index", "statistic"],
               enumerate(series, start=1))

    thresholds = {}
    for alpha in alphas:
        cfg = DtmConfig(alpha=alpha, cutoff_quantile=quantile, seed=spec.seed + 1)
        thresholds[str(alpha)] = run_dtm(series, cfg).threshold

    mc_maxima = []
    for j in range(mc_reps):
        rep = dataclasses.replace(spec, seed=spec.seed + 20_000 + j)
        mc_maxima.append(float(np.max(scan_series(rep, n_subgraphs))))
    mc_maxima.sort()
    mc = {}
    for alpha in alphas:
        k = max(1, min(int(np.ceil((1 - alpha) * mc_reps)), mc_reps))
        mc[str(alpha)] = mc_maxima[k - 1]
    return {"dtm_thresholds": thresholds, "mc_thresholds": mc,
            "n_subgraphs": n_subgraphs, "mc_reps": mc_reps}


def _app_changepoint(spec_dict: dict, outdir: Path, args) -> dict:
    arl = spec_dict.pop("arl", 5000.0)
    spec = MmdStreamSpec(**spec_dict)
    result = change_point_run(spec, arl)
    times = range(result.stream_start, result.stream_start + len(result.stream))
    _write_csv(outdir / "changepoint_stream.csv", ["time", "statistic", "threshold"],
               ((t, s, result.threshold) for t, s in zip(times, result.stream)))
    p = result.report.model.params
    return {
        "stopping_time": result.stopping_time,
        "threshold": result.threshold,
        "arl": arl,
        "alpha": result.report.config.alpha,
        "fitted": {"mu": p.mu, "sigma": p.sigma, "xi": p.xi,
                   "theta": result.report.model.theta},
    }


def _app_bandit(spec_dict: dict, outdir: Path, args) -> dict:
    total_pulls = spec_dict.pop("total_pulls", 1200)
    spec_dict["tail_exponents"] = tuple(spec_dict["tail_exponents"])
    spec = BanditSpec(**spec_dict)
    result = bandit_run(spec, total_pulls)
    rows = []
    for rnd, (arm, bounds) in enumerate(zip(result.pulls, result.bounds_history)):
        row = [rnd, arm]
        for b in bounds:
            row.extend(["" if b is None else b[0], "" if b is None else b[1]])
        rows.append(row)
    header = ["round", "pulled_arm"]
    for k in range(spec.n_arms):
        header.extend([f"lcb_{k}", f"ucb_{k}"])
    _write_csv(outdir / "bandit_rounds.csv", header, rows)
    return {
        "initial_bounds": [list(b) if b else None for b in result.initial_bounds],
        "pull_counts": result.pull_counts(spec.n_arms),
        "stopped_early": result.stopped_early,
        "total_pulls": total_pulls,
    }


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threshold-machine",
        description="Distribution-free tail thresholds for maxima of dependent series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_alpha=True):
        if with_alpha:
            p.add_argument("--alpha", type=float, required=True, help="tail probability level")
        p.add_argument("--quantile", type=float, default=None,
                       help="cutoff quantile in (0,1), default 0.95")
        p.add_argument("--cutoff", type=float, default=None,
                       help="explicit cutoff value (overrides --quantile)")
        p.add_argument("--seed", type=int, default=None, help="PRNG seed")
        p.add_argument("--bootstrap-reps", type=int, default=1, dest="bootstrap_reps")
        p.add_argument("--min-exceedances", type=int, default=10, dest="min_exceedances")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    t = sub.add_parser("threshold", help="threshold for a series read from CSV")
    t.add_argument("--input", required=True, help="CSV file, one numeric value per line")
    common(t)

    v = sub.add_parser("validate", help="compare the pipeline against the Monte Carlo oracle")
    v.add_argument("--spec", required=True, help="generator spec JSON (inline or file path)")
    v.add_argument("--n", type=int, default=10_000, help="series length")
    v.add_argument("--mc-reps", type=int, default=2000, dest="mc_reps", help="oracle replicates L")
    v.add_argument("--gap-tolerance", type=float, default=0.1, dest="gap_tolerance")
    common(v)

    a = sub.add_parser("app", help="run an application harness")
    a.add_argument("harness", choices=["scan", "changepoint", "bandit"])
    a.add_argument("--spec", required=True, help="harness spec JSON (inline or file path)")
    a.add_argument("--outdir", required=True, help="directory for run artifacts")
    common(a, with_alpha=False)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("THRESHOLD_MACHINE_LOG", "WARNING").upper())
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"threshold": _cmd_threshold, "validate": _cmd_validate, "app": _cmd_app}
    try:
        return handlers[args.command](args)
    except ParseError as e:
        _emit(_error_payload(e.code, str(e)), getattr(args, "out", None))
        return EXIT_INPUT_ERROR
    except _FIT_ERRORS as e:
        _emit(_error_payload(e.code, str(e)), getattr(args, "out", None))
        return EXIT_FIT_FAILURE
    except DtmError as e:
        _emit(_error_payload(e.code, str(e)), getattr(args, "out", None))
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
