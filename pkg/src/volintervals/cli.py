"""Command-line entry points.

Subcommands: analyze, intervals, pdf, conditional, clusters, synth,
split. Output is TSV/JSON for external plotting; no rendering here.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import pipeline
from .clusters import cluster_survival, clusters, median_split
from .distributions import pdf_estimate, poisson_deviation, scale_pdf
from .intervals import extract_intervals
from .memory import conditional_mean_curve, conditional_pdf
from .pipeline import (
    AnalysisConfig,
    ConfigError,
    _fmt,
    _write_json,
    _write_tsv,
    ingest_csv,
    load_config,
    run_pipeline,
    split_by_date,
    write_csv,
)
from .series import PriceSeries, log_returns, normalize_volatility
from .synthetic import GeneratorSpec, correlated_gaussian, gen_iid_gaussian


def _add_common(p):
    p.add_argument("--q", action="append", type=float, default=None,
                   help="volatility threshold (repeatable)")
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--log-bins", action="store_true", default=True)
    p.add_argument("--linear-bins", dest="log_bins", action="store_false")
    p.add_argument("--subsets", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ensemble", type=int, default=100)
    p.add_argument("--split-date", default=None)
    p.add_argument("--drop-session-gaps", action="store_true")
    p.add_argument("--out", default="out")


def _volatility(path):
    return normalize_volatility(log_returns(ingest_csv(path)))


def _qs(args):
    return args.q if args.q else [1.0, 1.25, 1.5, 1.75, 2.0]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="volintervals",
                                 description="Volatility return-interval analysis")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline")
    p.add_argument("inputs", nargs="*", help="input CSV files (timestamp,price)")
    p.add_argument("--config", default=None, help="key=value config file")
    _add_common(p)

    p = sub.add_parser("intervals", help="extract return intervals")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("pdf", help="scaled interval PDF per threshold")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("conditional", help="conditional PDFs and mean curve")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("clusters", help="above/below-median cluster survival")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("synth", help="emit a synthetic price CSV")
    p.add_argument("--kind", choices=["iid", "correlated"], default="iid")
    p.add_argument("--length", type=int, default=2**16)
    p.add_argument("--gamma", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", default="1984-01-04")
    p.add_argument("--interval", default="1d", help="sampling step, e.g. 1d or 1m")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("split", help="split a CSV at a date")
    p.add_argument("input")
    p.add_argument("--split-date", required=True)
    p.add_argument("--out", default="out")

    return ap


def _parse_step(text) -> np.timedelta64:
    text = text.strip().lower()
    units = {"d": "D", "day": "D", "m": "m", "min": "m", "s": "s", "h": "h"}
    for suffix in sorted(units, key=len, reverse=True):
        if text.endswith(suffix):
            return np.timedelta64(int(text[: -len(suffix)] or 1), units[suffix])
    return np.timedelta64(int(text), "s")


def _cmd_synth(args) -> int:
    if args.kind == "iid":
        g = gen_iid_gaussian(GeneratorSpec(kind="iid_gaussian", length=args.length,
                                           seed=args.seed)).values
    else:
        g = correlated_gaussian(args.length, args.gamma, args.seed)
    # small increments keep exp(cumsum) in floating range for long series
    logp = np.cumsum(1e-4 * g)
    prices = 100.0 * np.exp(logp - logp[0])
    step = _parse_step(args.interval)
    start = np.datetime64(args.start).astype("datetime64[s]")
    ts = start + np.arange(args.length) * step.astype("timedelta64[s]")
    series = PriceSeries(instrument_id=Path(args.out).stem, timestamps=ts,
                         prices=prices, sampling_interval=step.astype("timedelta64[s]"))
    write_csv(series, args.out)
    print(f"wrote {args.out} ({args.length} rows)")
    return 0


def _cmd_split(args) -> int:
    series = ingest_csv(args.input)
    pre, post = split_by_date(series, args.split_date)
    out = Path(args.out)
    for part in (pre, post):
        write_csv(part, out / f"{part.instrument_id}.csv")
        print(f"wrote {out / (part.instrument_id + '.csv')} ({len(part)} rows)")
    return 0


def _cmd_intervals(args) -> int:
    vol = _volatility(args.input)
    out = Path(args.out)
    summary = []
    for q in _qs(args):
        seq = extract_intervals(vol, q)
        _write_tsv(out / f"intervals_q{q:g}.tsv", ["q", "interval"],
                   ((q, int(t)) for t in seq.intervals))
        summary.append({"q": q, "count": len(seq), "mean_interval": seq.mean_interval})
    _write_json(out / "intervals_summary.json", summary)
    print(json.dumps(summary))
    return 0


def _cmd_pdf(args) -> int:
    vol = _volatility(args.input)
    out = Path(args.out)
    mode = "logarithmic" if args.log_bins else "linear"
    for q in _qs(args):
        seq = extract_intervals(vol, q)
        scaled = scale_pdf(pdf_estimate(seq, mode=mode, n_bins=args.bins), seq.mean_interval, q=q)
        _write_tsv(out / f"scaled_pdf_q{q:g}.tsv", ["x", "y"], zip(scaled.x, scaled.y))
        print(f"q={q:g}: mean_interval={_fmt(seq.mean_interval)} "
              f"poisson_deviation={_fmt(poisson_deviation(seq))}")
    return 0


def _cmd_conditional(args) -> int:
    vol = _volatility(args.input)
    out = Path(args.out)
    mode = "logarithmic" if args.log_bins else "linear"
    for q in _qs(args):
        seq = extract_intervals(vol, q)
        for k in range(1, args.subsets + 1):
            cp = conditional_pdf(seq, n_subsets=args.subsets, k=k, mode=mode, n_bins=args.bins)
            _write_tsv(out / f"conditional_pdf_q{q:g}_k{k}.tsv", ["x", "y"],
                       zip(cp.scaled.x, cp.scaled.y))
        curve = conditional_mean_curve(seq, n_bins=args.subsets)
        _write_tsv(out / f"conditional_mean_q{q:g}.tsv",
                   ["tau0_scaled", "mean_scaled", "stderr"],
                   zip(curve.bin_centers, curve.means, curve.stderr))
    print(f"wrote conditional statistics to {out}")
    return 0


def _cmd_clusters(args) -> int:
    vol = _volatility(args.input)
    out = Path(args.out)
    for q in _qs(args):
        seq = extract_intervals(vol, q)
        runs = clusters(median_split(seq), median=float(np.median(seq.intervals)), q=q)
        rows = []
        for side in ("above", "below"):
            for k, p in cluster_survival(runs, side):
                rows.append((side, int(k), p))
        _write_tsv(out / f"cluster_survival_q{q:g}.tsv", ["side", "k", "survival"], rows)
    print(f"wrote cluster statistics to {out}")
    return 0


def _cmd_analyze(args) -> int:
    if args.config:
        cfg = load_config(args.config)
        if args.inputs:
            cfg.inputs = list(args.inputs)
    else:
        cfg = AnalysisConfig(
            inputs=list(args.inputs),
            thresholds=_qs(args),
            binning="logarithmic" if args.log_bins else "linear",
            n_bins=args.bins,
            n_subsets=args.subsets,
            seed=args.seed,
            ensemble=args.ensemble,
            split_date=args.split_date,
            drop_session_gaps=args.drop_session_gaps,
            out_dir=args.out,
        )
    report = run_pipeline(cfg)
    for s in report["instruments"]:
        qs = ", ".join(f"q={q}: <tau>={_fmt(v['mean_interval'])}" for q, v in sorted(s["per_q"].items()))
        print(f"{s['instrument']}: {qs}")
    if report["errors"]:
        print(json.dumps(report["errors"], indent=2), file=sys.stderr)
    return report["exit_code"]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "intervals": _cmd_intervals,
        "pdf": _cmd_pdf,
        "conditional": _cmd_conditional,
        "clusters": _cmd_clusters,
        "synth": _cmd_synth,
        "split": _cmd_split,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, pipeline.IngestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
