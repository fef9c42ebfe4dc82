#!/usr/bin/env python3
"""Generate the synthetic benchmark and compare all four detection methods.

Prints a precision/recall/F1 table for the clustering baseline, the box-plot
stage alone, the time-series stage alone, and the combined pipeline, all
against the injected ground-truth labels.
"""

from __future__ import annotations

import argparse
import time

from citestack.pipeline import PipelineConfig, run_pipeline
from citestack.scoring import evaluate, evaluate_pairs, kmeans_baseline
from citestack.synthgen import SynthConfig, generate
from citestack.timeseries import DEFAULT_MIN_HISTORY, detect_temporal


def per_type_recall(labels, predicted_pairs):
    by_type: dict[str, list] = {}
    for lab in labels:
        by_type.setdefault(lab.injection_type, []).append(lab)
    out = {}
    for t, labs in sorted(by_type.items()):
        hit = sum(1 for lab in labs if lab.pair in predicted_pairs)
        out[t] = (hit, len(labs))
    return out


def fmt(metrics):
    def p(x):
        return "  n/a" if x is None else f"{x:5.1f}"
    return (f"P={p(metrics.precision)}  R={p(metrics.recall)}  F1={p(metrics.f1)}  "
            f"tp={metrics.tp:3d} fp={metrics.fp:3d} fn={metrics.fn:3d}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--min-history", type=int, default=DEFAULT_MIN_HISTORY)
    ap.add_argument("--per-type", action="store_true", help="print per-type recall breakdowns")
    args = ap.parse_args()

    t0 = time.perf_counter()
    dataset = generate(SynthConfig(seed=args.seed))
    t1 = time.perf_counter()
    print(f"generated: {len(dataset.labels)} labels, "
          f"{dataset.config.n_journals} journals  [{t1 - t0:.1f}s]")

    config = PipelineConfig(min_history=args.min_history)
    result = run_pipeline(dataset.tensor, dataset.journal_sizes, config=config)
    t2 = time.perf_counter()

    journals = sorted(dataset.tensor.journals)
    all_pairs = [(a, b) for a in journals for b in journals if a < b]
    ts_all = detect_temporal(dataset.tensor, all_pairs, min_history=args.min_history)
    ts_pairs = {(t.sender, t.receiver) for t in ts_all}
    t3 = time.perf_counter()

    km_pairs = kmeans_baseline(dataset.tensor, seed=0)
    t4 = time.perf_counter()

    rows = [
        ("k-means", evaluate_pairs(km_pairs, dataset.labels), set(km_pairs)),
        ("box plot", evaluate_pairs(result.static_pairs(), dataset.labels), result.static_pairs()),
        ("time-series", evaluate_pairs(ts_pairs, dataset.labels), ts_pairs),
        ("combined", evaluate(result.findings, dataset.labels), result.finding_pairs()),
    ]
    print(f"pipeline {t2 - t1:.1f}s, ts-all-pairs {t3 - t2:.1f}s, k-means {t4 - t3:.1f}s")
    for name, metrics, pairs in rows:
        print(f"{name:12s} {fmt(metrics)}")
        if args.per_type:
            parts = [f"{t}:{hit}/{n}" for t, (hit, n) in per_type_recall(dataset.labels, pairs).items()]
            print(f"{'':12s}   recall by type: {'  '.join(parts)}")


if __name__ == "__main__":
    main()
