#!/usr/bin/env python3
"""Sweep generator/detector settings and check every release bar at once.

For each combination this prints the combined pipeline metrics next to the
standalone box-plot, time-series and clustering baselines, and whether the
full set of bars holds: combined precision 100%, recall >= 70%, F1 >= 80%,
F1(combined) > F1(time-series) > F1(box plot), and the clustering baseline
recall at least 25 points behind. Useful when retuning injection margins.
"""

from __future__ import annotations

import argparse
import itertools

from citestack.pipeline import PipelineConfig, run_pipeline
from citestack.scoring import evaluate, evaluate_pairs, kmeans_baseline
from citestack.synthgen import SynthConfig, generate
from citestack.timeseries import detect_temporal


def run_once(base_max, spike, min_history, lead, seed):
    cfg = SynthConfig(seed=seed, base_max=base_max, spike_multiplier=spike,
                      lead_years=lead)
    ds = generate(cfg)
    result = run_pipeline(ds.tensor, ds.journal_sizes,
                          config=PipelineConfig(min_history=min_history))
    journals = sorted(ds.tensor.journals)
    all_pairs = [(a, b) for a in journals for b in journals if a < b]
    ts_pairs = {(t.sender, t.receiver)
                for t in detect_temporal(ds.tensor, all_pairs, min_history=min_history)}

    m_comb = evaluate(result.findings, ds.labels)
    m_box = evaluate_pairs(result.static_pairs(), ds.labels)
    m_ts = evaluate_pairs(ts_pairs, ds.labels)
    m_km = evaluate_pairs(kmeans_baseline(ds.tensor, seed=0), ds.labels)

    ok = (
        m_comb.precision == 100.0
        and m_comb.recall is not None and m_comb.recall >= 70.0
        and m_comb.f1 is not None and m_comb.f1 >= 80.0
        and m_comb.f1 > (m_ts.f1 or 0) > (m_box.f1 or 0)
        and m_km.recall is not None and m_comb.recall - m_km.recall >= 25.0
    )
    return ok, m_comb, m_box, m_ts, m_km


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--base-max", type=int, nargs="*", default=[50])
    ap.add_argument("--spike", type=int, nargs="*", default=[8])
    ap.add_argument("--min-history", type=int, nargs="*", default=[10, 11, 12])
    ap.add_argument("--lead", type=int, nargs="*", default=[12])
    args = ap.parse_args()

    for base_max, spike, mh, lead in itertools.product(
            args.base_max, args.spike, args.min_history, args.lead):
        ok, comb, box, ts, km = run_once(base_max, spike, mh, lead, args.seed)
        print(
            f"base={base_max} spike={spike} mh={mh} lead={lead} -> "
            f"{'OK ' if ok else 'no '} "
            f"comb(P={comb.precision:.1f} R={comb.recall:.1f} F1={comb.f1:.1f} fp={comb.fp}) "
            f"box(F1={box.f1:.1f} fp={box.fp}) ts(F1={ts.f1:.1f} fp={ts.fp}) "
            f"km(R={km.recall:.1f} fp={km.fp})")


if __name__ == "__main__":
    main()
