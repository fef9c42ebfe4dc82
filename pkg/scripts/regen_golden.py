#!/usr/bin/env python3
"""Regenerate the committed golden benchmark and its pipeline snapshots.

Run from the repository root after any intentional change to the generator or
detector defaults, then commit the contents of data/golden/. Tests compare
freshly generated output byte-for-byte against these files.
"""

from __future__ import annotations

import json
from pathlib import Path

from citestack.pipeline import PipelineConfig, run_pipeline
from citestack.scoring import evaluate, metrics_to_json, write_findings_jsonl
from citestack.synthgen import SynthConfig, generate, write_dataset

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "data" / "golden"


def main():
    config = SynthConfig()
    dataset = generate(config)
    paths = write_dataset(dataset, GOLDEN_DIR)

    result = run_pipeline(dataset.tensor, dataset.journal_sizes, config=PipelineConfig())
    write_findings_jsonl(result.findings, GOLDEN_DIR / "findings.jsonl")

    metrics = evaluate(result.findings, dataset.labels)
    with open(GOLDEN_DIR / "metrics.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metrics_to_json(metrics), fh, indent=2)
        fh.write("\n")

    for name, p in {**paths, "findings": GOLDEN_DIR / "findings.jsonl",
                    "metrics": GOLDEN_DIR / "metrics.json"}.items():
        print(f"{name}: {p} ({p.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
