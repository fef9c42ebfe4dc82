"""Command line entry point.

Subcommands: ``generate``, ``ingest``, ``detect``, ``evaluate``, ``report``,
``serve``. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .boxplot import DEFAULT_BUCKETS
from .corpus import (
    build_tensor,
    ingest,
    read_journals_csv,
    read_name_table,
    read_tensor_csv,
    write_corpus,
    write_journals_csv,
    write_tensor_csv,
)
from .errors import DataError
from .pipeline import PipelineConfig, run_pipeline, summary_dict, write_report
from .scoring import (
    evaluate,
    evaluate_pairs,
    kmeans_baseline,
    metrics_to_json,
    read_findings_jsonl,
    write_findings_jsonl,
)
from .synthgen import SynthConfig, generate, read_labels_csv, write_dataset
from .timeseries import DEFAULT_MIN_HISTORY

USAGE_EXIT = 1
DATA_EXIT = 2


@dataclass
class RunConfig:
    """Detection tunables shared by the detect/report commands."""

    n_buckets: int = DEFAULT_BUCKETS
    min_history: int = DEFAULT_MIN_HISTORY
    include_below_fence: bool = False
    temporal_all_pairs: bool = False
    year_strict: bool = False

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            n_buckets=self.n_buckets,
            min_history=self.min_history,
            include_below_fence=self.include_below_fence,
            temporal_all_pairs=self.temporal_all_pairs,
        )


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _require(path: str, what: str) -> Path:
    p = Path(path)
    if not p.exists():
        raise DataError(f"{what} not found: {p}")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="citestack",
                     description="Journal-level citation anomaly detection")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="emit the synthetic labelled benchmark")
    g.add_argument("--out", required=True, help="output directory")
    g.add_argument("--seed", type=int, default=SynthConfig.seed)
    g.add_argument("--n-journals", type=int, default=SynthConfig.n_journals)
    g.add_argument("--year-min", type=int, default=SynthConfig.year_min)
    g.add_argument("--year-max", type=int, default=SynthConfig.year_max)
    g.add_argument("--papers-min", type=int, default=SynthConfig.papers_min)
    g.add_argument("--papers-max", type=int, default=SynthConfig.papers_max)
    g.add_argument("--base-min", type=int, default=SynthConfig.base_min)
    g.add_argument("--base-max", type=int, default=SynthConfig.base_max)
    g.add_argument("--n-anomalies", type=int, default=SynthConfig.n_anomalies)
    g.add_argument("--spike-multiplier", type=int, default=SynthConfig.spike_multiplier)
    g.add_argument("--lead-years", type=int, default=SynthConfig.lead_years)

    i = sub.add_parser("ingest", help="validate a corpus and build its aggregates")
    i.add_argument("--input", required=True, help="corpus file (TSV or JSON lines)")
    i.add_argument("--out", required=True, help="output directory")
    i.add_argument("--format", choices=("tsv", "jsonl"), default=None,
                   help="input format (default: sniff)")
    i.add_argument("--names", default=None, help="journal name table (id<TAB>name)")

    d = sub.add_parser("detect", help="run the detection pipeline")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", help="paper-level corpus file")
    src.add_argument("--tensor", help="journal-level tensor CSV")
    d.add_argument("--journals", default=None,
                   help="journals CSV with paper counts (for --tensor input)")
    d.add_argument("--out", required=True, help="output directory")
    d.add_argument("--buckets", type=int, default=DEFAULT_BUCKETS)
    d.add_argument("--min-history", type=int, default=DEFAULT_MIN_HISTORY)
    d.add_argument("--include-below-fence", action="store_true",
                   help="keep suspiciously low pairs in the pipeline")
    d.add_argument("--temporal-all-pairs", action="store_true",
                   help="diagnostic: run the time-series stage on every pair")

    e = sub.add_parser("evaluate", help="score findings against ground-truth labels")
    e.add_argument("--findings", help="findings JSON lines file")
    e.add_argument("--labels", required=True, help="ground-truth labels CSV")
    e.add_argument("--out", default=None, help="write metrics JSON here")
    e.add_argument("--year-strict", action="store_true",
                   help="require finding years to match labelled years")
    e.add_argument("--baseline", choices=("kmeans",), default=None,
                   help="evaluate a baseline instead of a findings file")
    e.add_argument("--tensor", default=None, help="tensor CSV (baseline input)")
    e.add_argument("--baseline-seed", type=int, default=0)

    r = sub.add_parser("report", help="rebuild plot-ready summaries from findings")
    r.add_argument("--findings", required=True)
    r.add_argument("--tensor", required=True)
    r.add_argument("--journals", required=True)
    r.add_argument("--out", required=True)

    s = sub.add_parser("serve", help="serve the findings store over HTTP")
    s.add_argument("--store", required=True, help="directory with findings.jsonl, tensor.csv, journals.csv")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--ui", default=None, help="portal bundle directory to serve at /")
    return parser


def cmd_generate(args) -> int:
    config = SynthConfig(
        n_journals=args.n_journals, year_min=args.year_min, year_max=args.year_max,
        papers_min=args.papers_min, papers_max=args.papers_max,
        base_min=args.base_min, base_max=args.base_max,
        n_anomalies=args.n_anomalies, seed=args.seed,
        spike_multiplier=args.spike_multiplier, lead_years=args.lead_years,
    )
    dataset = generate(config)
    paths = write_dataset(dataset, args.out)
    for name, path in paths.items():
        print(f"{name}: {path}")
    print(f"{len(dataset.labels)} labels over "
          f"{config.n_journals * (config.n_journals - 1)} ordered pairs")
    return 0


def cmd_ingest(args) -> int:
    corpus = ingest(_require(args.input, "corpus"), fmt=args.format)
    names = read_name_table(_require(args.names, "name table")) if args.names else {}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_corpus(corpus, out / "corpus.jsonl", fmt="jsonl")
    write_journals_csv(out / "journals.csv", corpus.journals, names)
    write_tensor_csv(build_tensor(corpus), out / "tensor.csv")
    print(f"papers: {len(corpus.papers)}")
    print(f"journals: {len(corpus.journals)}")
    print(f"year range: {corpus.year_range}")
    print(f"dangling references: {corpus.dangling_references}")
    return 0


def _load_detect_inputs(args):
    if args.corpus:
        corpus = ingest(_require(args.corpus, "corpus"))
        tensor = build_tensor(corpus)
        return tensor, dict(corpus.journals), corpus
    tensor = read_tensor_csv(_require(args.tensor, "tensor"))
    if args.journals:
        paper_counts, _ = read_journals_csv(_require(args.journals, "journals file"))
    else:
        # no paper counts available: bucket by outgoing citation volume instead
        print("warning: no --journals file; bucketing by citation volume", file=sys.stderr)
        paper_counts = {
            j: sum(tensor.total(j, r) for r in tensor.journals if r != j)
            for j in tensor.journals
        }
    return tensor, paper_counts, None


def cmd_detect(args) -> int:
    tensor, paper_counts, corpus = _load_detect_inputs(args)
    run_config = RunConfig(
        n_buckets=args.buckets, min_history=args.min_history,
        include_below_fence=args.include_below_fence,
        temporal_all_pairs=args.temporal_all_pairs,
    )
    result = run_pipeline(tensor, paper_counts, corpus=corpus,
                          config=run_config.pipeline_config())
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_findings_jsonl(result.findings, out / "findings.jsonl")
    write_report(out, result.findings, tensor, paper_counts, corpus, result)
    summary = summary_dict(result, tensor)
    print(json.dumps(summary, indent=2))
    print(f"findings: {out / 'findings.jsonl'}")
    return 0


def cmd_evaluate(args) -> int:
    labels = read_labels_csv(_require(args.labels, "labels"))
    if args.baseline == "kmeans":
        if not args.tensor:
            raise DataError("--baseline kmeans requires --tensor")
        tensor = read_tensor_csv(_require(args.tensor, "tensor"))
        predictions = kmeans_baseline(tensor, seed=args.baseline_seed)
        metrics = evaluate_pairs(predictions, labels)
    else:
        if not args.findings:
            raise DataError("evaluate requires --findings (or --baseline)")
        findings = read_findings_jsonl(_require(args.findings, "findings"))
        metrics = evaluate(findings, labels, year_strict=args.year_strict)
    payload = metrics_to_json(metrics)
    print(json.dumps(payload, indent=2))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_report(args) -> int:
    findings = read_findings_jsonl(_require(args.findings, "findings"))
    tensor = read_tensor_csv(_require(args.tensor, "tensor"))
    paper_counts, _ = read_journals_csv(_require(args.journals, "journals file"))
    paths = write_report(args.out, findings, tensor, paper_counts)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app
    from .store import FindingsStore

    store = FindingsStore.load(_require(args.store, "store directory"))
    app = create_app(store, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "generate": cmd_generate,
    "ingest": cmd_ingest,
    "detect": cmd_detect,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
