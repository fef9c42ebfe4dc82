"""End-to-end detection: bucketing, fencing, time-series, reasons, scores.

The default flow mirrors the two-stage design: the time-series test only runs
on pairs the box plot already flagged, so a combined finding always carries
both a static and a temporal score. ``temporal_all_pairs`` widens the
time-series stage to every pair for diagnostics; combined findings still
require static evidence.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .boxplot import (
    DEFAULT_BUCKETS,
    SIDE_ABOVE,
    SIDE_BELOW,
    BucketIndex,
    StaticCandidate,
    bucket_journals,
    detect_static,
)
from .corpus import CitationTensor, Corpus, build_collab_index
from .explain import AnomalyReason, build_reason
from .scoring import AnomalyFinding, combine, static_confidence, temporal_confidence
from .timeseries import DEFAULT_MIN_HISTORY, TemporalFinding, detect_temporal


@dataclass(frozen=True)
class PipelineConfig:
    n_buckets: int = DEFAULT_BUCKETS
    min_history: int = DEFAULT_MIN_HISTORY
    include_below_fence: bool = False
    temporal_all_pairs: bool = False


@dataclass
class PipelineResult:
    findings: list[AnomalyFinding]
    static_candidates: list[StaticCandidate]
    temporal_findings: list[TemporalFinding]
    buckets: BucketIndex
    config: PipelineConfig = field(default_factory=PipelineConfig)

    def static_pairs(self) -> set[tuple[str, str]]:
        side_ok = {SIDE_ABOVE, SIDE_BELOW} if self.config.include_below_fence else {SIDE_ABOVE}
        return {(c.sender, c.receiver) for c in self.static_candidates if c.side in side_ok}

    def temporal_pairs(self) -> set[tuple[str, str]]:
        return {(t.sender, t.receiver) for t in self.temporal_findings}

    def finding_pairs(self) -> set[tuple[str, str]]:
        return {f.pair for f in self.findings}


def run_pipeline(tensor: CitationTensor, paper_counts: dict[str, int],
                 corpus: Corpus | None = None,
                 config: PipelineConfig = PipelineConfig()) -> PipelineResult:
    """Run detection over a tensor; reasons need the paper-level ``corpus``."""
    buckets = bucket_journals(paper_counts, config.n_buckets)
    candidates = detect_static(tensor, buckets)
    selected = [c for c in candidates
                if c.side == SIDE_ABOVE or config.include_below_fence]
    by_pair = {(c.sender, c.receiver): c for c in selected}

    if config.temporal_all_pairs:
        journals = sorted(tensor.journals)
        pairs = [(a, b) for a in journals for b in journals if a < b]
    else:
        pairs = sorted(by_pair)
    temporal = detect_temporal(tensor, pairs, min_history=config.min_history)

    reasons: dict[tuple[str, str], AnomalyReason] = {}
    collab_index = build_collab_index(corpus) if corpus is not None else None

    findings: list[AnomalyFinding] = []
    for t in temporal:
        # static and temporal evidence must agree on the direction; a
        # double-sided hit covers both directions, so either candidacy works
        candidate = by_pair.get((t.sender, t.receiver))
        if candidate is None and t.double_sided:
            candidate = by_pair.get((t.receiver, t.sender))
        if candidate is None:
            continue
        static_score = static_confidence(candidate)
        temporal_score = temporal_confidence(t)
        reason = None
        if corpus is not None:
            key = (t.sender, t.receiver)
            if key not in reasons:
                reasons[key] = build_reason(corpus, collab_index, t.sender, t.receiver)
            reason = reasons[key]
        findings.append(AnomalyFinding(
            sender=t.sender,
            receiver=t.receiver,
            year=t.year,
            behaviour=t.behaviour,
            confidence=combine(static_score, temporal_score),
            static_score=static_score,
            temporal_score=temporal_score,
            reason=reason,
        ))
    findings.sort(key=lambda f: (-f.confidence, f.sender, f.receiver, f.year or 0))
    return PipelineResult(findings=findings, static_candidates=candidates,
                          temporal_findings=temporal, buckets=buckets, config=config)


# --- summary / plot-ready series -------------------------------------------------

def summary_dict(result: PipelineResult, tensor: CitationTensor) -> dict:
    """Headline numbers: anomaly rate and the one-/double-sided split."""
    n_journals = len(tensor.journals)
    ordered_pairs = n_journals * (n_journals - 1)
    pairs = result.finding_pairs()
    single = sum(1 for f in result.findings if f.behaviour and f.behaviour.startswith("one_sided"))
    double = sum(1 for f in result.findings if f.behaviour and f.behaviour.startswith("double_sided"))
    total = len(result.findings)
    return {
        "n_journals": n_journals,
        "ordered_pairs": ordered_pairs,
        "ordered_pairs_with_diagonal": n_journals * n_journals,
        "n_findings": total,
        "n_anomalous_pairs": len(pairs),
        "n_anomalous_journals": len({j for p in pairs for j in p}),
        "anomaly_rate_pct": 100.0 * len(pairs) / ordered_pairs if ordered_pairs else 0.0,
        "one_sided": {"count": single, "pct_of_findings": 100.0 * single / total if total else 0.0},
        "double_sided": {"count": double, "pct_of_findings": 100.0 * double / total if total else 0.0},
    }


def per_year_rows(findings, tensor: CitationTensor, corpus: Corpus | None = None) -> list[dict]:
    """Per-year anomaly ratio series.

    With a paper-level corpus the denominator is publications that year;
    otherwise total citations that year stand in.
    """
    per_year: dict[int, int] = {}
    for f in findings:
        if f.year is not None:
            per_year[f.year] = per_year.get(f.year, 0) + 1
    if corpus is not None:
        denominators = corpus.papers_per_year()
        denom_name = "publications"
    else:
        denominators = {}
        for (s, r) in tensor.pairs():
            for y in tensor.years():
                c = tensor.count(s, r, y)
                if c:
                    denominators[y] = denominators.get(y, 0) + c
        denom_name = "citations"
    rows = []
    for y in tensor.years():
        n = per_year.get(y, 0)
        d = denominators.get(y, 0)
        rows.append({"year": y, "findings": n, denom_name: d,
                     "ratio": (n / d) if d else 0.0})
    return rows


def size_vs_anomaly_rows(findings, paper_counts: dict[str, int], n_bins: int = 10) -> list[dict]:
    """Fraction of journals per size bucket that show up in any finding."""
    buckets = bucket_journals(paper_counts, n_bins)
    flagged = {j for f in findings for j in (f.sender, f.receiver)}
    rows = []
    for b in range(buckets.n_buckets):
        members = buckets.members(b)
        hit = sum(1 for j in members if j in flagged)
        sizes = [paper_counts[j] for j in members]
        rows.append({
            "size_bucket": b,
            "min_papers": min(sizes),
            "max_papers": max(sizes),
            "n_journals": len(members),
            "n_anomalous": hit,
            "fraction_anomalous": hit / len(members),
        })
    return rows


def confidence_histogram_rows(findings, bin_width: float = 0.05) -> list[dict]:
    """Histogram of confidence scores over [0.5, 1.0)."""
    edges = []
    lo = 0.5
    while lo < 1.0 - 1e-9:
        edges.append((round(lo, 10), round(min(lo + bin_width, 1.0), 10)))
        lo += bin_width
    rows = [{"bin_lo": a, "bin_hi": b, "count": 0} for a, b in edges]
    for f in findings:
        idx = min(int((f.confidence - 0.5) / bin_width), len(rows) - 1)
        if idx >= 0:
            rows[idx]["count"] += 1
    return rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if not rows:
            fh.write("")
            return
        w = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def write_report(outdir: str | Path, findings, tensor: CitationTensor,
                 paper_counts: dict[str, int], corpus: Corpus | None = None,
                 result: PipelineResult | None = None) -> dict[str, Path]:
    """Emit the plot-ready CSV series plus summary.json.

    Every number here is recomputed from the findings (plus the input data
    for denominators); nothing depends on pipeline internals.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    paths["per_year"] = outdir / "per_year.csv"
    _write_csv(paths["per_year"], per_year_rows(findings, tensor, corpus))

    paths["size_vs_anomaly"] = outdir / "size_vs_anomaly.csv"
    _write_csv(paths["size_vs_anomaly"], size_vs_anomaly_rows(findings, paper_counts))

    paths["confidence_histogram"] = outdir / "confidence_histogram.csv"
    _write_csv(paths["confidence_histogram"], confidence_histogram_rows(findings))

    if result is not None:
        paths["summary"] = outdir / "summary.json"
        with open(paths["summary"], "w", encoding="utf-8", newline="\n") as fh:
            json.dump(summary_dict(result, tensor), fh, indent=2)
            fh.write("\n")
    return paths
