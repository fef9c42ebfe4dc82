"""Confidence scoring, findings assembly, and detector evaluation.

Scores use tanh squashed into fixed ranges: one method's evidence maps to
[0.5, 1) via ``0.5 + 0.5*tanh(x)``; a double-sided temporal hit maps to
[0.75, 1) via ``0.75 + 0.25*tanh(min(z_fwd, z_rev))``. The final confidence
is the plain average of the static and temporal scores.

Findings serialize to JSON lines with the schema (v1)::

    {sender, receiver, year|null, behaviour|null, confidence, static_score,
     temporal_score|null,
     reason: {category, sender_pct, receiver_pct, prev_collabs} | null}

Evaluation matches predictions to ground-truth labels at the ordered-pair
level by default (a label is recovered if any finding names its pair in any
year); ``year_strict`` additionally requires the finding's year to be one of
the label's years.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .boxplot import StaticCandidate
from .errors import ParseError
from .explain import CATEGORIES, AnomalyReason
from .timeseries import BEHAVIOURS, TemporalFinding


@dataclass(frozen=True)
class AnomalyFinding:
    """A scored anomaly on an ordered journal pair, usually pinned to a year."""

    sender: str
    receiver: str
    year: int | None
    behaviour: str | None
    confidence: float
    static_score: float
    temporal_score: float | None
    reason: AnomalyReason | None = None

    @property
    def pair(self) -> tuple[str, str]:
        return (self.sender, self.receiver)


@dataclass(frozen=True)
class EvalMetrics:
    """Precision/recall/F1 as percentages; None where undefined (N/A)."""

    precision: float | None
    recall: float | None
    f1: float | None
    tp: int
    fp: int
    fn: int


# tanh saturates to exactly 1.0 in float64 around x ~ 20; keep scores
# strictly below 1 as the contract promises
_BELOW_ONE = math.nextafter(1.0, 0.0)


def static_confidence(candidate: StaticCandidate) -> float:
    """Map a fence-relative deviation (> 0) into [0.5, 1)."""
    if candidate.deviation <= 0:
        raise ValueError("static candidates must have positive deviation")
    return min(0.5 + 0.5 * math.tanh(candidate.deviation), _BELOW_ONE)


def temporal_confidence(finding: TemporalFinding) -> float:
    """One-sided hits map into [0.5, 1); double-sided into [0.75, 1).

    The double-sided input is the smaller of the two directions' excesses,
    so the score never overstates the weaker side.
    """
    if finding.double_sided:
        assert finding.z_reverse is not None
        score = 0.75 + 0.25 * math.tanh(min(finding.z_excess, finding.z_reverse))
    else:
        score = 0.5 + 0.5 * math.tanh(finding.z_excess)
    return min(score, _BELOW_ONE)


def combine(static_score: float, temporal_score: float) -> float:
    """Arithmetic mean; both methods weigh equally."""
    return (static_score + temporal_score) / 2


# --- findings file (JSON lines, v1) ------------------------------------------

def _reason_to_json(reason: AnomalyReason | None):
    if reason is None:
        return None
    return {
        "category": reason.category,
        "sender_pct": reason.sender_percentage,
        "receiver_pct": reason.receiver_percentage,
        "prev_collabs": reason.prev_collaborations,
    }


def _reason_from_json(obj) -> AnomalyReason | None:
    if obj is None:
        return None
    if obj.get("category") not in CATEGORIES:
        raise ValueError(f"unknown reason category {obj.get('category')!r}")
    return AnomalyReason(
        category=obj["category"],
        sender_percentage=float(obj["sender_pct"]),
        receiver_percentage=float(obj["receiver_pct"]),
        prev_collaborations=int(obj["prev_collabs"]),
    )


def write_findings_jsonl(findings: Iterable[AnomalyFinding], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for f in findings:
            fh.write(json.dumps({
                "sender": f.sender,
                "receiver": f.receiver,
                "year": f.year,
                "behaviour": f.behaviour,
                "confidence": f.confidence,
                "static_score": f.static_score,
                "temporal_score": f.temporal_score,
                "reason": _reason_to_json(f.reason),
            }) + "\n")


def read_findings_jsonl(path: str | Path) -> list[AnomalyFinding]:
    findings: list[AnomalyFinding] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", line_no) from None
            behaviour = obj.get("behaviour")
            if behaviour is not None and behaviour not in BEHAVIOURS:
                raise ParseError(f"unknown behaviour {behaviour!r}", line_no)
            try:
                findings.append(AnomalyFinding(
                    sender=str(obj["sender"]),
                    receiver=str(obj["receiver"]),
                    year=obj.get("year"),
                    behaviour=behaviour,
                    confidence=float(obj["confidence"]),
                    static_score=float(obj["static_score"]),
                    temporal_score=None if obj.get("temporal_score") is None
                    else float(obj["temporal_score"]),
                    reason=_reason_from_json(obj.get("reason")),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad finding record: {exc}", line_no) from None
    return findings


# --- evaluation ---------------------------------------------------------------

def evaluate_pairs(predicted_pairs: Iterable[tuple[str, str]], labels) -> EvalMetrics:
    """Ordered-pair matching: TP = labelled pairs predicted, FP = the rest."""
    predicted = set(predicted_pairs)
    label_pairs = {(lab.sender, lab.receiver) for lab in labels}
    tp = len(predicted & label_pairs)
    fp = len(predicted - label_pairs)
    fn = len(label_pairs - predicted)
    return _metrics(tp, fp, fn)


def evaluate(findings: Sequence[AnomalyFinding], labels, year_strict: bool = False) -> EvalMetrics:
    """Score findings against ground-truth labels.

    Default matching is pair-level and year-agnostic. With ``year_strict``
    the prediction unit becomes (pair, year) and a label only counts as
    recovered when some finding hits one of its labelled years.
    """
    if not year_strict:
        return evaluate_pairs((f.pair for f in findings), labels)

    predicted = {(f.sender, f.receiver, f.year) for f in findings if f.year is not None}
    matched_preds: set[tuple[str, str, int]] = set()
    tp = 0
    for lab in labels:
        hits = {(lab.sender, lab.receiver, y) for y in lab.years} & predicted
        if hits:
            tp += 1
            matched_preds |= hits
    fp = len(predicted - matched_preds)
    fn = sum(1 for lab in labels) - tp
    return _metrics(tp, fp, fn)


def _metrics(tp: int, fp: int, fn: int) -> EvalMetrics:
    precision = 100.0 * tp / (tp + fp) if (tp + fp) > 0 else None
    recall = 100.0 * tp / (tp + fn) if (tp + fn) > 0 else None
    if precision is not None and recall is not None and (precision + recall) > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = None
    return EvalMetrics(precision=precision, recall=recall, f1=f1, tp=tp, fp=fp, fn=fn)


def metrics_to_json(metrics: EvalMetrics) -> dict:
    return {
        "precision": metrics.precision,
        "recall": metrics.recall,
        "f1": metrics.f1,
        "tp": metrics.tp,
        "fp": metrics.fp,
        "fn": metrics.fn,
    }


def write_metrics_json(metrics: EvalMetrics, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metrics_to_json(metrics), fh, indent=2)
        fh.write("\n")


# --- clustering baseline --------------------------------------------------------

def kmeans_baseline(tensor, seed: int = 0) -> list[tuple[str, str]]:
    """2-means over (outgoing total, incoming total) per ordered pair.

    The cluster whose members have the higher mean feature norm is declared
    anomalous and its pairs returned. Degenerate inputs (under two pairs, or
    no separation between the clusters) predict nothing.
    """
    journals = sorted(tensor.journals)
    pairs = [(a, b) for a in journals for b in journals if a != b]
    if len(pairs) < 2:
        return []
    features = np.asarray(
        [[tensor.total(a, b), tensor.total(b, a)] for a, b in pairs], dtype=float
    )
    from sklearn.cluster import KMeans

    # n_init high enough that the returned optimum is stable across seeds
    km = KMeans(n_clusters=2, n_init=100, random_state=seed)
    assignment = km.fit_predict(features)
    norms = np.linalg.norm(features, axis=1)
    if not ((assignment == 0).any() and (assignment == 1).any()):
        return []  # all points identical: no separation
    mean_norms = [norms[assignment == k].mean() for k in (0, 1)]
    if math.isclose(mean_norms[0], mean_norms[1]):
        return []
    anomalous = int(mean_norms[1] > mean_norms[0])
    return [pair for pair, k in zip(pairs, assignment) if k == anomalous]
