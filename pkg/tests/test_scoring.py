import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citestack.boxplot import StaticCandidate
from citestack.corpus import CitationTensor
from citestack.explain import AnomalyReason
from citestack.scoring import (
    AnomalyFinding,
    combine,
    evaluate,
    evaluate_pairs,
    kmeans_baseline,
    metrics_to_json,
    read_findings_jsonl,
    static_confidence,
    temporal_confidence,
    write_findings_jsonl,
)
from citestack.synthgen import GroundTruthLabel
from citestack.timeseries import (
    DOUBLE_SIDED_SYNCHRONOUS,
    ONE_SIDED_SYNCHRONOUS,
    TemporalFinding,
)


def cand(deviation, sender="A", receiver="B"):
    return StaticCandidate(sender, receiver, 100, deviation, "above")


def one_sided(z, year=2005):
    return TemporalFinding("A", "B", year, ONE_SIDED_SYNCHRONOUS, z)


def double_sided(z, z_rev, year=2005):
    return TemporalFinding("A", "B", year, DOUBLE_SIDED_SYNCHRONOUS, z, z_rev)


def finding(sender, receiver, year=2005, confidence=0.8):
    return AnomalyFinding(sender=sender, receiver=receiver, year=year,
                          behaviour=ONE_SIDED_SYNCHRONOUS, confidence=confidence,
                          static_score=0.8, temporal_score=0.8)


def label(sender, receiver, years=(2005,), kind="T1"):
    return GroundTruthLabel(sender, receiver, frozenset(years), kind)


# --- confidence maps -----------------------------------------------------------

def test_static_score_floor_and_values():
    assert static_confidence(cand(1e-12)) == pytest.approx(0.5, abs=1e-9)
    assert static_confidence(cand(1.0)) == pytest.approx(0.5 + 0.5 * math.tanh(1.0))
    assert static_confidence(cand(1.0)) == pytest.approx(0.8808, abs=1e-4)
    assert static_confidence(cand(50.0)) < 1.0


def test_static_score_monotone():
    devs = [0.1, 0.5, 1.0, 2.0, 10.0]
    scores = [static_confidence(cand(d)) for d in devs]
    assert scores == sorted(scores)


def test_static_requires_positive_deviation():
    with pytest.raises(ValueError):
        static_confidence(cand(0.0))


def test_temporal_one_sided_floor():
    assert temporal_confidence(one_sided(1e-12)) == pytest.approx(0.5, abs=1e-9)
    assert temporal_confidence(one_sided(1.0)) == pytest.approx(0.5 + 0.5 * math.tanh(1.0))


def test_temporal_double_sided_min_rule():
    score = temporal_confidence(double_sided(2.0, 5.0))
    assert score == pytest.approx(0.75 + 0.25 * math.tanh(2.0))
    assert score == pytest.approx(0.9910, abs=1e-4)
    assert temporal_confidence(double_sided(5.0, 2.0)) == score


def test_double_sided_floor_above_one_sided_floor():
    tiny_double = temporal_confidence(double_sided(1e-9, 1e-9))
    assert 0.75 <= tiny_double < 1.0
    assert tiny_double > temporal_confidence(one_sided(1e-9))


def test_combine_is_exact_mean():
    assert combine(0.5, 0.5) == 0.5
    assert combine(0.88, 0.98) == pytest.approx(0.93)
    a, b = 0.7231, 0.9817
    assert combine(a, b) == (a + b) / 2


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-9, max_value=1e6),
       st.floats(min_value=1e-9, max_value=1e6))
def test_score_ranges_under_fuzz(z1, z2):
    s = static_confidence(cand(z1))
    t1 = temporal_confidence(one_sided(z1))
    t2 = temporal_confidence(double_sided(z1, z2))
    assert 0.5 <= s < 1.0
    assert 0.5 <= t1 < 1.0
    assert 0.75 <= t2 < 1.0
    assert combine(s, t1) == (s + t1) / 2
    assert 0.5 <= combine(s, t2) < 1.0


# --- evaluation -------------------------------------------------------------------

def test_perfect_findings():
    labels = [label("A", "B"), label("C", "D")]
    findings = [finding("A", "B"), finding("C", "D")]
    m = evaluate(findings, labels)
    assert (m.precision, m.recall, m.f1) == (100.0, 100.0, 100.0)
    assert (m.tp, m.fp, m.fn) == (2, 0, 0)


def test_reference_magnitudes_83_of_110():
    labels = [label(str(i), f"r{i}") for i in range(110)]
    findings = [finding(str(i), f"r{i}") for i in range(83)]
    m = evaluate(findings, labels)
    assert m.precision == pytest.approx(100.0)
    assert m.recall == pytest.approx(75.4545, abs=1e-3)
    assert m.f1 == pytest.approx(86.01, abs=5e-3)


def test_no_findings():
    m = evaluate([], [label("A", "B")])
    assert m.precision is None and m.recall == 0.0 and m.f1 is None


def test_no_labels_recall_na():
    m = evaluate([finding("A", "B")], [])
    assert m.recall is None and m.precision == 0.0 and m.f1 is None


def test_pair_matching_is_year_agnostic_by_default():
    labels = [label("A", "B", years=(2010,))]
    findings = [finding("A", "B", year=2015)]
    assert evaluate(findings, labels).tp == 1


def test_year_strict_mode():
    labels = [label("A", "B", years=(2010, 2011))]
    hit = evaluate([finding("A", "B", year=2011)], labels, year_strict=True)
    miss = evaluate([finding("A", "B", year=2015)], labels, year_strict=True)
    assert hit.tp == 1 and hit.fp == 0
    assert miss.tp == 0 and miss.fp == 1 and miss.fn == 1


def test_ordered_pairs_not_conflated():
    labels = [label("A", "B")]
    m = evaluate([finding("B", "A")], labels)
    assert m.tp == 0 and m.fp == 1 and m.fn == 1


def test_duplicate_findings_count_once():
    labels = [label("A", "B")]
    findings = [finding("A", "B", year=2005), finding("A", "B", year=2007)]
    m = evaluate(findings, labels)
    assert (m.tp, m.fp, m.fn) == (1, 0, 0)


@settings(max_examples=200, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=40),
       st.sets(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=40))
def test_f1_is_harmonic_mean_of_reported_p_and_r(pred, truth):
    labels = [label(str(a), str(b)) for a, b in truth if a != b]
    m = evaluate_pairs({(str(a), str(b)) for a, b in pred if a != b}, labels)
    assert m.tp + m.fn == len(labels)
    if m.f1 is not None:
        assert abs(m.f1 - 2 * m.precision * m.recall / (m.precision + m.recall)) < 1e-9


# --- findings file ------------------------------------------------------------------

def test_findings_jsonl_round_trip(tmp_path):
    findings = [
        AnomalyFinding("A", "B", 2005, ONE_SIDED_SYNCHRONOUS, 0.9, 0.88, 0.92,
                       AnomalyReason("many_one", 80.0, 10.0, 3)),
        AnomalyFinding("C", "D", None, None, 0.8, 0.8, None, None),
    ]
    path = tmp_path / "findings.jsonl"
    write_findings_jsonl(findings, path)
    assert read_findings_jsonl(path) == findings


def test_findings_jsonl_schema_fields(tmp_path):
    path = tmp_path / "findings.jsonl"
    write_findings_jsonl([finding("A", "B")], path)
    obj = json.loads(path.read_text().splitlines()[0])
    assert set(obj) == {"sender", "receiver", "year", "behaviour", "confidence",
                        "static_score", "temporal_score", "reason"}


def test_metrics_json_shape():
    m = evaluate([finding("A", "B")], [label("A", "B")])
    assert metrics_to_json(m) == {
        "precision": 100.0, "recall": 100.0, "f1": 100.0, "tp": 1, "fp": 0, "fn": 0}


# --- clustering baseline ---------------------------------------------------------------

def blob_tensor(low_pairs, high_pairs, low=5, high=500):
    t = CitationTensor(year_range=(2000, 2000))
    for a, b in low_pairs:
        t.set_count(a, b, 2000, low)
    for a, b in high_pairs:
        t.set_count(a, b, 2000, high)
    return t


def test_well_separated_blobs_high_norm_returned():
    journals = [f"J{i}" for i in range(8)]
    pairs = [(a, b) for a in journals for b in journals if a != b]
    high = {("J0", "J1"), ("J1", "J0"), ("J2", "J3"), ("J3", "J2")}
    low = [p for p in pairs if p not in high]
    tensor = blob_tensor(low, high)
    got = set(kmeans_baseline(tensor, seed=0))
    assert got == high


def test_identical_features_empty_prediction():
    journals = ["A", "B", "C"]
    pairs = [(a, b) for a in journals for b in journals if a != b]
    tensor = blob_tensor(pairs, [], low=7)
    assert kmeans_baseline(tensor, seed=0) == []


def test_single_pair_empty_prediction():
    tensor = CitationTensor(year_range=(2000, 2000))
    tensor.set_count("A", "B", 2000, 5)
    tensor.set_count("B", "A", 2000, 5)
    assert kmeans_baseline(tensor, seed=0) == []
