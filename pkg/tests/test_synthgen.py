import pytest

from citestack.corpus import CitationTensor
from citestack.errors import GenerationError
from citestack.rng import Pcg32
from citestack.synthgen import (
    SynthConfig,
    _inject_t4,
    generate,
    read_labels_csv,
    write_dataset,
    write_labels_csv,
)


def scan_cells(dataset):
    """Exhaustive oracle: partition all off-diagonal cells by base-range fit."""
    cfg = dataset.config
    labelled = {(lab.sender, lab.receiver, y) for lab in dataset.labels for y in lab.years}
    inside, outside = [], []
    journals = [str(i) for i in range(cfg.n_journals)]
    for s in journals:
        for r in journals:
            if s == r:
                continue
            for y in cfg.years():
                v = dataset.tensor.count(s, r, y)
                key = (s, r, y)
                if cfg.base_min <= v <= cfg.base_max:
                    inside.append(key)
                else:
                    outside.append(key)
    return labelled, set(inside), set(outside)


def test_default_config_110_labels_over_9900_pairs():
    ds = generate(SynthConfig())
    assert len(ds.labels) == 110
    assert ds.config.n_journals ** 2 - ds.config.n_journals == 9900
    pairs = {lab.pair for lab in ds.labels}
    assert len(pairs) == 110  # no two labels share an ordered pair
    rate = 100.0 * len(pairs) / 9900
    assert rate == pytest.approx(1.11, abs=0.01)


def test_round_robin_type_quotas():
    ds = generate(SynthConfig())
    by_type = {}
    for lab in ds.labels:
        by_type[lab.injection_type] = by_type.get(lab.injection_type, 0) + 1
    assert by_type == {"T1": 22, "T2": 22, "T3": 22, "T4": 22, "T5": 22}


def test_t3_labels_come_in_reciprocal_consecutive_pairs():
    ds = generate(SynthConfig())
    t3 = [lab for lab in ds.labels if lab.injection_type == "T3"]
    assert len(t3) % 2 == 0
    by_pair = {lab.pair: lab for lab in t3}
    seen = set()
    for lab in t3:
        if lab.pair in seen:
            continue
        mirror = by_pair.get((lab.receiver, lab.sender))
        assert mirror is not None
        y_fwd, y_rev = next(iter(lab.years)), next(iter(mirror.years))
        assert abs(y_fwd - y_rev) == 1
        seen.add(lab.pair)
        seen.add(mirror.pair)


def test_determinism_same_seed():
    a, b = generate(SynthConfig(seed=9)), generate(SynthConfig(seed=9))
    assert a.labels == b.labels
    assert a.journal_sizes == b.journal_sizes
    journals = [str(i) for i in range(a.config.n_journals)]
    for s in journals[:10]:
        for r in journals[:10]:
            for y in a.config.years():
                assert a.tensor.count(s, r, y) == b.tensor.count(s, r, y)


def test_different_seed_differs():
    a, b = generate(SynthConfig(seed=1)), generate(SynthConfig(seed=2))
    assert a.labels != b.labels


def test_deterministic_files_byte_identical(tmp_path):
    for name in ("one", "two"):
        write_dataset(generate(SynthConfig(seed=5)), tmp_path / name)
    for fname in ("tensor.csv", "labels.csv", "journals.csv"):
        assert (tmp_path / "one" / fname).read_bytes() == (tmp_path / "two" / fname).read_bytes()


def test_labelled_cells_outside_base_range_unlabelled_inside():
    ds = generate(SynthConfig(n_journals=20, n_anomalies=12, seed=3))
    labelled, inside, outside = scan_cells(ds)
    assert outside == labelled
    assert labelled.isdisjoint(inside)


def test_no_injection_when_zero_anomalies():
    ds = generate(SynthConfig(n_journals=10, n_anomalies=0, seed=4))
    assert ds.labels == []
    labelled, inside, outside = scan_cells(ds)
    assert outside == set()


def test_three_journals_single_anomaly_exhaustive_scan():
    ds = generate(SynthConfig(n_journals=3, n_anomalies=1, seed=7))
    assert len(ds.labels) == 1
    labelled, inside, outside = scan_cells(ds)
    assert outside == labelled and len(outside) >= 1


def test_infeasible_placement_raises():
    with pytest.raises(GenerationError, match="n_journals"):
        generate(SynthConfig(n_journals=2, n_anomalies=10))


def test_config_validation():
    with pytest.raises(GenerationError):
        SynthConfig(n_journals=1).validate()
    with pytest.raises(GenerationError):
        SynthConfig(base_min=10, base_max=5).validate()
    with pytest.raises(GenerationError):
        SynthConfig(year_min=2010, year_max=2005).validate()
    with pytest.raises(GenerationError):
        SynthConfig(n_anomalies=-1).validate()


def test_t1_spike_arithmetic():
    # spike value is spike_multiplier * base_max exactly
    cfg = SynthConfig(n_journals=4, n_anomalies=1, seed=11,
                      base_max=20, spike_multiplier=5, lead_years=3)
    ds = generate(cfg)
    lab = ds.labels[0]
    assert lab.injection_type == "T1"
    (year,) = lab.years
    assert ds.tensor.count(lab.sender, lab.receiver, year) == 100


def test_t4_doubles_reverse_direction():
    # craft the reverse cell at 30 and check the injected cell is >= 60
    cfg = SynthConfig(n_journals=4, seed=0)
    tensor = CitationTensor(year_range=(cfg.year_min, cfg.year_max))
    for y in cfg.years():
        tensor.set_count("1", "0", y, 30)
        tensor.set_count("0", "1", y, 5)
    (label,) = _inject_t4(tensor, "0", "1", Pcg32(1), cfg)
    (year,) = label.years
    assert tensor.count("0", "1", year) >= 2 * 30


def test_t4_relation_holds_in_generated_data():
    ds = generate(SynthConfig(seed=6))
    for lab in ds.labels:
        if lab.injection_type != "T4":
            continue
        (year,) = lab.years
        fwd = ds.tensor.count(lab.sender, lab.receiver, year)
        rev = ds.tensor.count(lab.receiver, lab.sender, year - 1)
        assert fwd >= 2 * rev
        assert fwd > ds.config.base_max


def test_t5_prior_year_raised_then_doubled():
    ds = generate(SynthConfig(seed=6))
    for lab in ds.labels:
        if lab.injection_type != "T5":
            continue
        y0, y1 = sorted(lab.years)
        assert y1 == y0 + 1
        prev = ds.tensor.count(lab.sender, lab.receiver, y0)
        curr = ds.tensor.count(lab.sender, lab.receiver, y1)
        assert prev > ds.config.base_max
        assert curr >= 2 * prev


def test_t2_runs_increase_beyond_base_differences():
    ds = generate(SynthConfig(seed=6))
    max_base_diff = ds.config.base_max - ds.config.base_min
    for lab in ds.labels:
        if lab.injection_type != "T2":
            continue
        years = sorted(lab.years)
        assert len(years) >= 3
        assert years == list(range(years[0], years[-1] + 1))
        values = [ds.tensor.count(lab.sender, lab.receiver, y) for y in years]
        diffs = [b - a for a, b in zip(values, values[1:])]
        assert all(d > max_base_diff for d in diffs)
        assert all(v > ds.config.base_max for v in values)


def test_labels_within_year_range_and_off_diagonal():
    ds = generate(SynthConfig(seed=8))
    years = set(ds.config.years())
    for lab in ds.labels:
        assert lab.sender != lab.receiver
        assert lab.years <= years


def test_labels_csv_round_trip(tmp_path):
    ds = generate(SynthConfig(n_journals=12, n_anomalies=7, seed=2))
    path = tmp_path / "labels.csv"
    write_labels_csv(ds.labels, path)
    assert read_labels_csv(path) == ds.labels


def test_journal_sizes_within_range():
    ds = generate(SynthConfig(seed=1))
    assert len(ds.journal_sizes) == 100
    for size in ds.journal_sizes.values():
        assert ds.config.papers_min <= size <= ds.config.papers_max
