"""Seeded synthetic benchmark: a journal-level tensor with labelled anomalies.

Baseline behaviour draws every (sender, receiver, year) cell uniformly from
the configured base range, and every journal's paper count uniformly from its
range. Labelled anomalies are then injected, with types allocated round-robin
and placed on unordered journal pairs no other label touches:

* T1: a single-year spike to ``spike_multiplier * base_max``.
* T2: a 3-5 year run climbing by a per-year step larger than any base-range
  year-over-year difference, every run value above the base range.
* T3: reciprocal spikes, (i, j) in year y and (j, i) in year y+1, emitted as
  a pair of labels.
* T4: the cell is pushed to at least double what the reverse direction held
  the year before (and above the base range).
* T5: the previous year's cell is first raised above the base range, then the
  year's cell set to at least double it; both years are labelled.

Everything is driven by the in-repo PCG32 stream, so a fixed seed reproduces
the emitted files byte for byte. Dataset files (format v1):
``tensor.csv`` (sender_id,receiver_id,year,count; nonzero cells only),
``labels.csv`` (sender_id,receiver_id,years semicolon-joined,type) and
``journals.csv`` (journal_id,paper_count,name).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CitationTensor, write_journals_csv, write_tensor_csv
from .errors import GenerationError, ParseError
from .rng import Pcg32

TYPE_ORDER = ("T1", "T2", "T3", "T4", "T5")

LABELS_HEADER = ["sender_id", "receiver_id", "years", "type"]

# injection margins, as fractions of base_max so they scale with the range
T2_RUN_LENGTHS = (3, 5)
T2_STEP_EXTRA_FRAC = (1.0, 2.0)
T4_BOOST_FRAC = 3.5
T5_PREV_EXTRA_FRAC = (0.4, 0.85)
T5_BOOST_FRAC = 0.75


def _frac_range(base_max: int, fracs: tuple[float, float]) -> tuple[int, int]:
    lo, hi = (max(1, round(f * base_max)) for f in fracs)
    return lo, max(lo, hi)


@dataclass(frozen=True)
class SynthConfig:
    n_journals: int = 100
    year_min: int = 2000
    year_max: int = 2020
    papers_min: int = 50
    papers_max: int = 500
    base_min: int = 0
    base_max: int = 50
    n_anomalies: int = 110
    seed: int = 42
    spike_multiplier: int = 8
    # anomalous years start this many years after year_min, so every injected
    # year has enough history to be testable at the detector's defaults
    lead_years: int = 12

    def validate(self) -> None:
        if self.n_journals < 2:
            raise GenerationError("need at least 2 journals")
        if self.year_max < self.year_min:
            raise GenerationError("empty year range")
        if self.year_max - self.year_min < 1:
            raise GenerationError("year range must span at least 2 years for injections")
        if self.lead_years < 0:
            raise GenerationError("lead_years must be >= 0")
        if self.n_anomalies > 0 and self.year_min + self.lead_years + 1 > self.year_max:
            raise GenerationError("year range too short for lead_years; anomalies would not fit")
        if self.papers_max < self.papers_min or self.papers_min < 0:
            raise GenerationError("bad papers_per_journal range")
        if self.base_max < self.base_min or self.base_min < 0:
            raise GenerationError("bad base_citations range")
        if self.n_anomalies < 0:
            raise GenerationError("n_anomalies must be >= 0")
        max_pairs = self.n_journals * (self.n_journals - 1)
        if self.n_anomalies > max_pairs:
            raise GenerationError(
                f"{self.n_anomalies} anomalies cannot fit in {max_pairs} ordered pairs; "
                "increase n_journals")
        if self.spike_multiplier < 2:
            raise GenerationError("spike_multiplier must be >= 2")

    def years(self) -> list[int]:
        return list(range(self.year_min, self.year_max + 1))


@dataclass(frozen=True)
class GroundTruthLabel:
    sender: str
    receiver: str
    years: frozenset[int]
    injection_type: str

    @property
    def pair(self) -> tuple[str, str]:
        return (self.sender, self.receiver)


@dataclass
class SynthDataset:
    tensor: CitationTensor
    labels: list[GroundTruthLabel]
    config: SynthConfig
    journal_sizes: dict[str, int] = field(default_factory=dict)

    def journal_names(self) -> dict[str, str]:
        return {jid: f"Journal {jid}" for jid in self.journal_sizes}


def _allocate_events(n_anomalies: int) -> list[str]:
    """Round-robin label quotas per type; a T3 event emits two labels.

    Quotas are dealt one label at a time over T1..T5, so 110 anomalies give
    22 of each type. An odd T3 quota hands its leftover label to T4 (a T3
    event is always a reciprocal pair).
    """
    quota = {t: 0 for t in TYPE_ORDER}
    for k in range(n_anomalies):
        quota[TYPE_ORDER[k % len(TYPE_ORDER)]] += 1
    if quota["T3"] % 2:
        quota["T3"] -= 1
        quota["T4"] += 1
    events: list[str] = []
    while any(quota.values()):
        for t in TYPE_ORDER:
            need = 2 if t == "T3" else 1
            if quota[t] >= need:
                quota[t] -= need
                events.append(t)
    return events


def generate(config: SynthConfig) -> SynthDataset:
    """Build the benchmark deterministically from the config's seed."""
    config.validate()
    rng = Pcg32(config.seed)
    journals = [str(i) for i in range(config.n_journals)]
    years = config.years()

    sizes = {jid: rng.randint(config.papers_min, config.papers_max) for jid in journals}

    tensor = CitationTensor(year_range=(config.year_min, config.year_max))
    for s in journals:
        for r in journals:
            for y in years:
                tensor.set_count(s, r, y, rng.randint(config.base_min, config.base_max))

    events = _allocate_events(config.n_anomalies)
    n_unordered = config.n_journals * (config.n_journals - 1) // 2
    if len(events) > n_unordered:
        raise GenerationError(
            f"{len(events)} injection events do not fit in {n_unordered} unordered pairs; "
            "increase n_journals")

    used: set[tuple[str, str]] = set()
    labels: list[GroundTruthLabel] = []
    for event_type in events:
        pair = _draw_free_pair(rng, journals, used)
        used.add(pair)
        labels.extend(_INJECTORS[event_type](tensor, pair[0], pair[1], rng, config))

    _check_injections(tensor, labels, config)
    return SynthDataset(tensor=tensor, labels=labels, config=config, journal_sizes=sizes)


def _draw_free_pair(rng: Pcg32, journals: list[str], used: set) -> tuple[str, str]:
    n = len(journals)
    for _ in range(100_000):
        i = rng.randbelow(n)
        j = rng.randbelow(n)
        if i == j:
            continue
        key = (journals[min(i, j)], journals[max(i, j)])
        if key not in used:
            return key
    raise GenerationError("could not place an anomaly without collisions; increase n_journals")


def _first_hot_year(config) -> int:
    return config.year_min + config.lead_years


def _inject_t1(tensor, i, j, rng, config):
    year = rng.randint(_first_hot_year(config), config.year_max)
    tensor.set_count(i, j, year, config.spike_multiplier * config.base_max)
    return [GroundTruthLabel(i, j, frozenset({year}), "T1")]


def _inject_t2(tensor, i, j, rng, config):
    run_len = rng.randint(*T2_RUN_LENGTHS)
    run_len = min(run_len, config.year_max - _first_hot_year(config) + 1)
    start = rng.randint(_first_hot_year(config), config.year_max - run_len + 1)
    step = (config.base_max - config.base_min) + rng.randint(
        *_frac_range(config.base_max, T2_STEP_EXTRA_FRAC))
    run_years = []
    for k in range(run_len):
        tensor.set_count(i, j, start + k, config.base_max + step * (k + 1))
        run_years.append(start + k)
    return [GroundTruthLabel(i, j, frozenset(run_years), "T2")]


def _inject_t3(tensor, i, j, rng, config):
    year = rng.randint(_first_hot_year(config), config.year_max - 1)
    spike = config.spike_multiplier * config.base_max
    tensor.set_count(i, j, year, spike)
    tensor.set_count(j, i, year + 1, spike)
    return [
        GroundTruthLabel(i, j, frozenset({year}), "T3"),
        GroundTruthLabel(j, i, frozenset({year + 1}), "T3"),
    ]


def _inject_t4(tensor, i, j, rng, config):
    year = rng.randint(max(_first_hot_year(config), config.year_min + 1), config.year_max)
    reverse_prev = tensor.count(j, i, year - 1)
    boost = rng.randint(0, round(config.base_max * T4_BOOST_FRAC))
    value = max(2 * reverse_prev, config.base_max + 1) + boost
    tensor.set_count(i, j, year, value)
    return [GroundTruthLabel(i, j, frozenset({year}), "T4")]


def _inject_t5(tensor, i, j, rng, config):
    # both labelled years stay inside the hot window
    year = rng.randint(_first_hot_year(config) + 1, config.year_max)
    prev = config.base_max + rng.randint(*_frac_range(config.base_max, T5_PREV_EXTRA_FRAC))
    value = 2 * prev + rng.randint(0, max(1, round(config.base_max * T5_BOOST_FRAC)))
    tensor.set_count(i, j, year - 1, prev)
    tensor.set_count(i, j, year, value)
    return [GroundTruthLabel(i, j, frozenset({year - 1, year}), "T5")]


_INJECTORS = {"T1": _inject_t1, "T2": _inject_t2, "T3": _inject_t3, "T4": _inject_t4, "T5": _inject_t5}


def _check_injections(tensor, labels, config) -> None:
    """Generator self-check: labelled cells sit outside the base range."""
    for lab in labels:
        for y in lab.years:
            value = tensor.count(lab.sender, lab.receiver, y)
            if config.base_min <= value <= config.base_max:
                raise GenerationError(
                    f"injection bug: labelled cell ({lab.sender},{lab.receiver},{y}) "
                    f"= {value} is inside the base range")


# --- dataset files -------------------------------------------------------------

def write_labels_csv(labels: list[GroundTruthLabel], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LABELS_HEADER)
        for lab in labels:
            w.writerow([lab.sender, lab.receiver,
                        ";".join(str(y) for y in sorted(lab.years)), lab.injection_type])


def read_labels_csv(path: str | Path) -> list[GroundTruthLabel]:
    labels: list[GroundTruthLabel] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != LABELS_HEADER:
            raise ParseError(f"bad labels header {header!r}, expected {LABELS_HEADER}", 1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 columns, got {len(row)}", line_no)
            if row[3] not in TYPE_ORDER:
                raise ParseError(f"unknown injection type {row[3]!r}", line_no)
            try:
                years = frozenset(int(y) for y in row[2].split(";") if y)
            except ValueError:
                raise ParseError(f"bad years field {row[2]!r}", line_no) from None
            if not years:
                raise ParseError("label has no years", line_no)
            labels.append(GroundTruthLabel(row[0], row[1], years, row[3]))
    return labels


def write_dataset(dataset: SynthDataset, outdir: str | Path) -> dict[str, Path]:
    """Write tensor.csv, labels.csv and journals.csv into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "tensor": outdir / "tensor.csv",
        "labels": outdir / "labels.csv",
        "journals": outdir / "journals.csv",
    }
    write_tensor_csv(dataset.tensor, paths["tensor"])
    write_labels_csv(dataset.labels, paths["labels"])
    write_journals_csv(paths["journals"], dataset.journal_sizes, dataset.journal_names())
    return paths
