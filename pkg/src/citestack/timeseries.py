"""Dynamic anomaly detection: per-year tests against each pair's own history.

For a directed pair and a year Y, the band is mean + 3 * population std of the
counts strictly before Y (no lookahead). A year whose count strictly exceeds
the band fires for that direction; if both directions of a pair fire in the
same year the two one-sided hits collapse into a double-sided finding.

Synchronous vs dianchronous labelling: at pair level the raw counts of a
direction are the same numbers whether read from the sender or the receiver,
so the label comes from normalized views instead. The sender view tracks the
count as a fraction of the sender's total outgoing citations that year, the
receiver view as a fraction of the receiver's total incoming citations; the
view that is outside its own band names the behaviour, and when the views
agree the larger share wins (the flow is attributed to the journal it matters
more to). All of that interpretation sits in :func:`_view_label` so it can be
swapped in one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MIN_HISTORY = 12

ONE_SIDED_SYNCHRONOUS = "one_sided_synchronous"
ONE_SIDED_DIANCHRONOUS = "one_sided_dianchronous"
DOUBLE_SIDED_SYNCHRONOUS = "double_sided_synchronous"
DOUBLE_SIDED_DIANCHRONOUS = "double_sided_dianchronous"

BEHAVIOURS = frozenset({
    ONE_SIDED_SYNCHRONOUS,
    ONE_SIDED_DIANCHRONOUS,
    DOUBLE_SIDED_SYNCHRONOUS,
    DOUBLE_SIDED_DIANCHRONOUS,
})

DOUBLE_SIDED = frozenset({DOUBLE_SIDED_SYNCHRONOUS, DOUBLE_SIDED_DIANCHRONOUS})


@dataclass(frozen=True)
class EmpiricalBand:
    mean: float
    std: float
    upper: float


@dataclass(frozen=True)
class TemporalFinding:
    """One anomalous (pair, year). ``sender -> receiver`` is the firing
    direction (the dominant one for double-sided findings); ``z_reverse``
    carries the other direction's excess when both fired."""

    sender: str
    receiver: str
    year: int
    behaviour: str
    z_excess: float
    z_reverse: float | None = None

    @property
    def double_sided(self) -> bool:
        return self.behaviour in DOUBLE_SIDED


def empirical_band(history: Sequence[float]) -> EmpiricalBand:
    """Band of a strict prefix: mean + 3 * population std."""
    if not history:
        raise ValueError("empirical_band() requires a non-empty history")
    n = len(history)
    mean = sum(history) / n
    var = sum((x - mean) ** 2 for x in history) / n
    std = math.sqrt(var)
    return EmpiricalBand(mean=mean, std=std, upper=mean + 3.0 * std)


def exceedance(value: float, band: EmpiricalBand) -> float | None:
    """How far ``value`` sits above the band, in std units; None if inside.

    Degenerate bands (std == 0) fire on any value strictly above the mean and
    report the raw excess in count units so the score stays finite.
    """
    if band.std > 0:
        if value > band.upper:
            return (value - band.upper) / band.std
        return None
    if value > band.mean:
        return value - band.mean
    return None


def _outside_band(series: Sequence[float], idx: int) -> bool:
    """Is series[idx] strictly above the band of its prefix?"""
    band = empirical_band(series[:idx])
    return exceedance(series[idx], band) is not None


def _direction_view(tensor, sender: str, receiver: str, idx: int) -> tuple[bool, bool, float, float]:
    """(sync outside, dia outside, sync share, dia share) for one direction.

    The sender view normalizes the direction's counts by the sender's total
    outgoing citations per year, the receiver view by the receiver's total
    incoming citations (0 when a denominator is 0).
    """
    years = tensor.years()
    raw = tensor.series(sender, receiver)
    sync_series = []
    dia_series = []
    for pos, y in enumerate(years):
        out_tot = tensor.out_total(sender, y)
        in_tot = tensor.in_total(receiver, y)
        sync_series.append(raw[pos] / out_tot if out_tot else 0.0)
        dia_series.append(raw[pos] / in_tot if in_tot else 0.0)
    return (
        _outside_band(sync_series, idx),
        _outside_band(dia_series, idx),
        sync_series[idx],
        dia_series[idx],
    )


def _view_label(tensor, directions: list[tuple[str, str]], idx: int, year: int) -> str:
    """Name a firing year synchronous or dianchronous via normalized views.

    A direction reads synchronous when its share of the sender's outgoing
    citations is outside that view's band while the receiver-intake view is
    not, and dianchronous in the mirrored case. When the two views agree
    (both outside or both inside), the flow is attributed to the journal it
    matters more to: the larger share wins, so a spike toward a far more
    popular journal reads synchronous and one from a far more popular
    journal reads dianchronous. All interpretation of the sync/dia split
    lives here so it can be swapped in one place.
    """
    sync_votes = 0
    dia_votes = 0
    sync_share_sum = 0.0
    dia_share_sum = 0.0
    for sender, receiver in directions:
        sync_out, dia_out, sync_share, dia_share = _direction_view(tensor, sender, receiver, idx)
        sync_share_sum += sync_share
        dia_share_sum += dia_share
        if sync_out != dia_out:
            if sync_out:
                sync_votes += 1
            else:
                dia_votes += 1
        elif sync_share >= dia_share:
            sync_votes += 1
        else:
            dia_votes += 1
    if sync_votes == dia_votes:
        synchronous = sync_share_sum >= dia_share_sum
    else:
        synchronous = sync_votes > dia_votes
    double = len(directions) == 2
    if synchronous:
        return DOUBLE_SIDED_SYNCHRONOUS if double else ONE_SIDED_SYNCHRONOUS
    return DOUBLE_SIDED_DIANCHRONOUS if double else ONE_SIDED_DIANCHRONOUS


def detect_temporal(tensor, candidate_pairs: Iterable[tuple[str, str]],
                    min_history: int = DEFAULT_MIN_HISTORY) -> list[TemporalFinding]:
    """Run the per-year band test over both directions of the given pairs.

    ``candidate_pairs`` is typically the box-plot output; each unordered pair
    is tested once. Years with fewer than ``min_history`` prior years are
    skipped. Findings are sorted by (year, sender, receiver).
    """
    years = tensor.years()
    findings: list[TemporalFinding] = []
    seen: set[tuple[str, str]] = set()
    for pair in candidate_pairs:
        a, b = pair
        key = (a, b) if a <= b else (b, a)
        if key in seen or a == b:
            continue
        seen.add(key)
        fwd = tensor.series(a, b)
        rev = tensor.series(b, a)
        for idx in range(min_history, len(years)):
            z_fwd = exceedance(fwd[idx], empirical_band(fwd[:idx]))
            z_rev = exceedance(rev[idx], empirical_band(rev[:idx]))
            year = years[idx]
            if z_fwd is not None and z_rev is not None:
                if z_fwd >= z_rev:
                    sender, receiver, z, zr = a, b, z_fwd, z_rev
                else:
                    sender, receiver, z, zr = b, a, z_rev, z_fwd
                behaviour = _view_label(tensor, [(sender, receiver), (receiver, sender)], idx, year)
                findings.append(TemporalFinding(sender, receiver, year, behaviour, z, zr))
            elif z_fwd is not None:
                behaviour = _view_label(tensor, [(a, b)], idx, year)
                findings.append(TemporalFinding(a, b, year, behaviour, z_fwd))
            elif z_rev is not None:
                behaviour = _view_label(tensor, [(b, a)], idx, year)
                findings.append(TemporalFinding(b, a, year, behaviour, z_rev))
    findings.sort(key=lambda f: (f.year, f.sender, f.receiver))
    return findings
