"""Static anomaly detection: box-plot fencing of journal-pair citation totals.

Journals are first bucketed by publication volume (up to 10 decile buckets).
For every ordered bucket pair, the all-years citation totals of the ordered
journal pairs spanning the two buckets form a grid of data points; points
outside ``[q1 - 1.5*IQR, q3 + 1.5*IQR]`` become candidates. Totals ignore the
per-year split entirely, so these candidates are year-independent.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

SIDE_ABOVE = "above"
SIDE_BELOW = "below"

DEFAULT_BUCKETS = 10
MIN_GRID_POINTS = 4


@dataclass(frozen=True)
class BucketIndex:
    """Partition of journals into volume buckets with the cutoffs used."""

    bucket_of: dict[str, int]
    boundaries: tuple[float, ...]
    n_buckets: int

    def members(self, bucket: int) -> list[str]:
        return sorted(j for j, b in self.bucket_of.items() if b == bucket)


@dataclass(frozen=True)
class GridStats:
    """Quartiles and Tukey fences for one grid of pair totals."""

    n: int
    q1: float
    q3: float
    iqr: float
    lower_fence: float
    upper_fence: float
    reliable: bool


@dataclass(frozen=True)
class StaticCandidate:
    sender: str
    receiver: str
    total_citations: int
    deviation: float
    side: str


def bucket_journals(paper_counts: dict[str, int], n_buckets: int = DEFAULT_BUCKETS) -> BucketIndex:
    """Split journals into up to ``n_buckets`` buckets by paper count.

    Cutoffs are the inner quantiles of the observed counts (linear
    interpolation). Ties in paper count always land in the same bucket, so
    fewer distinct counts yield fewer buckets; bucket ordinals are renumbered
    to be consecutive.
    """
    if not paper_counts:
        raise ValueError("bucket_journals() requires at least one journal")
    counts = np.asarray(sorted(paper_counts.values()), dtype=float)
    qs = np.linspace(0, 100, n_buckets + 1)[1:-1]
    raw = np.percentile(counts, qs) if len(qs) else np.asarray([])
    boundaries: list[float] = []
    for cut in raw:
        if not boundaries or cut > boundaries[-1]:
            boundaries.append(float(cut))

    provisional = {j: bisect_right(boundaries, c) for j, c in paper_counts.items()}
    occupied = sorted(set(provisional.values()))
    renumber = {old: new for new, old in enumerate(occupied)}
    bucket_of = {j: renumber[b] for j, b in provisional.items()}
    return BucketIndex(bucket_of=bucket_of, boundaries=tuple(boundaries), n_buckets=len(occupied))


def grid_stats(values) -> GridStats | None:
    """Quartiles (linear interpolation between closest ranks) and fences.

    Returns None for an empty grid; grids with fewer than ``MIN_GRID_POINTS``
    points get ``reliable=False`` and are skipped by detection.
    """
    vals = np.asarray(list(values), dtype=float)
    if vals.size == 0:
        return None
    q1, q3 = (float(q) for q in np.percentile(vals, [25, 75]))
    iqr = q3 - q1
    return GridStats(
        n=int(vals.size),
        q1=q1,
        q3=q3,
        iqr=iqr,
        lower_fence=q1 - 1.5 * iqr,
        upper_fence=q3 + 1.5 * iqr,
        reliable=vals.size >= MIN_GRID_POINTS,
    )


def classify_point(value: float, stats: GridStats) -> tuple[str, float] | None:
    """(side, deviation) for a point strictly outside the fences, else None.

    Deviation is fence-relative in IQR units; degenerate grids (iqr == 0)
    flag any value different from the constant, scaled by max(1, fence) to
    stay finite.
    """
    if stats.iqr > 0:
        if value > stats.upper_fence:
            return SIDE_ABOVE, (value - stats.upper_fence) / stats.iqr
        if value < stats.lower_fence:
            return SIDE_BELOW, (stats.lower_fence - value) / stats.iqr
        return None
    if value > stats.upper_fence:
        return SIDE_ABOVE, (value - stats.upper_fence) / max(1.0, stats.upper_fence)
    if value < stats.lower_fence:
        return SIDE_BELOW, (stats.lower_fence - value) / max(1.0, stats.lower_fence)
    return None


def grid_pairs(buckets: BucketIndex, bucket_a: int, bucket_b: int) -> list[tuple[str, str]]:
    """Ordered journal pairs spanning two buckets, self-pairs excluded."""
    return [
        (a, b)
        for a in buckets.members(bucket_a)
        for b in buckets.members(bucket_b)
        if a != b
    ]


def grid_stats_for(tensor, buckets: BucketIndex, bucket_a: int, bucket_b: int) -> GridStats | None:
    pairs = grid_pairs(buckets, bucket_a, bucket_b)
    return grid_stats(tensor.total(a, b) for a, b in pairs)


def detect_static(tensor, buckets: BucketIndex) -> list[StaticCandidate]:
    """Fence every bucket-pair grid and emit all out-of-fence pairs.

    Both sides are returned; callers filter to ``above`` unless suspiciously
    low counts are wanted too. Each ordered pair belongs to exactly one grid.
    """
    candidates: dict[tuple[str, str], StaticCandidate] = {}
    for bucket_a in range(buckets.n_buckets):
        for bucket_b in range(buckets.n_buckets):
            pairs = grid_pairs(buckets, bucket_a, bucket_b)
            totals = [tensor.total(a, b) for a, b in pairs]
            stats = grid_stats(totals)
            if stats is None:
                log.debug("grid (%d,%d) empty, skipped", bucket_a, bucket_b)
                continue
            if not stats.reliable:
                log.debug("grid (%d,%d) has %d < %d points, skipped",
                          bucket_a, bucket_b, stats.n, MIN_GRID_POINTS)
                continue
            for (a, b), total in zip(pairs, totals):
                hit = classify_point(total, stats)
                if hit is None:
                    continue
                side, deviation = hit
                candidates[(a, b)] = StaticCandidate(
                    sender=a, receiver=b, total_citations=total,
                    deviation=deviation, side=side,
                )
    return [candidates[k] for k in sorted(candidates)]
