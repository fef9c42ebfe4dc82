"""Reasons behind an anomalous pair: crowding categories and collaboration ties.

Needs the paper level, so it only runs on ingested corpora (the synthetic
benchmark is journal-level only and its findings carry no reason).

Sender side: per paper of the sender journal, how many of its references land
in the receiver journal; a paper is "crowded" when that count is strictly
above mean + population std of the distribution. Receiver side mirrors this
with citations received per paper. The two percentages drive the four-way
many/one categorization; percentages between the 25/75 cutoffs fall into
``uncategorized`` because no rule covers them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import CollaborationIndex, Corpus

MANY_MANY = "many_many"
MANY_ONE = "many_one"
ONE_MANY = "one_many"
ONE_ONE = "one_one"
UNCATEGORIZED = "uncategorized"

CATEGORIES = frozenset({MANY_MANY, MANY_ONE, ONE_MANY, ONE_ONE, UNCATEGORIZED})

HIGH_CUTOFF = 75.0
LOW_CUTOFF = 25.0


@dataclass(frozen=True)
class CrowdingStats:
    sender_percentage: float
    receiver_percentage: float


@dataclass(frozen=True)
class AnomalyReason:
    category: str
    sender_percentage: float
    receiver_percentage: float
    prev_collaborations: int


def _crowded_share(counts: list[int]) -> float:
    """Percent of counts strictly above mean + population std (std=0: above mean)."""
    n = len(counts)
    mean = sum(counts) / n
    std = math.sqrt(sum((c - mean) ** 2 for c in counts) / n)
    threshold = mean + std
    crowded = sum(1 for c in counts if c > threshold)
    return 100.0 * crowded / n


def crowding_stats(corpus: Corpus, sender: str, receiver: str) -> CrowdingStats:
    """Sender/receiver crowding percentages for one directed journal pair."""
    sender_papers = corpus.papers_in_journal(sender)
    receiver_papers = corpus.papers_in_journal(receiver)
    if not sender_papers:
        raise ValueError(f"journal {sender!r} has no papers")
    if not receiver_papers:
        raise ValueError(f"journal {receiver!r} has no papers")

    outgoing = []
    for p in sender_papers:
        count = 0
        for ref in p.references:
            cited = corpus.papers.get(ref)
            if cited is not None and cited.journal_id == receiver:
                count += 1
        outgoing.append(count)

    received = {q.paper_id: 0 for q in receiver_papers}
    for p in sender_papers:
        for ref in p.references:
            if ref in received:
                received[ref] += 1

    return CrowdingStats(
        sender_percentage=_crowded_share(outgoing),
        receiver_percentage=_crowded_share(list(received.values())),
    )


def categorize(crowding: CrowdingStats) -> str:
    s, r = crowding.sender_percentage, crowding.receiver_percentage
    if s > HIGH_CUTOFF and r > HIGH_CUTOFF:
        return MANY_MANY
    if s > HIGH_CUTOFF and r < LOW_CUTOFF:
        return MANY_ONE
    if s < LOW_CUTOFF and r > HIGH_CUTOFF:
        return ONE_MANY
    if s < LOW_CUTOFF and r < LOW_CUTOFF:
        return ONE_ONE
    return UNCATEGORIZED


def count_prev_collabs(corpus: Corpus, collab_index: CollaborationIndex,
                       sender: str, receiver: str) -> int:
    """Citing-paper/cited-paper pairs whose authors collaborated before.

    Counts +1 per citation edge from the sender journal into the receiver
    journal when some author of the citing paper co-authored with some author
    of the cited paper strictly before the citing paper's year.
    """
    total = 0
    for p in corpus.papers.values():
        if p.journal_id != sender:
            continue
        for ref in p.references:
            q = corpus.papers.get(ref)
            if q is None or q.journal_id != receiver:
                continue
            if _collaborated_before(collab_index, p.authors, q.authors, p.year):
                total += 1
    return total


def _collaborated_before(index: CollaborationIndex, citing_authors, cited_authors, year: int) -> bool:
    for a in citing_authors:
        coauthors = index.coauthors(a)
        for b in cited_authors:
            earliest = coauthors.get(b)
            if earliest is not None and earliest < year:
                return True
    return False


def build_reason(corpus: Corpus, collab_index: CollaborationIndex,
                 sender: str, receiver: str) -> AnomalyReason:
    crowding = crowding_stats(corpus, sender, receiver)
    return AnomalyReason(
        category=categorize(crowding),
        sender_percentage=crowding.sender_percentage,
        receiver_percentage=crowding.receiver_percentage,
        prev_collaborations=count_prev_collabs(corpus, collab_index, sender, receiver),
    )
