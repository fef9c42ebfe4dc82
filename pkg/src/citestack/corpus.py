"""Paper-level corpus ingestion and the journal-level aggregates built from it.

Two input encodings are accepted interchangeably (format v1):

* tab-separated lines: ``paper_id<TAB>journal_id<TAB>year<TAB>a1,a2<TAB>r1,r2``
  with empty author/reference fields allowed;
* JSON lines with keys ``paper_id, journal_id, year, authors, references``.

Everything downstream consumes the three structures built here: the validated
:class:`Corpus`, the :class:`CitationTensor` of per-year journal-to-journal
citation counts, and the :class:`CollaborationIndex` of co-author history.
All three are immutable once built and safe to share across threads.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import IngestError, ParseError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PaperRecord:
    """One publication: where and when it appeared, by whom, citing what."""

    paper_id: str
    journal_id: str
    year: int
    authors: frozenset[str]
    references: frozenset[str]


@dataclass
class Corpus:
    """A validated set of papers plus per-journal paper counts.

    ``dangling_references`` counts reference ids that resolve to no paper in
    the corpus; they are kept on the records but contribute no citation edge.
    """

    papers: dict[str, PaperRecord]
    journals: dict[str, int]
    year_range: tuple[int, int] | None
    dangling_references: int = 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self.papers == other.papers

    def papers_in_journal(self, journal_id: str) -> list[PaperRecord]:
        return [p for p in self.papers.values() if p.journal_id == journal_id]

    def papers_per_year(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.papers.values():
            out[p.year] = out.get(p.year, 0) + 1
        return out


class CitationTensor:
    """Counts of citations (sender journal, receiver journal, year).

    The year of an edge is the publication year of the citing paper. Absent
    keys mean zero. Diagonal (self-citation) cells are stored but excluded
    from pair-level detection.
    """

    def __init__(self, year_range: tuple[int, int] | None = None):
        self._counts: dict[tuple[str, str], dict[int, int]] = {}
        self.year_range = year_range
        self.journals: set[str] = set()
        self._out_totals: dict[tuple[str, int], int] | None = None
        self._in_totals: dict[tuple[str, int], int] | None = None

    def add(self, sender: str, receiver: str, year: int, n: int = 1) -> None:
        cell = self._counts.setdefault((sender, receiver), {})
        cell[year] = cell.get(year, 0) + n
        self.journals.add(sender)
        self.journals.add(receiver)
        if self.year_range is None:
            self.year_range = (year, year)
        else:
            lo, hi = self.year_range
            self.year_range = (min(lo, year), max(hi, year))
        self._out_totals = self._in_totals = None

    def set_count(self, sender: str, receiver: str, year: int, n: int) -> None:
        if n < 0:
            raise ValueError("citation counts are non-negative")
        self._counts.setdefault((sender, receiver), {})[year] = n
        self.journals.add(sender)
        self.journals.add(receiver)
        self._out_totals = self._in_totals = None

    def count(self, sender: str, receiver: str, year: int) -> int:
        return self._counts.get((sender, receiver), {}).get(year, 0)

    def years(self) -> list[int]:
        if self.year_range is None:
            return []
        return list(range(self.year_range[0], self.year_range[1] + 1))

    def series(self, sender: str, receiver: str) -> list[int]:
        """Chronological per-year counts for one direction over the full span."""
        cell = self._counts.get((sender, receiver), {})
        return [cell.get(y, 0) for y in self.years()]

    def total(self, sender: str, receiver: str) -> int:
        return sum(self._counts.get((sender, receiver), {}).values())

    def pairs(self) -> Iterator[tuple[str, str]]:
        return iter(self._counts.keys())

    def total_edges(self) -> int:
        return sum(sum(cell.values()) for cell in self._counts.values())

    def _build_totals(self) -> None:
        out: dict[tuple[str, int], int] = {}
        inc: dict[tuple[str, int], int] = {}
        for (s, r), cell in self._counts.items():
            if s == r:
                continue
            for y, n in cell.items():
                out[(s, y)] = out.get((s, y), 0) + n
                inc[(r, y)] = inc.get((r, y), 0) + n
        self._out_totals, self._in_totals = out, inc

    def out_total(self, journal: str, year: int) -> int:
        """Total off-diagonal citations sent by a journal in one year."""
        if self._out_totals is None:
            self._build_totals()
        return self._out_totals.get((journal, year), 0)

    def in_total(self, journal: str, year: int) -> int:
        """Total off-diagonal citations received by a journal in one year."""
        if self._in_totals is None:
            self._build_totals()
        return self._in_totals.get((journal, year), 0)


class CollaborationIndex:
    """Symmetric author -> coauthor -> earliest joint publication year."""

    def __init__(self):
        self._index: dict[str, dict[str, int]] = {}

    def record(self, a: str, b: str, year: int) -> None:
        if a == b:
            return
        for x, y in ((a, b), (b, a)):
            seen = self._index.setdefault(x, {})
            if y not in seen or year < seen[y]:
                seen[y] = year

    def coauthors(self, author: str) -> dict[str, int]:
        return self._index.get(author, {})

    def earliest(self, a: str, b: str) -> int | None:
        return self._index.get(a, {}).get(b)

    def authors(self) -> Iterable[str]:
        return self._index.keys()

    def __len__(self) -> int:
        return len(self._index)


def _parse_tsv_line(line: str, line_no: int) -> PaperRecord:
    fields = line.split("\t")
    if len(fields) != 5:
        raise ParseError(f"expected 5 tab-separated fields, got {len(fields)}", line_no)
    paper_id, journal_id, year_s, authors_s, refs_s = fields
    if not paper_id:
        raise ParseError("empty paper_id", line_no)
    if not journal_id:
        raise ParseError("empty journal_id", line_no)
    try:
        year = int(year_s)
    except ValueError:
        raise ParseError(f"year is not an integer: {year_s!r}", line_no) from None
    authors = frozenset(a for a in authors_s.split(",") if a)
    references = frozenset(r for r in refs_s.split(",") if r)
    return _checked_record(paper_id, journal_id, year, authors, references, line_no)


def _parse_jsonl_line(line: str, line_no: int) -> PaperRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line_no) from None
    if not isinstance(obj, dict):
        raise ParseError("record is not a JSON object", line_no)
    for key in ("paper_id", "journal_id", "year"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}", line_no)
    year = obj["year"]
    if isinstance(year, bool) or not isinstance(year, int):
        raise ParseError(f"year is not an integer: {year!r}", line_no)
    authors = frozenset(str(a) for a in obj.get("authors", []) or [])
    references = frozenset(str(r) for r in obj.get("references", []) or [])
    return _checked_record(str(obj["paper_id"]), str(obj["journal_id"]), year, authors, references, line_no)


def _checked_record(paper_id, journal_id, year, authors, references, line_no) -> PaperRecord:
    if paper_id in references:
        raise ParseError(f"paper {paper_id!r} references itself", line_no)
    return PaperRecord(paper_id, journal_id, year, authors, references)


def ingest(source: str | Path | IO[str], fmt: str | None = None) -> Corpus:
    """Parse and validate a record stream into a Corpus.

    ``fmt`` is ``"tsv"``, ``"jsonl"``, or None to sniff from the first
    non-blank line. Raises :class:`ParseError` on a malformed record and
    :class:`IngestError` on a duplicate paper id.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return ingest(fh, fmt=fmt)

    papers: dict[str, PaperRecord] = {}
    for line_no, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if fmt is None:
            fmt = "jsonl" if line.lstrip().startswith("{") else "tsv"
        record = _parse_jsonl_line(line, line_no) if fmt == "jsonl" else _parse_tsv_line(line, line_no)
        if record.paper_id in papers:
            raise IngestError(f"duplicate paper_id {record.paper_id!r} at line {line_no}")
        papers[record.paper_id] = record
    return corpus_from_records(papers.values())


def corpus_from_records(records: Iterable[PaperRecord]) -> Corpus:
    """Aggregate already-parsed records into a validated Corpus."""
    papers: dict[str, PaperRecord] = {}
    for record in records:
        if record.paper_id in papers:
            raise IngestError(f"duplicate paper_id {record.paper_id!r}")
        if record.paper_id in record.references:
            raise IngestError(f"paper {record.paper_id!r} references itself")
        papers[record.paper_id] = record

    journals: dict[str, int] = {}
    years: list[int] = []
    dangling = 0
    for p in papers.values():
        journals[p.journal_id] = journals.get(p.journal_id, 0) + 1
        years.append(p.year)
        dangling += sum(1 for r in p.references if r not in papers)
    year_range = (min(years), max(years)) if years else None
    if dangling:
        log.warning("%d dangling references (cited paper not in corpus); they yield no edges", dangling)
    return Corpus(papers=papers, journals=journals, year_range=year_range, dangling_references=dangling)


def write_corpus(corpus: Corpus, path: str | Path, fmt: str = "jsonl") -> None:
    """Serialize a corpus deterministically (papers sorted by id)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pid in sorted(corpus.papers):
            p = corpus.papers[pid]
            if fmt == "jsonl":
                fh.write(json.dumps({
                    "paper_id": p.paper_id,
                    "journal_id": p.journal_id,
                    "year": p.year,
                    "authors": sorted(p.authors),
                    "references": sorted(p.references),
                }) + "\n")
            elif fmt == "tsv":
                fh.write("\t".join([
                    p.paper_id, p.journal_id, str(p.year),
                    ",".join(sorted(p.authors)), ",".join(sorted(p.references)),
                ]) + "\n")
            else:
                raise ValueError(f"unknown corpus format {fmt!r}")


def build_tensor(corpus: Corpus) -> CitationTensor:
    """Aggregate resolvable reference edges into per-year journal pair counts."""
    tensor = CitationTensor(year_range=corpus.year_range)
    for p in corpus.papers.values():
        for ref in p.references:
            cited = corpus.papers.get(ref)
            if cited is None:
                continue
            tensor.add(p.journal_id, cited.journal_id, p.year)
    tensor.journals.update(corpus.journals)
    return tensor


def build_collab_index(corpus: Corpus) -> CollaborationIndex:
    """Index every unordered co-author pair with its earliest joint year."""
    index = CollaborationIndex()
    for p in corpus.papers.values():
        authors = sorted(p.authors)
        for i, a in enumerate(authors):
            for b in authors[i + 1:]:
                index.record(a, b, p.year)
    return index


# --- sidecar files -----------------------------------------------------------

TENSOR_HEADER = ["sender_id", "receiver_id", "year", "count"]
JOURNALS_HEADER = ["journal_id", "paper_count", "name"]


def write_tensor_csv(tensor: CitationTensor, path: str | Path) -> None:
    """Tensor CSV format v1: one row per nonzero cell, sorted for stable bytes."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TENSOR_HEADER)
        for (s, r) in sorted(tensor._counts):
            cell = tensor._counts[(s, r)]
            for y in sorted(cell):
                if cell[y] > 0:
                    w.writerow([s, r, y, cell[y]])


def read_tensor_csv(path: str | Path) -> CitationTensor:
    tensor = CitationTensor()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TENSOR_HEADER:
            raise ParseError(f"bad tensor header {header!r}, expected {TENSOR_HEADER}", 1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 columns, got {len(row)}", line_no)
            try:
                year, count = int(row[2]), int(row[3])
            except ValueError:
                raise ParseError(f"non-integer year/count in {row!r}", line_no) from None
            if count < 0:
                raise ParseError(f"negative count in {row!r}", line_no)
            tensor.add(row[0], row[1], year, count)
    return tensor


def write_journals_csv(path: str | Path, paper_counts: dict[str, int],
                       names: dict[str, str] | None = None) -> None:
    names = names or {}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(JOURNALS_HEADER)
        for jid in sorted(paper_counts):
            w.writerow([jid, paper_counts[jid], names.get(jid, "")])


def read_journals_csv(path: str | Path) -> tuple[dict[str, int], dict[str, str]]:
    """Returns (paper counts, display names) keyed by journal id."""
    counts: dict[str, int] = {}
    names: dict[str, str] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != JOURNALS_HEADER:
            raise ParseError(f"bad journals header {header!r}, expected {JOURNALS_HEADER}", 1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"expected 3 columns, got {len(row)}", line_no)
            try:
                counts[row[0]] = int(row[1])
            except ValueError:
                raise ParseError(f"non-integer paper_count in {row!r}", line_no) from None
            if row[2]:
                names[row[0]] = row[2]
    return counts, names


def read_name_table(path: str | Path) -> dict[str, str]:
    """Journal name table: ``journal_id<TAB>display_name`` per line."""
    names: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected journal_id<TAB>display_name", line_no)
            names[parts[0]] = parts[1]
    return names
