"""Read-only store backing the HTTP service: findings + tensor + metadata.

A store directory holds ``findings.jsonl``, ``tensor.csv`` and
``journals.csv`` as written by the detect/generate commands. Everything is
loaded and indexed up front; requests never mutate it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .corpus import CitationTensor, read_journals_csv, read_tensor_csv
from .errors import DataError
from .scoring import AnomalyFinding, read_findings_jsonl


@dataclass(frozen=True)
class JournalInfo:
    journal_id: str
    name: str
    paper_count: int


class FindingsStore:
    def __init__(self, findings: list[AnomalyFinding], tensor: CitationTensor,
                 paper_counts: dict[str, int], names: dict[str, str]):
        self.findings = findings
        self.tensor = tensor
        self.journals: dict[str, JournalInfo] = {
            jid: JournalInfo(jid, names.get(jid, jid), count)
            for jid, count in paper_counts.items()
        }
        for jid in tensor.journals:
            self.journals.setdefault(jid, JournalInfo(jid, names.get(jid, jid), 0))

        self._by_journal: dict[str, list[AnomalyFinding]] = {}
        for f in findings:
            if f.sender not in self.journals or f.receiver not in self.journals:
                raise DataError(
                    f"finding references unknown journal: {f.sender} -> {f.receiver}")
            self._by_journal.setdefault(f.sender, []).append(f)
            self._by_journal.setdefault(f.receiver, []).append(f)
        for rows in self._by_journal.values():
            rows.sort(key=lambda f: (-f.confidence, f.sender, f.receiver, f.year or 0))

    @classmethod
    def load(cls, directory: str | Path) -> "FindingsStore":
        directory = Path(directory)
        for required in ("findings.jsonl", "tensor.csv", "journals.csv"):
            if not (directory / required).exists():
                raise DataError(f"store is missing {required} in {directory}")
        findings = read_findings_jsonl(directory / "findings.jsonl")
        tensor = read_tensor_csv(directory / "tensor.csv")
        paper_counts, names = read_journals_csv(directory / "journals.csv")
        return cls(findings, tensor, paper_counts, names)

    def search(self, query: str) -> list[JournalInfo]:
        q = query.lower()
        hits = [
            info for info in self.journals.values()
            if q in info.name.lower() or q in info.journal_id.lower()
        ]
        hits.sort(key=lambda info: (len(info.journal_id), info.journal_id))
        return hits

    def has_journal(self, journal_id: str) -> bool:
        return journal_id in self.journals

    def anomalies_for(self, journal_id: str, year: int | None = None) -> list[AnomalyFinding]:
        rows = self._by_journal.get(journal_id, [])
        if year is None:
            return list(rows)
        return [f for f in rows if f.year == year]

    def graph_for(self, journal_id: str, year: int) -> dict:
        """Depth-1 anomaly neighborhood: the journal plus its finding partners."""
        center = self.journals[journal_id]
        partners: dict[str, JournalInfo] = {}
        anomalous: dict[tuple[str, str], float] = {}
        for f in self.anomalies_for(journal_id, year):
            other = f.receiver if f.sender == journal_id else f.sender
            partners[other] = self.journals[other]
            anomalous[(f.sender, f.receiver)] = max(
                anomalous.get((f.sender, f.receiver), 0.0), f.confidence)
            if f.behaviour is not None and f.behaviour.startswith("double_sided"):
                anomalous[(f.receiver, f.sender)] = max(
                    anomalous.get((f.receiver, f.sender), 0.0), f.confidence)

        nodes = [center, *sorted(partners.values(), key=lambda j: j.journal_id)]
        edges = []
        for other in sorted(partners):
            for src, dst in ((journal_id, other), (other, journal_id)):
                citations = self.tensor.count(src, dst, year)
                confidence = anomalous.get((src, dst))
                if citations == 0 and confidence is None:
                    continue
                edges.append({
                    "from": src,
                    "to": dst,
                    "citations": citations,
                    "anomalous": confidence is not None,
                    "confidence": confidence,
                })
        return {
            "nodes": [
                {"id": n.journal_id, "name": n.name, "paper_count": n.paper_count}
                for n in nodes
            ],
            "edges": edges,
        }
