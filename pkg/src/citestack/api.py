"""HTTP JSON service over a precomputed findings store.

Versioned endpoints under ``/v1``:

* ``GET /v1/journals?q=&page=&page_size=`` — case-insensitive substring
  search over journal names and ids, paginated.
* ``GET /v1/journals/{id}/anomalies?year=`` — findings touching the journal,
  confidence-descending; optional year filter; 404 for unknown ids.
* ``GET /v1/journals/{id}/graph?year=`` — depth-1 anomaly neighborhood with
  per-edge citation counts for that year.

The portal bundle, when present, is served statically at ``/``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from .scoring import AnomalyFinding
from .store import FindingsStore


def _finding_json(f: AnomalyFinding) -> dict:
    reason = None
    if f.reason is not None:
        reason = {
            "category": f.reason.category,
            "sender_pct": f.reason.sender_percentage,
            "receiver_pct": f.reason.receiver_percentage,
            "prev_collabs": f.reason.prev_collaborations,
        }
    return {
        "sender": f.sender,
        "receiver": f.receiver,
        "year": f.year,
        "behaviour": f.behaviour,
        "confidence": f.confidence,
        "static_score": f.static_score,
        "temporal_score": f.temporal_score,
        "reason": reason,
    }


def create_app(store: FindingsStore, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="citestack", version="1.0")

    @app.get("/v1/journals")
    def search_journals(q: str = "", page: int = Query(1, ge=1),
                        page_size: int = Query(50, ge=1, le=500)):
        hits = store.search(q)
        start = (page - 1) * page_size
        return {
            "total": len(hits),
            "page": page,
            "page_size": page_size,
            "journals": [
                {"journal_id": j.journal_id, "name": j.name, "paper_count": j.paper_count}
                for j in hits[start:start + page_size]
            ],
        }

    @app.get("/v1/journals/{journal_id}/anomalies")
    def journal_anomalies(journal_id: str, year: int | None = None):
        if not store.has_journal(journal_id):
            raise HTTPException(status_code=404, detail=f"unknown journal {journal_id!r}")
        return [_finding_json(f) for f in store.anomalies_for(journal_id, year)]

    @app.get("/v1/journals/{journal_id}/graph")
    def journal_graph(journal_id: str, year: int):
        if not store.has_journal(journal_id):
            raise HTTPException(status_code=404, detail=f"unknown journal {journal_id!r}")
        return store.graph_for(journal_id, year)

    @app.get("/v1/years")
    def year_span():
        years = store.tensor.years()
        return {"years": years}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="portal")

    return app
