// A fixture store served through a mocked fetch, mirroring the /v1 contract.

import type { FetchLike } from "../src/api.js";
import type { Finding, GraphPayload, JournalInfo } from "../src/types.js";

export const JOURNALS: JournalInfo[] = [
  { journal_id: "a", name: "Alpha Review", paper_count: 120 },
  { journal_id: "b", name: "Beta Letters", paper_count: 45 },
  { journal_id: "c", name: "Gamma Annals", paper_count: 300 },
];

export const YEARS = [2004, 2005, 2006];

export const FINDINGS: Finding[] = [
  {
    sender: "a", receiver: "b", year: 2005, behaviour: "one_sided_synchronous",
    confidence: 0.93, static_score: 0.9, temporal_score: 0.96,
    reason: { category: "many_one", sender_pct: 80, receiver_pct: 10, prev_collabs: 2 },
  },
  {
    sender: "a", receiver: "c", year: 2005, behaviour: "double_sided_synchronous",
    confidence: 0.88, static_score: 0.9, temporal_score: 0.86, reason: null,
  },
  {
    sender: "b", receiver: "c", year: 2006, behaviour: "one_sided_dianchronous",
    confidence: 0.7, static_score: 0.7, temporal_score: 0.7, reason: null,
  },
];

const CITATIONS: Record<string, number> = {
  "a|b|2005": 11, "b|a|2005": 4, "a|c|2005": 7, "c|a|2005": 2,
  "a|b|2004": 10, "b|a|2004": 4, "a|c|2004": 7, "c|a|2004": 2,
  "a|b|2006": 12, "b|a|2006": 4, "b|c|2006": 1, "c|b|2006": 0,
};

function citations(from: string, to: string, year: number): number {
  return CITATIONS[`${from}|${to}|${year}`] ?? 0;
}

export function graphFor(journalId: string, year: number): GraphPayload {
  const mine = FINDINGS.filter(
    (f) => f.year === year && (f.sender === journalId || f.receiver === journalId),
  );
  const partners = [...new Set(
    mine.map((f) => (f.sender === journalId ? f.receiver : f.sender)),
  )].sort();
  const anomalous = new Map<string, number>();
  for (const f of mine) {
    anomalous.set(`${f.sender}|${f.receiver}`, f.confidence);
    if (f.behaviour?.startsWith("double_sided")) {
      anomalous.set(`${f.receiver}|${f.sender}`, f.confidence);
    }
  }
  const info = new Map(JOURNALS.map((j) => [j.journal_id, j]));
  const nodes = [journalId, ...partners].map((id) => {
    const j = info.get(id)!;
    return { id: j.journal_id, name: j.name, paper_count: j.paper_count };
  });
  const edges = [];
  for (const other of partners) {
    for (const [from, to] of [[journalId, other], [other, journalId]] as const) {
      const n = citations(from, to, year);
      const conf = anomalous.get(`${from}|${to}`);
      if (n === 0 && conf === undefined) continue;
      edges.push({
        from, to, citations: n,
        anomalous: conf !== undefined,
        confidence: conf ?? null,
      });
    }
  }
  return { nodes, edges };
}

function jsonResponse(body: unknown, status = 200) {
  return Promise.resolve({
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(body),
  });
}

/** fetch double over the fixture store; records every requested URL. */
export function fixtureFetch(): { fetch: FetchLike; calls: string[] } {
  const calls: string[] = [];
  const impl: FetchLike = (url) => {
    calls.push(url);
    const u = new URL(url, "http://fixture");
    const parts = u.pathname.split("/").filter(Boolean);
    if (parts[0] !== "v1") return jsonResponse({ detail: "not found" }, 404);

    if (parts[1] === "years") return jsonResponse({ years: YEARS });

    if (parts[1] === "journals" && parts.length === 2) {
      const q = (u.searchParams.get("q") ?? "").toLowerCase();
      const hits = JOURNALS.filter(
        (j) => j.name.toLowerCase().includes(q) || j.journal_id.includes(q),
      );
      return jsonResponse({
        total: hits.length, page: 1, page_size: 50, journals: hits,
      });
    }

    const journalId = parts[2] ?? "";
    if (!JOURNALS.some((j) => j.journal_id === journalId)) {
      return jsonResponse({ detail: "unknown journal" }, 404);
    }
    if (parts[3] === "anomalies") {
      const yearParam = u.searchParams.get("year");
      let rows = FINDINGS.filter(
        (f) => f.sender === journalId || f.receiver === journalId,
      );
      if (yearParam !== null) rows = rows.filter((f) => f.year === Number(yearParam));
      rows = [...rows].sort((x, y) => y.confidence - x.confidence);
      return jsonResponse(rows);
    }
    if (parts[3] === "graph") {
      const year = Number(u.searchParams.get("year"));
      return jsonResponse(graphFor(journalId, year));
    }
    return jsonResponse({ detail: "not found" }, 404);
  };
  return { fetch: impl, calls };
}

/** fetch that always fails, for error-path tests. */
export function failingFetch(): FetchLike {
  return () => jsonResponse({ detail: "boom" }, 500);
}
