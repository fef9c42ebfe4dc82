import { layoutGraph, type Point } from "./layout.js";
import { confidenceBadge, radiusScale, widthScale } from "./scales.js";
import { VIEW_H, VIEW_W } from "./layout.js";
import type { Finding, GraphPayload, JournalInfo, SortKey } from "./types.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

/**
 * The anomaly graph as an SVG string: node radius grows with paper count,
 * edge width with citations, anomalous edges drawn in the alert style.
 * Pure function of the payload (layout is seeded by it), so snapshots hold.
 */
export function renderGraphSvg(payload: GraphPayload): string {
  const positions = layoutGraph(payload);
  const radius = radiusScale(payload.nodes.map((n) => n.paper_count));
  const width = widthScale(payload.edges.map((e) => e.citations));
  const parts: string[] = [];
  parts.push(
    `<svg class="anomaly-graph" viewBox="0 0 ${VIEW_W} ${VIEW_H}" ` +
      `xmlns="http://www.w3.org/2000/svg" role="img">`,
  );

  for (const e of payload.edges) {
    const a = positions.get(e.from);
    const b = positions.get(e.to);
    if (!a || !b) continue;
    const cls = e.anomalous ? "edge anomalous" : "edge";
    const conf = e.confidence === null ? "" : ` data-confidence="${fmt(e.confidence)}"`;
    parts.push(
      `<g class="${cls}" data-from="${esc(e.from)}" data-to="${esc(e.to)}"${conf}>` +
        `<line x1="${fmt(a.x)}" y1="${fmt(a.y)}" x2="${fmt(b.x)}" y2="${fmt(b.y)}" ` +
        `stroke-width="${fmt(width(e.citations))}" marker-end="url(#arrow)"/>` +
        `<title>${esc(e.from)} → ${esc(e.to)}: ${e.citations} citations` +
        (e.anomalous && e.confidence !== null
          ? ` (anomalous, confidence ${confidenceBadge(e.confidence)})`
          : "") +
        `</title></g>`,
    );
  }

  for (const n of payload.nodes) {
    const p = positions.get(n.id) as Point;
    const r = radius(n.paper_count);
    parts.push(
      `<g class="node" data-id="${esc(n.id)}" data-radius="${fmt(r)}">` +
        `<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="${fmt(r)}"/>` +
        `<text x="${fmt(p.x)}" y="${fmt(p.y)}" dy="0.35em">${esc(n.id)}</text>` +
        `<title>${esc(n.name)} (${n.paper_count} papers)</title></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function sortFindings(
  findings: Finding[],
  key: SortKey,
  descending: boolean,
): Finding[] {
  const rows = [...findings];
  const sign = descending ? -1 : 1;
  rows.sort((a, b) => {
    let cmp = 0;
    if (key === "confidence") cmp = a.confidence - b.confidence;
    else if (key === "year") cmp = (a.year ?? 0) - (b.year ?? 0);
    else cmp = `${a.sender}|${a.receiver}`.localeCompare(`${b.sender}|${b.receiver}`);
    return sign * cmp;
  });
  return rows;
}

export function renderFindingsTable(findings: Finding[]): string {
  if (!findings.length) {
    return `<p class="empty-state">No anomalies for this selection.</p>`;
  }
  const rows = findings
    .map((f) => {
      const reason = f.reason
        ? `${f.reason.category} (${f.reason.prev_collabs} prior collabs)`
        : "—";
      return (
        `<tr data-sender="${esc(f.sender)}" data-receiver="${esc(f.receiver)}">` +
        `<td>${esc(f.sender)} → ${esc(f.receiver)}</td>` +
        `<td>${f.year ?? "—"}</td>` +
        `<td>${esc(f.behaviour ?? "—")}</td>` +
        `<td><span class="badge">${confidenceBadge(f.confidence)}</span></td>` +
        `<td>${esc(reason)}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="findings"><thead><tr>` +
    `<th data-sort="partner">pair</th><th data-sort="year">year</th>` +
    `<th>behaviour</th><th data-sort="confidence">confidence</th><th>reason</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderSearchResults(results: JournalInfo[]): string {
  if (!results.length) {
    return `<p class="empty-state">No journals match.</p>`;
  }
  const items = results
    .map(
      (j) =>
        `<li><button class="result" data-id="${esc(j.journal_id)}">` +
        `<span class="jid">${esc(j.journal_id)}</span> ${esc(j.name)} ` +
        `<span class="papers">${j.paper_count} papers</span></button></li>`,
    )
    .join("");
  return `<ul class="results">${items}</ul>`;
}

export function renderYearStepper(years: number[], year: number | null): string {
  if (year === null || !years.length) return "";
  const idx = years.indexOf(year);
  const prevDisabled = idx <= 0 ? " disabled" : "";
  const nextDisabled = idx < 0 || idx >= years.length - 1 ? " disabled" : "";
  return (
    `<button class="step" data-step="-1"${prevDisabled}>◀</button>` +
    `<span class="year">${year}</span>` +
    `<button class="step" data-step="1"${nextDisabled}>▶</button>`
  );
}

export function renderErrorBanner(message: string): string {
  return (
    `<div class="error-banner" role="alert">${esc(message)} ` +
    `<button class="retry" data-action="retry">Retry</button></div>`
  );
}
