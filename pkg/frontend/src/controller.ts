import type { ApiClient } from "./api.js";
import {
  renderErrorBanner,
  renderFindingsTable,
  renderGraphSvg,
  renderSearchResults,
  renderYearStepper,
  sortFindings,
} from "./render.js";
import { initialState, type SortKey, type ViewState } from "./types.js";

/**
 * DOM-free portal logic: holds the view state, talks to the API, and hands
 * back render strings. The graph payload always corresponds to the selected
 * (journal, year); every transition that changes them refetches it.
 */
export class PortalController {
  state: ViewState = initialState();
  private lastAction: (() => Promise<void>) | null = null;

  constructor(private readonly client: ApiClient) {}

  private async guarded(action: () => Promise<void>): Promise<void> {
    this.lastAction = action;
    this.state.loading = true;
    this.state.error = null;
    try {
      await action();
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.state.loading = false;
    }
  }

  async retry(): Promise<void> {
    if (this.lastAction) {
      await this.guarded(this.lastAction);
    }
  }

  async search(query: string): Promise<void> {
    await this.guarded(async () => {
      this.state.query = query;
      const response = await this.client.searchJournals(query);
      this.state.results = response.journals;
    });
  }

  async select(journalId: string): Promise<void> {
    await this.guarded(async () => {
      const picked = this.state.results.find((j) => j.journal_id === journalId);
      const findings = await this.client.journalAnomalies(journalId);
      const span = await this.client.years();
      this.state.selected = picked ?? {
        journal_id: journalId,
        name: journalId,
        paper_count: 0,
      };
      this.state.findings = findings;
      this.state.years = span.years;
      const anomalousYears = findings
        .map((f) => f.year)
        .filter((y): y is number => y !== null);
      this.state.year = anomalousYears.length
        ? Math.min(...anomalousYears)
        : (span.years[span.years.length - 1] ?? null);
      await this.refreshGraph();
    });
  }

  async setYear(year: number): Promise<void> {
    await this.guarded(async () => {
      if (!this.state.selected) return;
      this.state.year = year;
      await this.refreshGraph();
    });
  }

  async stepYear(delta: number): Promise<void> {
    const { years, year } = this.state;
    if (year === null || !years.length) return;
    const idx = years.indexOf(year);
    const next = years[idx + delta];
    if (next !== undefined) {
      await this.setYear(next);
    }
  }

  setSort(key: SortKey): void {
    if (this.state.sortKey === key) {
      this.state.sortDescending = !this.state.sortDescending;
    } else {
      this.state.sortKey = key;
      this.state.sortDescending = key === "confidence";
    }
  }

  private async refreshGraph(): Promise<void> {
    const { selected, year } = this.state;
    if (!selected || year === null) {
      this.state.graph = null;
      return;
    }
    this.state.graph = await this.client.journalGraph(selected.journal_id, year);
  }

  findingsForYear() {
    const rows = this.state.findings.filter(
      (f) => this.state.year === null || f.year === this.state.year,
    );
    return sortFindings(rows, this.state.sortKey, this.state.sortDescending);
  }

  renderResults(): string {
    return renderSearchResults(this.state.results);
  }

  renderTable(): string {
    return renderFindingsTable(this.findingsForYear());
  }

  renderGraph(): string {
    return this.state.graph ? renderGraphSvg(this.state.graph) : "";
  }

  renderStepper(): string {
    return renderYearStepper(this.state.years, this.state.year);
  }

  renderError(): string {
    return this.state.error ? renderErrorBanner(this.state.error) : "";
  }
}
