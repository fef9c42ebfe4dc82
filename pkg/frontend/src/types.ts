// Payload shapes of the /v1 API, mirrored field for field.

export interface JournalInfo {
  journal_id: string;
  name: string;
  paper_count: number;
}

export interface SearchResponse {
  total: number;
  page: number;
  page_size: number;
  journals: JournalInfo[];
}

export interface Reason {
  category: string;
  sender_pct: number;
  receiver_pct: number;
  prev_collabs: number;
}

export interface Finding {
  sender: string;
  receiver: string;
  year: number | null;
  behaviour: string | null;
  confidence: number;
  static_score: number;
  temporal_score: number | null;
  reason: Reason | null;
}

export interface GraphNode {
  id: string;
  name: string;
  paper_count: number;
}

export interface GraphEdge {
  from: string;
  to: string;
  citations: number;
  anomalous: boolean;
  confidence: number | null;
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export type SortKey = "confidence" | "year" | "partner";

export interface ViewState {
  query: string;
  results: JournalInfo[];
  selected: JournalInfo | null;
  years: number[];
  year: number | null;
  findings: Finding[];
  graph: GraphPayload | null;
  sortKey: SortKey;
  sortDescending: boolean;
  error: string | null;
  loading: boolean;
}

export function initialState(): ViewState {
  return {
    query: "",
    results: [],
    selected: null,
    years: [],
    year: null,
    findings: [],
    graph: null,
    sortKey: "confidence",
    sortDescending: true,
    error: null,
    loading: false,
  };
}
