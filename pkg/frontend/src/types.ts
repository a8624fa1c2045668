// Payload shapes of the /v1 service. The UI displays these verbatim:
// no scores or labels are computed client-side.

export type Genre = "background" | "objective" | "method" | "result" | "conclusion";

export type Facet =
  | "understandability"
  | "consistency"
  | "fluency"
  | "diversity"
  | "conciseness";

export interface RstLeaf {
  kind: "leaf";
  span: [number, number];
  edu: number;
  text?: string;
  sentence_index?: number;
}

export interface RstInternal {
  kind: "internal";
  span: [number, number];
  relation: string;
  nuclearity: "NN" | "NS" | "SN";
  children: RstTreeNode[];
}

export type RstTreeNode = RstLeaf | RstInternal;

export interface RstPayload {
  scope: string;
  tree: RstTreeNode;
  relation_counts: Record<string, number>;
  paragraph_relation_counts: Record<string, number>[];
  satellite_spans: Record<string, [number, number][]>;
}

export interface AnalysisPayload {
  schema: number;
  organization: { labels: Genre[]; missing: Genre[]; required: Genre[] };
  facets: Record<Facet, number | null>;
  overall: number | null;
  per_sentence: Record<Facet, number | null>[];
  features: Record<string, number | null>;
  guidance: string[];
  flags: string[];
  weights_version: string;
}

export interface HistoryPayload {
  rows: Genre[][];
  series: (number | null)[];
  entries: { draft_no: number; analyzed_at: string }[];
}

export interface AlignmentPayload {
  k: number;
  sim: number[][];
  intensity: number[];
  topk_idx: number[][];
  meta: Record<string, unknown>;
}

export interface ReferencePayload {
  organization: { labels: Genre[] };
  alignment: AlignmentPayload;
  sentences: string[];
  source_sentences: string[];
}

export interface DraftPromptPayload {
  target_count: number;
  sentences: { index: number; text: string }[];
}

export interface DraftRecordPayload {
  draft_no: number;
  text: string;
  analyzed: boolean;
  analyzed_at: string | null;
}
