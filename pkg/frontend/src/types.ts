// Wire shapes of the configuration service, mirrored one to one.

export type VariantState = "undecided" | "included" | "excluded";

export type ValueState =
  | "pending"
  | "selected_explicit"
  | "forced"
  | "excluded_explicit"
  | "excluded_by_propagation";

export type Relation = "alternative" | "or" | "none";

export interface Option {
  id: string;
  name: string;
}

export interface Row {
  trace: string;
  name: string;
  question: string;
  relation: Relation;
  guard: string[];
  options: Option[];
  mandatory: boolean;
}

export interface GuardRef {
  ref: string;
  name: string;
}

export interface PendingInfo {
  trace: string;
  name: string;
  question: string;
  relation: Relation;
  guard: string[];
  options: Option[];
  blocked: boolean;
  unmet_guard: GuardRef[];
}

export interface AnswerEntry {
  variant: string;
  values: string[];
}

export interface SessionState {
  session_id: string;
  model_id: string;
  area: string;
  variants: Record<string, VariantState>;
  values: Record<string, ValueState>;
  rows: Row[];
  pending: PendingInfo[];
  complete: boolean;
  undecided: string[];
  answered: AnswerEntry[];
  created: string;
  updated: string;
}

export interface PropagationSummary {
  forced: string[];
  excluded: string[];
  released: string[];
}

export type AnswerState = SessionState & PropagationSummary;

export interface Conflict {
  ref: string;
  reason: string;
}

export interface ModelInfo {
  model_id: string;
  name: string;
  areas: string[];
}

export interface Finding {
  code: string;
  where: string;
  message: string;
}

export interface EdgeInfo {
  from: string;
  to: string;
  label: string | null;
}

export interface DerivationResult {
  product_xml: string;
  product_text: string;
  kept_elements: string[];
  removed_elements: string[];
  removed_edges: EdgeInfo[];
  dangling_edges: EdgeInfo[];
  warnings: Finding[];
}

export type AnswerOutcome =
  | { kind: "ok"; state: AnswerState }
  | { kind: "conflict"; conflicts: Conflict[] };

export type DeriveOutcome =
  | { kind: "ok"; result: DerivationResult }
  | { kind: "incomplete"; undecided: string[] };

export type ConfigurationOutcome =
  | { kind: "complete"; area: string; selections: Record<string, string[]> }
  | { kind: "incomplete"; undecided: string[] };
