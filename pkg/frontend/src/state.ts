// Pure translation from a server session payload to what the screen shows.
// No constraint logic lives here: every state shown is read back from the
// server's maps, never recomputed on the client.

import type { Relation, Row, SessionState, ValueState, VariantState } from "./types.js";

export type RowStatus = "answerable" | "blocked" | "answered" | "excluded" | "settled";

export interface OptionView {
  id: string;
  name: string;
  state: ValueState;
  selected: boolean;
  forced: boolean;
  disabled: boolean;
}

export interface RowView {
  trace: string;
  name: string;
  question: string;
  relation: Relation;
  mandatory: boolean;
  variantState: VariantState;
  status: RowStatus;
  blockedReason: string | null;
  retractable: boolean;
  options: OptionView[];
}

export interface ViewModel {
  sessionId: string;
  modelId: string;
  area: string;
  complete: boolean;
  undecided: string[];
  rows: RowView[];
}

function rowStatus(
  row: Row,
  variantState: VariantState,
  answered: boolean,
  pendingBlocked: boolean | undefined,
): RowStatus {
  if (variantState === "excluded") return "excluded";
  if (answered) return "answered";
  if (pendingBlocked === undefined) return "settled";
  return pendingBlocked ? "blocked" : "answerable";
}

export function buildViewModel(state: SessionState): ViewModel {
  const answeredTraces = new Set(state.answered.map((entry) => entry.variant));
  const pendingByTrace = new Map(state.pending.map((info) => [info.trace, info]));

  const rows = state.rows.map((row): RowView => {
    const variantState = state.variants[row.trace] ?? "undecided";
    const pending = pendingByTrace.get(row.trace);
    const status = rowStatus(row, variantState, answeredTraces.has(row.trace), pending?.blocked);

    const interactable = status === "answerable" || status === "answered";
    const options = row.options.map((option): OptionView => {
      const valueState = state.values[option.id] ?? "pending";
      const excluded =
        valueState === "excluded_explicit" || valueState === "excluded_by_propagation";
      return {
        id: option.id,
        name: option.name,
        state: valueState,
        selected: valueState === "selected_explicit" || valueState === "forced",
        forced: valueState === "forced",
        disabled: excluded || !interactable,
      };
    });

    let blockedReason: string | null = null;
    if (status === "blocked" && pending) {
      blockedReason = "requires " + pending.unmet_guard.map((g) => g.name).join(", ");
    }

    return {
      trace: row.trace,
      name: row.name,
      question: row.question,
      relation: row.relation,
      mandatory: row.mandatory,
      variantState,
      status,
      blockedReason,
      retractable: answeredTraces.has(row.trace),
      options,
    };
  });

  return {
    sessionId: state.session_id,
    modelId: state.model_id,
    area: state.area,
    complete: state.complete,
    undecided: [...state.undecided],
    rows,
  };
}
