// Canned server payloads for unit tests, shaped exactly like the service
// responses.

import type { SessionState } from "../src/types.js";

export function cannedState(overrides: Partial<SessionState> = {}): SessionState {
  const base: SessionState = {
    session_id: "abc123",
    model_id: "demo",
    area: "North",
    variants: {
      V1: "undecided",
      V2: "undecided",
      V3: "included",
      V4: "excluded",
    },
    values: {
      "V1.1": "pending",
      "V1.2": "pending",
      "V2.1": "pending",
      "V2.2": "pending",
      "V3.1": "forced",
      "V4.1": "excluded_by_propagation",
      "V4.2": "excluded_by_propagation",
    },
    rows: [
      {
        trace: "V1",
        name: "Mode",
        question: "Which mode?",
        relation: "alternative",
        guard: [],
        options: [
          { id: "V1.1", name: "Single" },
          { id: "V1.2", name: "Block" },
        ],
        mandatory: false,
      },
      {
        trace: "V2",
        name: "Extras",
        question: "Which extras?",
        relation: "or",
        guard: ["V1.2"],
        options: [
          { id: "V2.1", name: "Late checkout" },
          { id: "V2.2", name: "Cleaning" },
        ],
        mandatory: false,
      },
      {
        trace: "V3",
        name: "Heating",
        question: "Select value(s) for Heating",
        relation: "none",
        guard: [],
        options: [{ id: "V3.1", name: "Radiators" }],
        mandatory: true,
      },
      {
        trace: "V4",
        name: "Catering",
        question: "Which catering?",
        relation: "alternative",
        guard: [],
        options: [
          { id: "V4.1", name: "Buffet" },
          { id: "V4.2", name: "Plated" },
        ],
        mandatory: false,
      },
    ],
    pending: [
      {
        trace: "V1",
        name: "Mode",
        question: "Which mode?",
        relation: "alternative",
        guard: [],
        options: [
          { id: "V1.1", name: "Single" },
          { id: "V1.2", name: "Block" },
        ],
        blocked: false,
        unmet_guard: [],
      },
      {
        trace: "V2",
        name: "Extras",
        question: "Which extras?",
        relation: "or",
        guard: ["V1.2"],
        options: [
          { id: "V2.1", name: "Late checkout" },
          { id: "V2.2", name: "Cleaning" },
        ],
        blocked: true,
        unmet_guard: [{ ref: "V1.2", name: "Block" }],
      },
    ],
    complete: false,
    undecided: ["V1", "V2"],
    answered: [{ variant: "V4", values: [] }],
    created: "2026-08-21T09:00:00+00:00",
    updated: "2026-08-21T09:00:00+00:00",
  };
  return { ...base, ...overrides };
}

export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}
