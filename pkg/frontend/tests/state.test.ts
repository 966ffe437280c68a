import { describe, expect, it } from "vitest";

import { buildViewModel } from "../src/state.js";
import { cannedState } from "./helpers.js";

function row(trace: string, state = cannedState()) {
  const found = buildViewModel(state).rows.find((r) => r.trace === trace);
  if (!found) throw new Error(`no row ${trace}`);
  return found;
}

describe("buildViewModel", () => {
  it("copies session identity and progress", () => {
    const view = buildViewModel(cannedState());
    expect(view.sessionId).toBe("abc123");
    expect(view.modelId).toBe("demo");
    expect(view.area).toBe("North");
    expect(view.complete).toBe(false);
    expect(view.undecided).toEqual(["V1", "V2"]);
    expect(view.rows.map((r) => r.trace)).toEqual(["V1", "V2", "V3", "V4"]);
  });

  it("marks an open unguarded variant answerable", () => {
    const v1 = row("V1");
    expect(v1.status).toBe("answerable");
    expect(v1.blockedReason).toBeNull();
    expect(v1.retractable).toBe(false);
    expect(v1.options.every((o) => !o.disabled)).toBe(true);
    expect(v1.options.every((o) => !o.selected)).toBe(true);
  });

  it("marks a variant with an unmet guard blocked and names the guard", () => {
    const v2 = row("V2");
    expect(v2.status).toBe("blocked");
    expect(v2.blockedReason).toBe("requires Block");
    expect(v2.options.every((o) => o.disabled)).toBe(true);
  });

  it("joins several unmet guard names", () => {
    const state = cannedState();
    const pending = state.pending.map((p) =>
      p.trace === "V2"
        ? {
            ...p,
            unmet_guard: [
              { ref: "V1.2", name: "Block" },
              { ref: "V9.1", name: "Discount" },
            ],
          }
        : p,
    );
    const v2 = row("V2", cannedState({ pending }));
    expect(v2.blockedReason).toBe("requires Block, Discount");
  });

  it("marks an included variant settled when nothing is left to ask", () => {
    const v3 = row("V3");
    expect(v3.status).toBe("settled");
    expect(v3.variantState).toBe("included");
    const option = v3.options[0]!;
    expect(option.forced).toBe(true);
    expect(option.selected).toBe(true);
    expect(option.disabled).toBe(true);
  });

  it("marks an excluded variant excluded but still retractable when answered", () => {
    const v4 = row("V4");
    expect(v4.status).toBe("excluded");
    expect(v4.retractable).toBe(true);
    expect(v4.options.every((o) => o.disabled)).toBe(true);
  });

  it("marks an explicitly answered variant answered with its picks selected", () => {
    const state = cannedState({
      variants: { V1: "included", V2: "undecided", V3: "included", V4: "excluded" },
      values: {
        "V1.1": "excluded_explicit",
        "V1.2": "selected_explicit",
        "V2.1": "pending",
        "V2.2": "pending",
        "V3.1": "forced",
        "V4.1": "excluded_by_propagation",
        "V4.2": "excluded_by_propagation",
      },
      pending: cannedState().pending.filter((p) => p.trace !== "V1"),
      answered: [
        { variant: "V1", values: ["V1.2"] },
        { variant: "V4", values: [] },
      ],
      undecided: ["V2"],
    });
    const v1 = row("V1", state);
    expect(v1.status).toBe("answered");
    expect(v1.retractable).toBe(true);
    const byId = new Map(v1.options.map((o) => [o.id, o]));
    expect(byId.get("V1.2")!.selected).toBe(true);
    expect(byId.get("V1.2")!.forced).toBe(false);
    expect(byId.get("V1.2")!.disabled).toBe(false);
    expect(byId.get("V1.1")!.selected).toBe(false);
    expect(byId.get("V1.1")!.disabled).toBe(true);
  });

  it("reflects value states verbatim", () => {
    const view = buildViewModel(cannedState());
    const states = new Map(
      view.rows.flatMap((r) => r.options.map((o) => [o.id, o.state] as const)),
    );
    expect(states.get("V3.1")).toBe("forced");
    expect(states.get("V4.1")).toBe("excluded_by_propagation");
    expect(states.get("V1.1")).toBe("pending");
  });
});
