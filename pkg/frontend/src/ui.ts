// DOM rendering.  The whole app is re-rendered from a view snapshot after
// every server round trip, so the document never holds state of its own.

import type { Conflict, DerivationResult, ModelInfo } from "./types.js";
import type { RowView, ViewModel } from "./state.js";

export interface SetupView {
  screen: "setup";
  models: ModelInfo[];
  selectedModel: string | null;
  areas: string[];
  selectedArea: string | null;
  error: string | null;
}

export interface SessionView {
  screen: "session";
  model: ViewModel;
  conflicts: Conflict[] | null;
  notice: string | null;
  productXml: string;
  derivation: DerivationResult | null;
  deriveError: string | null;
  error: string | null;
}

export type AppView = SetupView | SessionView;

export interface Handlers {
  onModelChange(modelId: string): void;
  onAreaChange(area: string): void;
  onStart(): void;
  onAnswer(trace: string, values: string[]): void;
  onExclude(trace: string): void;
  onRetract(trace: string): void;
  onDerive(productXml: string, force: boolean): void;
  onRestart(): void;
}

type Attrs = Record<string, string | boolean>;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

function renderSetup(view: SetupView, handlers: Handlers): HTMLElement {
  const modelSelect = el("select", { "data-role": "model-select" });
  modelSelect.append(el("option", { value: "" }, ["choose a model"]));
  for (const info of view.models) {
    const option = el("option", { value: info.model_id }, [`${info.name} (${info.model_id})`]);
    if (info.model_id === view.selectedModel) option.selected = true;
    modelSelect.append(option);
  }
  modelSelect.addEventListener("change", () => handlers.onModelChange(modelSelect.value));

  const areaSelect = el("select", { "data-role": "area-select" });
  areaSelect.append(el("option", { value: "" }, ["choose an area"]));
  for (const area of view.areas) {
    const option = el("option", { value: area }, [area]);
    if (area === view.selectedArea) option.selected = true;
    areaSelect.append(option);
  }
  areaSelect.addEventListener("change", () => handlers.onAreaChange(areaSelect.value));

  const start = el(
    "button",
    { "data-role": "start-button", disabled: !view.selectedModel || !view.selectedArea },
    ["Start session"],
  );
  start.addEventListener("click", () => handlers.onStart());

  const section = el("section", { class: "setup" }, [
    el("h2", {}, ["Start a configuration session"]),
    el("label", {}, ["Model ", modelSelect]),
    el("label", {}, ["Area ", areaSelect]),
    start,
  ]);
  if (view.error) {
    section.append(el("p", { class: "error", "data-role": "setup-error" }, [view.error]));
  }
  return section;
}

function optionInput(row: RowView, optionId: string): HTMLInputElement {
  const type = row.relation === "alternative" ? "radio" : "checkbox";
  const input = el("input", { type, name: `opt-${row.trace}`, value: optionId });
  return input;
}

function renderRow(row: RowView, handlers: Handlers): HTMLElement {
  const card = el("section", {
    class: `card status-${row.status}`,
    "data-trace": row.trace,
    "data-status": row.status,
    "data-variant-state": row.variantState,
  });

  const badges: Node[] = [el("span", { class: "badge" }, [row.relation])];
  if (row.mandatory) badges.push(el("span", { class: "badge mandatory" }, ["mandatory"]));
  card.append(
    el("header", {}, [
      el("h3", {}, [`${row.name} `, el("small", { class: "trace" }, [row.trace])]),
      ...badges,
    ]),
  );
  card.append(el("p", { class: "question" }, [row.question]));

  if (row.blockedReason) {
    card.append(el("p", { class: "blocked-note", "data-role": "blocked-note" }, [row.blockedReason]));
  }
  if (row.status === "excluded") {
    card.append(el("p", { class: "excluded-note" }, ["not part of this configuration"]));
  }

  const list = el("ul", { class: "options" });
  for (const option of row.options) {
    const input = optionInput(row, option.id);
    input.setAttribute("data-ref", option.id);
    input.setAttribute("data-state", option.state);
    input.checked = option.selected;
    input.disabled = option.disabled;

    const classes = ["option"];
    if (option.forced) classes.push("forced");
    if (option.state === "excluded_explicit" || option.state === "excluded_by_propagation") {
      classes.push("excluded");
    }
    const label = el("label", { class: classes.join(" ") }, [
      input,
      ` ${option.name} `,
      el("small", { class: "value-id" }, [option.id]),
    ]);
    if (option.forced) label.append(el("span", { class: "flag" }, ["forced"]));
    list.append(el("li", {}, [label]));
  }
  card.append(list);

  const footer = el("footer", { class: "actions" });
  if (row.status === "answerable" || row.status === "answered") {
    const apply = el("button", { "data-action": "apply", "data-trace": row.trace }, ["Apply"]);
    apply.addEventListener("click", () => {
      const picked = [...card.querySelectorAll<HTMLInputElement>("input[data-ref]")]
        .filter((input) => input.checked)
        .map((input) => input.value);
      handlers.onAnswer(row.trace, picked);
    });
    footer.append(apply);
    if (!row.mandatory) {
      const exclude = el("button", { "data-action": "exclude", "data-trace": row.trace }, [
        "Exclude",
      ]);
      exclude.addEventListener("click", () => handlers.onExclude(row.trace));
      footer.append(exclude);
    }
  }
  if (row.retractable) {
    const retract = el("button", { "data-action": "retract", "data-trace": row.trace }, [
      "Retract",
    ]);
    retract.addEventListener("click", () => handlers.onRetract(row.trace));
    footer.append(retract);
  }
  if (footer.childNodes.length > 0) card.append(footer);
  return card;
}

function renderConflicts(conflicts: Conflict[]): HTMLElement {
  const items = conflicts.map((conflict) =>
    el("li", { "data-ref": conflict.ref }, [`${conflict.ref}: ${conflict.reason}`]),
  );
  return el("div", { class: "banner conflict", "data-role": "conflict-banner" }, [
    el("strong", {}, ["Answer rejected"]),
    el("ul", {}, items),
  ]);
}

function renderDerivation(view: SessionView, handlers: Handlers): HTMLElement {
  const section = el("section", { class: "derive", "data-role": "derive-section" }, [
    el("h2", {}, ["Derive product"]),
    el("p", {}, ["Paste a product definition; elements tagged with rejected variants are removed."]),
  ]);

  const textarea = el("textarea", {
    "data-role": "product-xml",
    rows: "8",
    placeholder: "<product> ... </product>",
  });
  textarea.value = view.productXml;
  section.append(textarea);

  const force = el("input", { type: "checkbox", "data-role": "force-toggle" });
  section.append(el("label", { class: "force" }, [force, " keep elements with unknown tags"]));

  const button = el(
    "button",
    { "data-role": "derive-button", disabled: !view.model.complete },
    ["Derive product"],
  );
  button.addEventListener("click", () => handlers.onDerive(textarea.value, force.checked));
  section.append(button);

  if (!view.model.complete) {
    section.append(
      el("p", { class: "hint" }, ["finish every decision to enable derivation"]),
    );
  }
  if (view.deriveError) {
    section.append(el("p", { class: "error", "data-role": "derive-error" }, [view.deriveError]));
  }

  const result = view.derivation;
  if (result) {
    const panel = el("div", { class: "derive-result", "data-role": "derive-result" });
    const group = (title: string, role: string, entries: string[]) =>
      el("div", { class: "derive-group" }, [
        el("h4", {}, [title]),
        el(
          "ul",
          { "data-role": role },
          entries.length > 0 ? entries.map((entry) => el("li", {}, [entry])) : [el("li", { class: "empty" }, ["(none)"])],
        ),
      ]);
    panel.append(
      group("Kept", "kept-list", result.kept_elements),
      group("Removed", "removed-list", result.removed_elements),
      group(
        "Dangling references",
        "dangling-list",
        result.dangling_edges.map((edge) =>
          edge.label ? `${edge.from} -> ${edge.to} (${edge.label})` : `${edge.from} -> ${edge.to}`,
        ),
      ),
    );
    if (result.warnings.length > 0) {
      panel.append(
        el(
          "ul",
          { class: "warnings", "data-role": "derive-warnings" },
          result.warnings.map((w) => el("li", {}, [`${w.code}: ${w.message}`])),
        ),
      );
    }
    panel.append(el("pre", { "data-role": "product-text" }, [result.product_text]));
    section.append(panel);
  }
  return section;
}

function renderSession(view: SessionView, handlers: Handlers): HTMLElement {
  const model = view.model;
  const container = el("section", { class: "session" });

  const restart = el("button", { "data-role": "restart", class: "link" }, ["new session"]);
  restart.addEventListener("click", () => handlers.onRestart());
  container.append(
    el("p", { class: "meta", "data-role": "session-meta" }, [
      `model ${model.modelId} / area ${model.area} / session `,
      el("code", { "data-role": "session-id" }, [model.sessionId]),
      " ",
      restart,
    ]),
  );

  if (view.error) {
    container.append(el("div", { class: "banner error", "data-role": "error-banner" }, [view.error]));
  }
  if (view.conflicts && view.conflicts.length > 0) {
    container.append(renderConflicts(view.conflicts));
  }
  if (view.notice) {
    container.append(el("div", { class: "banner notice", "data-role": "notice" }, [view.notice]));
  }

  const status = model.complete
    ? "All decisions made."
    : `Undecided: ${model.undecided.join(", ")}`;
  container.append(
    el("p", { class: model.complete ? "status complete" : "status", "data-role": "status-line" }, [
      status,
    ]),
  );

  const cards = el("div", { class: "cards" });
  for (const row of model.rows) {
    cards.append(renderRow(row, handlers));
  }
  container.append(cards);

  container.append(renderDerivation(view, handlers));
  return container;
}

export function renderApp(root: HTMLElement, view: AppView, handlers: Handlers): void {
  root.replaceChildren();
  root.append(el("h1", {}, ["Variant configurator"]));
  if (view.screen === "setup") {
    root.append(renderSetup(view, handlers));
  } else {
    root.append(renderSession(view, handlers));
  }
}
