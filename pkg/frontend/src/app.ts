// Controller tying the API client to the renderer.  Every mutation posts to
// the server, then re-renders from the response payload, so the screen can
// only ever show states the server confirmed.

import { ApiClient, ApiError } from "./api.js";
import { buildViewModel } from "./state.js";
import { renderApp } from "./ui.js";
import type { AppView, Handlers } from "./ui.js";
import type {
  AnswerState,
  Conflict,
  DerivationResult,
  ModelInfo,
  SessionState,
} from "./types.js";

function propagationNotice(state: AnswerState): string | null {
  const parts: string[] = [];
  if (state.forced.length > 0) parts.push(`forced ${state.forced.join(", ")}`);
  if (state.excluded.length > 0) parts.push(`excluded ${state.excluded.join(", ")}`);
  if (state.released.length > 0) parts.push(`released ${state.released.join(", ")}`);
  return parts.length > 0 ? parts.join("; ") : null;
}

export class App {
  private models: ModelInfo[] = [];
  private selectedModel: string | null = null;
  private areas: string[] = [];
  private selectedArea: string | null = null;
  private setupError: string | null = null;

  private session: SessionState | null = null;
  private conflicts: Conflict[] | null = null;
  private notice: string | null = null;
  private productXml = "";
  private derivation: DerivationResult | null = null;
  private deriveError: string | null = null;
  private sessionError: string | null = null;

  private inflight: Promise<void> = Promise.resolve();
  private readonly handlers: Handlers;

  constructor(
    private readonly client: ApiClient,
    private readonly root: HTMLElement,
  ) {
    this.handlers = {
      onModelChange: (modelId) => void this.chooseModel(modelId || null),
      onAreaChange: (area) => void this.chooseArea(area || null),
      onStart: () => void this.startSession(),
      onAnswer: (trace, values) => void this.submitAnswer(trace, values),
      onExclude: (trace) => void this.submitAnswer(trace, []),
      onRetract: (trace) => void this.retractAnswer(trace),
      onDerive: (xml, force) => void this.deriveProduct(xml, force),
      onRestart: () => this.restart(),
    };
  }

  get sessionId(): string | null {
    return this.session ? this.session.session_id : null;
  }

  whenIdle(): Promise<void> {
    return this.inflight;
  }

  private track(work: () => Promise<void>): Promise<void> {
    const run = this.inflight.then(work);
    this.inflight = run.catch(() => undefined);
    return run;
  }

  start(): Promise<void> {
    return this.track(async () => {
      try {
        this.models = await this.client.listModels();
        this.setupError = null;
        const only = this.models.length === 1 ? this.models[0] : undefined;
        if (only) {
          this.selectedModel = only.model_id;
          this.areas = await this.client.modelAreas(only.model_id);
        }
      } catch (error) {
        this.setupError = describe(error);
      }
      this.render();
    });
  }

  chooseModel(modelId: string | null): Promise<void> {
    return this.track(async () => {
      this.selectedModel = modelId;
      this.selectedArea = null;
      this.areas = [];
      if (modelId) {
        try {
          this.areas = await this.client.modelAreas(modelId);
          this.setupError = null;
        } catch (error) {
          this.setupError = describe(error);
        }
      }
      this.render();
    });
  }

  chooseArea(area: string | null): Promise<void> {
    return this.track(async () => {
      this.selectedArea = area;
      this.render();
    });
  }

  startSession(): Promise<void> {
    return this.track(async () => {
      if (!this.selectedModel || !this.selectedArea) return;
      try {
        this.session = await this.client.createSession(this.selectedModel, this.selectedArea);
        this.conflicts = null;
        this.notice = null;
        this.derivation = null;
        this.deriveError = null;
        this.sessionError = null;
      } catch (error) {
        this.setupError = describe(error);
      }
      this.render();
    });
  }

  submitAnswer(trace: string, values: string[]): Promise<void> {
    return this.track(async () => {
      const session = this.requireSession();
      try {
        const outcome = await this.client.answer(session.session_id, trace, values);
        if (outcome.kind === "conflict") {
          // rejected answers leave the session untouched, so keep ours as is
          this.conflicts = outcome.conflicts;
          this.notice = null;
        } else {
          this.session = outcome.state;
          this.conflicts = null;
          this.notice = propagationNotice(outcome.state);
          this.sessionError = null;
        }
      } catch (error) {
        this.conflicts = null;
        this.sessionError = describe(error);
      }
      this.render();
    });
  }

  retractAnswer(trace: string): Promise<void> {
    return this.track(async () => {
      const session = this.requireSession();
      try {
        const state = await this.client.retract(session.session_id, trace);
        this.session = state;
        this.conflicts = null;
        this.notice = propagationNotice(state);
        this.sessionError = null;
      } catch (error) {
        this.sessionError = describe(error);
      }
      this.render();
    });
  }

  deriveProduct(productXml: string, force = false): Promise<void> {
    return this.track(async () => {
      const session = this.requireSession();
      this.productXml = productXml;
      try {
        const outcome = await this.client.derive(session.session_id, productXml, force);
        if (outcome.kind === "ok") {
          this.derivation = outcome.result;
          this.deriveError = null;
        } else {
          this.derivation = null;
          this.deriveError = `decisions still open: ${outcome.undecided.join(", ")}`;
        }
      } catch (error) {
        this.derivation = null;
        this.deriveError = describe(error);
      }
      this.render();
    });
  }

  restart(): void {
    this.session = null;
    this.conflicts = null;
    this.notice = null;
    this.productXml = "";
    this.derivation = null;
    this.deriveError = null;
    this.sessionError = null;
    this.render();
  }

  private requireSession(): SessionState {
    if (!this.session) throw new Error("no active session");
    return this.session;
  }

  private view(): AppView {
    if (this.session) {
      return {
        screen: "session",
        model: buildViewModel(this.session),
        conflicts: this.conflicts,
        notice: this.notice,
        productXml: this.productXml,
        derivation: this.derivation,
        deriveError: this.deriveError,
        error: this.sessionError,
      };
    }
    return {
      screen: "setup",
      models: this.models,
      selectedModel: this.selectedModel,
      areas: this.areas,
      selectedArea: this.selectedArea,
      error: this.setupError,
    };
  }

  private render(): void {
    renderApp(this.root, this.view(), this.handlers);
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  if (error instanceof Error) return error.message;
  return String(error);
}
