// Orchestration between ViewState, the API client, and the renderers.
// Pure enough to drive from tests with a fake Api: every handler returns the
// new state and repaints through the injected sink.

import type { Api } from "./api.js";
import { renderDashboard } from "./render/dashboard.js";
import { renderFlowmap } from "./render/flowmap.js";
import { renderRst } from "./render/rst.js";
import { renderWritingArea } from "./render/writing.js";
import {
  ViewState,
  initialState,
  newDraft,
  setHover,
  setK,
  showReference,
  toggleGlyph,
} from "./state.js";
import type {
  AnalysisPayload,
  HistoryPayload,
  ReferencePayload,
  RstPayload,
} from "./types.js";

export interface Panes {
  rst?: string;
  writing?: string;
  dashboard?: string;
  flowmap?: string;
}

export type PaintFn = (panes: Panes) => void;

// structural surface so tests can drive the controller with a fake client
export type ApiSurface = Pick<
  Api,
  | "createProject"
  | "rst"
  | "addDraft"
  | "analyze"
  | "history"
  | "reference"
  | "prompt"
  | "strategies"
>;

export class Controller {
  state: ViewState = initialState();
  rstPayload: RstPayload | null = null;
  analysis: AnalysisPayload | null = null;
  history: HistoryPayload | null = null;
  reference: ReferencePayload | null = null;
  draftNo: number | null = null;

  constructor(private api: ApiSurface, private paint: PaintFn) {}

  private repaintRst(): void {
    if (this.rstPayload) {
      this.paint({ rst: renderRst(this.rstPayload, this.state) });
    }
  }

  private repaintWriting(): void {
    this.paint({ writing: renderWritingArea(this.state, this.analysis) });
  }

  private repaintDashboard(): void {
    this.paint({
      dashboard: renderDashboard(
        this.history ?? { rows: [], series: [], entries: [] },
        this.analysis,
      ),
    });
  }

  private repaintFlowmap(): void {
    if (this.reference && this.state.referenceVisible) {
      this.paint({ flowmap: renderFlowmap(this.reference, this.state) });
    } else {
      this.paint({ flowmap: "" });
    }
  }

  async openProject(sourceText: string, referenceAbstract?: string): Promise<void> {
    const { project_id } = await this.api.createProject(sourceText, referenceAbstract);
    this.state = { ...initialState(), projectId: project_id, k: this.state.k };
    this.rstPayload = await this.api.rst(project_id);
    this.analysis = null;
    this.history = null;
    this.reference = null;
    this.draftNo = null;
    this.repaintRst();
    this.repaintWriting();
    this.repaintDashboard();
    this.repaintFlowmap();
  }

  onGlyphToggle(relation: string): void {
    if (!this.rstPayload) return;
    const inventory = Object.keys(this.rstPayload.relation_counts);
    this.state = toggleGlyph(this.state, relation, inventory);
    this.repaintRst();
  }

  setDraftText(text: string): void {
    this.state = { ...this.state, draftText: text };
  }

  // b1: insert the extractive draft into the editor
  async onPrompt(): Promise<void> {
    if (!this.state.projectId) return;
    const prompt = await this.api.prompt(this.state.projectId);
    this.state = {
      ...this.state,
      draftText: prompt.sentences.map((s) => s.text).join(" "),
    };
    this.repaintWriting();
  }

  // b2: store the current editor text as a draft (if new) and analyze it
  async onAnalyze(): Promise<void> {
    if (!this.state.projectId || !this.state.draftText.trim()) return;
    const record = await this.api.addDraft(this.state.projectId, this.state.draftText);
    this.draftNo = record.draft_no;
    this.analysis = await this.api.analyze(this.state.projectId, record.draft_no);
    this.history = await this.api.history(this.state.projectId);
    this.repaintWriting();
    this.repaintDashboard();
  }

  // b3: clear the editor and hide the reference panel
  onNewDraft(): void {
    this.state = newDraft(this.state);
    this.analysis = null;
    this.repaintWriting();
    this.repaintFlowmap();
  }

  // b4
  async onStrategies(): Promise<string> {
    return (await this.api.strategies()).text;
  }

  // b5 equivalent lives in the analyze payload (guidance)

  async onShowReference(): Promise<void> {
    if (!this.state.projectId) return;
    const visible = !this.state.referenceVisible;
    this.state = showReference(this.state, visible);
    if (visible) {
      this.reference = await this.api.reference(this.state.projectId, this.state.k);
    }
    this.repaintFlowmap();
  }

  onHover(target: number | null): void {
    this.state = setHover(this.state, target);
    this.repaintFlowmap();
  }

  // the k control re-fetches the alignment and re-renders intensities
  async onKChange(k: number): Promise<void> {
    this.state = setK(this.state, k);
    if (this.state.projectId && this.state.referenceVisible) {
      this.reference = await this.api.reference(this.state.projectId, this.state.k);
      this.repaintFlowmap();
    }
  }
}
