/** Application controller: owns the view state and all backend I/O.
 *
 * Renderers stay pure; this class fetches, holds the latest API responses,
 * and re-renders on every change. The UI never computes a score itself:
 * every displayed number comes from an API response tagged with the
 * revision it was computed against, and anything older than the current
 * revision renders with a stale marker.
 */

import { ApiClient, ApiError } from "./api.js";
import { draftFrom, renderEditor, type ComponentDraft, type EditorConflict } from "./editor.js";
import { renderGrid } from "./grid.js";
import { renderGraphView } from "./graphview.js";
import { METRICS, renderInsights, type InsightsData } from "./insights.js";
import {
  initialState,
  selectComponent,
  setOverlay,
  setWhatIf,
  switchView,
  toggleEdgeType,
  type Overlay,
  type OverlayData,
  type ViewState,
  type WhatIfParams,
} from "./state.js";
import type {
  DiffusionRequest,
  GraphResponse,
  ModelDoc,
  SignalDoc,
} from "./types.js";
import { canRun, renderWhatIf, type WhatIfRun } from "./whatif.js";

export class AppController {
  state: ViewState = initialState([]);
  model: ModelDoc | null = null;
  graph: GraphResponse | null = null;
  overlayData: OverlayData = { kind: "none" };
  overlayError: string | null = null;
  insights: InsightsData = { histogram: null, centrality: null, communities: null };
  runs: WhatIfRun[] = [];
  signals: SignalDoc[] | null = null;
  whatIfError: string | null = null;
  job: { id: string; status: string } | null = null;
  editorDraft: ComponentDraft | null = null;
  editorIsNew = false;
  editorConflict: EditorConflict | null = null;
  private nextRunId = 1;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.model = await this.api.getModel();
    this.state = initialState(this.model.relation_types.map((t) => t.name));
    await this.refreshGraph();
    this.render();
  }

  get revision(): number {
    return this.model?.meta.revision ?? 0;
  }

  async refreshModel(): Promise<void> {
    this.model = await this.api.getModel();
    await this.refreshGraph();
    await this.refreshOverlay();
  }

  async refreshGraph(): Promise<void> {
    this.graph = await this.api.getGraph(this.state.edgeTypes);
  }

  async refreshOverlay(): Promise<void> {
    const overlay = this.state.overlay;
    this.overlayError = null;
    try {
      if (overlay.kind === "none") {
        this.overlayData = { kind: "none" };
      } else if (overlay.kind === "heatmap") {
        const values: Record<string, number> = {};
        for (const component of this.model?.components ?? []) {
          const value = component.view_values[overlay.view];
          if (value !== undefined) values[component.id] = value;
        }
        this.overlayData = {
          kind: "scores",
          label: `${overlay.view} view`,
          values,
          revision: this.revision,
        };
      } else if (overlay.kind === "centrality") {
        const response = await this.api.getAnalytics(overlay.metric, {
          types: this.state.edgeTypes,
        });
        this.overlayData = {
          kind: "scores",
          label: overlay.metric,
          values: response.scores,
          revision: response.revision,
        };
      } else if (overlay.kind === "communities") {
        const response = await this.api.getCommunities("gn");
        const assignment: Record<string, number> = {};
        for (const group of response.communities) {
          for (const member of group.members) assignment[member.id] = group.id;
        }
        this.overlayData = {
          kind: "communities",
          label: "communities",
          assignment,
          revision: response.revision,
        };
      } else {
        const latest = this.runs[0];
        this.overlayData = latest
          ? {
              kind: "scores",
              label: "impact",
              values: latest.response.scores,
              revision: latest.response.revision,
            }
          : { kind: "none" };
      }
    } catch (err) {
      // the view must never blank: fall back to no overlay plus a banner
      this.overlayData = { kind: "none" };
      this.overlayError = err instanceof Error ? err.message : String(err);
    }
  }

  async loadInsights(metric: string = this.insights.centrality?.metric ?? "degree"): Promise<void> {
    const [histogram, centrality, communities] = await Promise.all([
      this.api.getHistogram(this.state.edgeTypes),
      this.api.getAnalytics(metric, { types: this.state.edgeTypes }),
      this.api.getCommunities("gn"),
    ]);
    this.insights = {
      histogram,
      centrality: {
        metric,
        rows: Object.entries(centrality.scores),
        revision: centrality.revision,
      },
      communities,
    };
  }

  async runDiffusion(params: WhatIfParams): Promise<void> {
    const alphaMax = this.graph?.alpha_max ?? null;
    if (!canRun(params, alphaMax)) return; // slider bound or seed rules say no
    const body: DiffusionRequest = {
      kernel: params.kernel,
      seeds: params.seeds,
      types: this.state.edgeTypes,
      top: 10,
    };
    if (params.kernel === "rwr") body.restart = params.restart;
    else body.alpha = params.alpha;
    this.whatIfError = null;
    try {
      const response = await this.api.postDiffusion(body);
      this.runs = [{ runId: this.nextRunId++, response }, ...this.runs];
    } catch (err) {
      this.whatIfError = err instanceof Error ? err.message : String(err);
    }
    this.render();
  }

  dismissRun(runId: number): void {
    this.runs = this.runs.filter((r) => r.runId !== runId);
    this.render();
  }

  async loadSignals(): Promise<void> {
    this.signals = (await this.api.getSignals()).signals;
    this.render();
  }

  async saveComponent(draft: ComponentDraft, expectedRevision: number): Promise<void> {
    try {
      await this.api.postComponent(
        {
          id: draft.id,
          name: draft.name,
          description: draft.description,
          processes: draft.processes.split("\n").map((p) => p.trim()).filter(Boolean),
          competency_id: draft.competency_id,
          accountability: draft.accountability,
        },
        expectedRevision,
      );
      this.editorDraft = null;
      this.editorConflict = null;
      await this.refreshModel();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // keep the draft: re-render it with the conflict prompt, lose nothing
        this.editorDraft = draft;
        this.editorConflict = {
          message: err.message,
          currentRevision: err.currentRevision ?? expectedRevision,
        };
      } else {
        this.editorConflict = {
          message: err instanceof Error ? err.message : String(err),
          currentRevision: expectedRevision,
        };
        this.editorDraft = draft;
      }
    }
    this.render();
  }

  async connectComponents(
    edge: { source?: string; target?: string; relation_type?: string; weight?: number },
    newType: { name: string; directed: boolean; default_weight: number } | null,
    expectedRevision: number,
  ): Promise<void> {
    try {
      if (newType && this.model) {
        const doc: ModelDoc = JSON.parse(JSON.stringify(this.model));
        doc.relation_types.push(newType);
        await this.api.putModel(doc);
        await this.refreshModel();
      }
      await this.api.postEdge(edge, newType ? this.revision : expectedRevision);
      await this.refreshModel();
    } catch (err) {
      this.whatIfError = null;
      this.editorConflict = {
        message: err instanceof Error ? err.message : String(err),
        currentRevision: this.revision,
      };
    }
    this.render();
  }

  async deleteComponent(id: string, expectedRevision: number): Promise<void> {
    await this.api.deleteComponent(id, expectedRevision);
    this.state = selectComponent(this.state, null);
    this.editorDraft = null;
    await this.refreshModel();
    this.render();
  }

  async pollJob(jobId: string, delayMs = 150): Promise<void> {
    this.job = { id: jobId, status: "pending" };
    for (let wait = delayMs; ; wait = Math.min(wait * 1.6, 3000)) {
      const job = await this.api.getJob(jobId);
      this.job = { id: job.id, status: job.status };
      this.render();
      if (job.status === "done" && job.result) {
        this.runs = [{ runId: this.nextRunId++, response: job.result }, ...this.runs];
        this.job = null;
        break;
      }
      if (job.status === "failed" || job.status === "cancelled") {
        this.whatIfError = job.error ?? `job ${job.status}`;
        this.job = null;
        break;
      }
      await new Promise((resolve) => setTimeout(resolve, wait));
    }
    this.render();
  }

  // -- rendering ---------------------------------------------------------

  render(): void {
    if (!this.model) return;
    this.root.replaceChildren(
      this.renderToolbar(),
      this.renderMain(),
      this.renderWhatIfPanel(),
    );
  }

  private renderToolbar(): HTMLElement {
    const bar = document.createElement("header");
    bar.className = "toolbar";

    const title = document.createElement("strong");
    title.textContent = `${this.model!.meta.name} (rev ${this.revision})`;
    bar.append(title);

    for (const view of ["grid", "graph"] as const) {
      const button = document.createElement("button");
      button.textContent = view;
      button.dataset.view = view;
      if (this.state.view === view) button.classList.add("active");
      button.addEventListener("click", () => {
        this.state = switchView(this.state, view);
        this.render();
      });
      bar.append(button);
    }

    const filters = document.createElement("span");
    filters.className = "edge-filters";
    filters.append("edges: ");
    for (const type of this.model!.relation_types) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.value = type.name;
      box.checked = this.state.edgeTypes.includes(type.name);
      box.addEventListener("change", () => {
        this.state = toggleEdgeType(this.state, type.name);
        // live re-query of the filtered graph, then redraw
        void this.refreshGraph().then(() => this.render());
      });
      label.append(box, type.name);
      filters.append(label);
    }
    bar.append(filters);

    const overlaySelect = document.createElement("select");
    overlaySelect.className = "overlay-select";
    const options: [string, Overlay][] = [
      ["no overlay", { kind: "none" }],
      ["heatmap: strategic", { kind: "heatmap", view: "strategic" }],
      ...METRICS.map(
        (m) => [`centrality: ${m}`, { kind: "centrality", metric: m } as Overlay] as [string, Overlay],
      ),
      ["communities", { kind: "communities" }],
      ["impact (last run)", { kind: "impact" }],
    ];
    options.forEach(([label, overlay], i) => {
      const option = document.createElement("option");
      option.value = String(i);
      option.textContent = label;
      option.selected = JSON.stringify(overlay) === JSON.stringify(this.state.overlay);
      overlaySelect.append(option);
    });
    overlaySelect.addEventListener("change", () => {
      this.state = setOverlay(this.state, options[Number(overlaySelect.value)][1]);
      void this.refreshOverlay().then(() => this.render());
    });
    bar.append(overlaySelect);

    const insightsButton = document.createElement("button");
    insightsButton.className = "load-insights";
    insightsButton.textContent = "insights";
    insightsButton.addEventListener("click", () =>
      void this.loadInsights().then(() => this.render()),
    );
    bar.append(insightsButton);

    const newComponent = document.createElement("button");
    newComponent.className = "new-component";
    newComponent.textContent = "+ component";
    newComponent.addEventListener("click", () => {
      this.editorDraft = draftFrom(null);
      this.editorIsNew = true;
      this.render();
    });
    bar.append(newComponent);
    return bar;
  }

  private renderMain(): HTMLElement {
    const main = document.createElement("main");
    const view = document.createElement("section");
    view.className = "view";

    if (this.overlayError) {
      const banner = document.createElement("div");
      banner.className = "error-banner";
      banner.textContent = `overlay unavailable: ${this.overlayError}`;
      view.append(banner);
    }

    const handlers = {
      onSelect: (id: string) => {
        this.state = selectComponent(this.state, id);
        this.editorDraft = draftFrom(this.model!.components.find((c) => c.id === id) ?? null);
        this.editorIsNew = false;
        this.editorConflict = null;
        this.render();
      },
    };
    if (this.state.view === "grid") {
      view.append(renderGrid(this.model!, this.overlayData, this.state.selected, handlers));
    } else {
      view.append(
        renderGraphView(
          this.model!,
          this.state.edgeTypes,
          this.overlayData,
          this.state.selected,
          handlers,
        ),
      );
    }
    main.append(view);

    if (this.editorDraft) {
      const aside = document.createElement("aside");
      aside.className = "editor-pane";
      aside.append(
        renderEditor(this.editorDraft, this.model!, this.editorConflict, {
          onSave: (draft, revision) => void this.saveComponent(draft, revision),
          onDelete: (id, revision) => void this.deleteComponent(id, revision),
          onConnect: (edge, newType, revision) =>
            void this.connectComponents(edge, newType, revision),
          onReload: () => {
            this.editorConflict = null;
            void this.refreshModel().then(() => this.render());
          },
          onClose: () => {
            this.editorDraft = null;
            this.render();
          },
        }, this.editorIsNew),
      );
      main.append(aside);
    }

    const insights = document.createElement("section");
    insights.className = "insights-pane";
    insights.append(
      renderInsights(this.insights, {
        onMetric: (metric) => void this.loadInsights(metric).then(() => this.render()),
      }),
    );
    main.append(insights);
    return main;
  }

  private renderWhatIfPanel(): HTMLElement {
    const section = document.createElement("section");
    section.className = "whatif-pane";
    section.append(
      renderWhatIf(
        {
          model: this.model!,
          params: this.state.whatIf,
          alphaMax: this.graph?.alpha_max ?? null,
          runs: this.runs,
          signals: this.signals,
          error: this.whatIfError,
          job: this.job,
          currentRevision: this.revision,
        },
        {
          onParams: (patch) => {
            this.state = setWhatIf(this.state, patch);
            this.render();
          },
          onRun: (params) => void this.runDiffusion(params),
          onDismiss: (runId) => this.dismissRun(runId),
          onUseSeeds: (seeds) => {
            this.state = setWhatIf(this.state, {
              seeds: { ...this.state.whatIf.seeds, ...seeds },
            });
            this.render();
          },
          onCancelJob: (jobId) => void this.api.cancelJob(jobId),
        },
      ),
    );
    return section;
  }
}
