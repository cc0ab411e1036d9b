/** What-if impact diffusion panel.
 *
 * Seeds plus a kernel go to POST /diffusion; results stack side by side so
 * runs can be compared until they are dismissed. The alpha slider is
 * bounded live by the backend's alpha_max and the run action refuses any
 * alpha outside the open interval (0, alpha_max); validation authority
 * stays with the backend, this is just the UI honoring the published bound.
 */

import { sequentialColor } from "./color.js";
import { renderSignalList } from "./insights.js";
import type { WhatIfParams } from "./state.js";
import type { DiffusionResponse, ModelDoc, SignalDoc } from "./types.js";

export interface WhatIfRun {
  runId: number;
  response: DiffusionResponse;
}

export interface WhatIfPanelData {
  model: ModelDoc;
  params: WhatIfParams;
  alphaMax: number | null;
  runs: WhatIfRun[];
  signals: SignalDoc[] | null;
  error: string | null;
  job: { id: string; status: string } | null;
  currentRevision: number;
}

export interface WhatIfHandlers {
  onParams?: (patch: Partial<WhatIfParams>) => void;
  onRun?: (params: WhatIfParams) => void;
  onDismiss?: (runId: number) => void;
  onUseSeeds?: (seeds: Record<string, number>) => void;
  onCancelJob?: (jobId: string) => void;
}

/** Largest alpha the slider may reach: strictly inside the open bound. */
export function sliderMax(alphaMax: number | null): number {
  if (alphaMax === null) return 10;
  return alphaMax * (1 - 1e-6);
}

export function canRun(params: WhatIfParams, alphaMax: number | null): boolean {
  if (!Object.keys(params.seeds).length) return false;
  if (Object.values(params.seeds).some((v) => !(v > 0))) return false;
  if (params.kernel === "rwr") {
    return params.restart > 0 && params.restart < 1;
  }
  if (!(params.alpha > 0)) return false;
  if (params.kernel === "rl" && alphaMax !== null && params.alpha >= alphaMax) return false;
  return true;
}

function labelled(caption: string, input: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const span = document.createElement("span");
  span.textContent = caption;
  wrap.append(span, input);
  return wrap;
}

export function renderWhatIf(
  data: WhatIfPanelData,
  handlers: WhatIfHandlers = {},
): HTMLElement {
  const root = document.createElement("div");
  root.className = "whatif";
  const heading = document.createElement("h3");
  heading.textContent = "What-if impact diffusion";
  root.append(heading);

  root.append(renderControls(data, handlers));

  if (data.error) {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = data.error; // backend message, verbatim
    root.append(banner);
  }

  if (data.job) {
    const progress = document.createElement("div");
    progress.className = "job-progress";
    progress.dataset.status = data.job.status;
    progress.append(`diffusion job ${data.job.status}… `);
    const cancel = document.createElement("button");
    cancel.className = "cancel-job";
    cancel.textContent = "cancel";
    cancel.addEventListener("click", () => handlers.onCancelJob?.(data.job!.id));
    progress.append(cancel);
    root.append(progress);
  }

  const runs = document.createElement("div");
  runs.className = "runs";
  for (const run of data.runs) {
    runs.append(renderRun(run, data.currentRevision, handlers));
  }
  root.append(runs);

  const feedTab = document.createElement("details");
  feedTab.className = "feed-tab";
  const summary = document.createElement("summary");
  summary.textContent = "External impact signals";
  feedTab.append(summary);
  if (data.signals) {
    feedTab.append(
      renderSignalList(data.signals, {
        onUseSeeds: (componentId, importance) =>
          handlers.onUseSeeds?.({ [componentId]: importance }),
      }),
    );
  }
  root.append(feedTab);
  return root;
}

function renderControls(data: WhatIfPanelData, handlers: WhatIfHandlers): HTMLElement {
  const { params, alphaMax } = data;
  const controls = document.createElement("div");
  controls.className = "whatif-controls";

  const kernelSelect = document.createElement("select");
  kernelSelect.name = "kernel";
  for (const kind of ["rl", "rwr", "exp", "lexp"]) {
    const option = document.createElement("option");
    option.value = kind;
    option.textContent = kind;
    if (kind === params.kernel) option.selected = true;
    kernelSelect.append(option);
  }
  kernelSelect.addEventListener("change", () =>
    handlers.onParams?.({ kernel: kernelSelect.value as WhatIfParams["kernel"] }),
  );
  controls.append(labelled("kernel", kernelSelect));

  if (params.kernel === "rwr") {
    const restart = document.createElement("input");
    restart.type = "range";
    restart.name = "restart";
    restart.min = "0.01";
    restart.max = "0.99";
    restart.step = "0.01";
    restart.value = String(params.restart);
    restart.addEventListener("input", () =>
      handlers.onParams?.({ restart: Number(restart.value) }),
    );
    controls.append(labelled(`restart c = ${params.restart.toFixed(2)}`, restart));
  } else {
    const slider = document.createElement("input");
    slider.type = "range";
    slider.name = "alpha";
    slider.className = "alpha-slider";
    const max = sliderMax(alphaMax);
    slider.min = String(max / 1000);
    slider.max = String(max);
    slider.step = String(max / 1000);
    slider.value = String(Math.min(params.alpha || max / 2, max));
    slider.addEventListener("input", () => handlers.onParams?.({ alpha: Number(slider.value) }));
    const bound =
      alphaMax === null ? "no bound (edgeless graph)" : `0 < alpha < ${alphaMax.toPrecision(4)}`;
    controls.append(labelled(`alpha = ${(params.alpha || max / 2).toPrecision(3)} (${bound})`, slider));
  }

  controls.append(renderSeedList(data, handlers));

  const run = document.createElement("button");
  run.className = "run";
  run.textContent = "Run diffusion";
  run.disabled = !canRun(params, alphaMax);
  run.addEventListener("click", () => {
    if (canRun(params, alphaMax)) handlers.onRun?.(params);
  });
  controls.append(run);
  return controls;
}

function renderSeedList(data: WhatIfPanelData, handlers: WhatIfHandlers): HTMLElement {
  const { model, params } = data;
  const box = document.createElement("div");
  box.className = "seeds";
  const caption = document.createElement("span");
  caption.textContent = "seeds:";
  box.append(caption);

  for (const [componentId, intensity] of Object.entries(params.seeds)) {
    const row = document.createElement("span");
    row.className = "seed";
    row.dataset.component = componentId;
    row.append(`${componentId} = `);
    const intensityInput = document.createElement("input");
    intensityInput.type = "number";
    intensityInput.step = "0.1";
    intensityInput.min = "0.1";
    intensityInput.value = String(intensity);
    intensityInput.addEventListener("change", () =>
      handlers.onParams?.({
        seeds: { ...params.seeds, [componentId]: Number(intensityInput.value) },
      }),
    );
    const remove = document.createElement("button");
    remove.textContent = "x";
    remove.addEventListener("click", () => {
      const seeds = { ...params.seeds };
      delete seeds[componentId];
      handlers.onParams?.({ seeds });
    });
    row.append(intensityInput, remove);
    box.append(row);
  }

  const addSelect = document.createElement("select");
  addSelect.className = "add-seed";
  const placeholder = document.createElement("option");
  placeholder.value = "";
  placeholder.textContent = "add seed…";
  addSelect.append(placeholder);
  for (const component of model.components) {
    if (component.id in params.seeds) continue;
    const option = document.createElement("option");
    option.value = component.id;
    option.textContent = component.name || component.id;
    addSelect.append(option);
  }
  addSelect.addEventListener("change", () => {
    if (addSelect.value) {
      handlers.onParams?.({ seeds: { ...params.seeds, [addSelect.value]: 1.0 } });
    }
  });
  box.append(addSelect);
  return box;
}

function renderRun(
  run: WhatIfRun,
  currentRevision: number,
  handlers: WhatIfHandlers,
): HTMLElement {
  const { response } = run;
  const card = document.createElement("div");
  card.className = "run-card";
  card.dataset.runId = String(run.runId);
  if (response.revision !== currentRevision) card.classList.add("stale");

  const header = document.createElement("div");
  header.className = "run-header";
  const parameterText = Object.entries(response.parameters)
    .map(([k, v]) => `${k}=${typeof v === "number" ? v.toPrecision(3) : v}`)
    .join(", ");
  header.textContent =
    `${response.kernel} kernel (${parameterText}) @ rev ${response.revision}` +
    (response.revision !== currentRevision ? " [stale]" : "");
  const dismiss = document.createElement("button");
  dismiss.className = "dismiss";
  dismiss.textContent = "dismiss";
  dismiss.addEventListener("click", () => handlers.onDismiss?.(run.runId));
  header.append(" ", dismiss);
  card.append(header);

  const values = Object.values(response.scores);
  const min = Math.min(...values);
  const max = Math.max(...values);
  const list = document.createElement("ol");
  list.className = "ranking";
  for (const node of response.ranking.slice(0, 10)) {
    const item = document.createElement("li");
    item.dataset.node = node;
    item.style.background = sequentialColor(response.scores[node], min, max);
    item.textContent = `${node}: ${response.scores[node].toPrecision(4)}`;
    if (node in response.seeds) {
      item.classList.add("seed-node");
      item.textContent += " (seed)";
    }
    list.append(item);
  }
  card.append(list);
  return card;
}
