/** Insights panel: degree histogram with its balance reading, a sortable
 * centrality table, and the community listing with competency and
 * accountability breakdowns. Pure renderer over API responses.
 */

import { categoricalColor, sentimentColor } from "./color.js";
import type { CommunitiesResponse, HistogramResponse, SignalDoc } from "./types.js";

const INTERPRETATION: Record<string, string> = {
  "left-concentrated":
    "loose internal structure: components barely lean on each other",
  balanced: "balanced structure: healthy mix of autonomy and collaboration",
  "right-concentrated":
    "over-dependent structure: many dependencies can slow every change",
};

export interface InsightsData {
  histogram: HistogramResponse | null;
  centrality: { metric: string; rows: [string, number][]; revision: number } | null;
  communities: CommunitiesResponse | null;
}

export interface InsightsHandlers {
  onMetric?: (metric: string) => void;
}

export const METRICS = [
  "degree",
  "closeness",
  "betweenness",
  "eigenvector",
  "pagerank",
] as const;

export function renderInsights(
  data: InsightsData,
  handlers: InsightsHandlers = {},
): HTMLElement {
  const root = document.createElement("div");
  root.className = "insights";

  if (!data.histogram && !data.centrality && !data.communities) {
    const placeholder = document.createElement("p");
    placeholder.className = "placeholder";
    placeholder.textContent = "Load a model to see insights.";
    root.append(placeholder);
    return root;
  }

  if (data.histogram) root.append(renderHistogram(data.histogram));
  if (data.centrality) root.append(renderCentralityTable(data.centrality, handlers));
  if (data.communities) root.append(renderCommunities(data.communities));
  return root;
}

function renderHistogram(histogram: HistogramResponse): HTMLElement {
  const section = document.createElement("section");
  section.className = "histogram";
  const heading = document.createElement("h3");
  heading.textContent = "Degree histogram";
  section.append(heading);

  const entries = Object.entries(histogram.histogram)
    .map(([degree, count]) => [Number(degree), count] as [number, number])
    .sort((a, b) => a[0] - b[0]);
  const maxCount = entries.reduce((m, [, c]) => Math.max(m, c), 1);

  const chart = document.createElement("div");
  chart.className = "bars";
  for (const [degree, count] of entries) {
    const bar = document.createElement("div");
    bar.className = "bar";
    bar.dataset.degree = String(degree);
    bar.dataset.count = String(count);
    bar.style.height = `${(80 * count) / maxCount + 4}px`;
    bar.title = `degree ${degree}: ${count} components`;
    const label = document.createElement("span");
    label.textContent = String(degree);
    bar.append(label);
    chart.append(bar);
  }
  section.append(chart);

  const reading = document.createElement("p");
  reading.className = "classification";
  reading.dataset.classification = histogram.classification;
  reading.textContent =
    `${histogram.classification}: ` +
    (INTERPRETATION[histogram.classification] ?? "");
  section.append(reading);
  return section;
}

function renderCentralityTable(
  centrality: { metric: string; rows: [string, number][]; revision: number },
  handlers: InsightsHandlers,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "centrality";
  const heading = document.createElement("h3");
  heading.textContent = `Centrality (rev ${centrality.revision})`;
  section.append(heading);

  const switcher = document.createElement("div");
  switcher.className = "metric-switch";
  for (const metric of METRICS) {
    const button = document.createElement("button");
    button.textContent = metric;
    button.dataset.metric = metric;
    if (metric === centrality.metric) button.classList.add("active");
    button.addEventListener("click", () => handlers.onMetric?.(metric));
    switcher.append(button);
  }
  section.append(switcher);

  const table = document.createElement("table");
  const head = document.createElement("tr");
  head.innerHTML = `<th>component</th><th>${centrality.metric}</th>`;
  table.append(head);
  const rows = [...centrality.rows].sort((a, b) => b[1] - a[1]);
  for (const [node, score] of rows) {
    const row = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = node;
    const value = document.createElement("td");
    value.textContent = score.toPrecision(4);
    row.append(name, value);
    table.append(row);
  }
  section.append(table);
  return section;
}

function renderCommunities(communities: CommunitiesResponse): HTMLElement {
  const section = document.createElement("section");
  section.className = "communities";
  const heading = document.createElement("h3");
  heading.textContent =
    `${communities.community_count} communities ` +
    `(${communities.method}, Q=${communities.modularity.toFixed(3)})`;
  section.append(heading);

  for (const group of communities.communities) {
    const box = document.createElement("div");
    box.className = "community";
    box.dataset.community = String(group.id);
    box.style.borderLeftColor = categoricalColor(group.id);
    const competencies = new Set(group.members.map((m) => m.competency_name));
    const title = document.createElement("h4");
    title.textContent =
      `community ${group.id} — ${group.members.length} components, ` +
      `${competencies.size} competencies`;
    box.append(title);
    const list = document.createElement("ul");
    for (const member of group.members) {
      const item = document.createElement("li");
      item.textContent = `${member.name || member.id} [${member.competency_name} / ${member.accountability}]`;
      list.append(item);
    }
    box.append(list);
    section.append(box);
  }
  return section;
}

export function renderSignalList(
  signals: SignalDoc[],
  handlers: { onUseSeeds?: (componentId: string, importance: number) => void } = {},
): HTMLElement {
  const list = document.createElement("div");
  list.className = "signal-list";
  if (!signals.length) {
    const empty = document.createElement("p");
    empty.className = "placeholder";
    empty.textContent = "No impact signals yet; refresh the feeds.";
    list.append(empty);
    return list;
  }
  for (const signal of signals) {
    const row = document.createElement("div");
    row.className = "signal";
    row.dataset.sentiment = signal.sentiment;
    row.style.borderLeftColor = sentimentColor(signal.sentiment);
    const text = document.createElement("span");
    text.textContent =
      `${signal.component_id} — ${signal.sentiment} ` +
      `(relevance ${signal.relevance.toFixed(2)}, importance ${signal.importance.toFixed(2)})`;
    const use = document.createElement("button");
    use.className = "use-seed";
    use.textContent = "use as seed";
    use.addEventListener("click", () =>
      handlers.onUseSeeds?.(signal.component_id, signal.importance),
    );
    row.append(text, use);
    list.append(row);
  }
  return list;
}
