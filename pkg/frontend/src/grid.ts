/** The classic one-page grid: competency columns x accountability bands,
 * with component cards colored by the active overlay. A pure function of
 * (model document, overlay data, selection).
 */

import { categoricalColor, legendStops, sequentialColor } from "./color.js";
import type { OverlayData } from "./state.js";
import type { ComponentDoc, ModelDoc } from "./types.js";

export const BANDS = ["Direct", "Control", "Execute"] as const;

export interface GridHandlers {
  onSelect?: (componentId: string) => void;
}

function cardColor(component: ComponentDoc, overlay: OverlayData): string {
  if (overlay.kind === "scores") {
    const values = Object.values(overlay.values);
    const min = Math.min(...values);
    const max = Math.max(...values);
    const value = overlay.values[component.id];
    if (value === undefined) return "#f4f4f4";
    return sequentialColor(value, min, max);
  }
  if (overlay.kind === "communities") {
    const community = overlay.assignment[component.id];
    return community === undefined ? "#f4f4f4" : categoricalColor(community);
  }
  return "#eef1f5";
}

function renderLegend(overlay: OverlayData): HTMLElement | null {
  if (overlay.kind !== "scores") return null;
  const values = Object.values(overlay.values);
  const legend = document.createElement("div");
  legend.className = "legend";
  legend.append(`${overlay.label} (rev ${overlay.revision}): `);
  for (const stop of legendStops(Math.min(...values), Math.max(...values))) {
    const chip = document.createElement("span");
    chip.className = "legend-chip";
    chip.style.background = stop.color;
    chip.title = stop.value.toPrecision(3);
    legend.append(chip);
  }
  return legend;
}

export function renderGrid(
  model: ModelDoc,
  overlay: OverlayData,
  selected: string | null,
  handlers: GridHandlers = {},
): HTMLElement {
  const root = document.createElement("div");
  root.className = "grid-view";

  const legend = renderLegend(overlay);
  if (legend) root.append(legend);

  const table = document.createElement("div");
  table.className = "grid-table";
  const columns = [...model.competencies].sort((a, b) => a.display_order - b.display_order);
  table.style.gridTemplateColumns = `7rem repeat(${columns.length}, 1fr)`;

  table.append(document.createElement("div")); // corner cell
  for (const competency of columns) {
    const head = document.createElement("div");
    head.className = "grid-column-head";
    head.dataset.competency = competency.id;
    head.textContent = competency.name;
    table.append(head);
  }

  for (const band of BANDS) {
    const rowHead = document.createElement("div");
    rowHead.className = "grid-band-head";
    rowHead.textContent = band;
    table.append(rowHead);
    for (const competency of columns) {
      const cell = document.createElement("div");
      cell.className = "grid-cell";
      cell.dataset.competency = competency.id;
      cell.dataset.band = band;
      const members = model.components.filter(
        (c) => c.competency_id === competency.id && c.accountability === band,
      );
      for (const component of members) {
        const card = document.createElement("button");
        card.className = "component-card";
        card.dataset.id = component.id;
        card.textContent = component.name || component.id;
        card.style.background = cardColor(component, overlay);
        if (component.id === selected) card.classList.add("selected");
        card.addEventListener("click", () => handlers.onSelect?.(component.id));
        cell.append(card);
      }
      table.append(cell);
    }
  }
  root.append(table);
  return root;
}
