/** Force-directed graph rendering as SVG.
 *
 * Edge style encodes the relation type (arrowheads on directed types, a
 * label, width scaled by weight); node fill encodes the overlay. Only edges
 * whose relation type is in the filter are drawn; the node set is always
 * every component, so filter toggling changes edge visibility only.
 */

import { categoricalColor, sequentialColor } from "./color.js";
import { forceLayout } from "./layout.js";
import type { OverlayData } from "./state.js";
import type { ModelDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphHandlers {
  onSelect?: (componentId: string) => void;
}

function nodeColor(id: string, overlay: OverlayData): string {
  if (overlay.kind === "scores") {
    const values = Object.values(overlay.values);
    const value = overlay.values[id];
    if (value === undefined) return "#d7dde4";
    return sequentialColor(value, Math.min(...values), Math.max(...values));
  }
  if (overlay.kind === "communities") {
    const community = overlay.assignment[id];
    return community === undefined ? "#d7dde4" : categoricalColor(community);
  }
  return "#aebdcc";
}

export function renderGraphView(
  model: ModelDoc,
  edgeTypes: string[],
  overlay: OverlayData,
  selected: string | null,
  handlers: GraphHandlers = {},
  size = { width: 860, height: 560 },
): SVGSVGElement {
  const directedTypes = new Set(
    model.relation_types.filter((t) => t.directed).map((t) => t.name),
  );
  const visible = new Set(edgeTypes);
  const edges = model.edges.filter((e) => visible.has(e.relation_type));
  const nodeIds = model.components.map((c) => c.id);
  const positions = forceLayout(nodeIds, edges, size.width, size.height);
  const maxWeight = edges.reduce((m, e) => Math.max(m, e.weight), 1);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "graph-view");
  svg.setAttribute("viewBox", `0 0 ${size.width} ${size.height}`);

  const defs = document.createElementNS(SVG_NS, "defs");
  const marker = document.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "arrowhead");
  marker.setAttribute("markerWidth", "10");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "9");
  marker.setAttribute("refY", "4");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = document.createElementNS(SVG_NS, "path");
  tip.setAttribute("d", "M0,0 L10,4 L0,8 z");
  tip.setAttribute("fill", "#5c6b7a");
  marker.append(tip);
  defs.append(marker);
  svg.append(defs);

  const edgeGroup = document.createElementNS(SVG_NS, "g");
  edgeGroup.setAttribute("class", "edges");
  for (const edge of edges) {
    const from = positions.get(edge.source);
    const to = positions.get(edge.target);
    if (!from || !to) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", from.x.toFixed(1));
    line.setAttribute("y1", from.y.toFixed(1));
    line.setAttribute("x2", to.x.toFixed(1));
    line.setAttribute("y2", to.y.toFixed(1));
    line.setAttribute("stroke", "#8795a3");
    line.setAttribute("stroke-width", (1 + (2.5 * edge.weight) / maxWeight).toFixed(2));
    line.dataset.edgeType = edge.relation_type;
    line.dataset.source = edge.source;
    line.dataset.target = edge.target;
    if (directedTypes.has(edge.relation_type)) {
      line.setAttribute("marker-end", "url(#arrowhead)");
    }
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.source} -[${edge.relation_type} ${edge.weight}]-> ${edge.target}`;
    line.append(title);
    edgeGroup.append(line);
  }
  svg.append(edgeGroup);

  const nodeGroup = document.createElementNS(SVG_NS, "g");
  nodeGroup.setAttribute("class", "nodes");
  for (const component of model.components) {
    const p = positions.get(component.id);
    if (!p) continue;
    const g = document.createElementNS(SVG_NS, "g");
    g.setAttribute("class", "node");
    (g as unknown as HTMLElement).dataset.id = component.id;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", component.id === selected ? "14" : "11");
    circle.setAttribute("fill", nodeColor(component.id, overlay));
    circle.setAttribute("stroke", component.id === selected ? "#1a237e" : "#51606e");
    circle.addEventListener("click", () => handlers.onSelect?.(component.id));
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", p.x.toFixed(1));
    label.setAttribute("y", (p.y - 16).toFixed(1));
    label.setAttribute("text-anchor", "middle");
    label.textContent = component.name || component.id;
    g.append(circle, label);
    nodeGroup.append(g);
  }
  svg.append(nodeGroup);
  return svg;
}
