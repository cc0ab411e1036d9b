/** The single view state shared by the grid and graph views.
 *
 * All transitions are pure: switching between grid and graph preserves the
 * selection, the edge-type filter and the active overlay, so the two views
 * are two renderings of one state, never separate pages.
 */

import type { KernelKind } from "./types.js";

export type ViewKind = "grid" | "graph";

export type Overlay =
  | { kind: "none" }
  | { kind: "heatmap"; view: string }
  | { kind: "centrality"; metric: string }
  | { kind: "communities" }
  | { kind: "impact" };

export interface WhatIfParams {
  kernel: KernelKind;
  alpha: number;
  restart: number;
  seeds: Record<string, number>;
}

export interface ViewState {
  view: ViewKind;
  edgeTypes: string[];
  overlay: Overlay;
  selected: string | null;
  whatIf: WhatIfParams;
}

export function initialState(allEdgeTypes: string[]): ViewState {
  return {
    view: "grid",
    edgeTypes: [...allEdgeTypes],
    overlay: { kind: "none" },
    selected: null,
    whatIf: { kernel: "rl", alpha: 0, restart: 0.5, seeds: {} },
  };
}

export function switchView(state: ViewState, view: ViewKind): ViewState {
  return { ...state, view };
}

export function toggleEdgeType(state: ViewState, name: string): ViewState {
  const edgeTypes = state.edgeTypes.includes(name)
    ? state.edgeTypes.filter((t) => t !== name)
    : [...state.edgeTypes, name];
  return { ...state, edgeTypes };
}

export function setOverlay(state: ViewState, overlay: Overlay): ViewState {
  return { ...state, overlay };
}

export function selectComponent(state: ViewState, id: string | null): ViewState {
  return { ...state, selected: id };
}

export function setWhatIf(state: ViewState, patch: Partial<WhatIfParams>): ViewState {
  return { ...state, whatIf: { ...state.whatIf, ...patch } };
}

/** Data an overlay renderer needs; always carries the revision it came from. */
export type OverlayData =
  | { kind: "none" }
  | { kind: "scores"; label: string; values: Record<string, number>; revision: number }
  | { kind: "communities"; label: string; assignment: Record<string, number>; revision: number };
