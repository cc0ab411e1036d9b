import { describe, expect, it, vi } from "vitest";

import { BANDS, renderGrid } from "../src/grid.js";
import type { OverlayData } from "../src/state.js";

import { makeModel } from "./helpers.js";

const NONE: OverlayData = { kind: "none" };

describe("grid view", () => {
  it("renders competencies as columns and the three bands as rows", () => {
    const grid = renderGrid(makeModel(), NONE, null);
    const heads = grid.querySelectorAll(".grid-column-head");
    expect([...heads].map((h) => h.textContent)).toEqual(["Operations", "Finance"]);
    const cells = grid.querySelectorAll(".grid-cell");
    expect(cells.length).toBe(2 * BANDS.length);
    const planningCell = grid.querySelector('[data-competency="ops"][data-band="Direct"]');
    expect(planningCell?.querySelector('[data-id="planning"]')).toBeTruthy();
    const billingCell = grid.querySelector('[data-competency="fin"][data-band="Execute"]');
    expect(billingCell?.querySelector('[data-id="billing"]')).toBeTruthy();
  });

  it("places every component exactly once", () => {
    const grid = renderGrid(makeModel(), NONE, null);
    const cards = grid.querySelectorAll(".component-card");
    expect(cards.length).toBe(makeModel().components.length);
  });

  it("uses a uniform card color without an overlay", () => {
    const grid = renderGrid(makeModel(), NONE, null);
    const colors = new Set(
      [...grid.querySelectorAll<HTMLElement>(".component-card")].map((c) => c.style.background),
    );
    expect(colors.size).toBe(1);
  });

  it("colors equal overlay scores identically and shows a legend", () => {
    const scores: OverlayData = {
      kind: "scores",
      label: "degree",
      values: { planning: 2, dispatch: 2, logistics: 2, treasury: 2, billing: 2 },
      revision: 7,
    };
    const grid = renderGrid(makeModel(), scores, null);
    const colors = new Set(
      [...grid.querySelectorAll<HTMLElement>(".component-card")].map((c) => c.style.background),
    );
    expect(colors.size).toBe(1);
    expect(grid.querySelector(".legend")).toBeTruthy();
    expect(grid.querySelector(".legend")?.textContent).toContain("rev 7");
  });

  it("reports clicks through the handler", () => {
    const onSelect = vi.fn();
    const grid = renderGrid(makeModel(), NONE, null, { onSelect });
    grid.querySelector<HTMLElement>('[data-id="treasury"]')?.click();
    expect(onSelect).toHaveBeenCalledWith("treasury");
  });

  it("marks the selected component", () => {
    const grid = renderGrid(makeModel(), NONE, "dispatch");
    expect(grid.querySelector('[data-id="dispatch"]')?.classList.contains("selected")).toBe(true);
  });
});
