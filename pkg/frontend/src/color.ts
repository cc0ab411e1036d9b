/** Color scales for overlays: one sequential, one categorical. */

/** Linear light-to-dark blue scale over [min, max]; constant input maps to the midpoint. */
export function sequentialColor(value: number, min: number, max: number): string {
  const t = max > min ? (value - min) / (max - min) : 0.5;
  const lightness = 92 - 55 * Math.max(0, Math.min(1, t));
  return `hsl(215, 65%, ${lightness.toFixed(1)}%)`;
}

const PALETTE = [
  "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
  "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac",
];

export function categoricalColor(index: number): string {
  return PALETTE[((index % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

export function sentimentColor(sentiment: string): string {
  if (sentiment === "Positive") return "#2e7d32";
  if (sentiment === "Negative") return "#c62828";
  return "#757575";
}

export interface LegendStop {
  value: number;
  color: string;
}

export function legendStops(min: number, max: number, count = 5): LegendStop[] {
  const stops: LegendStop[] = [];
  for (let i = 0; i < count; i += 1) {
    const value = min + ((max - min) * i) / (count - 1 || 1);
    stops.push({ value, color: sequentialColor(value, min, max) });
  }
  return stops;
}
