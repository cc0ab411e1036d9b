/** Deterministic force-directed layout (Fruchterman-Reingold flavor).
 *
 * Pure: same nodes, edges and seed always give the same positions, so the
 * graph view is a pure function of its inputs.
 */

export interface LayoutEdge {
  source: string;
  target: string;
  weight: number;
}

export interface Point {
  x: number;
  y: number;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  nodeIds: string[],
  edges: LayoutEdge[],
  width: number,
  height: number,
  iterations = 250,
  seed = 7,
): Map<string, Point> {
  const n = nodeIds.length;
  const positions = new Map<string, Point>();
  if (n === 0) return positions;
  const rng = mulberry32(seed);
  const index = new Map(nodeIds.map((id, i) => [id, i]));
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i += 1) {
    const angle = (2 * Math.PI * i) / n;
    xs[i] = width / 2 + (width / 3) * Math.cos(angle) + (rng() - 0.5) * 10;
    ys[i] = height / 2 + (height / 3) * Math.sin(angle) + (rng() - 0.5) * 10;
  }
  if (n === 1) {
    positions.set(nodeIds[0], { x: width / 2, y: height / 2 });
    return positions;
  }

  const k = Math.sqrt((width * height) / n);
  const maxWeight = edges.reduce((m, e) => Math.max(m, e.weight), 1);
  let temperature = width / 8;
  const cool = temperature / iterations;

  for (let step = 0; step < iterations; step += 1) {
    const dx = new Float64Array(n);
    const dy = new Float64Array(n);
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        let vx = xs[i] - xs[j];
        let vy = ys[i] - ys[j];
        let dist = Math.hypot(vx, vy);
        if (dist < 1e-6) {
          vx = rng() - 0.5;
          vy = rng() - 0.5;
          dist = 1e-3;
        }
        const repulsion = (k * k) / dist;
        dx[i] += (vx / dist) * repulsion;
        dy[i] += (vy / dist) * repulsion;
        dx[j] -= (vx / dist) * repulsion;
        dy[j] -= (vy / dist) * repulsion;
      }
    }
    for (const edge of edges) {
      const i = index.get(edge.source);
      const j = index.get(edge.target);
      if (i === undefined || j === undefined || i === j) continue;
      const vx = xs[i] - xs[j];
      const vy = ys[i] - ys[j];
      const dist = Math.max(Math.hypot(vx, vy), 1e-3);
      // heavier edges pull harder, so strong relations sit closer
      const attraction = ((dist * dist) / k) * (0.5 + edge.weight / maxWeight);
      dx[i] -= (vx / dist) * attraction;
      dy[i] -= (vy / dist) * attraction;
      dx[j] += (vx / dist) * attraction;
      dy[j] += (vy / dist) * attraction;
    }
    for (let i = 0; i < n; i += 1) {
      const disp = Math.max(Math.hypot(dx[i], dy[i]), 1e-9);
      const limited = Math.min(disp, temperature);
      xs[i] += (dx[i] / disp) * limited;
      ys[i] += (dy[i] / disp) * limited;
      xs[i] = Math.min(width - 30, Math.max(30, xs[i]));
      ys[i] = Math.min(height - 30, Math.max(30, ys[i]));
    }
    temperature = Math.max(temperature - cool, 0.5);
  }

  nodeIds.forEach((id, i) => positions.set(id, { x: xs[i], y: ys[i] }));
  return positions;
}
