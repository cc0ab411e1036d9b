import { vi } from "vitest";

import type { DiffusionResponse, ModelDoc } from "../src/types.js";

export function makeModel(): ModelDoc {
  return {
    meta: { name: "acme", revision: 7 },
    competencies: [
      { id: "ops", name: "Operations", display_order: 0 },
      { id: "fin", name: "Finance", display_order: 1 },
    ],
    components: [
      {
        id: "planning", name: "Planning", description: "plans the network",
        processes: ["capacity"], competency_id: "ops", accountability: "Direct",
        view_values: { strategic: 0.9 }, tags: [],
      },
      {
        id: "dispatch", name: "Dispatch", description: "controls dispatch",
        processes: [], competency_id: "ops", accountability: "Control",
        view_values: {}, tags: [],
      },
      {
        id: "logistics", name: "Logistics", description: "moves freight",
        processes: ["dispatch"], competency_id: "ops", accountability: "Execute",
        view_values: {}, tags: [],
      },
      {
        id: "treasury", name: "Treasury", description: "controls cash",
        processes: [], competency_id: "fin", accountability: "Control",
        view_values: {}, tags: [],
      },
      {
        id: "billing", name: "Billing", description: "bills customers",
        processes: [], competency_id: "fin", accountability: "Execute",
        view_values: {}, tags: [],
      },
    ],
    relation_types: [
      { name: "peers", directed: false, default_weight: 1.0 },
      { name: "governs", directed: true, default_weight: 2.0 },
    ],
    edges: [
      { source: "planning", target: "dispatch", relation_type: "governs", weight: 2.0 },
      { source: "dispatch", target: "logistics", relation_type: "governs", weight: 2.0 },
      { source: "logistics", target: "billing", relation_type: "peers", weight: 3.0 },
      { source: "treasury", target: "billing", relation_type: "peers", weight: 1.0 },
    ],
    layers: [],
  };
}

export function makeDiffusionResponse(
  overrides: Partial<DiffusionResponse> = {},
): DiffusionResponse {
  return {
    revision: 7,
    kernel: "rl",
    parameters: { alpha: 0.05 },
    alpha_max: 0.2,
    seeds: { logistics: 1.0 },
    scores: { planning: 0.01, dispatch: 0.05, logistics: 0.8, treasury: 0.02, billing: 0.12 },
    ranking: ["logistics", "billing", "dispatch", "treasury", "planning"],
    ...overrides,
  };
}

export interface FetchCall {
  url: string;
  method: string;
  body: unknown;
}

/** Stub global fetch with a route table keyed by "METHOD path-prefix". */
export function stubFetch(
  routes: Record<string, unknown | ((call: FetchCall) => unknown)>,
): FetchCall[] {
  const calls: FetchCall[] = [];
  vi.stubGlobal("fetch", async (input: string, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const call: FetchCall = {
      url,
      method,
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    calls.push(call);
    for (const [route, result] of Object.entries(routes)) {
      const [routeMethod, prefix] = route.split(" ");
      if (method === routeMethod && url.includes(prefix)) {
        const value = typeof result === "function" ? (result as (c: FetchCall) => unknown)(call) : result;
        const { __status__, ...payload } = (value ?? {}) as Record<string, unknown>;
        return new Response(JSON.stringify(payload), {
          status: (__status__ as number | undefined) ?? 200,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ error: `no stub for ${method} ${url}` }), {
      status: 500,
    });
  });
  return calls;
}
