/** Payload shapes of the /api/v1 endpoints the UI consumes. */

export interface ModelMeta {
  name: string;
  revision: number;
}

export interface CompetencyDoc {
  id: string;
  name: string;
  display_order: number;
}

export interface ComponentDoc {
  id: string;
  name: string;
  description: string;
  processes: string[];
  competency_id: string;
  accountability: string;
  view_values: Record<string, number>;
  tags: string[];
}

export interface RelationTypeDoc {
  name: string;
  directed: boolean;
  default_weight: number;
}

export interface EdgeDoc {
  source: string;
  target: string;
  relation_type: string;
  weight: number;
}

export interface ModelDoc {
  meta: ModelMeta;
  competencies: CompetencyDoc[];
  components: ComponentDoc[];
  relation_types: RelationTypeDoc[];
  edges: EdgeDoc[];
  layers: unknown[];
}

export interface GraphResponse {
  revision: number;
  node_ids: string[];
  adjacency: number[][];
  directed: boolean;
  alpha_max: number | null;
}

export interface AnalyticsResponse {
  revision: number;
  metric: string;
  parameters: Record<string, unknown>;
  scores: Record<string, number>;
}

export interface HistogramResponse {
  revision: number;
  histogram: Record<string, number>;
  classification: string;
  mean_degree: number;
  max_possible_degree: number;
}

export interface CommunityMember {
  id: string;
  name: string;
  competency_id: string;
  competency_name: string;
  accountability: string;
}

export interface CommunitiesResponse {
  revision: number;
  method: string;
  community_count: number;
  modularity: number;
  communities: { id: number; members: CommunityMember[] }[];
}

export type KernelKind = "rl" | "rwr" | "exp" | "lexp";

export interface DiffusionRequest {
  kernel: KernelKind;
  alpha?: number;
  restart?: number;
  seeds: Record<string, number>;
  types?: string[] | null;
  top?: number;
  run_async?: boolean;
}

export interface DiffusionResponse {
  revision: number;
  kernel: string;
  parameters: Record<string, number | boolean>;
  alpha_max: number | null;
  seeds: Record<string, number>;
  scores: Record<string, number>;
  ranking: string[];
  top?: [string, number][];
}

export type Sentiment = "Positive" | "Neutral" | "Negative";

export interface SignalDoc {
  component_id: string;
  item_id: string;
  relevance: number;
  sentiment: Sentiment;
  sentiment_score: number;
  importance: number;
}

export interface SignalsResponse {
  revision: number;
  computed_at_revision: number | null;
  signals: SignalDoc[];
}

export interface JobResponse {
  id: string;
  status: "pending" | "running" | "done" | "failed" | "cancelled";
  result?: DiffusionResponse;
  error?: string;
}
