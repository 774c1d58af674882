// Response shapes of the decision service, one type per endpoint.

export interface DecisionResponse {
  bundle_id: string;
  ep_lineout: number;
  ep_kick: number;
  delta: number;
  recommendation: 'lineout' | 'kick';
  x_lo: number;
  p_make: number;
  ep_miss: number;
}

export type FrontierSegment = [[number, number], [number, number]];

export interface GridResponse {
  bundle_id: string;
  schema_version: number;
  params: {
    d_touch: number;
    card_diff: number;
    winpct_diff: number;
    x_bounds: [number, number];
    y_bounds: [number, number];
    step: number;
    model_ids: Record<string, string>;
  };
  x_axis: number[];
  y_axis: number[];
  delta: number[][];
  recommendation: ('lineout' | 'kick')[][];
  frontier: FrontierSegment[];
}

export interface SweepResponse {
  bundle_id: string;
  points: [number, number][];
  crossing: number | null;
}

export interface RegretRowIn {
  team: string;
  ep_lineout: number;
  ep_kick: number;
  chosen: 'lineout' | 'kick';
}

export interface RegretRowOut extends RegretRowIn {
  optimal: 'lineout' | 'kick';
  regret: number;
}

export interface RegretResponse {
  bundle_id: string;
  schema_version: number;
  rows: RegretRowOut[];
  total_regret: number;
  proportion_optimal: number | null;
}

export interface GameContext {
  cards: -1 | 0 | 1;
  winpct: number;
}
