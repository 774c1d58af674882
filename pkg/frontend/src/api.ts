import type {
  DecisionResponse,
  GameContext,
  GridResponse,
  RegretResponse,
  RegretRowIn,
  SweepResponse,
} from './types';

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    throw new Error(`GET ${url} failed: ${res.status}`);
  }
  return (await res.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = '') {}

  decision(x: number, y: number, dTouch: number, ctx: GameContext): Promise<DecisionResponse> {
    const q = new URLSearchParams({
      x: String(x),
      y: String(y),
      d_touch: String(dTouch),
      cards: String(ctx.cards),
      winpct: String(ctx.winpct),
    });
    return getJson(`${this.base}/api/decision?${q}`);
  }

  grid(dTouch: number, ctx: GameContext, step = 1): Promise<GridResponse> {
    const q = new URLSearchParams({
      d_touch: String(dTouch),
      cards: String(ctx.cards),
      winpct: String(ctx.winpct),
      step: String(step),
    });
    return getJson(`${this.base}/api/grid?${q}`);
  }

  sweep(x: number, y: number, ctx: GameContext, dmax = 30): Promise<SweepResponse> {
    const q = new URLSearchParams({
      x: String(x),
      y: String(y),
      cards: String(ctx.cards),
      winpct: String(ctx.winpct),
      dmax: String(dmax),
    });
    return getJson(`${this.base}/api/sweep?${q}`);
  }

  async regret(rows: RegretRowIn[]): Promise<RegretResponse> {
    const res = await fetch(`${this.base}/api/regret`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ rows }),
    });
    if (!res.ok) {
      throw new Error(`POST /api/regret failed: ${res.status}`);
    }
    return (await res.json()) as RegretResponse;
  }
}

/**
 * Serializes an async source per panel: every call gets a sequence token
 * and a response is delivered only if no newer call started meanwhile.
 * Stale responses resolve to null and are dropped by the caller.
 */
export class LatestOnly<A extends unknown[], R> {
  private seq = 0;

  constructor(private readonly fn: (...args: A) => Promise<R>) {}

  async call(...args: A): Promise<R | null> {
    const token = ++this.seq;
    const result = await this.fn(...args);
    return token === this.seq ? result : null;
  }
}

/** Trailing-edge debounce; one timer per wrapped function. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}
