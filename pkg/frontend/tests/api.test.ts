import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient, LatestOnly, debounce } from '../src/api';

function jsonResponse(body: unknown): Response {
  return { ok: true, json: async () => body } as Response;
}

afterEach(() => {
  vi.restoreAllMocks();
  vi.useRealTimers();
});

describe('ApiClient', () => {
  it('builds decision queries with every context field', async () => {
    const spy = vi.fn(async (_url: string) => jsonResponse({ delta: 0.25 }));
    vi.stubGlobal('fetch', spy);
    const client = new ApiClient();
    await client.decision(30, -20, 20, { cards: 1, winpct: -0.25 });
    const url = spy.mock.calls[0][0];
    expect(url).toContain('/api/decision?');
    expect(url).toContain('x=30');
    expect(url).toContain('y=-20');
    expect(url).toContain('d_touch=20');
    expect(url).toContain('cards=1');
    expect(url).toContain('winpct=-0.25');
  });

  it('posts regret rows as JSON', async () => {
    const spy = vi.fn(async (_url: string, _init?: RequestInit) =>
      jsonResponse({ rows: [], total_regret: 0 }),
    );
    vi.stubGlobal('fetch', spy);
    const rows = [{ team: 'SA', ep_lineout: 1.56, ep_kick: 1.87, chosen: 'lineout' as const }];
    await new ApiClient().regret(rows);
    const [url, init] = spy.mock.calls[0];
    expect(url).toBe('/api/regret');
    expect(JSON.parse(init!.body as string)).toEqual({ rows });
  });

  it('throws on non-2xx responses', async () => {
    vi.stubGlobal('fetch', vi.fn(async () => ({ ok: false, status: 422 }) as Response));
    await expect(new ApiClient().decision(4, 0, 5, { cards: 0, winpct: 0 })).rejects.toThrow('422');
  });
});

describe('LatestOnly', () => {
  it('discards responses that finish after a newer request started', async () => {
    const resolvers: Array<(v: string) => void> = [];
    const source = new LatestOnly(
      () => new Promise<string>((resolve) => resolvers.push(resolve)),
    );
    const first = source.call();
    const second = source.call();
    // Resolve out of order: the slow first response arrives last.
    resolvers[1]('second');
    resolvers[0]('first');
    expect(await second).toBe('second');
    expect(await first).toBeNull();
  });

  it('delivers the newest response', async () => {
    const source = new LatestOnly(async (v: number) => v * 2);
    expect(await source.call(21)).toBe(42);
  });
});

describe('debounce', () => {
  it('collapses a slider drag into one trailing call', () => {
    vi.useFakeTimers();
    const fn = vi.fn();
    const debounced = debounce(fn, 100);
    for (let v = 0; v <= 10; v++) debounced(v);
    expect(fn).not.toHaveBeenCalled();
    vi.advanceTimersByTime(150);
    expect(fn).toHaveBeenCalledTimes(1);
    expect(fn).toHaveBeenCalledWith(10);
  });
});
