import type { RegretRowIn } from './types';

/**
 * Append-only record of decisions entered during a match. All regret
 * arithmetic happens server-side via POST /api/regret; the ledger only
 * stores what was entered and renders what the service returns.
 */
export class RegretLedger {
  private readonly rows: RegretRowIn[] = [];

  add(row: RegretRowIn): void {
    this.rows.push({ ...row });
  }

  get entries(): readonly RegretRowIn[] {
    return this.rows;
  }

  get size(): number {
    return this.rows.length;
  }

  /** CSV in the exact column set the `regret` CLI command ingests. */
  toCsv(): string {
    const lines = ['team,ep_lineout,ep_kick,chosen'];
    for (const r of this.rows) {
      lines.push(`${r.team},${r.ep_lineout},${r.ep_kick},${r.chosen}`);
    }
    return lines.join('\n') + '\n';
  }
}

export function formatTotals(total: number | null, proportion: number | null): {
  total: string;
  proportion: string;
} {
  return {
    total: total === null ? '0.00' : total.toFixed(2),
    proportion: proportion === null ? '—' : proportion.toFixed(2),
  };
}
