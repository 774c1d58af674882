import { ApiClient, LatestOnly, debounce } from './api';
import { deltaColor } from './colors';
import { RegretLedger, formatTotals } from './ledger';
import { drawDecisionMap, drawMarker, drawSweep } from './render';
import { Viewport, canvasToPitch, inKickDomain } from './transform';
import type {
  DecisionResponse,
  GameContext,
  GridResponse,
  RegretResponse,
  SweepResponse,
} from './types';

export type GridLayer = 'delta' | 'recommendation';

export interface ExplorerState {
  dTouch: number;
  cards: -1 | 0 | 1;
  winpct: number;
  layer: GridLayer;
  selected: { x: number; y: number } | null;
}

const MAP_VIEW: Viewport = { width: 560, height: 480 };
const SWEEP_VIEW: Viewport = { width: 560, height: 160 };

export class App {
  readonly state: ExplorerState = {
    dTouch: 20,
    cards: 0,
    winpct: 0,
    layer: 'delta',
    selected: null,
  };
  readonly ledger = new RegretLedger();

  grid: GridResponse | null = null;
  decision: DecisionResponse | null = null;
  sweep: SweepResponse | null = null;
  regret: RegretResponse | null = null;

  private readonly gridFetch: LatestOnly<[number, GameContext], GridResponse>;
  private readonly decisionFetch: LatestOnly<[number, number, number, GameContext], DecisionResponse>;
  private readonly sweepFetch: LatestOnly<[number, number, GameContext], SweepResponse>;
  private readonly scheduleRefresh: () => void;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    debounceMs = 150,
  ) {
    this.gridFetch = new LatestOnly((d, ctx) => this.api.grid(d, ctx));
    this.decisionFetch = new LatestOnly((x, y, d, ctx) => this.api.decision(x, y, d, ctx));
    this.sweepFetch = new LatestOnly((x, y, ctx) => this.api.sweep(x, y, ctx));
    this.scheduleRefresh = debounce(() => void this.refresh(), debounceMs);
    this.buildDom();
  }

  private ctx(): GameContext {
    return { cards: this.state.cards, winpct: this.state.winpct };
  }

  // -- data flow -----------------------------------------------------------

  async refresh(): Promise<void> {
    await Promise.all([this.refreshGrid(), this.refreshSelection()]);
  }

  async refreshGrid(): Promise<void> {
    const grid = await this.gridFetch.call(this.state.dTouch, this.ctx());
    if (grid === null) return; // a newer request superseded this one
    this.grid = grid;
    this.renderMap();
  }

  async refreshSelection(): Promise<void> {
    const sel = this.state.selected;
    if (!sel) return;
    const [decision, sweep] = await Promise.all([
      this.decisionFetch.call(sel.x, sel.y, this.state.dTouch, this.ctx()),
      this.sweepFetch.call(sel.x, sel.y, this.ctx()),
    ]);
    if (decision !== null) {
      this.decision = decision;
      this.renderVerdict();
    }
    if (sweep !== null) {
      this.sweep = sweep;
      this.renderSweep();
    }
  }

  async selectPoint(x: number, y: number): Promise<void> {
    if (!inKickDomain(x, y)) {
      this.setWarning(
        `outside the kick model domain (needs x ≥ 5 m); got x = ${x.toFixed(1)} m`,
      );
      return;
    }
    this.setWarning('');
    this.state.selected = { x, y };
    this.renderMap();
    await this.refreshSelection();
  }

  handleCanvasClick(px: number, py: number): Promise<void> {
    const [x, y] = canvasToPitch(px, py, MAP_VIEW);
    return this.selectPoint(x, y);
  }

  handleHover(px: number, py: number): void {
    if (!this.grid) return;
    const [x, y] = canvasToPitch(px, py, MAP_VIEW);
    const i = nearestIndex(this.grid.x_axis, x);
    const j = nearestIndex(this.grid.y_axis, y);
    const delta = this.grid.delta[i][j];
    this.text(
      '#hover-readout',
      `x=${this.grid.x_axis[i]} y=${this.grid.y_axis[j]} ΔEP=${delta.toFixed(3)}`,
    );
  }

  setDTouch(value: number): void {
    this.state.dTouch = value;
    this.text('#dtouch-readout', `${value} m`);
    this.scheduleRefresh();
  }

  setCards(value: -1 | 0 | 1): void {
    this.state.cards = value;
    this.scheduleRefresh();
  }

  setWinpct(value: number): void {
    this.state.winpct = value;
    this.text('#winpct-readout', value.toFixed(2));
    this.scheduleRefresh();
  }

  setLayer(layer: GridLayer): void {
    this.state.layer = layer;
    this.renderMap();
  }

  async logDecision(chosen: 'lineout' | 'kick'): Promise<void> {
    if (!this.decision) return;
    const team = (this.root.querySelector('#team-input') as HTMLInputElement)?.value || 'A';
    // Row values come verbatim from the decision response.
    this.ledger.add({
      team,
      ep_lineout: this.decision.ep_lineout,
      ep_kick: this.decision.ep_kick,
      chosen,
    });
    this.regret = await this.api.regret([...this.ledger.entries]);
    this.renderLedger();
  }

  exportCsv(): string {
    return this.ledger.toCsv();
  }

  // -- rendering -----------------------------------------------------------

  private canvas2d(selector: string): CanvasRenderingContext2D | null {
    const canvas = this.root.querySelector(selector) as HTMLCanvasElement | null;
    return canvas ? canvas.getContext('2d') : null;
  }

  renderMap(): void {
    const ctx = this.canvas2d('#pitch-canvas');
    if (!ctx || !this.grid) return;
    const layered: GridResponse =
      this.state.layer === 'delta'
        ? this.grid
        : {
            ...this.grid,
            delta: this.grid.recommendation.map((row) =>
              row.map((r) => (r === 'lineout' ? 1.0 : -1.0)),
            ),
          };
    drawDecisionMap(ctx, layered, MAP_VIEW);
    if (this.state.selected) {
      drawMarker(ctx, this.state.selected.x, this.state.selected.y, MAP_VIEW);
    }
  }

  renderVerdict(): void {
    const d = this.decision;
    if (!d) return;
    this.text('#v-ep-lineout', d.ep_lineout.toFixed(2));
    this.text('#v-ep-kick', d.ep_kick.toFixed(2));
    this.text('#v-delta', (d.delta >= 0 ? '+' : '') + d.delta.toFixed(2));
    this.text('#v-rec', d.recommendation);
    const card = this.root.querySelector('#verdict-card') as HTMLElement;
    if (card) card.dataset.recommendation = d.recommendation;
  }

  renderSweep(): void {
    const s = this.sweep;
    if (!s) return;
    this.text(
      '#v-crossing',
      s.crossing === null ? '—' : `${s.crossing.toFixed(1)} m`,
    );
    const ctx = this.canvas2d('#sweep-canvas');
    if (ctx) drawSweep(ctx, s.points, s.crossing, SWEEP_VIEW);
  }

  renderLedger(): void {
    const body = this.root.querySelector('#ledger-body') as HTMLElement;
    if (!body) return;
    const rows = this.regret?.rows ?? [];
    body.innerHTML = rows
      .map(
        (r) =>
          `<tr><td>${r.team}</td><td>${r.ep_lineout.toFixed(2)}</td>` +
          `<td>${r.ep_kick.toFixed(2)}</td><td>${r.chosen}</td>` +
          `<td>${r.optimal}</td><td>${r.regret.toFixed(2)}</td></tr>`,
      )
      .join('');
    const totals = formatTotals(
      this.regret ? this.regret.total_regret : null,
      this.regret ? this.regret.proportion_optimal : null,
    );
    this.text('#ledger-total', totals.total);
    this.text('#ledger-prop', totals.proportion);
  }

  setWarning(message: string): void {
    this.text('#warning', message);
  }

  private text(selector: string, value: string): void {
    const el = this.root.querySelector(selector);
    if (el) el.textContent = value;
  }

  // -- static layout ---------------------------------------------------------

  private buildDom(): void {
    this.root.innerHTML = `
      <div class="explorer">
        <section class="map-panel">
          <h2>Decision map</h2>
          <canvas id="pitch-canvas" width="${MAP_VIEW.width}" height="${MAP_VIEW.height}"></canvas>
          <div id="hover-readout"></div>
          <div id="warning" class="warning"></div>
          <div class="legend">green: lineout better &middot; blue: kick better &middot; line: indifference</div>
        </section>
        <section class="controls">
          <h2>Context</h2>
          <label>meters gained to touch <span id="dtouch-readout">20 m</span>
            <input id="dtouch" type="range" min="0" max="30" step="1" value="20">
          </label>
          <label>cards
            <select id="cards">
              <option value="-1">own team down a player</option>
              <option value="0" selected>even</option>
              <option value="1">opposition down a player</option>
            </select>
          </label>
          <label>win-pct differential <span id="winpct-readout">0.00</span>
            <input id="winpct" type="range" min="-0.5" max="0.5" step="0.05" value="0">
          </label>
          <label>layer
            <select id="layer">
              <option value="delta" selected>delta heatmap</option>
              <option value="recommendation">recommendation</option>
            </select>
          </label>
          <div id="verdict-card" class="card">
            <h3>Verdict: <span id="v-rec">&mdash;</span></h3>
            <div>EP lineout <span id="v-ep-lineout">&mdash;</span></div>
            <div>EP kick <span id="v-ep-kick">&mdash;</span></div>
            <div>&Delta;EP <span id="v-delta">&mdash;</span></div>
            <div>break-even gain <span id="v-crossing">&mdash;</span></div>
            <div class="log-buttons">
              <input id="team-input" placeholder="team" value="A">
              <button id="log-lineout">log: took lineout</button>
              <button id="log-kick">log: took kick</button>
            </div>
          </div>
          <canvas id="sweep-canvas" width="${SWEEP_VIEW.width}" height="${SWEEP_VIEW.height}"></canvas>
        </section>
        <section class="ledger">
          <h2>Regret ledger</h2>
          <table id="ledger-table">
            <thead><tr><th>team</th><th>EP lineout</th><th>EP kick</th>
              <th>chosen</th><th>optimal</th><th>regret</th></tr></thead>
            <tbody id="ledger-body"></tbody>
            <tfoot><tr><td colspan="5">total regret</td><td id="ledger-total">0.00</td></tr>
              <tr><td colspan="5">proportion optimal</td><td id="ledger-prop">&mdash;</td></tr></tfoot>
          </table>
          <button id="export-csv">export CSV</button>
        </section>
      </div>`;

    const canvas = this.root.querySelector('#pitch-canvas') as HTMLCanvasElement;
    canvas.addEventListener('click', (ev) => {
      const rect = canvas.getBoundingClientRect();
      void this.handleCanvasClick(ev.clientX - rect.left, ev.clientY - rect.top);
    });
    canvas.addEventListener('mousemove', (ev) => {
      const rect = canvas.getBoundingClientRect();
      this.handleHover(ev.clientX - rect.left, ev.clientY - rect.top);
    });
    this.on('#dtouch', 'input', (el) => this.setDTouch(Number((el as HTMLInputElement).value)));
    this.on('#cards', 'change', (el) =>
      this.setCards(Number((el as HTMLSelectElement).value) as -1 | 0 | 1),
    );
    this.on('#winpct', 'input', (el) => this.setWinpct(Number((el as HTMLInputElement).value)));
    this.on('#layer', 'change', (el) =>
      this.setLayer((el as HTMLSelectElement).value as GridLayer),
    );
    this.on('#log-lineout', 'click', () => void this.logDecision('lineout'));
    this.on('#log-kick', 'click', () => void this.logDecision('kick'));
    this.on('#export-csv', 'click', () => downloadCsv(this.exportCsv()));
  }

  private on(selector: string, event: string, handler: (el: Element) => void): void {
    const el = this.root.querySelector(selector);
    if (el) el.addEventListener(event, () => handler(el));
  }
}

function nearestIndex(axis: number[], value: number): number {
  let best = 0;
  for (let i = 1; i < axis.length; i++) {
    if (Math.abs(axis[i] - value) < Math.abs(axis[best] - value)) best = i;
  }
  return best;
}

function downloadCsv(text: string): void {
  const blob = new Blob([text], { type: 'text/csv' });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = 'regret_ledger.csv';
  a.click();
  URL.revokeObjectURL(url);
}

export { deltaColor };
