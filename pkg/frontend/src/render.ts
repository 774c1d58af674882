import { deltaColor } from './colors';
import { pitchToCanvas, Viewport, X_MAX, X_MIN } from './transform';
import type { GridResponse } from './types';

const LINE_COLOR = 'rgba(255,255,255,0.85)';
const FRONTIER_COLOR = '#111111';

/** Pitch x-positions of the painted lines inside the displayed band. */
const PITCH_LINES = [5, 22, 40, 50, 60];

export function drawDecisionMap(
  ctx: CanvasRenderingContext2D,
  grid: GridResponse,
  vp: Viewport,
): void {
  ctx.clearRect(0, 0, vp.width, vp.height);

  const { x_axis: xs, y_axis: ys, delta } = grid;
  const stepX = xs.length > 1 ? xs[1] - xs[0] : X_MAX - X_MIN;
  const stepY = ys.length > 1 ? ys[1] - ys[0] : 70;
  for (let i = 0; i < xs.length; i++) {
    for (let j = 0; j < ys.length; j++) {
      const [px, py] = pitchToCanvas(xs[i] - stepX / 2, ys[j] - stepY / 2, vp);
      const [qx, qy] = pitchToCanvas(xs[i] + stepX / 2, ys[j] + stepY / 2, vp);
      ctx.fillStyle = deltaColor(delta[i][j]);
      ctx.fillRect(px, py, qx - px, qy - py);
    }
  }

  drawPitchLines(ctx, vp);
  drawFrontier(ctx, grid, vp);
}

function drawPitchLines(ctx: CanvasRenderingContext2D, vp: Viewport): void {
  ctx.strokeStyle = LINE_COLOR;
  ctx.lineWidth = 1;
  for (const x of PITCH_LINES) {
    if (x < X_MIN || x > X_MAX) continue;
    const [, py] = pitchToCanvas(x, 0, vp);
    ctx.beginPath();
    ctx.moveTo(0, py);
    ctx.lineTo(vp.width, py);
    ctx.stroke();
  }
  ctx.strokeRect(0, 0, vp.width, vp.height);
}

export function drawFrontier(
  ctx: CanvasRenderingContext2D,
  grid: GridResponse,
  vp: Viewport,
): void {
  if (!grid.frontier.length) return;
  ctx.strokeStyle = FRONTIER_COLOR;
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (const [[x1, y1], [x2, y2]] of grid.frontier) {
    const [p1x, p1y] = pitchToCanvas(x1, y1, vp);
    const [p2x, p2y] = pitchToCanvas(x2, y2, vp);
    ctx.moveTo(p1x, p1y);
    ctx.lineTo(p2x, p2y);
  }
  ctx.stroke();
}

export function drawMarker(
  ctx: CanvasRenderingContext2D,
  x: number,
  y: number,
  vp: Viewport,
): void {
  const [px, py] = pitchToCanvas(x, y, vp);
  ctx.strokeStyle = '#d62728';
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(px, py, 7, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.beginPath();
  ctx.moveTo(px - 10, py);
  ctx.lineTo(px + 10, py);
  ctx.moveTo(px, py - 10);
  ctx.lineTo(px, py + 10);
  ctx.stroke();
}

export function drawSweep(
  ctx: CanvasRenderingContext2D,
  points: [number, number][],
  crossing: number | null,
  vp: Viewport,
): void {
  ctx.clearRect(0, 0, vp.width, vp.height);
  if (!points.length) return;
  const dMax = points[points.length - 1][0] || 1;
  const deltas = points.map(([, d]) => d);
  const lo = Math.min(...deltas, 0);
  const hi = Math.max(...deltas, 0);
  const span = hi - lo || 1;
  const toPx = (d: number, v: number): [number, number] => [
    (d / dMax) * vp.width,
    vp.height - ((v - lo) / span) * vp.height,
  ];

  // Zero line.
  ctx.strokeStyle = '#999999';
  ctx.lineWidth = 1;
  const [, zy] = toPx(0, 0);
  ctx.beginPath();
  ctx.moveTo(0, zy);
  ctx.lineTo(vp.width, zy);
  ctx.stroke();

  ctx.strokeStyle = '#1b7837';
  ctx.lineWidth = 2;
  ctx.beginPath();
  points.forEach(([d, v], i) => {
    const [px, py] = toPx(d, v);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  });
  ctx.stroke();

  if (crossing !== null) {
    ctx.strokeStyle = '#d62728';
    ctx.setLineDash([4, 3]);
    const [cx] = toPx(crossing, 0);
    ctx.beginPath();
    ctx.moveTo(cx, 0);
    ctx.lineTo(cx, vp.height);
    ctx.stroke();
    ctx.setLineDash([]);
  }
}
