// Diverging color scale for the delta heatmap, centered at 0 and clamped
// at +/-1.5 EP so panels are comparable across scenarios.

export const SCALE_MAX = 1.5;

// Blue (kick side) -> white (indifferent) -> green (lineout side).
const NEG: [number, number, number] = [33, 102, 172];
const MID: [number, number, number] = [247, 247, 247];
const POS: [number, number, number] = [27, 120, 55];

function lerp(a: [number, number, number], b: [number, number, number], t: number): [number, number, number] {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

export function deltaColor(delta: number): string {
  const clamped = Math.max(-SCALE_MAX, Math.min(SCALE_MAX, delta));
  const t = Math.abs(clamped) / SCALE_MAX;
  const rgb = clamped >= 0 ? lerp(MID, POS, t) : lerp(MID, NEG, t);
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}
