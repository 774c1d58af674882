// Pitch <-> canvas coordinate transforms.
//
// The map is drawn with the opposition try line at the TOP. Pitch x
// (meters to that try line, 5..65 displayed) grows downward on screen;
// pitch y (-35..35 from the left touchline side) grows rightward.
// pitchToCanvas and canvasToPitch are exact inverses of each other.

export const X_MIN = 5;
export const X_MAX = 65;
export const Y_MIN = -35;
export const Y_MAX = 35;

export interface Viewport {
  width: number; // canvas pixels
  height: number;
}

export function pitchToCanvas(
  x: number,
  y: number,
  vp: Viewport,
): [number, number] {
  const px = ((y - Y_MIN) / (Y_MAX - Y_MIN)) * vp.width;
  const py = ((x - X_MIN) / (X_MAX - X_MIN)) * vp.height;
  return [px, py];
}

export function canvasToPitch(
  px: number,
  py: number,
  vp: Viewport,
): [number, number] {
  const y = Y_MIN + (px / vp.width) * (Y_MAX - Y_MIN);
  const x = X_MIN + (py / vp.height) * (X_MAX - X_MIN);
  return [x, y];
}

export function inKickDomain(x: number, y: number): boolean {
  return x >= 5 && x <= 100 && Math.abs(y) <= 35;
}
