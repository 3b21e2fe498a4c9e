// Polar/pixel helpers shared by the disk renderer and the circular brush.
// Engine convention: angles counter-clockwise from the positive x axis,
// radii normalized to [0, 1]; the y axis is flipped for screen space.

export const TAU = Math.PI * 2;

export interface Polar {
  angle: number;
  radius: number;
}

export function toScreen(angle: number, radius: number): [number, number] {
  return [radius * Math.cos(angle), -radius * Math.sin(angle)];
}

export function fromScreen(x: number, y: number): Polar {
  const radius = Math.hypot(x, y);
  const angle = (Math.atan2(-y, x) + TAU) % TAU;
  return { angle, radius };
}

export function ccwSpan(start: number, end: number): number {
  return (((end - start) % TAU) + TAU) % TAU;
}

export function angleInSpan(angle: number, start: number, span: number): boolean {
  return ccwSpan(start, angle) <= span + 1e-9;
}

/** SVG path for an annular sector swept counter-clockwise from a0 to a1. */
export function sectorPath(a0: number, a1: number, rLo: number, rHi: number): string {
  const span = ccwSpan(a0, a1);
  const large = span > Math.PI ? 1 : 0;
  const [x0o, y0o] = toScreen(a0, rHi);
  const [x1o, y1o] = toScreen(a1, rHi);
  const [x1i, y1i] = toScreen(a1, rLo);
  const [x0i, y0i] = toScreen(a0, rLo);
  return (
    `M ${x0o} ${y0o} A ${rHi} ${rHi} 0 ${large} 0 ${x1o} ${y1o} ` +
    `L ${x1i} ${y1i} A ${rLo} ${rLo} 0 ${large} 1 ${x0i} ${y0i} Z`
  );
}

/** Circular arc at constant radius, the short way (span <= pi), ccw. */
export function arcPath(aStart: number, aEnd: number, radius: number): string {
  const [x1, y1] = toScreen(aStart, radius);
  const [x2, y2] = toScreen(aEnd, radius);
  return `M ${x1} ${y1} A ${radius} ${radius} 0 0 0 ${x2} ${y2}`;
}
