// Radial disk view: renders the engine's DiskLayout JSON verbatim and turns
// pointer drags into circular brushes (angle span selects addresses, radial
// span selects a time range — resolved server-side).

import { PALETTE, SALE_COLOR, TRANSFER_COLOR, clear, svgEl } from './dom';
import { TAU, arcPath, fromScreen, sectorPath, toScreen } from './geometry';
import type { DiskLayoutJson } from './types';

export interface BrushSpan {
  angle_start: number;
  angle_end: number;
  r_lo: number;
  r_hi: number;
}

export type BrushHandler = (brush: BrushSpan) => void;

const VIEW = 1.15;

export class DiskView {
  readonly svg: SVGSVGElement;
  private layout: DiskLayoutJson | null = null;
  private brushLayer: SVGGElement;
  private dragStart: { angle: number; radius: number } | null = null;

  constructor(
    private container: HTMLElement,
    private onBrush: BrushHandler,
  ) {
    this.svg = svgEl('svg', {
      class: 'disk-view',
      viewBox: `${-VIEW} ${-VIEW} ${2 * VIEW} ${2 * VIEW}`,
      width: 640,
      height: 640,
    });
    this.brushLayer = svgEl('g', { class: 'brush-layer' });
    this.container.appendChild(this.svg);
    this.svg.addEventListener('pointerdown', (ev) => this.pointerDown(ev));
    this.svg.addEventListener('pointermove', (ev) => this.pointerMove(ev));
    this.svg.addEventListener('pointerup', (ev) => this.pointerUp(ev));
  }

  render(layout: DiskLayoutJson): void {
    this.layout = layout;
    clear(this.svg);

    const cfg = layout.config;
    for (const band of layout.background) {
      const mid = (band.r_lo + band.r_hi) / 2;
      this.svg.appendChild(
        svgEl('circle', {
          class: 'bg-band',
          cx: 0,
          cy: 0,
          r: mid,
          fill: 'none',
          stroke: '#2a6fb0',
          'stroke-width': band.r_hi - band.r_lo,
          'stroke-opacity': band.intensity,
        }),
      );
    }
    for (const r of [cfg.r_in, cfg.r_out, cfg.inner_circle_radius]) {
      this.svg.appendChild(
        svgEl('circle', {
          class: 'ring-guide',
          cx: 0,
          cy: 0,
          r,
          fill: 'none',
          stroke: '#555',
          'stroke-width': 0.002,
        }),
      );
    }

    for (const line of layout.lifelines) {
      const [x1, y1] = toScreen(line.angle, line.r_first);
      const [x2, y2] = toScreen(line.angle, line.r_last);
      this.svg.appendChild(
        svgEl('line', {
          class: 'lifeline',
          x1,
          y1,
          x2,
          y2,
          stroke: '#ffffff',
          'stroke-width': 0.003,
        }),
      );
    }

    for (const arc of layout.arcs) {
      this.svg.appendChild(
        svgEl('path', {
          class: `arc-${arc.style}`,
          d: arcPath(arc.angle_start, arc.angle_end, arc.radius),
          fill: 'none',
          stroke: arc.style === 'sale' ? SALE_COLOR : TRANSFER_COLOR,
          'stroke-width': 0.0025,
          'stroke-opacity': 0.85,
          'data-tx': arc.tx,
        }),
      );
    }

    const R = cfg.inner_circle_radius;
    for (const path of layout.inner_paths) {
      const [x1, y1] = toScreen(path.angle_a, R);
      const [x2, y2] = toScreen(path.angle_b, R);
      const cx = path.control[0];
      const cy = -path.control[1];
      this.svg.appendChild(
        svgEl('path', {
          class: 'inner-path',
          d: `M ${x1} ${y1} Q ${cx} ${cy} ${x2} ${y2}`,
          fill: 'none',
          stroke: '#8a4fbf',
          'stroke-width': 0.003,
          'data-score': path.score,
          'data-apex': path.apex_radius,
        }),
      );
    }

    for (const addr of layout.addresses) {
      const [x1, y1] = toScreen(addr.angle, cfg.r_out);
      const [x2, y2] = toScreen(addr.angle, cfg.r_out + 0.03);
      this.svg.appendChild(
        svgEl('line', {
          class: 'addr-tick',
          x1,
          y1,
          x2,
          y2,
          stroke: PALETTE[addr.index % PALETTE.length],
          'stroke-width': 0.004,
          'data-address': addr.address,
        }),
      );
    }
    this.svg.appendChild(this.brushLayer);
  }

  /** Drive a brush programmatically (same path the pointer handlers take). */
  applyBrush(brush: BrushSpan): void {
    this.showBrush(brush);
    this.onBrush(brush);
  }

  private toLocal(ev: PointerEvent): { angle: number; radius: number } {
    const rect = this.svg.getBoundingClientRect();
    const width = rect.width || 1;
    const height = rect.height || 1;
    const x = ((ev.clientX - rect.left) / width) * 2 * VIEW - VIEW;
    const y = ((ev.clientY - rect.top) / height) * 2 * VIEW - VIEW;
    return fromScreen(x, y);
  }

  private pointerDown(ev: PointerEvent): void {
    if (!this.layout) return;
    this.dragStart = this.toLocal(ev);
  }

  private pointerMove(ev: PointerEvent): void {
    if (!this.dragStart) return;
    this.showBrush(this.spanTo(this.toLocal(ev)));
  }

  private pointerUp(ev: PointerEvent): void {
    if (!this.dragStart) return;
    const brush = this.spanTo(this.toLocal(ev));
    this.dragStart = null;
    this.applyBrush(brush);
  }

  private spanTo(end: { angle: number; radius: number }): BrushSpan {
    const start = this.dragStart!;
    return {
      angle_start: start.angle,
      angle_end: end.angle,
      r_lo: Math.min(start.radius, end.radius),
      r_hi: Math.max(start.radius, end.radius),
    };
  }

  private showBrush(brush: BrushSpan): void {
    clear(this.brushLayer);
    const rLo = Math.max(brush.r_lo, 0.001);
    const rHi = Math.max(brush.r_hi, rLo + 0.001);
    this.brushLayer.appendChild(
      svgEl('path', {
        class: 'circular-brush',
        d: sectorPath(brush.angle_start % TAU, brush.angle_end % TAU, rLo, rHi),
        fill: '#ffffff',
        'fill-opacity': 0.15,
        stroke: '#ffffff',
        'stroke-width': 0.004,
      }),
    );
  }

  /** Connector from the brushed area toward the flow module (drawn after a
   * selection resolves). */
  drawLink(brush: BrushSpan): void {
    const mid = brush.angle_start + (brush.angle_end - brush.angle_start) / 2;
    const [x, y] = toScreen(mid, Math.min(brush.r_hi, 1));
    this.brushLayer.appendChild(
      svgEl('path', {
        class: 'flow-link',
        d: `M ${x} ${y} C ${x + 0.3} ${y}, ${VIEW - 0.2} 0, ${VIEW} 0`,
        fill: 'none',
        stroke: '#ffffff',
        'stroke-width': 0.005,
        'stroke-dasharray': '0.02 0.01',
      }),
    );
  }
}
