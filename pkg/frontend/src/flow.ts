// Flow module: the group-level stacked area chart with a period brush, and
// the detail chart (address ribbons, per-NFT trade paths, hover highlight).
// All heights/lanes come precomputed; this file only maps them to pixels.

import { PALETTE, SALE_COLOR, TRANSFER_COLOR, clear, svgEl } from './dom';
import type { FlowLayoutJson, GroupSeriesJson, PathEndJson } from './types';

const LANE_PX = 14;
const GAP_PX = 22;
const COL_PX = 26;
const STACK_H = 180;
const STACK_W = 640;

export type PeriodHandler = (eventLo: number, eventHi: number) => void;
export type HoverHandler = (tokenId: number | null) => void;

export class StackedSeriesView {
  readonly svg: SVGSVGElement;
  private series: GroupSeriesJson | null = null;
  private brushRect: SVGRectElement;
  private dragX: number | null = null;

  constructor(
    container: HTMLElement,
    private onPeriod: PeriodHandler,
  ) {
    this.svg = svgEl('svg', {
      class: 'stacked-view',
      viewBox: `0 0 ${STACK_W} ${STACK_H}`,
      width: STACK_W,
      height: STACK_H,
    });
    this.brushRect = svgEl('rect', {
      class: 'period-brush',
      y: 0,
      height: STACK_H,
      width: 0,
      x: 0,
      fill: '#ffffff',
      'fill-opacity': 0.18,
    });
    container.appendChild(this.svg);
    this.svg.addEventListener('pointerdown', (ev) => {
      this.dragX = this.localX(ev);
    });
    this.svg.addEventListener('pointermove', (ev) => {
      if (this.dragX === null) return;
      this.showBrush(this.dragX, this.localX(ev));
    });
    this.svg.addEventListener('pointerup', (ev) => {
      if (this.dragX === null) return;
      const x0 = this.dragX;
      this.dragX = null;
      this.applyPeriod(...this.pixelsToEvents(x0, this.localX(ev)));
    });
  }

  render(series: GroupSeriesJson): void {
    this.series = series;
    clear(this.svg);
    const n = series.events.length;
    if (n === 0) return;
    const maxTotal = Math.max(...series.totals, 1);
    const xOf = (e: number) => (n === 1 ? 0 : (e / (n - 1)) * STACK_W);
    const yOf = (v: number) => STACK_H - (v / maxTotal) * (STACK_H - 8);

    // stack bands bottom-up in reverse stacking order so the first address
    // (top of the flow detail) ends up on top of the area chart
    const cumulative = new Array(n).fill(0);
    const bands: { address: string; index: number; points: string }[] = [];
    for (let row = series.addresses.length - 1; row >= 0; row--) {
      const base = cumulative.slice();
      for (let e = 0; e < n; e++) cumulative[e] += series.heights[row][e];
      const upper = cumulative;
      const top = Array.from({ length: n }, (_, e) => `${xOf(e)},${yOf(upper[e])}`);
      const bottom = Array.from(
        { length: n },
        (_, e) => `${xOf(n - 1 - e)},${yOf(base[n - 1 - e])}`,
      );
      bands.push({
        address: series.addresses[row].address,
        index: series.addresses[row].index,
        points: [...top, ...bottom].join(' '),
      });
    }
    for (const band of bands.reverse()) {
      this.svg.appendChild(
        svgEl('polygon', {
          class: 'stack-band',
          points: band.points,
          fill: PALETTE[band.index % PALETTE.length],
          'fill-opacity': 0.8,
          'data-address': band.address,
        }),
      );
    }
    this.svg.appendChild(this.brushRect);
  }

  /** Programmatic period brush in event coordinates (clamped). */
  applyPeriod(lo: number, hi: number): void {
    if (!this.series) return;
    const n = this.series.events.length;
    const eventLo = Math.max(0, Math.ceil(lo));
    const eventHi = Math.min(n - 1, Math.floor(hi));
    if (eventLo > eventHi) return;
    this.onPeriod(eventLo, eventHi);
  }

  private localX(ev: PointerEvent): number {
    const rect = this.svg.getBoundingClientRect();
    return ((ev.clientX - rect.left) / (rect.width || 1)) * STACK_W;
  }

  private pixelsToEvents(x0: number, x1: number): [number, number] {
    const n = this.series ? this.series.events.length : 1;
    const toEvent = (x: number) => (x / STACK_W) * (n - 1);
    return [toEvent(Math.min(x0, x1)), toEvent(Math.max(x0, x1))];
  }

  private showBrush(x0: number, x1: number): void {
    this.brushRect.setAttribute('x', String(Math.min(x0, x1)));
    this.brushRect.setAttribute('width', String(Math.abs(x1 - x0)));
  }
}

export class FlowDetailView {
  readonly svg: SVGSVGElement;
  private colors = new Map<string, string>();
  private gradientId = 0;

  constructor(
    container: HTMLElement,
    private onHover: HoverHandler = () => {},
  ) {
    this.svg = svgEl('svg', { class: 'flow-view' });
    container.appendChild(this.svg);
  }

  render(flow: FlowLayoutJson): void {
    clear(this.svg);
    this.colors.clear();
    this.gradientId = 0;

    const baseY = new Map<string, number>();
    let y = GAP_PX;
    for (const ribbon of flow.ribbons) {
      baseY.set(ribbon.address, y);
      y += Math.max(...ribbon.heights, 0) * LANE_PX + GAP_PX;
      this.colors.set(ribbon.address, PALETTE[ribbon.slot % PALETTE.length]);
    }
    const totalH = y;
    const totalW = Math.max(flow.columns - 1, 1) * COL_PX;
    this.svg.setAttribute('viewBox', `0 0 ${totalW} ${totalH}`);
    this.svg.setAttribute('width', String(totalW));
    this.svg.setAttribute('height', String(totalH));

    const defs = svgEl('defs');
    this.svg.appendChild(defs);

    for (const ribbon of flow.ribbons) {
      const base = baseY.get(ribbon.address)!;
      const top = ribbon.heights.map((_, x) => `${x * COL_PX},${base}`);
      const bottom = ribbon.heights
        .map((h, x) => `${x * COL_PX},${base + h * LANE_PX}`)
        .reverse();
      this.svg.appendChild(
        svgEl('polygon', {
          class: 'ribbon',
          points: [...top, ...bottom].join(' '),
          fill: this.colors.get(ribbon.address)!,
          'fill-opacity': 0.35,
          'data-address': ribbon.address,
          'data-slot': ribbon.slot,
        }),
      );
    }

    const endXY = (end: PathEndJson): [number, number] => {
      const x = end.x * COL_PX;
      if (end.node === 'top') return [x, 0];
      if (end.node === 'bottom') return [x, totalH];
      return [x, baseY.get(end.node)! + (end.lane + 0.5) * LANE_PX];
    };

    for (const path of flow.paths) {
      const group = svgEl('g', {
        class: 'nft-path',
        'data-token': path.token_id,
      });
      for (const seg of path.segments) {
        const [x1, y1] = endXY(seg.from);
        const [x2, y2] = endXY(seg.to);
        let stroke: string;
        if (seg.kind === 'hold') {
          stroke = this.colors.get(seg.from.node as string) ?? '#999';
        } else {
          stroke = this.gradient(defs, seg.fill, x1, y1, x2, y2);
        }
        const attrs: Record<string, string | number> = {
          class: `nft-seg nft-seg-${seg.kind}`,
          x1,
          y1,
          x2,
          y2,
          stroke,
          'stroke-width': 3,
        };
        if (seg.kind === 'transfer_hop' || (seg.status === 'transfer' && seg.kind !== 'hold')) {
          attrs['stroke-dasharray'] = '3 3';
        }
        group.appendChild(svgEl('line', attrs));
      }
      group.addEventListener('pointerenter', () => this.highlight(path.token_id));
      group.addEventListener('pointerleave', () => this.highlight(null));
      this.svg.appendChild(group);
    }
  }

  /** Add the highlight class to every segment of the hovered token. */
  highlight(tokenId: number | null): void {
    for (const group of Array.from(this.svg.querySelectorAll('.nft-path'))) {
      const isTarget =
        tokenId !== null && group.getAttribute('data-token') === String(tokenId);
      group.classList.toggle('highlight', isTarget);
      for (const seg of Array.from(group.children)) {
        seg.classList.toggle('highlight', isTarget);
      }
    }
    this.onHover(tokenId);
  }

  private colorKey(key: string): string {
    if (key === 'mint') return '#cccccc';
    if (key === 'external') return '#888888';
    return this.colors.get(key) ?? '#999';
  }

  private gradient(
    defs: SVGDefsElement,
    fill: [string, string],
    x1: number,
    y1: number,
    x2: number,
    y2: number,
  ): string {
    const id = `grad${this.gradientId++}`;
    const grad = svgEl('linearGradient', {
      id,
      gradientUnits: 'userSpaceOnUse',
      x1,
      y1,
      x2,
      y2,
    });
    grad.appendChild(svgEl('stop', { offset: 0, 'stop-color': this.colorKey(fill[0]) }));
    grad.appendChild(svgEl('stop', { offset: 1, 'stop-color': this.colorKey(fill[1]) }));
    defs.appendChild(grad);
    return `url(#${id})`;
  }
}

export { SALE_COLOR, TRANSFER_COLOR };
