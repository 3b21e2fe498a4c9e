import { beforeEach, describe, expect, it } from 'vitest';

import { FlowDetailView, StackedSeriesView } from '../src/flow';
import { flowFixture, groupFixture } from './helpers';

describe('StackedSeriesView', () => {
  let host: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="host"></div>';
    host = document.getElementById('host')!;
  });

  it('renders one band per address and a flat top contour for the ring', () => {
    const series = groupFixture();
    const view = new StackedSeriesView(host, () => {});
    view.render(series);
    const bands = Array.from(document.querySelectorAll('.stack-band'));
    expect(bands.length).toBe(series.addresses.length);

    // wash-trading signal: totals are constant once both tokens are inside,
    // so the outermost band's top edge is horizontal over that stretch
    const flatFrom = series.totals.findIndex(
      (t) => t === series.totals[series.totals.length - 1],
    );
    expect(new Set(series.totals.slice(flatFrom))).toEqual(
      new Set([series.totals[series.totals.length - 1]]),
    );
    const top = bands[0]!.getAttribute('points')!.split(' ');
    const topYs = top
      .slice(flatFrom, series.totals.length)
      .map((p) => Number(p.split(',')[1]));
    expect(new Set(topYs).size).toBe(1);
  });

  it('brushing between two events selects nothing', () => {
    const series = groupFixture();
    const calls: [number, number][] = [];
    const view = new StackedSeriesView(host, (lo, hi) => calls.push([lo, hi]));
    view.render(series);
    view.applyPeriod(3.2, 3.8);
    expect(calls).toHaveLength(0);
    view.applyPeriod(3, 7);
    expect(calls).toEqual([[3, 7]]);
  });
});

describe('FlowDetailView', () => {
  let host: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="host"></div>';
    host = document.getElementById('host')!;
  });

  it('renders ribbons, paths, and segment styles from the layout', () => {
    const flow = flowFixture();
    const view = new FlowDetailView(host);
    view.render(flow);
    expect(document.querySelectorAll('.ribbon').length).toBe(flow.ribbons.length);
    expect(document.querySelectorAll('.nft-path').length).toBe(flow.paths.length);
    const segCount = flow.paths.reduce((n, p) => n + p.segments.length, 0);
    expect(document.querySelectorAll('.nft-seg').length).toBe(segCount);
    // sale hops are solid, transfer hops dotted
    for (const el of Array.from(document.querySelectorAll('.nft-seg-sale_hop'))) {
      expect(el.getAttribute('stroke-dasharray')).toBeNull();
    }
    for (const el of Array.from(
      document.querySelectorAll('.nft-seg-transfer_hop'),
    )) {
      expect(el.getAttribute('stroke-dasharray')).toBe('3 3');
    }
    // hop fills are gradients between the two address colors
    const hop = document.querySelector('.nft-seg-sale_hop');
    expect(hop?.getAttribute('stroke')).toMatch(/^url\(#grad\d+\)$/);
  });

  it('hover highlights every segment of the hovered token only', () => {
    const flow = flowFixture();
    const hovers: (number | null)[] = [];
    const view = new FlowDetailView(host, (t) => hovers.push(t));
    view.render(flow);
    const token = flow.paths[0].token_id;
    view.highlight(token);
    const group = document.querySelector(`.nft-path[data-token="${token}"]`)!;
    expect(group.classList.contains('highlight')).toBe(true);
    for (const seg of Array.from(group.children)) {
      expect(seg.classList.contains('highlight')).toBe(true);
    }
    for (const other of Array.from(
      document.querySelectorAll(`.nft-path:not([data-token="${token}"])`),
    )) {
      expect(other.classList.contains('highlight')).toBe(false);
    }
    view.highlight(null);
    expect(document.querySelectorAll('.highlight').length).toBe(0);
    expect(hovers).toEqual([token, null]);
  });

  it('pointer events drive the same highlight path', () => {
    const flow = flowFixture();
    const view = new FlowDetailView(host);
    view.render(flow);
    const token = flow.paths[0].token_id;
    const group = document.querySelector(`.nft-path[data-token="${token}"]`)!;
    group.dispatchEvent(new Event('pointerenter'));
    expect(group.classList.contains('highlight')).toBe(true);
    group.dispatchEvent(new Event('pointerleave'));
    expect(group.classList.contains('highlight')).toBe(false);
  });

  it('ribbon heights track the layout columns', () => {
    const flow = flowFixture();
    const view = new FlowDetailView(host);
    view.render(flow);
    const first = document.querySelector('.ribbon')!;
    const points = first.getAttribute('points')!.split(' ');
    expect(points.length).toBe(2 * flow.columns);
  });

  it('same layout renders to identical DOM', () => {
    const flow = flowFixture();
    const a = new FlowDetailView(host);
    a.render(flow);
    const b = new FlowDetailView(host);
    b.render(flow);
    expect(a.svg.outerHTML).toBe(b.svg.outerHTML);
  });
});
