import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { App } from '../src/app';
import {
  ErrorBody,
  type RecordedRequest,
  brushFixture,
  diskFixture,
  flowFixture,
  groupFixture,
} from './helpers';
import { fakeFetch } from './helpers';

function appWith(routes: Record<string, unknown>, log: RecordedRequest[]) {
  document.body.innerHTML = '<div id="app"></div>';
  const api = new ApiClient('', fakeFetch(routes, log));
  return new App(document.getElementById('app')!, api);
}

const collectionsMeta = [
  {
    collection_id: 'planted-ring',
    transactions: 5662,
    addresses: 417,
    tokens: 1607,
    time_extent: [1600000361, 1602581607],
  },
];

describe('circular brush drill-down', () => {
  let log: RecordedRequest[];

  beforeEach(() => {
    log = [];
  });

  it('scripted brush over the ring span selects exactly the 4 ring addresses', async () => {
    const { brush, selection } = brushFixture();
    const app = appWith(
      {
        '/collections': collectionsMeta,
        '/disk': diskFixture(),
        '/selection': (req: RecordedRequest) => {
          expect(req.body).toEqual(brush);
          return selection;
        },
        '/flow/group': groupFixture(),
      },
      log,
    );
    await app.start();
    app.disk.applyBrush(brush);
    await new Promise((r) => setTimeout(r, 0));

    expect(app.state.selection).not.toBeNull();
    expect(app.state.selection!.addresses).toHaveLength(4);
    expect(new Set(app.state.selection!.addresses)).toEqual(
      new Set(selection.addresses),
    );
    // selection POST round-trips the session config
    const post = log.find((r) => r.method === 'POST')!;
    expect(post.url).toContain('min_tx=20');
    expect(post.url).toContain('metric=average_price');
    // the drill-down opened the group view and drew a linking curve
    expect(document.querySelectorAll('.stack-band').length).toBe(
      groupFixture().addresses.length,
    );
    expect(document.querySelectorAll('.flow-link').length).toBe(1);
  });

  it('full-ring brush selects every address', async () => {
    const layout = diskFixture();
    const everyone = {
      addresses: layout.addresses.map((a) => a.address),
      indices: layout.addresses.map((a) => a.index),
      time_range: layout.config.time_range,
    };
    const app = appWith(
      {
        '/collections': collectionsMeta,
        '/disk': layout,
        '/selection': everyone,
        '/flow/group': groupFixture(),
      },
      log,
    );
    await app.start();
    app.disk.applyBrush({ angle_start: 0, angle_end: 6.283, r_lo: 0, r_hi: 1 });
    await new Promise((r) => setTimeout(r, 0));
    expect(app.state.selection!.addresses).toHaveLength(layout.addresses.length);
  });

  it('degenerate click surfaces an EmptyBrush toast', async () => {
    const app = appWith(
      {
        '/collections': collectionsMeta,
        '/disk': diskFixture(),
        '/selection': new ErrorBody(422, 'EmptyBrush', 'no address inside the span'),
      },
      log,
    );
    await app.start();
    app.disk.applyBrush({ angle_start: 0.05, angle_end: 0.06, r_lo: 0.5, r_hi: 0.51 });
    await new Promise((r) => setTimeout(r, 0));
    expect(app.state.selection).toBeNull();
    const toast = document.querySelector('.toast');
    expect(toast).not.toBeNull();
    expect(toast!.textContent).toContain('EmptyBrush');
  });

  it('period brush past the last event is clamped', async () => {
    const { brush, selection } = brushFixture();
    const detailRequests: RecordedRequest[] = [];
    const app = appWith(
      {
        '/collections': collectionsMeta,
        '/disk': diskFixture(),
        '/selection': selection,
        '/flow/group': groupFixture(),
        '/flow/detail': (req: RecordedRequest) => {
          detailRequests.push(req);
          return flowFixture();
        },
      },
      log,
    );
    await app.start();
    app.disk.applyBrush(brush);
    await new Promise((r) => setTimeout(r, 0));

    const n = groupFixture().events.length;
    app.stacked.applyPeriod(-5, n + 50);
    await new Promise((r) => setTimeout(r, 0));
    expect(app.state.eventRange).toEqual([0, n - 1]);
    expect(detailRequests).toHaveLength(1);
    expect(detailRequests[0].url).toContain(`event_hi=${n - 1}`);
    // detail rendered: ribbons match fixture
    expect(document.querySelectorAll('.ribbon').length).toBe(
      flowFixture().ribbons.length,
    );
  });
});
