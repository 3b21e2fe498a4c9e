// Thin HTTP client for the engine API. Overlapping requests resolve
// last-request-wins: every call bumps a sequence number per endpoint group
// and stale responses are dropped (the in-flight fetch is also aborted).

import type {
  CollectionMetaJson,
  DiskLayoutJson,
  FlowLayoutJson,
  GroupSeriesJson,
  SelectionJson,
  SessionConfig,
} from './types';

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

export class StaleResponse extends Error {
  constructor() {
    super('superseded by a newer request');
  }
}

type FetchLike = typeof fetch;

function configParams(config: SessionConfig): URLSearchParams {
  const params = new URLSearchParams();
  if (config.from !== null) params.set('from', String(config.from));
  if (config.to !== null) params.set('to', String(config.to));
  params.set('min_tx', String(config.minTx));
  params.set('metric', config.metric);
  return params;
}

export class ApiClient {
  private seq = new Map<string, number>();
  private controllers = new Map<string, AbortController>();

  constructor(
    private baseUrl: string = '',
    private fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(
    group: string,
    path: string,
    params?: URLSearchParams,
    init?: RequestInit,
  ): Promise<T> {
    const ticket = (this.seq.get(group) ?? 0) + 1;
    this.seq.set(group, ticket);
    this.controllers.get(group)?.abort();
    const controller = new AbortController();
    this.controllers.set(group, controller);

    const query = params && params.size > 0 ? `?${params.toString()}` : '';
    const resp = await this.fetchFn(`${this.baseUrl}${path}${query}`, {
      ...init,
      signal: controller.signal,
    });
    if (this.seq.get(group) !== ticket) throw new StaleResponse();
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(body.code ?? 'Error', body.message ?? 'request failed', resp.status);
    }
    return body as T;
  }

  collections(): Promise<CollectionMetaJson[]> {
    return this.request('collections', '/collections');
  }

  disk(collection: string, config: SessionConfig): Promise<DiskLayoutJson> {
    return this.request('disk', `/collections/${collection}/disk`, configParams(config));
  }

  selection(
    collection: string,
    config: SessionConfig,
    brush: { angle_start: number; angle_end: number; r_lo: number; r_hi: number },
  ): Promise<SelectionJson> {
    return this.request(
      'selection',
      `/collections/${collection}/selection`,
      configParams(config),
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(brush),
      },
    );
  }

  flowGroup(
    collection: string,
    addresses: string[],
    range: [number, number],
  ): Promise<GroupSeriesJson> {
    const params = new URLSearchParams({
      addresses: addresses.join(','),
      from: String(range[0]),
      to: String(range[1]),
    });
    return this.request('group', `/collections/${collection}/flow/group`, params);
  }

  flowDetail(
    collection: string,
    addresses: string[],
    range: [number, number],
    events: [number, number],
  ): Promise<FlowLayoutJson> {
    const params = new URLSearchParams({
      addresses: addresses.join(','),
      from: String(range[0]),
      to: String(range[1]),
      event_lo: String(events[0]),
      event_hi: String(events[1]),
    });
    return this.request('detail', `/collections/${collection}/flow/detail`, params);
  }
}
