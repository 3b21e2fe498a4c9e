import { readFileSync } from 'node:fs';
import { join } from 'node:path';

import type {
  DiskLayoutJson,
  FlowLayoutJson,
  GroupSeriesJson,
  SelectionJson,
} from '../src/types';

const FIXTURES = join(__dirname, 'fixtures');

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), 'utf-8')) as T;
}

export const diskFixture = () => fixture<DiskLayoutJson>('disk.json');
export const groupFixture = () => fixture<GroupSeriesJson>('group.json');
export const flowFixture = () => fixture<FlowLayoutJson>('flow.json');
export const brushFixture = () =>
  fixture<{
    brush: { angle_start: number; angle_end: number; r_lo: number; r_hi: number };
    selection: SelectionJson;
  }>('brush.json');

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

/** fetch stub routing by path prefix; records every request it serves. */
export function fakeFetch(
  routes: Record<string, unknown | ((req: RecordedRequest) => unknown)>,
  log: RecordedRequest[] = [],
): typeof fetch {
  return (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const req: RecordedRequest = {
      url,
      method: init?.method ?? 'GET',
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    log.push(req);
    for (const [prefix, payload] of Object.entries(routes)) {
      if (url.split('?')[0].endsWith(prefix)) {
        const value = typeof payload === 'function' ? payload(req) : payload;
        if (value instanceof ErrorBody) {
          return {
            ok: false,
            status: value.status,
            json: async () => ({ code: value.code, message: value.message }),
          } as Response;
        }
        return { ok: true, status: 200, json: async () => value } as Response;
      }
    }
    throw new Error(`no route for ${url}`);
  }) as typeof fetch;
}

export class ErrorBody {
  constructor(
    public status: number,
    public code: string,
    public message: string,
  ) {}
}
