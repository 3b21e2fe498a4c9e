// Wire types mirroring the engine's JSON schemas. The client never computes
// analytics: it scales these precomputed coordinates to pixels and renders.

export type MetricName = 'average_price' | 'trade_volume';
export type TxStyle = 'sale' | 'transfer';

export interface DiskConfigJson {
  time_range: [number, number];
  r_in: number;
  r_out: number;
  inner_circle_radius: number;
  metric: MetricName;
  min_tx: number;
}

export interface DiskAddressJson {
  address: string;
  index: number;
  angle: number;
}

export interface ArcJson {
  radius: number;
  angle_start: number;
  angle_end: number;
  style: TxStyle;
  tx: number;
}

export interface LifelineJson {
  index: number;
  angle: number;
  r_first: number;
  r_last: number;
}

export interface BandJson {
  r_lo: number;
  r_hi: number;
  intensity: number;
}

export interface InnerPathJson {
  a: number;
  b: number;
  angle_a: number;
  angle_b: number;
  score: number;
  apex_radius: number;
  control: [number, number];
}

export interface PairJson {
  a: number;
  b: number;
  tx_count: number;
  unique_tokens: number;
  score: number;
}

export interface DiskLayoutJson {
  config: DiskConfigJson;
  addresses: DiskAddressJson[];
  order_cost?: number;
  arcs: ArcJson[];
  lifelines: LifelineJson[];
  background: BandJson[];
  inner_paths: InnerPathJson[];
  pairs: PairJson[];
}

export interface SelectionJson {
  addresses: string[];
  indices: number[];
  time_range: [number, number];
}

export interface FlowEventJson {
  tx: number;
  timestamp: number;
  token_id: number;
  status: TxStyle;
}

export interface GroupSeriesJson {
  addresses: { address: string; index: number }[];
  events: FlowEventJson[];
  heights: number[][];
  totals: number[];
}

export type BorderName = 'top' | 'bottom';

export interface PathEndJson {
  node: string | BorderName;
  x: number;
  lane: number;
}

export type SegmentKindName =
  | 'hold'
  | 'sale_hop'
  | 'transfer_hop'
  | 'mint_entry'
  | 'external_entry'
  | 'external_exit';

export interface PathSegmentJson {
  kind: SegmentKindName;
  from: PathEndJson;
  to: PathEndJson;
  fill: [string, string];
  status: TxStyle | null;
  tx: number | null;
}

export interface RibbonJson {
  address: string;
  index: number;
  slot: number;
  heights: number[];
  lanes: number[][];
}

export interface FlowLayoutJson {
  event_range: [number, number];
  columns: number;
  events: FlowEventJson[];
  ribbons: RibbonJson[];
  paths: { token_id: number; segments: PathSegmentJson[] }[];
}

export interface CollectionMetaJson {
  collection_id: string;
  transactions: number;
  addresses: number;
  tokens: number;
  time_extent: [number, number];
}

export interface SessionConfig {
  from: number | null;
  to: number | null;
  minTx: number;
  metric: MetricName;
}

export interface ViewState {
  collection: string | null;
  config: SessionConfig;
  selection: SelectionJson | null;
  eventRange: [number, number] | null;
  hoveredToken: number | null;
}

export const defaultConfig = (): SessionConfig => ({
  from: null,
  to: null,
  minTx: 20,
  metric: 'average_price',
});

export const initialViewState = (): ViewState => ({
  collection: null,
  config: defaultConfig(),
  selection: null,
  eventRange: null,
  hoveredToken: null,
});
