// Drill-down wiring: toolbar -> disk -> circular brush -> group flow ->
// period brush -> detail flow. The ViewState plus fetched layouts fully
// determine the DOM; no analytics happen client-side.

import { ApiClient, ApiError, StaleResponse } from './api';
import { DiskView, type BrushSpan } from './disk';
import { htmlEl, toast } from './dom';
import { FlowDetailView, StackedSeriesView } from './flow';
import { Toolbar } from './toolbar';
import { initialViewState, type ViewState } from './types';

export class App {
  readonly state: ViewState = initialViewState();
  readonly disk: DiskView;
  readonly stacked: StackedSeriesView;
  readonly detail: FlowDetailView;
  readonly toolbar: Toolbar;
  private diskPanel: HTMLElement;
  private flowPanel: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {
    const toolbarHost = htmlEl('div', { class: 'toolbar-host' });
    this.diskPanel = htmlEl('div', { class: 'disk-panel' });
    this.flowPanel = htmlEl('div', { class: 'flow-panel' });
    root.append(toolbarHost, this.diskPanel, this.flowPanel);

    this.toolbar = new Toolbar(toolbarHost, this.state.config, (config) => {
      this.state.config = config;
      void this.refreshDisk();
    });
    this.disk = new DiskView(this.diskPanel, (brush) => void this.brushed(brush));
    this.stacked = new StackedSeriesView(this.flowPanel, (lo, hi) => {
      this.state.eventRange = [lo, hi];
      void this.refreshDetail();
    });
    this.detail = new FlowDetailView(this.flowPanel, (token) => {
      this.state.hoveredToken = token;
    });
  }

  async start(): Promise<void> {
    const collections = await this.api.collections();
    if (collections.length === 0) {
      toast(this.root, 'no collections loaded');
      return;
    }
    this.state.collection = collections[0].collection_id;
    await this.refreshDisk();
  }

  async refreshDisk(): Promise<void> {
    if (!this.state.collection) return;
    try {
      const layout = await this.api.disk(this.state.collection, this.state.config);
      this.disk.render(layout);
    } catch (err) {
      this.surface(err);
    }
  }

  async brushed(brush: BrushSpan): Promise<void> {
    if (!this.state.collection) return;
    try {
      const selection = await this.api.selection(
        this.state.collection,
        this.state.config,
        brush,
      );
      this.state.selection = selection;
      this.state.eventRange = null;
      this.disk.drawLink(brush);
      const series = await this.api.flowGroup(
        this.state.collection,
        selection.addresses,
        selection.time_range,
      );
      this.stacked.render(series);
    } catch (err) {
      this.surface(err);
    }
  }

  async refreshDetail(): Promise<void> {
    const { collection, selection, eventRange } = this.state;
    if (!collection || !selection || !eventRange) return;
    try {
      const flow = await this.api.flowDetail(
        collection,
        selection.addresses,
        selection.time_range,
        eventRange,
      );
      this.detail.render(flow);
    } catch (err) {
      this.surface(err);
    }
  }

  private surface(err: unknown): void {
    if (err instanceof StaleResponse) return;
    if (err instanceof ApiError) {
      toast(this.root, `${err.code}: ${err.message}`);
      return;
    }
    throw err;
  }
}
