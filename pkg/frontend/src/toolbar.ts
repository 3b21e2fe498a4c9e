// Toolbar: background selector, time selector, address filter. Every commit
// of a control fires onChange exactly once with the new session config.

import { htmlEl } from './dom';
import type { MetricName, SessionConfig } from './types';

export type ConfigHandler = (config: SessionConfig) => void;

export class Toolbar {
  readonly root: HTMLElement;
  private config: SessionConfig;

  constructor(
    container: HTMLElement,
    initial: SessionConfig,
    private onChange: ConfigHandler,
  ) {
    this.config = { ...initial };
    this.root = htmlEl('div', { class: 'toolbar' });

    const metric = htmlEl('select', { class: 'metric-select' });
    metric.appendChild(htmlEl('option', { value: 'average_price' }, 'Average price'));
    metric.appendChild(htmlEl('option', { value: 'trade_volume' }, 'Trade volume'));
    metric.value = this.config.metric;
    metric.addEventListener('change', () => {
      this.commit({ metric: metric.value as MetricName });
    });

    const from = htmlEl('input', { class: 'time-from', type: 'date' });
    from.addEventListener('change', () => {
      this.commit({ from: from.value ? Date.parse(from.value) / 1000 : null });
    });
    const to = htmlEl('input', { class: 'time-to', type: 'date' });
    to.addEventListener('change', () => {
      this.commit({ to: to.value ? Date.parse(to.value) / 1000 : null });
    });

    const minTx = htmlEl('input', {
      class: 'min-tx',
      type: 'number',
      min: '1',
      value: String(this.config.minTx),
    });
    minTx.addEventListener('change', () => {
      const parsed = parseInt(minTx.value, 10);
      if (Number.isFinite(parsed) && parsed >= 1) this.commit({ minTx: parsed });
    });

    for (const [label, control] of [
      ['Background', metric],
      ['From', from],
      ['To', to],
      ['Address filter', minTx],
    ] as const) {
      const wrap = htmlEl('label', { class: 'toolbar-field' }, label + ' ');
      wrap.appendChild(control);
      this.root.appendChild(wrap);
    }
    container.appendChild(this.root);
  }

  private commit(patch: Partial<SessionConfig>): void {
    this.config = { ...this.config, ...patch };
    this.onChange({ ...this.config });
  }
}
