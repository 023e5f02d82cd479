/**
 * Self-contained SVG line chart: one line per series, axes with ticks,
 * a legend naming every series, optional mean±std bands.
 */

import type { SeriesData } from "./schema";

export interface ChartOptions {
  title: string;
  yLabel: string;
  width?: number;
  height?: number;
  bands?: boolean;
}

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const MARGIN = { top: 42, right: 24, bottom: 46, left: 72 };

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (hi === lo) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const factor = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const nice = step * factor;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / nice) * nice; v <= hi + nice * 1e-9; v += nice) {
    ticks.push(v);
  }
  return ticks;
}

function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

/** Render the series to a standalone SVG document string. */
export function renderChart(series: SeriesData[], options: ChartOptions): string {
  const width = options.width ?? 860;
  const height = options.height ?? 540;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xMax = Math.max(...series.map((s) => s.rounds[s.rounds.length - 1]));
  const xMin = Math.min(...series.map((s) => s.rounds[0]));
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of series) {
    for (let i = 0; i < s.mean.length; i++) {
      const pad = options.bands && s.std.length === s.mean.length ? s.std[i] : 0;
      yMin = Math.min(yMin, s.mean[i] - pad);
      yMax = Math.max(yMax, s.mean[i] + pad);
    }
  }
  if (yMin > 0 && yMin < 0.25 * (yMax - yMin)) yMin = 0;
  if (yMax === yMin) yMax = yMin + 1;

  const x = (v: number) => MARGIN.left + ((v - xMin) / (xMax - xMin || 1)) * plotW;
  const y = (v: number) => MARGIN.top + plotH - ((v - yMin) / (yMax - yMin)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="17" font-weight="bold">` +
      `${esc(options.title)}</text>`
  );

  // axes and grid
  for (const tick of niceTicks(yMin, yMax)) {
    const ty = y(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${ty}" x2="${width - MARGIN.right}" y2="${ty}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 8}" y="${ty + 4}" text-anchor="end" font-size="12">` +
        `${fmt(tick)}</text>`
    );
  }
  for (const tick of niceTicks(xMin, xMax)) {
    const tx = x(tick);
    parts.push(
      `<line x1="${tx}" y1="${MARGIN.top + plotH}" x2="${tx}" y2="${MARGIN.top + plotH + 5}" ` +
        `stroke="#333333"/>`,
      `<text x="${tx}" y="${MARGIN.top + plotH + 20}" text-anchor="middle" font-size="12">` +
        `${fmt(tick)}</text>`
    );
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${width - MARGIN.right}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#333333"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#333333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle" ` +
      `font-size="13">round</text>`,
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(options.yLabel)}</text>`
  );

  // bands first so lines draw on top
  series.forEach((s, si) => {
    if (!options.bands || s.std.length !== s.mean.length) return;
    const color = PALETTE[si % PALETTE.length];
    const upper = s.rounds.map((t, i) => `${x(t)},${y(s.mean[i] + s.std[i])}`);
    const lower = s.rounds
      .map((t, i) => `${x(t)},${y(s.mean[i] - s.std[i])}`)
      .reverse();
    parts.push(
      `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${color}" ` +
        `fill-opacity="0.15" stroke="none"/>`
    );
  });
  series.forEach((s, si) => {
    const color = PALETTE[si % PALETTE.length];
    const points = s.rounds.map((t, i) => `${x(t)},${y(s.mean[i])}`).join(" ");
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="2"/>`
    );
  });

  // legend, top-left inside the plot area
  const legendX = MARGIN.left + 12;
  series.forEach((s, si) => {
    const ly = MARGIN.top + 14 + si * 20;
    const color = PALETTE[si % PALETTE.length];
    parts.push(
      `<line x1="${legendX}" y1="${ly}" x2="${legendX + 26}" y2="${ly}" ` +
        `stroke="${color}" stroke-width="3"/>`,
      `<text x="${legendX + 34}" y="${ly + 4}" font-size="13" class="legend">` +
        `${esc(s.algo)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}
