/**
 * Metrics CSV schema shared with the simulator.
 *
 * One row per (run, round); aggregated rows use the reserved run ids
 * -1 (mean over runs) and -2 (population stddev). Plots consume the
 * aggregated rows; per-run rows are optional band/context material.
 */

import { readFileSync } from "fs";

export const REQUIRED_COLUMNS = [
  "run_id",
  "t",
  "cum_regret",
  "mse",
  "cum_collisions",
  "fallbacks",
  "messages",
  "algo",
] as const;

export type MetricName = "regret" | "mse";

/** CSV column backing each plottable metric. */
export const METRIC_COLUMN: Record<MetricName, "cum_regret" | "mse"> = {
  regret: "cum_regret",
  mse: "mse",
};

export class SchemaError extends Error {}

export interface SeriesData {
  /** algo label from the CSV, used for the legend */
  algo: string;
  /** 1-based round numbers, ascending */
  rounds: number[];
  /** aggregated mean per round (run_id = -1 rows) */
  mean: number[];
  /** population stddev per round (run_id = -2 rows), empty if absent */
  std: number[];
  sourcePath: string;
}

function splitHeader(line: string, path: string): string[] {
  const columns = line.trim().split(",");
  for (const required of REQUIRED_COLUMNS) {
    if (!columns.includes(required)) {
      throw new SchemaError(`${path}: missing column '${required}'`);
    }
  }
  return columns;
}

/**
 * Parse one metrics CSV and extract the aggregated series for a metric.
 * Throws SchemaError (naming the offending column) on malformed input.
 */
export function readSeries(path: string, metric: MetricName): SeriesData {
  const text = readFileSync(path, "utf8");
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${path}: no data rows`);
  }
  const columns = splitHeader(lines[0], path);
  const col = (name: string) => columns.indexOf(name);
  const metricColumn = METRIC_COLUMN[metric];

  const meanRows: Array<{ t: number; value: number }> = [];
  const stdRows: Array<{ t: number; value: number }> = [];
  let algo = "";
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== columns.length) {
      throw new SchemaError(
        `${path}:${i + 1}: expected ${columns.length} fields, got ${fields.length}`
      );
    }
    const runId = Number(fields[col("run_id")]);
    if (runId !== -1 && runId !== -2) continue;
    const t = Number(fields[col("t")]);
    const value = Number(fields[col(metricColumn)]);
    if (!Number.isFinite(t) || !Number.isFinite(value)) {
      throw new SchemaError(`${path}:${i + 1}: non-numeric '${metricColumn}' or 't'`);
    }
    algo = fields[col("algo")];
    (runId === -1 ? meanRows : stdRows).push({ t, value });
  }
  if (meanRows.length === 0) {
    throw new SchemaError(`${path}: no aggregated rows (run_id = -1) found`);
  }
  meanRows.sort((a, b) => a.t - b.t);
  stdRows.sort((a, b) => a.t - b.t);
  return {
    algo,
    rounds: meanRows.map((r) => r.t),
    mean: meanRows.map((r) => r.value),
    std: stdRows.map((r) => r.value),
    sourcePath: path,
  };
}

/** All series must cover the same horizon to share an x axis. */
export function checkSameHorizon(series: SeriesData[]): void {
  const horizons = new Set(series.map((s) => s.rounds.length));
  if (horizons.size > 1) {
    const detail = series
      .map((s) => `${s.sourcePath}: T=${s.rounds.length}`)
      .join(", ");
    throw new SchemaError(`CSVs disagree on the horizon (${detail})`);
  }
}
