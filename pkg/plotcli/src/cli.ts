#!/usr/bin/env node
/**
 * Render a regret or MSE figure from one metrics CSV per policy variant.
 *
 *   bandit-plot --metric {regret|mse} --out figure.svg CSV [CSV...]
 *
 * Options: --bands (draw mean±std bands), --title <text>.
 * Consumes the aggregated rows (run_id -1/-2); exits nonzero naming the
 * offending column on schema mismatches.
 */

import { writeFileSync, renameSync, rmSync } from "fs";
import { dirname, join, basename } from "path";

import { renderChart } from "./chart";
import { checkSameHorizon, readSeries, SchemaError, type MetricName } from "./schema";

interface CliArgs {
  metric: MetricName;
  out: string;
  csvs: string[];
  bands: boolean;
  title?: string;
}

const Y_LABEL: Record<MetricName, string> = {
  regret: "cumulative regret",
  mse: "mean squared estimation error",
};

export function parseArgs(argv: string[]): CliArgs {
  let metric: string | undefined;
  let out: string | undefined;
  let title: string | undefined;
  let bands = false;
  const csvs: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "plot" && i === 0) continue; // tolerate subcommand-style use
    if (arg === "--metric") metric = argv[++i];
    else if (arg === "--out") out = argv[++i];
    else if (arg === "--title") title = argv[++i];
    else if (arg === "--bands") bands = true;
    else if (arg === "--help" || arg === "-h") {
      throw new UsageError(usage());
    } else if (arg.startsWith("--")) {
      throw new UsageError(`unknown option ${arg}\n${usage()}`);
    } else csvs.push(arg);
  }
  if (metric !== "regret" && metric !== "mse") {
    throw new UsageError(`--metric must be 'regret' or 'mse'\n${usage()}`);
  }
  if (!out) throw new UsageError(`--out is required\n${usage()}`);
  if (csvs.length === 0) throw new UsageError(`at least one CSV is required\n${usage()}`);
  return { metric, out, csvs, bands, title };
}

export class UsageError extends Error {}

function usage(): string {
  return "usage: bandit-plot --metric {regret|mse} --out figure.svg [--bands] [--title T] CSV [CSV...]";
}

/** Read every CSV, render, and atomically (re)write the output file. */
export function run(args: CliArgs): void {
  const series = args.csvs.map((path) => readSeries(path, args.metric));
  checkSameHorizon(series);
  const svg = renderChart(series, {
    title: args.title ?? `${Y_LABEL[args.metric]} over ${series[0].rounds.length} rounds`,
    yLabel: Y_LABEL[args.metric],
    bands: args.bands,
  });
  // stage next to the destination so the rename is same-filesystem atomic
  const tempFile = join(
    dirname(args.out) || ".",
    `.${basename(args.out) || "figure.svg"}.${process.pid}.tmp`
  );
  try {
    writeFileSync(tempFile, svg);
    renameSync(tempFile, args.out);
  } catch (err) {
    rmSync(tempFile, { force: true });
    throw err;
  }
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    run(args);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(err.message);
      return 2;
    }
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`file not found: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
