import { mkdtempSync, writeFileSync, rmSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { afterAll, describe, expect, it } from "vitest";

import { checkSameHorizon, readSeries, SchemaError } from "../src/schema";

const dir = mkdtempSync(join(tmpdir(), "banditplot-test-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

const HEADER = "run_id,t,cum_regret,mse,cum_collisions,fallbacks,messages,algo";

function writeCsv(name: string, lines: string[]): string {
  const path = join(dir, name);
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}

function sampleCsv(name: string, algo = "ucb", horizon = 3): string {
  const lines = [HEADER];
  for (let run = 0; run < 2; run++) {
    for (let t = 1; t <= horizon; t++) {
      lines.push(`${run},${t},${t * (run + 1)},0.1,${t},0,12,${algo}`);
    }
  }
  for (let t = 1; t <= horizon; t++) {
    lines.push(`-1,${t},${t * 1.5},0.1,${t},0,12,${algo}`);
    lines.push(`-2,${t},${t * 0.5},0.01,0,0,0,${algo}`);
  }
  return writeCsv(name, lines);
}

describe("readSeries", () => {
  it("extracts the aggregated mean and std rows", () => {
    const series = readSeries(sampleCsv("good.csv"), "regret");
    expect(series.algo).toBe("ucb");
    expect(series.rounds).toEqual([1, 2, 3]);
    expect(series.mean).toEqual([1.5, 3, 4.5]);
    expect(series.std).toEqual([0.5, 1, 1.5]);
  });

  it("selects the metric column", () => {
    const series = readSeries(sampleCsv("metric.csv"), "mse");
    expect(series.mean).toEqual([0.1, 0.1, 0.1]);
  });

  it("names a missing column", () => {
    const bad = writeCsv("missing.csv", [
      "run_id,t,cum_regret,cum_collisions,fallbacks,messages,algo",
      "-1,1,0.5,0,0,0,ucb",
    ]);
    expect(() => readSeries(bad, "regret")).toThrowError(/missing column 'mse'/);
  });

  it("rejects ragged rows", () => {
    const bad = writeCsv("ragged.csv", [HEADER, "-1,1,0.5,0.1,0,0,12"]);
    expect(() => readSeries(bad, "regret")).toThrowError(SchemaError);
  });

  it("rejects files without aggregated rows", () => {
    const bad = writeCsv("noagg.csv", [HEADER, "0,1,0.5,0.1,0,0,12,ucb"]);
    expect(() => readSeries(bad, "regret")).toThrowError(/run_id = -1/);
  });

  it("rejects non-numeric metric cells", () => {
    const bad = writeCsv("nan.csv", [HEADER, "-1,1,oops,0.1,0,0,12,ucb"]);
    expect(() => readSeries(bad, "regret")).toThrowError(/cum_regret/);
  });
});

describe("checkSameHorizon", () => {
  it("accepts matching horizons", () => {
    const a = readSeries(sampleCsv("h1.csv"), "regret");
    const b = readSeries(sampleCsv("h2.csv", "greedy"), "regret");
    expect(() => checkSameHorizon([a, b])).not.toThrow();
  });

  it("rejects mismatched horizons", () => {
    const a = readSeries(sampleCsv("h3.csv"), "regret");
    const b = readSeries(sampleCsv("h4.csv", "greedy", 5), "regret");
    expect(() => checkSameHorizon([a, b])).toThrowError(/horizon/);
  });
});
