import { mkdtempSync, readFileSync, writeFileSync, rmSync, existsSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { afterAll, describe, expect, it } from "vitest";

import { renderChart } from "../src/chart";
import { main } from "../src/cli";
import type { SeriesData } from "../src/schema";

const dir = mkdtempSync(join(tmpdir(), "banditplot-render-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

const HEADER = "run_id,t,cum_regret,mse,cum_collisions,fallbacks,messages,algo";

function series(algo: string, values: number[], std?: number[]): SeriesData {
  return {
    algo,
    rounds: values.map((_, i) => i + 1),
    mean: values,
    std: std ?? [],
    sourcePath: `${algo}.csv`,
  };
}

function sampleCsv(name: string, algo: string, horizon = 4): string {
  const lines = [HEADER];
  for (let t = 1; t <= horizon; t++) {
    lines.push(`-1,${t},${t * 2},${1 / t},${t},0,12,${algo}`);
    lines.push(`-2,${t},${t * 0.3},${0.01},0,0,0,${algo}`);
  }
  const path = join(dir, name);
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}

describe("renderChart", () => {
  it("draws one polyline per series and a full legend", () => {
    const svg = renderChart(
      [series("ucb", [1, 2, 3]), series("ucb-nr", [2, 4, 6]), series("greedy", [3, 6, 9])],
      { title: "demo", yLabel: "cumulative regret" }
    );
    expect((svg.match(/<polyline /g) ?? []).length).toBe(3);
    for (const name of ["ucb", "ucb-nr", "greedy"]) {
      expect(svg).toContain(`>${name}</text>`);
    }
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  });

  it("adds std bands when requested", () => {
    const svg = renderChart(
      [series("ucb", [1, 2, 3], [0.2, 0.2, 0.2])],
      { title: "demo", yLabel: "y", bands: true }
    );
    expect(svg).toContain("<polygon");
  });

  it("escapes markup in labels", () => {
    const svg = renderChart([series("a<b", [1, 2])], { title: "t<&>t", yLabel: "y" });
    expect(svg).toContain("a&lt;b");
    expect(svg).not.toContain("t<&>t");
  });

  it("handles a flat zero line", () => {
    const svg = renderChart([series("genie", [0, 0, 0, 0])], {
      title: "flat",
      yLabel: "cumulative regret",
    });
    expect(svg).toContain("<polyline");
  });
});

describe("cli main", () => {
  it("renders a figure from CSVs", () => {
    const out = join(dir, "fig.svg");
    const code = main([
      "--metric", "regret", "--out", out,
      sampleCsv("a.csv", "ucb"), sampleCsv("b.csv", "greedy"),
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain(">ucb</text>");
    expect(svg).toContain(">greedy</text>");
  });

  it("overwrites an existing figure", () => {
    const out = join(dir, "fig2.svg");
    writeFileSync(out, "stale");
    const code = main(["--metric", "mse", "--out", out, sampleCsv("c.csv", "ucb")]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("<svg");
  });

  it("exits 1 naming the column on schema errors", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "run_id,t,mse,algo\n-1,1,0.5,ucb\n");
    const code = main(["--metric", "regret", "--out", join(dir, "x.svg"), bad]);
    expect(code).toBe(1);
  });

  it("exits 2 on usage errors", () => {
    expect(main(["--metric", "volume", "--out", "x.svg", "a.csv"])).toBe(2);
    expect(main(["--metric", "regret"])).toBe(2);
  });

  it("rejects horizon mismatches", () => {
    const a = sampleCsv("h_a.csv", "ucb", 4);
    const b = sampleCsv("h_b.csv", "greedy", 9);
    const code = main(["--metric", "regret", "--out", join(dir, "h.svg"), a, b]);
    expect(code).toBe(1);
  });
});
