// Round-trip acceptance against the real backend: drive the session the
// way the UI does (published cards and ranking), export the merged
// config, push it through PUT /config unchanged, then feed it to the CLI
// and check the five published scores. Requires the `paci` command on
// PATH (the Python package installed alongside this repo).

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { PreviewClient } from "../src/api.js";
import { buildConfigExport, serializeConfig } from "../src/export.js";
import { ElicitationSession } from "../src/session.js";
import type { ConfigDoc, FunctionDoc } from "../src/types.js";

const execFileP = promisify(execFile);

const PORT = 8750 + Math.floor(Math.random() * 200);
const BASE = `http://127.0.0.1:${PORT}`;

const TABLE2_CSV = [
  "date,incid,trans,letha,wards,icu",
  "2020-03-20,194,1.301,4.16,128,41",
  "2020-07-31,197,0.978,1.14,340,41",
  "2020-12-24,3574,0.987,2.18,2348,505",
  "2021-01-24,12341,1.039,3.46,5375,742",
  "2021-07-10,3658,1.042,0.382,488,144",
].join("\n") + "\n";

const PUBLISHED_OVERALL = [49.68, 17.04, 124.832, 163.81, 88.77];
const ADJUSTED_WEIGHTS = [0.28, 0.141, 0.193, 0.193, 0.193];

function interpolate(points: [number, number][], x: number): number {
  if (x <= points[0]![0]) return points[0]![1];
  for (let i = 1; i < points.length; i++) {
    const [x1, v1] = points[i]!;
    if (x <= x1) {
      const [x0, v0] = points[i - 1]!;
      return v0 + ((v1 - v0) * (x - x0)) / (x1 - x0);
    }
  }
  return points[points.length - 1]![1];
}

let server: ChildProcess | null = null;
let workDir = "";

async function waitForServer(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/config`);
      if (response.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`backend did not come up on ${BASE}: ${lastError}`);
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "paci-ui-"));
  server = spawn("paci", ["serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill("SIGTERM");
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

describe("elicitation round-trip through the live backend", () => {
  const client = new PreviewClient(BASE);
  let elicitedFunction: FunctionDoc;
  let exported: ConfigDoc;

  it("published cards reproduce the incidence scale", async () => {
    const session = new ElicitationSession();
    session.setLevels(
      [0, 225, 450, 675, 900, 1125, 1350, 1575],
      { index: 0, value: 0 },
      { index: 5, value: 100 },
    );
    [0, 2, 4, 6, 8, 10, 13].forEach((g, i) => session.setGap(i, g));
    const result = await client.previewScale(session.scalePayload());
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.data.scale.unit_value).toBe(4);
    expect(result.data.scale.values).toEqual([0, 4, 16, 36, 64, 100, 144, 200]);
    expect(result.data.function.cap).toBe(180);
    elicitedFunction = result.data.function;
  }, 20_000);

  it("every criterion preset reproduces its default value function", async () => {
    const { PRESETS } = await import("../src/presets.js");
    const base = await client.getConfig();
    expect(base.ok).toBe(true);
    if (!base.ok) return;
    for (const [criterion, preset] of PRESETS.entries()) {
      const session = new ElicitationSession();
      session.setLevels(preset.levels, preset.anchorLo, preset.anchorHi);
      preset.gaps.forEach((g, i) => session.setGap(i, g));
      const result = await client.previewScale(session.scalePayload());
      expect(result.ok).toBe(true);
      if (!result.ok) continue;
      const elicited = result.data.function;
      const published = base.data.value_functions[criterion]!;
      expect(elicited.cap).toBe(published.cap);
      expect(elicited.cap_onset).toBeCloseTo(published.cap_onset!, 9);
      // the lethality grid is finer than the published two-segment line,
      // so compare by collinearity instead of breakpoint identity
      for (const [x, v] of elicited.breakpoints) {
        const onLine = interpolate(published.breakpoints, x);
        expect(Math.abs(v - onLine)).toBeLessThan(1e-9);
      }
    }
  }, 30_000);

  it("published ranking reproduces the elicited weights", async () => {
    const session = new ElicitationSession();
    session.setTiers([[0], [2, 3, 4], [1]], [2, 3]);
    session.setZ(2);
    const result = await client.previewWeights(session.rankingPayload());
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    const expected = [0.27451, 0.13725, 0.19608, 0.19608, 0.19608];
    result.data.weights.forEach((w, i) => {
      expect(Math.abs(w - expected[i]!)).toBeLessThan(1e-4);
    });
  }, 20_000);

  it("exported config passes server validation unchanged", async () => {
    const base = await client.getConfig();
    expect(base.ok).toBe(true);
    if (!base.ok) return;
    // committed weights: the final adjusted vector, entered in the
    // workbench's committed column after the elicited preview
    exported = buildConfigExport(base.data, elicitedFunction, 0, ADJUSTED_WEIGHTS);
    const put = await client.putConfig(exported);
    expect(put.ok).toBe(true);
  }, 20_000);

  it("the CLI accepts the exported config and reproduces the scores", async () => {
    const configPath = join(workDir, "exported.json");
    writeFileSync(configPath, serializeConfig(exported));
    const inputPath = join(workDir, "table2.csv");
    writeFileSync(inputPath, TABLE2_CSV);
    const outDir = join(workDir, "out");
    await execFileP("paci", [
      "compute", "--input", inputPath, "--config", configPath,
      "--out-dir", outDir,
    ]);
    const lines = readFileSync(join(outDir, "indicator.csv"), "utf-8")
      .trim().split("\n").slice(1);
    const overall = lines.map((line) => Number(line.split(",")[1]));
    overall.forEach((value, i) => {
      expect(Math.abs(value - PUBLISHED_OVERALL[i]!)).toBeLessThan(0.05);
    });
  }, 30_000);
});
