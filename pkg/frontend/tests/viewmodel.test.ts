import { describe, expect, it } from "vitest";

import type { FunctionDoc, ScaleResponse, WeightsResponse } from "../src/types.js";
import {
  plotGeometry,
  scaleView,
  violationBadges,
  weightsView,
} from "../src/viewmodel.js";

const FN: FunctionDoc = {
  breakpoints: [[0, 0], [225, 4], [1125, 100], [1494.642857142857, 180]],
  cap: 180,
  cap_onset: 1494.642857142857,
  domain: "continuous",
  name: "incid",
};

const SCALE_RESPONSE: ScaleResponse = {
  scale: {
    unit_value: 4,
    unit_count: 25,
    values: [0, 4, 16, 36, 64, 100, 144, 200],
  },
  function: FN,
};

describe("scale view", () => {
  it("renders response numbers verbatim, no recomputation", () => {
    const levels = [0, 225, 450, 675, 900, 1125, 1350, 1575];
    const view = scaleView(levels, SCALE_RESPONSE);
    expect(view.unitValue).toBe(String(SCALE_RESPONSE.scale.unit_value));
    expect(view.unitCount).toBe("25");
    view.levelValues.forEach((row, i) => {
      expect(row.value).toBe(String(SCALE_RESPONSE.scale.values[i]));
      expect(row.level).toBe(String(levels[i]));
    });
    expect(view.capOnset).toBe(String(FN.cap_onset));
  });

  it("labels an uncapped function", () => {
    const view = scaleView([0, 1], {
      scale: { unit_value: 1, unit_count: 1, values: [0, 1] },
      function: { ...FN, cap_onset: null },
    });
    expect(view.capOnset).toBe("never");
  });
});

describe("weights view", () => {
  it("renders weights verbatim in criterion order", () => {
    const response: WeightsResponse = {
      weights: [0.27450980392156865, 0.13725490196078433,
        0.19607843137254902, 0.19607843137254902, 0.19607843137254902],
      criteria: [0, 1, 2, 3, 4],
    };
    const view = weightsView(response);
    expect(view.byCriterion.map((r) => r.weight)).toEqual(
      response.weights.map(String),
    );
    expect(view.byCriterion[0]!.criterion).toBe("incid");
    expect(view.byCriterion[4]!.criterion).toBe("icu");
  });
});

describe("violation badges", () => {
  it("anchors each violation at its first gap with the residual", () => {
    const badges = violationBadges([
      { pair: [1, 4], expected: 14, actual: 16, residual: 2 },
    ]);
    expect(badges).toHaveLength(1);
    expect(badges[0]!.gapIndex).toBe(1);
    expect(badges[0]!.text).toContain("expected 14");
    expect(badges[0]!.text).toContain("+2");
  });
});

describe("plot geometry", () => {
  it("scales breakpoints into the viewport and extends the cap", () => {
    const geometry = plotGeometry(FN, 560, 320, 24);
    expect(geometry.nodes).toHaveLength(FN.breakpoints.length);
    const pts = geometry.points.split(" ");
    expect(pts.length).toBe(FN.breakpoints.length + 1); // + cap extension
    const ys = pts.map((p) => Number(p.split(",")[1]));
    for (let i = 1; i < ys.length; i++) {
      expect(ys[i]!).toBeLessThanOrEqual(ys[i - 1]! + 1e-9); // values rise
    }
    // points are emitted with 2-decimal precision
    expect(ys[ys.length - 1]).toBeCloseTo(geometry.capLineY, 1);
  });
});
