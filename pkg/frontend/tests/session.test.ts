import { describe, expect, it } from "vitest";

import { ElicitationSession } from "../src/session.js";

function publishedScaleSession(): ElicitationSession {
  const s = new ElicitationSession();
  s.setLevels(
    [0, 225, 450, 675, 900, 1125, 1350, 1575],
    { index: 0, value: 0 },
    { index: 5, value: 100 },
  );
  [0, 2, 4, 6, 8, 10, 13].forEach((g, i) => s.setGap(i, g));
  return s;
}

describe("scale session", () => {
  it("builds the wire payload for valid judgements", () => {
    const s = publishedScaleSession();
    const payload = s.scalePayload();
    expect(payload.levels).toHaveLength(8);
    expect(payload.gaps).toEqual([0, 2, 4, 6, 8, 10, 13]);
    expect(payload.anchors.hi).toEqual({ index: 5, value: 100 });
    expect(payload.cap).toBe(180);
  });

  it("never submits violating judgements", () => {
    const s = new ElicitationSession();
    s.setLevels([0, 10], { index: 0, value: 0 }, { index: 0, value: 100 });
    expect(s.scaleViolations()).toContain("anchor indices must be distinct");
    expect(() => s.scalePayload()).toThrow(/invalid scale judgements/);
  });

  it("rejects unordered levels and inverted anchors", () => {
    const s = new ElicitationSession();
    s.setLevels([0, 10, 5], { index: 0, value: 0 }, { index: 2, value: 100 });
    expect(s.scaleViolations()).toContain("levels must be strictly increasing");
    const t = new ElicitationSession();
    t.setLevels([0, 10], { index: 0, value: 100 }, { index: 1, value: 0 });
    expect(t.scaleViolations()).toContain("anchor values must increase with impact");
  });

  it("card edits stay non-negative and mark the session dirty", () => {
    const s = publishedScaleSession();
    s.dirty = false;
    s.removeCard(0);
    expect(s.gaps[0]).toBe(0);
    s.addCard(0);
    expect(s.gaps[0]).toBe(1);
    expect(s.dirty).toBe(true);
  });

  it("carries expert table entries into the payload", () => {
    const s = publishedScaleSession();
    s.setExpertEntry({ i: 1, j: 4, cards: 16 });
    expect(s.scalePayload().table).toEqual([{ i: 1, j: 4, cards: 16 }]);
    s.clearExpertEntries();
    expect(s.scalePayload().table).toBeUndefined();
  });
});

describe("ranking session", () => {
  it("builds the published ranking payload", () => {
    const s = new ElicitationSession();
    s.setTiers([[0], [2, 3, 4], [1]], [2, 3]);
    s.setZ(2);
    expect(s.rankingPayload()).toEqual({
      tiers: [[0], [2, 3, 4], [1]],
      tier_gaps: [2, 3],
      z: 2,
    });
  });

  it("blocks z at or below one when tiers differ, with an explanation", () => {
    const s = new ElicitationSession();
    s.setTiers([[0], [1, 2, 3, 4]], [0]);
    s.setZ(1);
    expect(s.rankingViolations()).toContain(
      "the top/bottom ratio must exceed 1 when tiers differ",
    );
    expect(() => s.rankingPayload()).toThrow(/invalid swing ranking/);
  });

  it("requires a full partition of the five criteria", () => {
    const s = new ElicitationSession();
    s.setTiers([[0, 1], [1, 2]], [0]);
    expect(s.rankingViolations()).toContain(
      "every criterion must appear in exactly one tier",
    );
  });

  it("moves criteria between tiers and drops emptied tiers", () => {
    const s = new ElicitationSession();
    s.setTiers([[0], [2, 3, 4], [1]], [2, 3]);
    s.moveCriterion(1, 1);
    expect(s.tiers).toEqual([[0], [2, 3, 4, 1]]);
    expect(s.tierGaps).toEqual([2]);
    s.moveCriterion(0, 5);
    expect(s.tiers).toEqual([[2, 3, 4, 1], [0]]);
  });

  it("single tier needs no gaps and passes regardless of z", () => {
    const s = new ElicitationSession();
    s.setTiers([[0, 1, 2, 3, 4]], []);
    s.setZ(1);
    expect(s.rankingViolations()).toEqual([]);
  });
});

describe("persistence", () => {
  function fakeStorage(): Storage {
    const store = new Map<string, string>();
    return {
      getItem: (k: string) => store.get(k) ?? null,
      setItem: (k: string, v: string) => void store.set(k, v),
      removeItem: (k: string) => void store.delete(k),
      clear: () => store.clear(),
      key: () => null,
      length: 0,
    } as Storage;
  }

  it("round-trips through local storage", () => {
    const storage = fakeStorage();
    const s = publishedScaleSession();
    s.setTiers([[0], [2, 3, 4], [1]], [2, 3]);
    s.setCommittedWeights([0.28, 0.141, 0.193, 0.193, 0.193]);
    s.save(storage);
    const back = ElicitationSession.load(storage);
    expect(back.levels).toEqual(s.levels);
    expect(back.gaps).toEqual(s.gaps);
    expect(back.tiers).toEqual(s.tiers);
    expect(back.committedWeights).toEqual([0.28, 0.141, 0.193, 0.193, 0.193]);
    expect(back.dirty).toBe(true);
  });

  it("starts clean on a corrupted snapshot", () => {
    const storage = fakeStorage();
    storage.setItem("paci-elicitation-session", "{nope");
    const back = ElicitationSession.load(storage);
    expect(back.levels).toEqual([]);
    expect(back.dirty).toBe(false);
  });
});
