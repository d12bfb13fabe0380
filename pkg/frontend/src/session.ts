// Client-side elicitation session. Mirrors the server-side judgement
// invariants so an invalid payload is never submitted; the server stays
// the single source of truth for every computed number.

import type {
  AnchorRef,
  RankingPayload,
  ScaleJudgements,
  TableEntry,
} from "./types.js";

export const CRITERIA_COUNT = 5;

export interface SessionSnapshot {
  criterion: number;
  levels: number[];
  gaps: number[];
  anchorLo: AnchorRef;
  anchorHi: AnchorRef;
  cap: number;
  expertTable: TableEntry[];
  tiers: number[][];
  tierGaps: number[];
  z: number;
  committedWeights: number[] | null;
  dirty: boolean;
}

const STORAGE_KEY = "paci-elicitation-session";

export class ElicitationSession {
  criterion = 0;
  levels: number[] = [];
  gaps: number[] = [];
  anchorLo: AnchorRef = { index: 0, value: 0 };
  anchorHi: AnchorRef = { index: 1, value: 100 };
  cap = 180;
  expertTable: TableEntry[] = [];
  tiers: number[][] = [[0, 1, 2, 3, 4]];
  tierGaps: number[] = [];
  z = 2;
  // optional final adjustment applied before export; when unset the
  // elicited weights from the preview API are committed as-is
  committedWeights: number[] | null = null;
  dirty = false;

  // ----- level & card edits -------------------------------------------

  setLevels(levels: number[], anchorLo: AnchorRef, anchorHi: AnchorRef): void {
    this.levels = [...levels];
    this.gaps = new Array(Math.max(levels.length - 1, 0)).fill(0);
    this.anchorLo = { ...anchorLo };
    this.anchorHi = { ...anchorHi };
    this.expertTable = [];
    this.dirty = true;
  }

  setGap(index: number, cards: number): void {
    if (index < 0 || index >= this.gaps.length) {
      throw new RangeError(`gap index ${index} out of range`);
    }
    this.gaps[index] = Math.max(0, Math.round(cards));
    this.dirty = true;
  }

  addCard(index: number): void {
    this.setGap(index, (this.gaps[index] ?? 0) + 1);
  }

  removeCard(index: number): void {
    this.setGap(index, (this.gaps[index] ?? 0) - 1);
  }

  setExpertEntry(entry: TableEntry): void {
    this.expertTable = this.expertTable.filter(
      (e) => !(e.i === entry.i && e.j === entry.j),
    );
    this.expertTable.push(entry);
    this.dirty = true;
  }

  clearExpertEntries(): void {
    this.expertTable = [];
    this.dirty = true;
  }

  // ----- swing ranking edits ------------------------------------------

  setTiers(tiers: number[][], tierGaps: number[]): void {
    this.tiers = tiers.map((t) => [...t]);
    this.tierGaps = [...tierGaps];
    this.dirty = true;
  }

  /** Move a criterion into an existing tier (or its own new tier).

   * ``targetTier`` is indexed against the tier list *before* the move;
   * when the source tier empties and disappears, targets below it shift
   * up by one so "the tier below" keeps meaning the visible neighbour.
   */
  moveCriterion(criterion: number, targetTier: number): void {
    const sourceIdx = this.tiers.findIndex((tier) => tier.includes(criterion));
    const sourceEmpties =
      sourceIdx >= 0 && this.tiers[sourceIdx]!.length === 1;
    const stripped = this.tiers
      .map((tier) => tier.filter((c) => c !== criterion))
      .filter((tier) => tier.length > 0);
    let target = targetTier;
    if (sourceEmpties && targetTier > sourceIdx) target -= 1;
    if (target >= stripped.length) {
      stripped.push([criterion]);
    } else {
      stripped[Math.max(target, 0)]!.push(criterion);
    }
    this.tiers = stripped;
    this.tierGaps = new Array(Math.max(this.tiers.length - 1, 0))
      .fill(0)
      .map((_, i) => this.tierGaps[i] ?? 0);
    this.dirty = true;
  }

  setTierGap(index: number, cards: number): void {
    if (index < 0 || index >= this.tierGaps.length) {
      throw new RangeError(`tier gap index ${index} out of range`);
    }
    this.tierGaps[index] = Math.max(0, Math.round(cards));
    this.dirty = true;
  }

  setZ(z: number): void {
    this.z = z;
    this.dirty = true;
  }

  setCommittedWeights(weights: number[] | null): void {
    this.committedWeights = weights ? [...weights] : null;
    this.dirty = true;
  }

  // ----- invariant checks (mirror the server) --------------------------

  scaleViolations(): string[] {
    const out: string[] = [];
    if (this.levels.length < 2) out.push("need at least two levels");
    for (let i = 1; i < this.levels.length; i++) {
      if (!(this.levels[i]! > this.levels[i - 1]!)) {
        out.push("levels must be strictly increasing");
        break;
      }
    }
    if (this.gaps.length !== Math.max(this.levels.length - 1, 0)) {
      out.push("one card count per consecutive level pair");
    }
    if (this.gaps.some((g) => g < 0 || !Number.isInteger(g))) {
      out.push("card counts must be non-negative integers");
    }
    const { anchorLo: lo, anchorHi: hi } = this;
    const n = this.levels.length;
    if (lo.index < 0 || lo.index >= n || hi.index < 0 || hi.index >= n) {
      out.push("anchor indices must reference levels");
    } else {
      if (lo.index === hi.index) out.push("anchor indices must be distinct");
      if (lo.index > hi.index) out.push("low anchor must precede high anchor");
      if (!(lo.value < hi.value)) out.push("anchor values must increase with impact");
    }
    return out;
  }

  rankingViolations(): string[] {
    const out: string[] = [];
    const flat = this.tiers.flat();
    const expected = [...Array(CRITERIA_COUNT).keys()];
    if (
      flat.length !== CRITERIA_COUNT ||
      [...flat].sort((a, b) => a - b).join(",") !== expected.join(",")
    ) {
      out.push("every criterion must appear in exactly one tier");
    }
    if (this.tiers.some((tier) => tier.length === 0)) out.push("empty tier");
    if (this.tierGaps.length !== Math.max(this.tiers.length - 1, 0)) {
      out.push("one gap per consecutive tier pair");
    }
    if (this.tierGaps.some((g) => g < 0 || !Number.isInteger(g))) {
      out.push("tier gaps must be non-negative integers");
    }
    if (this.tiers.length > 1 && !(this.z > 1)) {
      out.push("the top/bottom ratio must exceed 1 when tiers differ");
    }
    return out;
  }

  // ----- payloads -------------------------------------------------------

  scalePayload(): ScaleJudgements {
    const violations = this.scaleViolations();
    if (violations.length > 0) {
      throw new Error(`invalid scale judgements: ${violations.join("; ")}`);
    }
    const payload: ScaleJudgements = {
      levels: [...this.levels],
      anchors: { lo: { ...this.anchorLo }, hi: { ...this.anchorHi } },
      gaps: [...this.gaps],
      cap: this.cap,
    };
    if (this.expertTable.length > 0) payload.table = [...this.expertTable];
    return payload;
  }

  rankingPayload(): RankingPayload {
    const violations = this.rankingViolations();
    if (violations.length > 0) {
      throw new Error(`invalid swing ranking: ${violations.join("; ")}`);
    }
    return {
      tiers: this.tiers.map((t) => [...t]),
      tier_gaps: [...this.tierGaps],
      z: this.z,
    };
  }

  // ----- persistence (browser local storage only) ----------------------

  snapshot(): SessionSnapshot {
    return {
      criterion: this.criterion,
      levels: [...this.levels],
      gaps: [...this.gaps],
      anchorLo: { ...this.anchorLo },
      anchorHi: { ...this.anchorHi },
      cap: this.cap,
      expertTable: [...this.expertTable],
      tiers: this.tiers.map((t) => [...t]),
      tierGaps: [...this.tierGaps],
      z: this.z,
      committedWeights: this.committedWeights ? [...this.committedWeights] : null,
      dirty: this.dirty,
    };
  }

  save(storage: Pick<Storage, "setItem">): void {
    storage.setItem(STORAGE_KEY, JSON.stringify(this.snapshot()));
  }

  static load(storage: Pick<Storage, "getItem">): ElicitationSession {
    const session = new ElicitationSession();
    const raw = storage.getItem(STORAGE_KEY);
    if (!raw) return session;
    try {
      const snap = JSON.parse(raw) as SessionSnapshot;
      session.criterion = snap.criterion ?? 0;
      session.levels = snap.levels ?? [];
      session.gaps = snap.gaps ?? [];
      session.anchorLo = snap.anchorLo ?? { index: 0, value: 0 };
      session.anchorHi = snap.anchorHi ?? { index: 1, value: 100 };
      session.cap = snap.cap ?? 180;
      session.expertTable = snap.expertTable ?? [];
      session.tiers = snap.tiers ?? [[0, 1, 2, 3, 4]];
      session.tierGaps = snap.tierGaps ?? [];
      session.z = snap.z ?? 2;
      session.committedWeights = snap.committedWeights ?? null;
      session.dirty = snap.dirty ?? false;
    } catch {
      // corrupted snapshot: start clean rather than wedging the UI
    }
    return session;
  }
}
