"""Deck-of-cards elicitation: interval scales and swing weights.

Blank cards placed between consecutive performance levels encode strength
of impact: k cards between two levels means a difference of k+1 preference
units.  Two anchor levels with assigned values turn unit counts into an
interval scale; a ranking of swing situations plus a top/bottom ratio turns
them into normalised criterion weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import JudgementError


@dataclass(frozen=True)
class Anchor:
    index: int
    value: float


@dataclass(frozen=True)
class LevelSequence:
    """Ordered performance levels with two valued reference anchors."""

    levels: tuple[float, ...]
    anchor_lo: Anchor
    anchor_hi: Anchor

    def __post_init__(self):
        if len(self.levels) < 2:
            raise JudgementError("need at least two levels")
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise JudgementError("levels must be strictly increasing")
        n = len(self.levels)
        for anchor in (self.anchor_lo, self.anchor_hi):
            if not 0 <= anchor.index < n:
                raise JudgementError(f"anchor index {anchor.index} out of range")
        if self.anchor_lo.index == self.anchor_hi.index:
            raise JudgementError("anchor indices must be distinct")
        if self.anchor_lo.value == self.anchor_hi.value:
            raise JudgementError("anchor values must be distinct")
        if self.anchor_lo.index > self.anchor_hi.index:
            raise JudgementError("low anchor must precede high anchor")
        if self.anchor_lo.value > self.anchor_hi.value:
            raise JudgementError("anchor values must increase with impact")


@dataclass(frozen=True)
class CardJudgements:
    """Blank-card counts, one per consecutive level pair."""

    gaps: tuple[int, ...]

    def __post_init__(self):
        if any((not isinstance(g, (int, np.integer))) or g < 0 for g in self.gaps):
            raise JudgementError("card counts must be non-negative integers")


@dataclass(frozen=True)
class IntervalScaleResult:
    """Outcome of interval-scale construction.

    unit_value: scale points per preference unit (alpha).
    values: one value per level, anchors reproduced exactly.
    unit_count: preference units between the two anchors (h).
    """

    unit_value: float
    values: tuple[float, ...]
    unit_count: int

    def to_dict(self) -> dict:
        return {
            "unit_value": self.unit_value,
            "unit_count": self.unit_count,
            "values": list(self.values),
        }


def build_interval_scale(seq: LevelSequence, cards: CardJudgements) -> IntervalScaleResult:
    """Turn card judgements into level values anchored at two references.

    k cards between consecutive levels contribute k+1 units.  The unit value
    is the anchor span divided by the units between the anchors; every level
    value follows from its cumulative unit count relative to the low anchor,
    extended beyond the anchors by the same rule.
    """
    gaps = cards.gaps
    if len(gaps) != len(seq.levels) - 1:
        raise JudgementError(
            f"expected {len(seq.levels) - 1} card counts, got {len(gaps)}"
        )
    lo, hi = seq.anchor_lo, seq.anchor_hi
    units = np.array([g + 1 for g in gaps], dtype=np.int64)
    # cumulative units measured from the low anchor
    cum = np.zeros(len(seq.levels), dtype=np.int64)
    cum[1:] = np.cumsum(units)
    cum -= cum[lo.index]
    h = int(cum[hi.index])
    alpha = (hi.value - lo.value) / h
    if alpha <= 0:
        raise JudgementError("anchor values must increase with impact")
    values = tuple(lo.value + alpha * int(c) for c in cum)
    return IntervalScaleResult(unit_value=alpha, values=values, unit_count=h)


@dataclass(frozen=True)
class PairwiseTable:
    """Upper-triangular card counts between level pairs.

    entries maps (i, j) with i < j to a card count.  A full table derived
    from consecutive gaps is always consistent; expert-filled entries may
    deviate and are examined by :func:`check_consistency`.
    """

    size: int
    entries: dict[tuple[int, int], int]

    def __post_init__(self):
        for (i, j), e in self.entries.items():
            if not (0 <= i < j < self.size):
                raise JudgementError(f"entry ({i}, {j}) outside the upper triangle")
            if e < 0:
                raise JudgementError("card counts must be non-negative")

    def get(self, i: int, j: int):
        return self.entries.get((i, j))

    def consecutive_gaps(self) -> tuple[int, ...]:
        gaps = []
        for i in range(self.size - 1):
            e = self.entries.get((i, i + 1))
            if e is None:
                raise JudgementError(f"missing consecutive entry ({i}, {i + 1})")
            gaps.append(e)
        return tuple(gaps)


def fill_pairwise_table(cards: CardJudgements) -> PairwiseTable:
    """Complete the upper triangle from consecutive gaps by transitivity.

    Non-consecutive entries follow e(i, j) = e(i, k) + e(k, j) + 1: joining
    two stretches spends one extra card for the level standing between them.
    """
    gaps = cards.gaps
    n = len(gaps) + 1
    entries: dict[tuple[int, int], int] = {}
    for i in range(n - 1):
        entries[(i, i + 1)] = int(gaps[i])
        for j in range(i + 2, n):
            entries[(i, j)] = entries[(i, j - 1)] + int(gaps[j - 1]) + 1
    return PairwiseTable(size=n, entries=entries)


@dataclass(frozen=True)
class ConsistencyViolation:
    i: int
    j: int
    expected: int
    actual: int

    @property
    def residual(self) -> int:
        return self.actual - self.expected

    def to_dict(self) -> dict:
        return {
            "pair": [self.i, self.j],
            "expected": self.expected,
            "actual": self.actual,
            "residual": self.residual,
        }


def check_consistency(table: PairwiseTable) -> list[ConsistencyViolation]:
    """Report entries that break the transitive chain identity.

    For each non-consecutive entry present, the value implied by the chain
    of consecutive gaps is sum(gaps) + (span - 1); a deviation is reported
    with its residual.  An empty list means the table is consistent.
    """
    gaps = table.consecutive_gaps()
    violations = []
    for (i, j), actual in sorted(table.entries.items()):
        if j - i < 2:
            continue
        expected = sum(gaps[i:j]) + (j - i - 1)
        if actual != expected:
            violations.append(
                ConsistencyViolation(i=i, j=j, expected=expected, actual=actual)
            )
    return violations


@dataclass(frozen=True)
class SwingRanking:
    """Ranking of swing situations with ties, gap cards, and a z-ratio.

    tiers: criterion indices grouped from highest-impact swing to lowest.
    tier_gaps: blank cards between consecutive tiers.
    z_ratio: elicited ratio between the top and bottom non-normalised
        weights; must exceed 1 when there is more than one tier.
    """

    tiers: tuple[tuple[int, ...], ...]
    tier_gaps: tuple[int, ...]
    z_ratio: float

    def __post_init__(self):
        flat = [c for tier in self.tiers for c in tier]
        if not flat:
            raise JudgementError("ranking must place at least one criterion")
        if len(set(flat)) != len(flat):
            raise JudgementError("each criterion may appear in exactly one tier")
        if any(len(tier) == 0 for tier in self.tiers):
            raise JudgementError("empty tier")
        if len(self.tier_gaps) != len(self.tiers) - 1:
            raise JudgementError("need one gap per consecutive tier pair")
        if any(g < 0 for g in self.tier_gaps):
            raise JudgementError("tier gaps must be non-negative")
        if len(self.tiers) > 1 and not self.z_ratio > 1:
            raise JudgementError("z-ratio must exceed 1 when tiers differ")

    @property
    def criteria(self) -> tuple[int, ...]:
        return tuple(sorted(c for tier in self.tiers for c in tier))


def build_weights(ranking: SwingRanking) -> np.ndarray:
    """Normalised criterion weights from a swing ranking.

    The bottom tier takes raw weight 1 and the top tier the elicited z.
    One unit is worth (z - 1) / h with h counting every gap as cards + 1;
    an intermediate tier sits above the bottom by the cards accumulated
    below it.  Raw weights are normalised to sum one and mapped back to
    criterion order; a single tier yields equal weights regardless of z.
    """
    tiers = ranking.tiers
    n = len(ranking.criteria)
    raw_by_tier = np.ones(len(tiers))
    if len(tiers) > 1:
        h = sum(g + 1 for g in ranking.tier_gaps)
        alpha = (ranking.z_ratio - 1.0) / h
        raw_by_tier[0] = ranking.z_ratio
        for i in range(1, len(tiers) - 1):
            cards_below = sum(ranking.tier_gaps[i:])
            raw_by_tier[i] = 1.0 + alpha * cards_below
    raw = np.empty(n)
    for tier, value in zip(tiers, raw_by_tier):
        for c in tier:
            raw[list(ranking.criteria).index(c)] = value
    return raw / raw.sum()


# ---------------------------------------------------------------------------
# JSON wire formats (consumed by the CLI and the elicitation UI)
# ---------------------------------------------------------------------------

def scale_judgements_from_dict(doc: dict) -> tuple[LevelSequence, CardJudgements]:
    """Parse {levels, anchors: {lo: {index, value}, hi: {...}}, gaps}.

    An empty gaps list is shorthand for "no cards placed yet" and expands
    to zero cards in every gap (the equally spaced preview).
    """
    try:
        levels = tuple(float(x) for x in doc["levels"])
        lo = Anchor(int(doc["anchors"]["lo"]["index"]), float(doc["anchors"]["lo"]["value"]))
        hi = Anchor(int(doc["anchors"]["hi"]["index"]), float(doc["anchors"]["hi"]["value"]))
        gaps = tuple(int(g) for g in doc["gaps"])
    except (KeyError, TypeError, ValueError) as exc:
        raise JudgementError(f"malformed scale judgements: {exc}") from exc
    if not gaps and len(levels) >= 2:
        gaps = (0,) * (len(levels) - 1)
    return LevelSequence(levels, lo, hi), CardJudgements(gaps)


def scale_judgements_to_dict(seq: LevelSequence, cards: CardJudgements) -> dict:
    return {
        "levels": list(seq.levels),
        "anchors": {
            "lo": {"index": seq.anchor_lo.index, "value": seq.anchor_lo.value},
            "hi": {"index": seq.anchor_hi.index, "value": seq.anchor_hi.value},
        },
        "gaps": list(cards.gaps),
    }


def ranking_from_dict(doc: dict) -> SwingRanking:
    """Parse {tiers: [[...]], tier_gaps: [...], z: ...}."""
    try:
        tiers = tuple(tuple(int(c) for c in tier) for tier in doc["tiers"])
        gaps = tuple(int(g) for g in doc.get("tier_gaps", []))
        z = float(doc.get("z", 1.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise JudgementError(f"malformed swing ranking: {exc}") from exc
    return SwingRanking(tiers=tiers, tier_gaps=gaps, z_ratio=z)


def ranking_to_dict(ranking: SwingRanking) -> dict:
    return {
        "tiers": [list(t) for t in ranking.tiers],
        "tier_gaps": list(ranking.tier_gaps),
        "z": ranking.z_ratio,
    }


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
