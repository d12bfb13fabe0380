"""Piecewise-linear value functions with saturation caps.

A value function maps a criterion performance level to impact points on a
0..180 scale.  It is stored as breakpoints plus a cap: below the cap onset
the function interpolates linearly between breakpoints, at or beyond the
onset it is constant at the cap.  The five default functions of the
Portuguese model are built here, each one reproducible from its deck-of-
cards judgements (see :mod:`paci.deck`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

CAP_DEFAULT = 180.0

CRITERIA = ("incid", "trans", "letha", "wards", "icu")


@dataclass(frozen=True)
class PiecewiseLinearValueFunction:
    """Non-decreasing piecewise-linear function capped at a saturation value.

    breakpoints: ordered (x, v) pairs with strictly increasing x and
        non-decreasing v.  When the function saturates, the last breakpoint
        sits exactly at (cap_onset, cap).
    cap: saturation value; v(x) == cap for all x >= cap_onset.
    cap_onset: smallest x with v == cap (math.inf when never reached).
    domain_kind: "continuous" or "integer"; integer-stepped criteria are
        evaluated with the same linear pieces (identical on integers).
    """

    breakpoints: tuple[tuple[float, float], ...]
    cap: float = CAP_DEFAULT
    cap_onset: float = math.inf
    domain_kind: str = "continuous"
    name: str = ""

    def __post_init__(self):
        xs = [p[0] for p in self.breakpoints]
        vs = [p[1] for p in self.breakpoints]
        if len(xs) < 2:
            raise ConfigError("value function needs at least two breakpoints")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ConfigError("breakpoint x values must be strictly increasing")
        if any(b < a for a, b in zip(vs, vs[1:])):
            raise ConfigError("breakpoint values must be non-decreasing")
        if self.domain_kind not in ("continuous", "integer"):
            raise ConfigError(f"unknown domain kind {self.domain_kind!r}")
        if any(v > self.cap + 1e-9 for v in vs):
            raise ConfigError("breakpoint values must not exceed the cap")
        if math.isfinite(self.cap_onset):
            if not math.isclose(xs[-1], self.cap_onset, rel_tol=0, abs_tol=1e-9):
                raise ConfigError("cap onset must coincide with the last breakpoint")
            if not math.isclose(vs[-1], self.cap, rel_tol=0, abs_tol=1e-9):
                raise ConfigError("value at the cap onset must equal the cap")

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.breakpoints], dtype=np.float64)

    @property
    def vs(self) -> np.ndarray:
        return np.array([p[1] for p in self.breakpoints], dtype=np.float64)

    def __call__(self, x):
        return evaluate(self, x)

    def to_dict(self) -> dict:
        return {
            "breakpoints": [[float(x), float(v)] for x, v in self.breakpoints],
            "cap": self.cap,
            "cap_onset": None if math.isinf(self.cap_onset) else self.cap_onset,
            "domain": self.domain_kind,
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PiecewiseLinearValueFunction":
        try:
            bps = tuple((float(x), float(v)) for x, v in doc["breakpoints"])
            onset = doc.get("cap_onset")
            return cls(
                breakpoints=bps,
                cap=float(doc.get("cap", CAP_DEFAULT)),
                cap_onset=math.inf if onset is None else float(onset),
                domain_kind=doc.get("domain", "continuous"),
                name=doc.get("name", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed value-function document: {exc}") from exc


def evaluate(f: PiecewiseLinearValueFunction, x):
    """Value of ``f`` at ``x`` (scalar or array); negative inputs rejected.

    Exact breakpoint abscissas return the stored breakpoint value exactly,
    so published anchor levels reproduce their anchor points bit-for-bit.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("performance levels must be non-negative")
    xs, vs = f.xs, f.vs
    out = np.interp(arr, xs, vs, left=vs[0], right=vs[-1])
    # pin exact nodes (np.interp may round through the slope formula)
    pos = np.searchsorted(xs, arr)
    hit = (pos < len(xs)) & (xs[np.minimum(pos, len(xs) - 1)] == arr)
    out = np.where(hit, vs[np.minimum(pos, len(xs) - 1)], out)
    out = np.where(arr >= f.cap_onset, f.cap, out)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def _capped_segment(x0, v0, x1, v1, cap):
    """Truncate the segment (x0,v0)->(x1,v1) where it crosses the cap."""
    onset = x0 + (cap - v0) * (x1 - x0) / (v1 - v0)
    return onset


def from_breakpoints(points, cap=CAP_DEFAULT, domain_kind="continuous", name=""):
    """Build a function from raw (x, v) pairs, solving the cap crossing.

    Points past the crossing are dropped and replaced by (onset, cap); if no
    point reaches the cap the function never saturates (onset = inf).
    """
    pts = [(float(x), float(v)) for x, v in points]
    kept = []
    onset = math.inf
    for i, (x, v) in enumerate(pts):
        if v < cap:
            kept.append((x, v))
        else:
            if v == cap:
                onset = x
            else:
                px, pv = kept[-1]
                onset = _capped_segment(px, pv, x, v, cap)
            kept.append((onset, cap))
            break
    return PiecewiseLinearValueFunction(
        breakpoints=tuple(kept), cap=cap, cap_onset=onset,
        domain_kind=domain_kind, name=name,
    )


def from_dcm(scale, cap, seq, domain_kind="continuous", name=""):
    """Bridge an elicited interval scale to an evaluable value function.

    ``scale`` is a :class:`paci.deck.IntervalScaleResult`; ``seq`` the
    :class:`paci.deck.LevelSequence` it was built from.  The cap onset is
    solved by linear interpolation on the first segment crossing the cap.
    """
    if cap <= min(scale.values):
        raise ConfigError("cap at or below the scale minimum leaves no function")
    pairs = list(zip(seq.levels, scale.values))
    return from_breakpoints(pairs, cap=cap, domain_kind=domain_kind, name=name)


@dataclass(frozen=True)
class QuadraticApproximation:
    """Quadratic stand-in scale*(x/anchor_x)^2 on [0, anchor_x], cap beyond."""

    scale: float
    anchor_x: float
    cap: float = CAP_DEFAULT

    def __call__(self, x):
        arr = np.asarray(x, dtype=np.float64)
        out = np.where(arr <= self.anchor_x, self.scale * (arr / self.anchor_x) ** 2, self.cap)
        if np.isscalar(x) or arr.ndim == 0:
            return float(out)
        return out

    @property
    def cap_onset(self) -> float:
        if self.scale >= self.cap:
            return self.anchor_x * math.sqrt(self.cap / self.scale)
        return self.anchor_x


def _simpson(fn, a, b, panels):
    """Composite Simpson integral of fn over [a, b] with an even panel count.

    The end evaluation points are nudged inwards by a relative 1e-12 so a
    jump sitting exactly on a segment boundary is integrated with its
    one-sided limits; the induced error is far below the 1e-6 target.
    """
    if b <= a:
        return 0.0
    n = max(2, panels + (panels % 2))
    xs = np.linspace(a, b, n + 1)
    nudge = (b - a) * 1e-12
    xs[0] += nudge
    xs[-1] -= nudge
    ys = fn(xs)
    h = (b - a) / n
    return h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum() + 2.0 * ys[2:-1:2].sum())


def relative_l2_distance(f: PiecewiseLinearValueFunction, q, panels: int = 10_000) -> float:
    """Relative L2 distance sqrt(int (f-q)^2) / sqrt(int f^2).

    Integrals run from 0 to the point where both functions are capped and
    equal (beyond it the difference vanishes and the ratio is well defined).
    The domain is split at every kink of either function and integrated with
    composite Simpson panels, exact to quadrature error < 1e-6 relative.
    """
    if getattr(q, "cap", f.cap) != f.cap:
        raise ConfigError("functions must share the same cap")
    f_onset = f.cap_onset
    q_onset = getattr(q, "cap_onset", f_onset)
    if not (math.isfinite(f_onset) and math.isfinite(float(q_onset))):
        raise ConfigError("both functions must saturate for the distance to exist")
    hi = max(float(f_onset), float(q_onset))
    knots = {0.0, hi}
    knots.update(float(x) for x in f.xs if 0.0 < x < hi)
    if isinstance(q, QuadraticApproximation):
        for x in (q.anchor_x, q.cap_onset):
            if 0.0 < x < hi:
                knots.add(float(x))
    else:
        knots.update(float(x) for x in getattr(q, "xs", ()) if 0.0 < x < hi)
    pts = sorted(knots)
    total = pts[-1] - pts[0]
    num = 0.0
    den = 0.0
    for a, b in zip(pts, pts[1:]):
        seg_panels = max(8, int(round(panels * (b - a) / total)))
        num += _simpson(lambda t: (evaluate(f, t) - q(t)) ** 2, a, b, seg_panels)
        den += _simpson(lambda t: evaluate(f, t) ** 2, a, b, seg_panels)
    if den == 0.0:
        return 0.0
    return math.sqrt(num) / math.sqrt(den)


def _default_v1():
    # incidence: unit 4 over 225-wide levels, saturating between 1350 and 1575
    return from_breakpoints(
        [(0, 0), (225, 4), (450, 16), (675, 36), (900, 64),
         (1125, 100), (1350, 144), (1575, 200)],
        name="incid",
    )


def _default_v2():
    # transmission: same unit pattern over 0.02-wide ratio levels above 0.92
    return from_breakpoints(
        [(0, 0), (0.92, 4), (0.94, 16), (0.96, 36), (0.98, 64),
         (1.00, 100), (1.02, 144), (1.04, 196)],
        name="trans",
    )


def _default_v3():
    # lethality: linear at 200/7.2 points per percent; the interior node keeps
    # the 100-point calibration level exact under interpolation
    return from_breakpoints([(0, 0), (3.6, 100), (6.48, 180), (7.2, 200)], name="letha")


def _default_v4():
    return from_breakpoints(
        [(0, 0), (500, 4), (1000, 16), (1500, 36), (2000, 64),
         (2500, 100), (3000, 144), (3500, 196)],
        domain_kind="integer", name="wards",
    )


def _default_v5():
    return from_breakpoints(
        [(0, 0), (40, 4), (80, 16), (120, 36), (160, 64),
         (200, 100), (240, 144), (280, 196)],
        domain_kind="integer", name="icu",
    )


def default_functions() -> tuple[PiecewiseLinearValueFunction, ...]:
    """The five default value functions in criterion order."""
    return (_default_v1(), _default_v2(), _default_v3(), _default_v4(), _default_v5())
