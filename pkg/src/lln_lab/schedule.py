"""Deterministic 0/1 mixing schedules and rare-index statistics.

A schedule decides, for every position n up to a horizon, whether the mixed
sequence takes its next value from the x-source (0) or the y-source (1).
Schedules are materialized as sorted arrays of 1-positions with binary-search
count lookup, so memory is proportional to the number of ones, not the
horizon; the two degenerate rules are handled symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

RULE_KINDS = ("power", "explicit", "all_ones", "all_zeros")


@dataclass(frozen=True)
class ScheduleRule:
    """How the 1-positions are generated.

    ``power`` places the m-th one at ceil((m / density)**(1/exponent)) so the
    count of ones up to n grows like density * n**exponent; collisions skip
    forward to the next free slot.  ``explicit`` takes a fixed strictly
    increasing position list.
    """

    kind: str = "power"
    exponent: float = 0.5
    density: float = 1.0
    positions: tuple = ()

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValidationError(f"schedule rule must be one of {RULE_KINDS}")
        if self.kind == "power":
            if not 0.0 < self.exponent <= 1.0:
                raise ValidationError("power rule needs exponent in (0, 1]")
            if self.density <= 0.0:
                raise ValidationError("power rule needs positive density")
        if self.kind == "explicit":
            pos = self.positions
            if any(p < 1 for p in pos):
                raise ValidationError("explicit positions must be >= 1")
            if any(b <= a for a, b in zip(pos, pos[1:])):
                raise ValidationError("explicit positions must be strictly increasing")


@dataclass
class MixSchedule:
    """A fixed 0/1 sequence over 1..horizon with its prefix counters."""

    rule: ScheduleRule
    horizon: int
    _positions: np.ndarray | None = field(default=None, repr=False)

    def kappa(self, n):
        """Count of 1-positions among 1..n (vectorized)."""
        n_arr = np.asarray(n)
        if self.rule.kind == "all_ones":
            out = n_arr
        elif self.rule.kind == "all_zeros":
            out = np.zeros_like(n_arr)
        else:
            out = np.searchsorted(self._positions, n_arr, side="right")
        return out if n_arr.shape else int(out)

    def ones_between(self, first: int, last: int) -> np.ndarray:
        """All 1-positions inside [first, last]."""
        if self.rule.kind == "all_ones":
            return np.arange(first, last + 1, dtype=np.int64)
        if self.rule.kind == "all_zeros":
            return np.empty(0, dtype=np.int64)
        lo = np.searchsorted(self._positions, first, side="left")
        hi = np.searchsorted(self._positions, last, side="right")
        return self._positions[lo:hi]

    def alpha_block(self, first: int, last: int) -> np.ndarray:
        """Boolean 0/1 values for positions first..last."""
        out = np.zeros(last - first + 1, dtype=bool)
        out[self.ones_between(first, last) - first] = True
        return out

    @property
    def ones_total(self) -> int:
        return self.kappa(self.horizon)


def _snap_near_integers(values: np.ndarray) -> np.ndarray:
    rounded = np.rint(values)
    near = np.abs(values - rounded) <= 1e-9 * np.maximum(1.0, np.abs(values))
    return np.where(near, rounded, values)


def build_schedule(rule: ScheduleRule, horizon: int) -> MixSchedule:
    """Materialize a schedule over 1..horizon."""
    if horizon < 1:
        raise ValidationError("horizon must be >= 1")

    if rule.kind in ("all_ones", "all_zeros"):
        return MixSchedule(rule, horizon)

    if rule.kind == "explicit":
        pos = np.asarray(rule.positions, dtype=np.int64)
        if pos.size and pos[-1] > horizon:
            raise ValidationError("explicit positions exceed the horizon")
        return MixSchedule(rule, horizon, pos)

    # power rule: generous upper bound on how many ones can fit
    count = int(np.ceil(rule.density * float(horizon) ** rule.exponent)) + 2
    ms = np.arange(1, count + 1, dtype=np.float64)
    raw = _snap_near_integers((ms / rule.density) ** (1.0 / rule.exponent))
    pos = np.ceil(raw).astype(np.int64)
    # resolve collisions: m-th one lands at max(raw_m, previous + 1)
    m_idx = np.arange(1, count + 1, dtype=np.int64)
    pos = np.maximum.accumulate(pos - m_idx) + m_idx
    pos = pos[pos <= horizon]
    return MixSchedule(rule, horizon, pos)


def kappa_psi(schedule: MixSchedule, n: int) -> tuple:
    """(ones count, zeros count) among positions 1..n."""
    if not 1 <= n <= schedule.horizon:
        raise ValidationError(f"n must lie in 1..{schedule.horizon}")
    k = int(schedule.kappa(n))
    return k, n - k


def assemble_z(x_block: np.ndarray, y_block: np.ndarray, schedule: MixSchedule) -> np.ndarray:
    """Interleave the two sources along the schedule over the full horizon.

    Position n takes the next unused y-value when the schedule reads 1 there
    and the next unused x-value otherwise; each source is consumed in order.
    """
    n = schedule.horizon
    ones = schedule.ones_between(1, n)
    n_ones = ones.size
    n_zeros = n - n_ones
    if len(y_block) < n_ones:
        raise ValidationError(f"y source too short: need {n_ones}, got {len(y_block)}")
    if len(x_block) < n_zeros:
        raise ValidationError(f"x source too short: need {n_zeros}, got {len(x_block)}")
    z = np.empty(n, dtype=float)
    mask = np.zeros(n, dtype=bool)
    mask[ones - 1] = True
    z[mask] = np.asarray(y_block, float)[:n_ones]
    z[~mask] = np.asarray(x_block, float)[:n_zeros]
    return z


@dataclass(frozen=True)
class RarityVerdict:
    """Finite-horizon evidence for the rare-index growth condition.

    ``rho`` is the admissible growth order moment_order/(1 + moment_order *
    growth_exponent); ``sup_statistic`` the max of ones-count/n**rho over the
    horizon; ``trend_slope`` the log-log growth rate of the ones count over
    the last decade.  The verdict flags only clear power-law violations:
    slope above rho + slope_margin.
    """

    rho: float
    sup_statistic: float
    trend_slope: float
    verdict: str
    horizon: int
    slope_margin: float = 0.05


def rarity_exponent(moment_order: float, growth_exponent: float) -> float:
    return moment_order / (1.0 + moment_order * growth_exponent)


def rarity_statistic(
    schedule: MixSchedule,
    moment_order: float,
    growth_exponent: float,
    slope_margin: float = 0.05,
) -> RarityVerdict:
    """Evaluate the rare-index condition on a materialized schedule."""
    if not 0.0 < moment_order < 1.0:
        raise ValidationError("moment_order must lie strictly inside (0, 1)")
    if growth_exponent < 0.0:
        raise ValidationError("growth_exponent must be nonnegative")
    rho = rarity_exponent(moment_order, growth_exponent)
    n_max = schedule.horizon

    if schedule.rule.kind == "all_zeros" or schedule.ones_total == 0:
        return RarityVerdict(rho, 0.0, 0.0, "satisfied", n_max, slope_margin)

    if schedule.rule.kind == "all_ones":
        sup = float(n_max) ** (1.0 - rho)
        slope = 1.0
    else:
        pos = schedule.ones_between(1, n_max).astype(np.float64)
        counts = np.arange(1, pos.size + 1, dtype=np.float64)
        # the ratio only increases at 1-positions, so the sup lives there
        sup = float(np.max(counts / pos**rho))
        slope = _loglog_trend(schedule, n_max)

    verdict = "satisfied" if slope <= rho + slope_margin else "violated"
    return RarityVerdict(rho, sup, slope, verdict, n_max, slope_margin)


def _loglog_trend(schedule: MixSchedule, n_max: int) -> float:
    lo = max(1, n_max // 10)
    grid = np.unique(np.geomspace(lo, n_max, 16).astype(np.int64))
    counts = schedule.kappa(grid).astype(np.float64)
    keep = counts >= 1.0
    if keep.sum() < 2 or np.ptp(np.log(grid[keep])) == 0.0:
        return 0.0
    coef = np.polyfit(np.log(grid[keep].astype(float)), np.log(counts[keep]), 1)
    return float(coef[0])
