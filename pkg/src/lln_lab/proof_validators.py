"""Empirical validation of the truncation / weighted-series / transfer chain.

These validators exercise, on simulated heavy-tailed paths and on synthetic
deterministic inputs, the machinery that carries the rare-source half of the
convergence argument: capping the fractional powers at a polynomial ceiling,
summability of the capped weighted series, the deterministic ceiling
inequality, and the transfer from a convergent weighted series to vanishing
normalized partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .generators import YModel, sample_y_block
from .schedule import MixSchedule
from .seeds import SeedStream


def default_checkpoints(horizon: int, first: int = 10) -> tuple:
    """Log-spaced checkpoints: powers of ten and half-decades up to horizon."""
    if horizon < first:
        raise ValidationError("horizon too small for the checkpoint grid")
    pts = []
    k = 0
    while True:
        value = int(round(10.0 ** (k / 2.0)))
        k += 1
        if value < first:
            continue
        if value >= horizon:
            break
        pts.append(value)
    pts.append(horizon)
    return tuple(dict.fromkeys(pts))


def _ratio(numer: float, denom: float) -> float:
    if denom > 0.0:
        return numer / denom
    return math.inf if numer > 0.0 else 1.0


def decade_decay_factors(checkpoints, values) -> np.ndarray:
    """Per-decade decay factors value(n)/value(10n) along the checkpoints."""
    cps = np.asarray(checkpoints, float)
    vals = np.asarray(values, float)
    out = []
    for i, n in enumerate(cps):
        target = 10.0 * n
        j = int(np.argmin(np.abs(np.log(cps / target))))
        if j <= i or not (0.5 * target <= cps[j] <= 2.0 * target):
            continue
        out.append(_ratio(vals[i], vals[j]))
    return np.asarray(out)


def last_two_decade_factors(checkpoints, values) -> tuple:
    """Decay factors over the final two decades of the checkpoint grid.

    Returns (earlier, later): value(N/100)/value(N/10) and value(N/10)/value(N)
    measured at the checkpoints nearest those targets.  Factors above 1 mean
    decay, below 1 growth; a ratio against an exact zero counts as decayed.
    """
    cps = np.asarray(checkpoints, float)
    vals = np.asarray(values, float)
    end = cps[-1]
    j1 = int(np.argmin(np.abs(np.log(cps / (end / 10.0)))))
    j2 = int(np.argmin(np.abs(np.log(cps / (end / 100.0)))))
    return _ratio(vals[j2], vals[j1]), _ratio(vals[j1], vals[-1])


def three_way_verdict(checkpoints, values, decay_threshold: float = 2.0) -> str:
    """converging / diverging / indeterminate from the last two decades.

    Converging needs decay by the threshold factor in each of the last two
    decades; diverging needs total growth by the threshold factor across
    them; everything else is indeterminate.
    """
    vals = np.asarray(values, float)
    if vals[-1] == 0.0:
        return "converging"
    earlier, later = last_two_decade_factors(checkpoints, vals)
    if earlier >= decay_threshold and later >= decay_threshold:
        return "converging"
    total_growth = _ratio(1.0, earlier * later) if earlier * later > 0 else math.inf
    if total_growth >= decay_threshold:
        return "diverging"
    return "indeterminate"


# ---------------------------------------------------------------------------
# truncated series


@dataclass
class TruncationDiagnostics:
    """Partial sums of the capped and raw weighted power series.

    Terms are formed as min(V_n**p / n**(p+eps), 1), the exact shape the
    capping construction produces, so every truncated term is <= 1 and the
    count of saturated indices is the count of raw terms above 1.
    """

    power: float
    growth_exponent: float
    checkpoints: tuple
    truncated_partial_sums: np.ndarray
    raw_partial_sums: np.ndarray
    saturation_count: int


def truncated_series(
    y_path: np.ndarray,
    moment_order: float,
    power: float | None = None,
    growth_exponent: float = 0.0,
    checkpoints=None,
) -> TruncationDiagnostics:
    """Evaluate the capped weighted series along one y-path.

    ``power`` defaults to 1/moment_order, the exponent the argument finally
    chooses; other powers > 1 are accepted for exploration.
    """
    a = float(moment_order)
    if not 0.0 < a < 1.0:
        raise ValidationError("moment_order must lie strictly inside (0, 1)")
    p = 1.0 / a if power is None else float(power)
    if p <= 1.0:
        raise ValidationError("power must exceed 1")
    eps = float(growth_exponent)
    if eps < 0.0:
        raise ValidationError("growth_exponent must be nonnegative")

    y = np.asarray(y_path, float)
    n = np.arange(1, y.size + 1, dtype=np.float64)
    if checkpoints is None:
        checkpoints = default_checkpoints(y.size)
    cps = tuple(int(c) for c in checkpoints)
    if any(c < 1 or c > y.size for c in cps):
        raise ValidationError("checkpoints must lie within the path")

    raw_terms = np.abs(y) ** (a * p) / n ** (p + eps)
    trunc_terms = np.minimum(raw_terms, 1.0)
    raw_cum = np.cumsum(raw_terms)
    trunc_cum = np.cumsum(trunc_terms)
    idx = np.asarray(cps, dtype=np.int64) - 1
    return TruncationDiagnostics(
        p,
        eps,
        cps,
        trunc_cum[idx],
        raw_cum[idx],
        int(np.count_nonzero(raw_terms > 1.0)),
    )


# ---------------------------------------------------------------------------
# deterministic ceiling inequality


@dataclass
class CeilingBoundResult:
    power: float
    growth_exponent: float
    n_max: int
    max_ratio: float
    argmax: int
    bound: float

    @property
    def holds(self) -> bool:
        return self.max_ratio <= self.bound


def ceiling_bound_check(power: float, growth_exponent: float, n_max: int) -> CeilingBoundResult:
    """Exhaustively evaluate ceil(n**(1+eps/p))**p / n**(p+eps) over 1..n_max.

    The quantity is bounded by 2**(p+eps) for every n >= 1; the maximum sits
    at small n.  Float powers that land within 1e-9 of an integer are snapped
    before the ceiling so exact lattice hits do not round up spuriously.
    """
    p, eps = float(power), float(growth_exponent)
    if p <= 1.0 or eps < 0.0 or n_max < 1:
        raise ValidationError("need power > 1, growth_exponent >= 0, n_max >= 1")
    best = -math.inf
    arg = 1
    for lo in range(1, n_max + 1, 2**20):
        hi = min(lo + 2**20 - 1, n_max)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        v = n ** (1.0 + eps / p)
        r = np.rint(v)
        v = np.where(np.abs(v - r) <= 1e-9 * np.maximum(1.0, v), r, np.ceil(v))
        ratio = v**p / n ** (p + eps)
        i = int(np.argmax(ratio))
        if ratio[i] > best:
            best = float(ratio[i])
            arg = lo + i
    return CeilingBoundResult(p, eps, n_max, best, arg, 2.0 ** (p + eps))


# ---------------------------------------------------------------------------
# weighted series -> normalized partial sums


@dataclass
class TransferDiagnostics:
    """Weighted-series partial sums and normalized partial sums at checkpoints."""

    weight_exponent: float
    checkpoints: tuple
    weighted_partial_sums: np.ndarray
    normalized_partial_sums: np.ndarray
    series_stabilized: bool
    transfer_vanishing: bool


def kronecker_transfer(terms, weight_exponent: float, checkpoints=None) -> TransferDiagnostics:
    """Partial sums of sum_k terms_k / k**q and of n**-q * sum_{k<=n} terms_k.

    For any summable weighted series with the polynomial weights growing to
    infinity, the normalized partial sums must vanish; the diagnostics report
    whether the weighted series has stabilized over the last decade (tail
    increment below 1% of the total) and whether the normalized sums decay.
    """
    q = float(weight_exponent)
    if q <= 0.0:
        raise ValidationError("weight_exponent must be positive")
    terms = np.asarray(terms, float)
    n = np.arange(1, terms.size + 1, dtype=np.float64)
    if checkpoints is None:
        checkpoints = default_checkpoints(terms.size)
    cps = tuple(int(c) for c in checkpoints)
    idx = np.asarray(cps, dtype=np.int64) - 1

    weighted = np.cumsum(np.abs(terms) / n**q)[idx]
    normalized = (np.cumsum(terms) / n**q)[idx]

    total = float(weighted[-1])
    tail_start = float(np.interp(cps[-1] / 10.0, cps, weighted))
    series_ok = total == 0.0 or (total - tail_start) <= 0.01 * total
    transfer_ok = three_way_verdict(cps, np.abs(normalized)) == "converging"
    return TransferDiagnostics(q, cps, weighted, normalized, series_ok, transfer_ok)


def weighted_sum_transfer(
    y_path: np.ndarray,
    moment_order: float,
    growth_exponent: float = 0.0,
    checkpoints=None,
) -> TransferDiagnostics:
    """Transfer diagnostics with weights n**(1/moment_order + growth_exponent)."""
    a = float(moment_order)
    if not 0.0 < a < 1.0:
        raise ValidationError("moment_order must lie strictly inside (0, 1)")
    q = 1.0 / a + float(growth_exponent)
    return kronecker_transfer(np.asarray(y_path, float), q, checkpoints)


# ---------------------------------------------------------------------------
# end to end: the rare-part mean along a schedule


@dataclass
class RareMeanReport:
    """Across-replica quantiles of |(1/n) sum_{k <= ones(n)} Y_k|."""

    checkpoints: tuple
    ones_at_checkpoints: np.ndarray
    quantiles: dict
    decay_factors: np.ndarray
    verdict: str
    decay_threshold: float
    replicas: int


def rare_part_mean_convergence(
    y_model: YModel,
    schedule: MixSchedule,
    horizon: int | None = None,
    replicas: int = 50,
    master_seed: int = 0,
    checkpoints=None,
    decay_threshold: float = 2.0,
) -> RareMeanReport:
    """Quantile evidence that the rare-part partial means vanish.

    The statistic uses only the count of 1-positions, so the y-source is
    sampled once per replica up to that count.  The verdict is "converging"
    when the 90% quantile decays by at least ``decay_threshold`` per decade
    over the last two decades, "diverging" when it grows by that factor, and
    "indeterminate" otherwise.
    """
    n_max = schedule.horizon if horizon is None else int(horizon)
    if n_max > schedule.horizon:
        raise ValidationError("horizon exceeds the schedule")
    if checkpoints is None:
        checkpoints = default_checkpoints(n_max)
    cps = np.asarray(checkpoints, dtype=np.int64)
    ones_at = schedule.kappa(cps).astype(np.int64)
    need = int(ones_at[-1])

    stats = np.zeros((replicas, cps.size))
    for r in range(replicas):
        if need > 0:
            y = sample_y_block(y_model, 1, need, SeedStream(master_seed, r, "y"))
            sums = np.concatenate([[0.0], np.cumsum(y)])
        else:
            sums = np.zeros(1)
        stats[r] = sums[ones_at] / cps.astype(float)

    abs_stats = np.abs(stats)
    quantiles = {
        q: np.quantile(abs_stats, q, axis=0) for q in (0.5, 0.9, 0.99)
    }
    decay = decade_decay_factors(cps, quantiles[0.9])
    verdict = three_way_verdict(cps, quantiles[0.9], decay_threshold)
    return RareMeanReport(
        tuple(int(c) for c in cps), ones_at, quantiles, decay, verdict,
        decay_threshold, replicas,
    )
