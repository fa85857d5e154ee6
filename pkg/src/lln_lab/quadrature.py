"""Tail integrals on log-spaced grids with explicit error accounting.

All integrands here are nonincreasing [0,1]-valued tail functions.  That
shape gives three things: a cheap exact bound for the strip near zero, a
Richardson bracket for the trapezoid error on the log grid, and a power-law
extrapolation for the mass beyond the grid when no closed-form remainder is
available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LEFT_EDGE = 1e-6


@dataclass(frozen=True)
class TailIntegral:
    """Result of integrating a tail function over [0, inf)."""

    estimate: float
    error_bound: float
    diverged: bool  # the tail carries infinite mass
    extrapolation_ok: bool  # grid end looked like a clean power law
    x_max: float
    tail_slope: float  # fitted decay exponent at the grid end (0 if unused)


def fine_log_grid(x_max: float, n_points: int = 4097, breakpoints=()) -> np.ndarray:
    """Log grid on [LEFT_EDGE, x_max] with log-midpoints interleaved.

    Every odd-indexed node is the log-midpoint of its neighbours, so
    ``grid[0::2]`` is the coarse grid and the pair supports a Richardson
    error bracket.  Breakpoints b are inserted (with b*(1-1e-12) alongside,
    bracketing jump discontinuities) into the coarse grid first.
    """
    coarse = np.geomspace(LEFT_EDGE, x_max, n_points)
    extra = []
    for b in breakpoints:
        if LEFT_EDGE < b < x_max:
            extra.extend((b * (1.0 - 1e-12), b))
    if extra:
        coarse = np.unique(np.concatenate([coarse, np.asarray(extra, float)]))
    mids = np.sqrt(coarse[:-1] * coarse[1:])
    out = np.empty(coarse.size + mids.size)
    out[0::2] = coarse
    out[1::2] = mids
    return out


def _fit_power_tail(xs: np.ndarray, fs: np.ndarray):
    """Fit f ~ C x**-slope over the last decade of positive values."""
    pos = fs > 0.0
    if pos.sum() < 4 or not pos[-1]:
        return None
    sel = pos & (xs >= xs[-1] / 10.0)
    if sel.sum() < 4:
        sel = pos
    lx, lf = np.log(xs[sel]), np.log(fs[sel])
    slope, intercept = np.polyfit(lx, lf, 1)
    resid = lf - (slope * lx + intercept)
    return -float(slope), float(np.max(np.abs(resid)))


def integrate_tail_values(
    xs: np.ndarray,
    values: np.ndarray,
    value_at_zero: float = 1.0,
    remainder=None,
) -> TailIntegral:
    """Integrate precomputed tail values over [0, inf).

    ``xs`` must come from :func:`fine_log_grid` (midpoints interleaved).
    ``remainder`` optionally supplies the exact integral beyond xs[-1] as
    (value, bound); otherwise that mass is extrapolated from a power-law fit
    at the grid end.
    """
    values = np.clip(np.asarray(values, float), 0.0, 1.0)
    x_max = float(xs[-1])

    i_fine = float(np.trapezoid(values, xs))
    i_coarse = float(np.trapezoid(values[0::2], xs[0::2]))
    estimate = i_fine + (i_fine - i_coarse) / 3.0
    error = abs(i_fine - i_coarse) + 1e-15 * abs(i_fine)

    # strip [0, LEFT_EDGE]: the integrand sits between f(edge) and f(0)
    f_edge = float(values[0])
    estimate += LEFT_EDGE * f_edge
    error += LEFT_EDGE * max(0.0, min(1.0, value_at_zero) - f_edge)

    slope = 0.0
    diverged = False
    extrapolation_ok = True
    if remainder is not None:
        rem_value, rem_bound = remainder
        if math.isinf(rem_value):
            diverged = True
        else:
            estimate += rem_value
            error += rem_bound
    else:
        fit = _fit_power_tail(xs, values)
        if fit is None:
            if values[-1] > 0.0:
                extrapolation_ok = False
                error += values[-1] * x_max  # decay unknown past the grid
        else:
            slope, resid = fit
            extrapolation_ok = resid < 0.1
            if slope <= 1.0 + 1e-9:
                diverged = True
            else:
                rem = float(values[-1]) * x_max / (slope - 1.0)
                estimate += rem
                error += rem * min(1.0, 3.0 * resid) + (0.0 if extrapolation_ok else rem)

    if diverged:
        return TailIntegral(math.inf, math.inf, True, extrapolation_ok, x_max, slope)
    return TailIntegral(estimate, error, False, extrapolation_ok, x_max, slope)


def tail_integral(
    tail_fn,
    x_max: float,
    n_points: int = 4097,
    breakpoints=(),
    remainder=None,
) -> TailIntegral:
    """Integrate a vectorized nonincreasing tail function over [0, inf)."""
    xs = fine_log_grid(x_max, n_points, breakpoints)
    values = np.asarray(tail_fn(xs), float)
    value_at_zero = float(np.asarray(tail_fn(np.array([0.0])), float).reshape(-1)[0])
    return integrate_tail_values(xs, values, value_at_zero, remainder)
