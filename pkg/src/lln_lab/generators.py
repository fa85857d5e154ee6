"""Samplers and closed-form tails for the two source families.

The x-family is pairwise independent with zero mean from a configurable start
index on; the y-family is heavy tailed and may be arbitrarily dependent within
one path.  Every sampler is a pure function of (model, index range,
SeedStream), so models are freely shared across parallel replica workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import CapacityError, ValidationError
from .seeds import SeedStream

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

X_VARIANTS = ("iid", "walsh_rademacher", "congruential", "heteroscedastic")
Y_VARIANTS = ("iid_pareto", "fully_dependent_pareto", "comonotone_scaled", "iid_cauchy")


def _phi(z):
    return _INV_SQRT_2PI * np.exp(-0.5 * np.square(z))


def _upper_normal_tail(z):
    """P(Z > z) for a standard normal Z."""
    return 0.5 * erfc(np.asarray(z, dtype=float) / _SQRT2)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# base distributions (all with exact tails and tail integrals)


@dataclass(frozen=True)
class Normal:
    """Centered normal with standard deviation ``sigma``."""

    sigma: float = 1.0

    kind = "normal"

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValidationError("normal sigma must be positive")

    def ppf(self, u):
        from scipy.special import ndtri

        return self.sigma * ndtri(u)

    def mean(self):
        return 0.0

    def abs_mean(self):
        return self.sigma * math.sqrt(2.0 / math.pi)

    def right_tail(self, t):
        return _upper_normal_tail(np.asarray(t, float) / self.sigma)

    def left_tail(self, t):
        return _upper_normal_tail(-np.asarray(t, float) / self.sigma)

    def abs_tail(self, x):
        return erfc(np.asarray(x, float) / (self.sigma * _SQRT2))

    def abs_tail_remainder(self, x):
        # int_x^inf P(|D|>t) dt = 2*sigma*(phi(z) - z*Q(z)), z = x/sigma
        z = np.asarray(x, float) / self.sigma
        return 2.0 * self.sigma * (_phi(z) - z * _upper_normal_tail(z))

    def expected_abs_excess(self, cutoff, shift=0.0, scale=1.0):
        """E(|shift + scale*D| - cutoff)^+, exact."""
        sigma = self.sigma * np.asarray(scale, float)
        mu = np.asarray(shift, float)
        a = (cutoff - mu) / sigma
        b = (cutoff + mu) / sigma
        g = lambda z: _phi(z) - z * _upper_normal_tail(z)
        return sigma * (g(a) + g(b))

    def support_radius(self):
        return math.inf

    def tail_breakpoints(self):
        return ()

    def quadrature_span(self):
        return 12.0 * self.sigma


@dataclass(frozen=True)
class CenteredUniform:
    """Uniform on [-half_width, half_width]."""

    half_width: float = 1.0

    kind = "centered_uniform"

    def __post_init__(self):
        if self.half_width < 0:
            raise ValidationError("half_width must be nonnegative")

    def ppf(self, u):
        return self.half_width * (2.0 * np.asarray(u, float) - 1.0)

    def mean(self):
        return 0.0

    def abs_mean(self):
        return 0.5 * self.half_width

    def right_tail(self, t):
        t = np.asarray(t, float)
        if self.half_width == 0.0:
            return np.where(t < 0.0, 1.0, 0.0)
        return np.clip((self.half_width - t) / (2.0 * self.half_width), 0.0, 1.0)

    def left_tail(self, t):
        return self.right_tail(-np.asarray(t, float))

    def abs_tail(self, x):
        x = np.asarray(x, float)
        if self.half_width == 0.0:
            return np.zeros_like(x)
        return np.clip(1.0 - x / self.half_width, 0.0, 1.0)

    def abs_tail_remainder(self, x):
        x = np.asarray(x, float)
        if self.half_width == 0.0:
            return np.zeros_like(x)
        gap = np.clip(self.half_width - x, 0.0, None)
        return gap * gap / (2.0 * self.half_width)

    def expected_abs_excess(self, cutoff, shift=0.0, scale=1.0):
        shift = np.asarray(shift, float)
        scale = np.asarray(scale, float)
        lo = shift - scale * self.half_width
        hi = shift + scale * self.half_width
        width = hi - lo

        def anti(t):
            # antiderivative of max(0, |s| - cutoff)
            gap = np.clip(np.abs(t) - cutoff, 0.0, None)
            return np.sign(t) * gap * gap / 2.0

        out = np.where(width > 0, (anti(hi) - anti(lo)) / np.where(width > 0, width, 1.0), 0.0)
        # degenerate point mass at `shift`
        return np.where(width > 0, out, np.clip(np.abs(shift) - cutoff, 0.0, None))

    def support_radius(self):
        return self.half_width

    def tail_breakpoints(self):
        return (self.half_width,) if self.half_width > 0 else ()

    def quadrature_span(self):
        return self.half_width


@dataclass(frozen=True)
class Rademacher:
    """Fair random sign: +1 or -1 with probability 1/2 each."""

    kind = "rademacher"

    def ppf(self, u):
        return np.where(np.asarray(u, float) >= 0.5, 1.0, -1.0)

    def mean(self):
        return 0.0

    def abs_mean(self):
        return 1.0

    def right_tail(self, t):
        t = np.asarray(t, float)
        return np.where(t < -1.0, 1.0, np.where(t < 1.0, 0.5, 0.0))

    def left_tail(self, t):
        t = np.asarray(t, float)
        return np.where(t > 1.0, 1.0, np.where(t > -1.0, 0.5, 0.0))

    def abs_tail(self, x):
        return np.where(np.asarray(x, float) < 1.0, 1.0, 0.0)

    def abs_tail_remainder(self, x):
        return np.clip(1.0 - np.asarray(x, float), 0.0, None)

    def expected_abs_excess(self, cutoff, shift=0.0, scale=1.0):
        shift = np.asarray(shift, float)
        scale = np.asarray(scale, float)
        up = np.clip(np.abs(shift + scale) - cutoff, 0.0, None)
        dn = np.clip(np.abs(shift - scale) - cutoff, 0.0, None)
        return 0.5 * (up + dn)

    def support_radius(self):
        return 1.0

    def tail_breakpoints(self):
        return (1.0,)

    def quadrature_span(self):
        return 1.0


@dataclass(frozen=True)
class QuantileTable:
    """Bounded custom distribution given by an inverse-CDF table.

    ``probs`` runs from 0 to 1 and ``values`` is the matching strictly
    increasing quantile grid; sampling interpolates linearly, so the law is
    the piecewise-linear-CDF distribution through those knots.
    """

    probs: tuple
    values: tuple

    kind = "table"

    def __post_init__(self):
        p = np.asarray(self.probs, float)
        v = np.asarray(self.values, float)
        if p.ndim != 1 or p.shape != v.shape or p.size < 2:
            raise ValidationError("table needs matching prob/value vectors of length >= 2")
        if p[0] != 0.0 or p[-1] != 1.0 or np.any(np.diff(p) <= 0):
            raise ValidationError("table probs must increase strictly from 0 to 1")
        if np.any(np.diff(v) <= 0):
            raise ValidationError("table values must be strictly increasing")

    def _p(self):
        return np.asarray(self.probs, float)

    def _v(self):
        return np.asarray(self.values, float)

    def ppf(self, u):
        return np.interp(np.asarray(u, float), self._p(), self._v())

    def cdf(self, t):
        return np.interp(np.asarray(t, float), self._v(), self._p(), left=0.0, right=1.0)

    def mean(self):
        # exact integral of the piecewise-linear quantile function
        p, v = self._p(), self._v()
        return float(np.sum(np.diff(p) * (v[:-1] + v[1:]) / 2.0))

    def abs_mean(self):
        return float(self.expected_abs_excess(0.0))

    def right_tail(self, t):
        return 1.0 - self.cdf(t)

    def left_tail(self, t):
        return self.cdf(t)

    def abs_tail(self, x):
        x = np.asarray(x, float)
        return (1.0 - self.cdf(x)) + self.cdf(-x)

    def abs_tail_remainder(self, x):
        # P(|D|>t) is piecewise linear with kinks at |values|: exact trapezoid
        x = np.asarray(x, float)
        nodes = np.unique(np.abs(np.concatenate([self._v(), [0.0]])))
        out = np.empty(x.shape if x.shape else (1,), float)
        flat = np.atleast_1d(x)
        for i, xi in enumerate(flat):
            grid = np.unique(np.concatenate([[xi], nodes[nodes > xi]]))
            out[i] = np.trapezoid(self.abs_tail(grid), grid) if grid.size > 1 else 0.0
        return out.reshape(x.shape) if x.shape else float(out[0])

    def expected_abs_excess(self, cutoff, shift=0.0, scale=1.0):
        # E(|shift + scale*Q(p)| - cutoff)^+ on a refined p-grid (piecewise
        # linear integrand between knots and sign/cutoff crossings)
        p, v = self._p(), self._v()
        grid = np.unique(np.concatenate([p, np.linspace(0.0, 1.0, 2049)]))
        q = np.interp(grid, p, v)
        shift = np.atleast_1d(np.asarray(shift, float))
        scale = np.atleast_1d(np.asarray(scale, float))
        vals = np.clip(np.abs(shift[:, None] + scale[:, None] * q[None, :]) - cutoff, 0.0, None)
        out = np.trapezoid(vals, grid, axis=1)
        return out if out.size > 1 else float(out[0])

    def support_radius(self):
        v = self._v()
        return float(max(abs(v[0]), abs(v[-1])))

    def tail_breakpoints(self):
        return tuple(np.unique(np.abs(self._v())))

    def quadrature_span(self):
        return self.support_radius()


@dataclass(frozen=True)
class CenteredLattice:
    """Discrete uniform on the q-point lattice {-1, ..., -1/h, 0, 1/h, ..., 1}.

    Marginal law of the congruential family, h = (q-1)/2.
    """

    modulus: int

    kind = "centered_lattice"

    def __post_init__(self):
        if self.modulus < 3 or self.modulus % 2 == 0:
            raise ValidationError("lattice modulus must be an odd integer >= 3")

    @property
    def _h(self):
        return (self.modulus - 1) // 2

    def ppf(self, u):
        j = np.minimum((np.asarray(u, float) * self.modulus).astype(np.int64), self.modulus - 1)
        return (j - self._h) / float(self._h)

    def mean(self):
        return 0.0

    def abs_mean(self):
        return (self._h + 1) / self.modulus

    def right_tail(self, t):
        # P(D > t) = #{j in [-h..h] : j > t*h} / q
        t = np.asarray(t, float)
        h, q = self._h, self.modulus
        count = np.clip(h - np.floor(t * h), 0, 2 * h + 1)
        count = np.where(t < -1.0, q, count)
        return count / q

    def left_tail(self, t):
        return self.right_tail(-np.asarray(t, float))

    def abs_tail(self, x):
        x = np.asarray(x, float)
        h, q = self._h, self.modulus
        count = np.clip(h - np.floor(x * h), 0, h)
        return 2.0 * count / q

    def abs_tail_remainder(self, x):
        # E(|D| - x)^+ by the arithmetic series over lattice points above x*h
        x = np.asarray(x, float)
        h, q = self._h, self.modulus
        j0 = np.clip(np.floor(x * h) + 1, 1, h + 1)
        m = np.clip(h - j0 + 1, 0, h)  # number of lattice points strictly above
        top = (h + j0) * m / 2.0  # sum of j over that range
        return (2.0 / (q * h)) * (top - np.asarray(x, float) * h * m)

    def expected_abs_excess(self, cutoff, shift=0.0, scale=1.0):
        if np.any(np.asarray(shift) != 0.0) or np.any(np.asarray(scale) != 1.0):
            raise ValidationError("lattice marginals do not take shift/scale rules")
        return self.abs_tail_remainder(cutoff)

    def support_radius(self):
        return 1.0

    def tail_breakpoints(self):
        h = self._h
        if h <= 64:
            return tuple(j / h for j in range(1, h + 1))
        return (1.0,)

    def quadrature_span(self):
        return 1.0


DIST_KINDS = {
    "normal": Normal,
    "centered_uniform": CenteredUniform,
    "rademacher": Rademacher,
    "table": QuantileTable,
}


# ---------------------------------------------------------------------------
# per-index scale and shift rules (heteroscedastic variant)


@dataclass(frozen=True)
class ScaleRule:
    """Per-index scale sigma_k = base * k**gamma."""

    base: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.base <= 0:
            raise ValidationError("scale base must be positive")

    def at(self, k):
        k = np.asarray(k, float)
        if self.gamma == 0.0:
            return np.broadcast_to(np.float64(self.base), k.shape).copy() if k.shape else self.base
        return self.base * k**self.gamma

    @property
    def is_constant(self):
        return self.gamma == 0.0


@dataclass(frozen=True)
class ShiftRule:
    """Per-index mean shift.

    Kinds: ``none``; ``before_start`` (``value`` for indices below the model's
    zero-mean start index, 0 after); ``harmonic`` (value/k for every k);
    ``constant`` (value for every k).
    """

    kind: str = "none"
    value: float = 0.0

    _KINDS = ("none", "before_start", "harmonic", "constant")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValidationError(f"shift kind must be one of {self._KINDS}")

    def at(self, k, zero_mean_from: int):
        k = np.asarray(k, float)
        if self.kind == "none":
            return np.zeros_like(k) if k.shape else 0.0
        if self.kind == "before_start":
            return np.where(k < zero_mean_from, self.value, 0.0)
        if self.kind == "harmonic":
            return self.value / k
        return np.full_like(k, self.value) if k.shape else self.value

    def max_abs_from(self, start: int, zero_mean_from: int) -> float:
        """sup_k |shift_k| over k >= start, exact per rule."""
        if self.kind == "none":
            return 0.0
        if self.kind == "before_start":
            return abs(self.value) if start < zero_mean_from else 0.0
        if self.kind == "harmonic":
            return abs(self.value) / start
        return abs(self.value)


@dataclass(frozen=True)
class XMarginal:
    """Exact marginal law of one x-index: shift + scale * D."""

    dist: object
    scale: float = 1.0
    shift: float = 0.0

    def mean(self):
        return self.shift + self.scale * self.dist.mean()

    def abs_tail(self, x):
        x = np.asarray(x, float)
        if self.shift == 0.0:
            return self.dist.abs_tail(x / self.scale)
        hi = (x - self.shift) / self.scale
        lo = (-x - self.shift) / self.scale
        return self.dist.right_tail(hi) + self.dist.left_tail(lo)

    def abs_tail_remainder(self, x):
        if self.shift == 0.0:
            return self.scale * self.dist.abs_tail_remainder(np.asarray(x, float) / self.scale)
        return self.dist.expected_abs_excess(np.asarray(x, float), self.shift, self.scale)

    def trunc_abs_mean(self, cutoff):
        """E|X| 1(|X| > cutoff) = cutoff * P(|X|>cutoff) + E(|X|-cutoff)^+."""
        return np.asarray(cutoff, float) * self.abs_tail(cutoff) + self.abs_tail_remainder(cutoff)

    def quadrature_span(self):
        return abs(self.shift) + self.scale * self.dist.quadrature_span()

    def tail_breakpoints(self):
        if self.shift == 0.0:
            return tuple(self.scale * b for b in self.dist.tail_breakpoints())
        return tuple(
            abs(self.shift + s * self.scale * b)
            for b in (*self.dist.tail_breakpoints(), 0.0)
            for s in (1.0, -1.0)
        )


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class XModel:
    """Pairwise-independent source family.

    Variants: ``iid`` (one base distribution), ``walsh_rademacher`` (products
    of independent signs over nonempty subsets of ``generator_count``
    generators), ``congruential`` (centered image of (U + kV) mod q over the
    prime field of size ``modulus``), ``heteroscedastic`` (base distributions
    cycled per index with per-index scale/shift rules).  ``zero_mean_from``
    is the first index whose mean is guaranteed to be exactly zero.
    """

    variant: str = "iid"
    dists: tuple = (Normal(1.0),)
    generator_count: int = 0
    modulus: int = 0
    scale: ScaleRule = ScaleRule()
    shift: ShiftRule = ShiftRule()
    zero_mean_from: int = 1

    def __post_init__(self):
        if self.variant not in X_VARIANTS:
            raise ValidationError(f"x variant must be one of {X_VARIANTS}")
        if self.zero_mean_from < 1:
            raise ValidationError("zero_mean_from must be >= 1")
        if self.variant == "walsh_rademacher":
            if not 1 <= self.generator_count <= 62:
                raise ValidationError("walsh_rademacher needs 1 <= generator_count <= 62")
        elif self.variant == "congruential":
            if self.modulus < 3 or not is_prime(self.modulus):
                raise ValidationError("congruential modulus must be an odd prime >= 3")
        else:
            if not self.dists:
                raise ValidationError("at least one base distribution is required")
            if self.variant == "iid" and (
                len(self.dists) != 1 or not self.scale.is_constant
                or self.scale.base != 1.0 or self.shift.kind != "none"
            ):
                raise ValidationError("iid variant takes a single unscaled distribution")

    @property
    def block_capacity(self):
        """Largest sample index one block exposes, or None if unbounded."""
        if self.variant == "walsh_rademacher":
            return 2**self.generator_count - 1
        if self.variant == "congruential":
            return self.modulus - 1
        return None

    def marginal(self, k: int) -> XMarginal:
        """Exact marginal law of X_k."""
        if self.variant == "walsh_rademacher":
            return XMarginal(Rademacher())
        if self.variant == "congruential":
            return XMarginal(CenteredLattice(self.modulus))
        dist = self.dists[(k - 1) % len(self.dists)]
        return XMarginal(dist, float(self.scale.at(k)), float(self.shift.at(k, self.zero_mean_from)))

    def identical_from(self, start: int) -> bool:
        """True when all marginals with index >= start share one law."""
        if self.variant in ("walsh_rademacher", "congruential", "iid"):
            return True
        return (
            len(self.dists) == 1
            and self.scale.is_constant
            and (self.shift.kind == "none"
                 or (self.shift.kind == "before_start" and start >= self.zero_mean_from))
        )


@dataclass(frozen=True)
class YModel:
    """Heavy-tailed source family; no independence is assumed within a path.

    ``moment_order`` is the fractional order whose absolute moment the family
    is checked against, ``growth_exponent`` the admissible polynomial growth
    of its averaged tails.  Pareto variants use survival x**-tail_index on
    [1, inf); ``fully_dependent_pareto`` draws a single value per path,
    ``comonotone_scaled`` multiplies that single draw by k**scale_power.
    """

    variant: str = "iid_pareto"
    moment_order: float = 0.5
    growth_exponent: float = 0.0
    tail_index: float = 1.0
    scale_power: float = 0.0

    def __post_init__(self):
        if self.variant not in Y_VARIANTS:
            raise ValidationError(f"y variant must be one of {Y_VARIANTS}")
        if not 0.0 < self.moment_order < 1.0:
            raise ValidationError("moment_order must lie strictly inside (0, 1)")
        if self.growth_exponent < 0.0:
            raise ValidationError("growth_exponent must be nonnegative")
        if self.variant != "iid_cauchy" and self.tail_index <= 0.0:
            raise ValidationError("tail_index must be positive")
        if self.variant != "comonotone_scaled" and self.scale_power != 0.0:
            raise ValidationError("scale_power applies to the comonotone variant only")

    @property
    def single_draw_per_path(self) -> bool:
        return self.variant in ("fully_dependent_pareto", "comonotone_scaled")

    @property
    def is_identically_distributed(self) -> bool:
        return self.variant != "comonotone_scaled" or self.scale_power == 0.0

    def fractional_moment(self, k: int = 1) -> float:
        """E|Y_k|**moment_order in closed form (inf when divergent)."""
        a = self.moment_order
        if self.variant == "iid_cauchy":
            return 1.0 / math.cos(math.pi * a / 2.0)
        if self.tail_index <= a:
            return math.inf
        base = self.tail_index / (self.tail_index - a)
        if self.variant == "comonotone_scaled":
            return float(k) ** (self.scale_power * a) * base
        return base


# ---------------------------------------------------------------------------
# sampling operations


def _check_block(model: XModel, first: int, last: int):
    if first < 1:
        raise ValidationError("sample indices are 1-based")
    cap = model.block_capacity
    if cap is not None and last > cap:
        raise CapacityError(
            f"{model.variant} block exposes indices 1..{cap}; requested {first}..{last}"
        )


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    for s in (32, 16, 8, 4, 2, 1):
        v ^= v >> s
    return v & 1


def sample_x_block(model: XModel, first: int, last: int, stream: SeedStream) -> np.ndarray:
    """Sample X_first..X_last as one vector, deterministically in the stream."""
    _check_block(model, first, last)
    n = last - first + 1
    if n <= 0:
        return np.empty(0, float)

    if model.variant == "walsh_rademacher":
        rng = stream.path_rng()
        signs = rng.integers(0, 2, size=model.generator_count).astype(np.int64)
        mask = int(np.bitwise_or.reduce(signs << np.arange(model.generator_count)))
        ks = np.arange(first, last + 1, dtype=np.int64)
        # X_k = prod of generators in the subset encoded by the bits of k
        return 1.0 - 2.0 * _parity(ks & mask).astype(float)

    if model.variant == "congruential":
        q = model.modulus
        rng = stream.path_rng()
        u0 = int(rng.integers(0, q))
        v0 = int(rng.integers(0, q))
        ks = np.arange(first, last + 1, dtype=np.int64)
        w = (u0 + ks * v0) % q
        h = (q - 1) // 2
        return (w - h) / float(h)

    u = stream.uniforms(first, last)
    ks = np.arange(first, last + 1, dtype=np.int64)
    if len(model.dists) == 1:
        base = model.dists[0].ppf(u)
    else:
        base = np.empty(n, float)
        cyc = (ks - 1) % len(model.dists)
        for i, dist in enumerate(model.dists):
            sel = cyc == i
            if np.any(sel):
                base[sel] = dist.ppf(u[sel])
    return model.shift.at(ks, model.zero_mean_from) + model.scale.at(ks) * base


def sample_y_block(model: YModel, first: int, last: int, stream: SeedStream) -> np.ndarray:
    """Sample Y_first..Y_last as one vector, deterministically in the stream."""
    if first < 1:
        raise ValidationError("sample indices are 1-based")
    n = last - first + 1
    if n <= 0:
        return np.empty(0, float)

    if model.single_draw_per_path:
        u0 = float(stream.path_rng().random())
        draw = (1.0 - u0) ** (-1.0 / model.tail_index)
        if model.variant == "fully_dependent_pareto":
            return np.full(n, draw)
        ks = np.arange(first, last + 1, dtype=np.float64)
        return draw * ks**model.scale_power

    u = stream.uniforms(first, last)
    if model.variant == "iid_pareto":
        return (1.0 - u) ** (-1.0 / model.tail_index)
    return np.tan(math.pi * (u - 0.5))  # iid_cauchy


# ---------------------------------------------------------------------------
# exact tails


def tail_x(model: XModel, k: int, x) -> np.ndarray:
    """P(|X_k| > x), exact and nonincreasing in x."""
    x = np.asarray(x, float)
    if np.any(x < 0):
        raise ValidationError("tail arguments must be nonnegative")
    return np.clip(model.marginal(k).abs_tail(x), 0.0, 1.0)


def tail_y_pow_a(model: YModel, k: int, x) -> np.ndarray:
    """P(|Y_k|**moment_order > x), exact and nonincreasing in x."""
    x = np.asarray(x, float)
    if np.any(x < 0):
        raise ValidationError("tail arguments must be nonnegative")
    a = model.moment_order
    if model.variant == "iid_cauchy":
        with np.errstate(divide="ignore"):
            inv = np.where(x > 0, x, np.inf) ** (-1.0 / a)
            inv = np.where(x > 0, inv, np.inf)
        return (2.0 / math.pi) * np.arctan(inv)
    # P(c^a H^a > x) = min(1, c**beta * x**(-beta/a)) for the Pareto variants
    scale = (
        float(k) ** (model.scale_power * model.tail_index)
        if model.variant == "comonotone_scaled"
        else 1.0
    )
    with np.errstate(divide="ignore"):
        ratio = np.where(x > 0, x, np.inf) ** (-model.tail_index / a)
        ratio = np.where(x > 0, ratio, np.inf)
    return np.minimum(1.0, scale * ratio)


def y_tail_remainder(model: YModel, k: int, x: float) -> float:
    """Exact int_x^inf P(|Y_k|^a > t) dt for x past the tail's unit knee."""
    a = model.moment_order
    if model.variant == "iid_cauchy":
        # arctan(t^(-1/a)) <= t^(-1/a); used as both estimate and bound
        expo = 1.0 / a
        if expo <= 1.0:
            return math.inf
        return (2.0 / math.pi) * x ** (1.0 - expo) / (expo - 1.0)
    expo = model.tail_index / a
    if expo <= 1.0:
        return math.inf
    scale = (
        float(k) ** (model.scale_power * model.tail_index)
        if model.variant == "comonotone_scaled"
        else 1.0
    )
    knee = scale ** (a / model.tail_index) if scale != 1.0 else 1.0
    if x < knee:
        raise ValidationError("remainder is available past the tail knee only")
    return scale * x ** (1.0 - expo) / (expo - 1.0)
