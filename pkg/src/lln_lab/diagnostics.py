"""End-to-end convergence experiments on the mixed sequence.

Each replica streams one path of the mixed sequence, accumulating the x-part
and y-part prefix sums separately with compensated summation (heavy-tailed
values span many orders of magnitude, and the split makes the part/whole
decomposition exact at the bit level).  Only checkpoint snapshots are kept,
so memory is O(checkpoints) regardless of horizon.  Almost-sure convergence
is operationalized as decade-over-decade decay of across-replica quantiles of
the tail-sup statistic; every threshold involved is configuration, echoed in
the report.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .conditions import ConditionReport, ConditionSettings, DEFAULT_SETTINGS, full_condition_report
from .errors import BudgetError, ValidationError
from .generators import XModel, YModel, sample_x_block, sample_y_block
from .proof_validators import (
    decade_decay_factors,
    default_checkpoints,
    last_two_decade_factors,
    _ratio,
)
from .schedule import MixSchedule, ScheduleRule, build_schedule
from .seeds import SeedStream

MODES = ("theorem", "x_only", "y_only", "counterexample")

DEFAULT_MASTER_SEED = 20250809
DEFAULT_BUDGET = 2_000_000_000

_CHUNK = 1 << 20


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment needs, fully determining its outputs."""

    x_model: XModel
    y_model: YModel
    schedule_rule: ScheduleRule
    moment_order: float
    growth_exponent: float
    zero_mean_from: int = 1
    horizon: int = 100_000
    replicas: int = 100
    checkpoints: tuple | None = None
    master_seed: int = DEFAULT_MASTER_SEED
    mode: str = "theorem"
    decay_threshold: float = 2.0
    conditions: ConditionSettings = DEFAULT_SETTINGS

    def validate(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if self.horizon < 1000:
            raise ValidationError("horizon must be >= 1000")
        if self.replicas < 2:
            raise ValidationError("replicas must be >= 2")
        if self.moment_order != self.y_model.moment_order:
            raise ValidationError("moment_order must match the y-model")
        if self.growth_exponent != self.y_model.growth_exponent:
            raise ValidationError("growth_exponent must match the y-model")
        if self.zero_mean_from != self.x_model.zero_mean_from:
            raise ValidationError("zero_mean_from must match the x-model")
        if self.checkpoints is not None:
            cps = tuple(self.checkpoints)
            if not cps or any(b <= a for a, b in zip(cps, cps[1:])):
                raise ValidationError("checkpoints must be strictly increasing")
            if cps[0] < 1 or cps[-1] > self.horizon:
                raise ValidationError("checkpoints must lie in 1..horizon")
        if self.decay_threshold <= 1.0:
            raise ValidationError("decay_threshold must exceed 1")

    def checkpoint_grid(self) -> tuple:
        if self.checkpoints is not None:
            return tuple(int(c) for c in self.checkpoints)
        return default_checkpoints(self.horizon)


@dataclass
class ConvergenceReport:
    """Across-replica convergence evidence at the checkpoints."""

    mode: str
    horizon: int
    replicas: int
    master_seed: int
    checkpoints: tuple
    kappa_at: np.ndarray
    sums_x: np.ndarray  # (replicas, checkpoints) raw x-part prefix sums
    sums_y: np.ndarray
    quantiles: dict
    tail_sup_q90: np.ndarray
    decade_factors: np.ndarray
    verdict: str
    decay_threshold: float
    conditions: ConditionReport

    @property
    def sums(self) -> np.ndarray:
        return self.sums_x + self.sums_y

    @property
    def abs_means(self) -> np.ndarray:
        return np.abs(self.sums) / np.asarray(self.checkpoints, float)

    @property
    def tail_sups(self) -> np.ndarray:
        return tail_sup_statistic(self.abs_means)

    def to_text(self) -> str:
        lines = [
            f"convergence report: mode={self.mode} horizon={self.horizon} "
            f"replicas={self.replicas} master_seed={self.master_seed}",
            f"verdict: {self.verdict} "
            f"(decay threshold {self.decay_threshold} per decade, quantile 0.90)",
            "-" * 78,
            f"{'n':>12} {'ones':>10} {'q50|S/n|':>12} {'q90|S/n|':>12} "
            f"{'q99|S/n|':>12} {'tailsup q90':>12}",
        ]
        for i, n in enumerate(self.checkpoints):
            lines.append(
                f"{n:>12} {int(self.kappa_at[i]):>10} "
                f"{self.quantiles[0.5][i]:>12.4e} {self.quantiles[0.9][i]:>12.4e} "
                f"{self.quantiles[0.99][i]:>12.4e} {self.tail_sup_q90[i]:>12.4e}"
            )
        lines.append("-" * 78)
        factors = ", ".join(f"{f:.3g}" for f in self.decade_factors)
        lines.append(f"tail-sup q90 decade decay factors: {factors}")
        lines.append("")
        lines.append(self.conditions.to_text())
        return "\n".join(lines)

    def to_kv(self) -> str:
        lines = [
            f"report.mode={self.mode}",
            f"report.horizon={self.horizon}",
            f"report.replicas={self.replicas}",
            f"report.master_seed={self.master_seed}",
            f"report.decay_threshold={self.decay_threshold!r}",
            f"report.verdict={self.verdict}",
        ]
        for i, n in enumerate(self.checkpoints):
            pre = f"report.checkpoint.{i}"
            lines.append(f"{pre}.n={n}")
            lines.append(f"{pre}.ones={int(self.kappa_at[i])}")
            lines.append(f"{pre}.abs_mean_q50={self.quantiles[0.5][i]!r}")
            lines.append(f"{pre}.abs_mean_q90={self.quantiles[0.9][i]!r}")
            lines.append(f"{pre}.abs_mean_q99={self.quantiles[0.99][i]!r}")
            lines.append(f"{pre}.tail_sup_q90={self.tail_sup_q90[i]!r}")
        return "\n".join(lines) + "\n" + self.conditions.to_kv()

    def checkpoint_csv(self) -> str:
        rows = ["replica,n,S_over_n,kappa_n,checkpoint_index"]
        s_over_n = self.sums / np.asarray(self.checkpoints, float)
        for r in range(self.replicas):
            for i, n in enumerate(self.checkpoints):
                rows.append(f"{r},{n},{s_over_n[r, i]!r},{int(self.kappa_at[i])},{i}")
        return "\n".join(rows) + "\n"

    def aggregate_csv(self) -> str:
        rows = ["checkpoint_index,n,kappa_n,abs_mean_q50,abs_mean_q90,abs_mean_q99,tail_sup_q90"]
        for i, n in enumerate(self.checkpoints):
            rows.append(
                f"{i},{n},{int(self.kappa_at[i])},{self.quantiles[0.5][i]!r},"
                f"{self.quantiles[0.9][i]!r},{self.quantiles[0.99][i]!r},"
                f"{self.tail_sup_q90[i]!r}"
            )
        return "\n".join(rows) + "\n"


def tail_sup_statistic(values: np.ndarray) -> np.ndarray:
    """T_j = max over checkpoints at or after j of |value|; nonincreasing in j."""
    v = np.abs(np.asarray(values, float))
    return np.maximum.accumulate(v[..., ::-1], axis=-1)[..., ::-1]


class _CompensatedTotal:
    """Neumaier-compensated running sum."""

    __slots__ = ("_sum", "_carry")

    def __init__(self):
        self._sum = 0.0
        self._carry = 0.0

    def add(self, value: float):
        t = self._sum + value
        if abs(self._sum) >= abs(value):
            self._carry += (self._sum - t) + value
        else:
            self._carry += (value - t) + self._sum
        self._sum = t

    @property
    def value(self) -> float:
        return self._sum + self._carry


def _replica_sums(config: ExperimentConfig, schedule: MixSchedule, cps: np.ndarray, replica: int):
    """Checkpoint snapshots of the x-part and y-part prefix sums for one path."""
    want_x = config.mode != "y_only"
    want_y = config.mode != "x_only"
    x_stream = SeedStream(config.master_seed, replica, "x")
    y_stream = SeedStream(config.master_seed, replica, "y")
    acc_x = _CompensatedTotal()
    acc_y = _CompensatedTotal()
    out_x = np.zeros(cps.size)
    out_y = np.zeros(cps.size)
    ptr = 0

    for lo in range(1, config.horizon + 1, _CHUNK):
        hi = min(lo + _CHUNK - 1, config.horizon)
        size = hi - lo + 1
        ones = schedule.ones_between(lo, hi)
        k_prev = int(schedule.kappa(lo - 1))
        k_hi = k_prev + ones.size
        psi_prev = (lo - 1) - k_prev
        psi_hi = hi - k_hi

        contrib_x = np.zeros(size)
        contrib_y = np.zeros(size)
        if want_x and psi_hi > psi_prev:
            x_vals = sample_x_block(config.x_model, psi_prev + 1, psi_hi, x_stream)
            mask = np.ones(size, dtype=bool)
            mask[ones - lo] = False
            contrib_x[mask] = x_vals
        if want_y and ones.size:
            y_vals = sample_y_block(config.y_model, k_prev + 1, k_hi, y_stream)
            contrib_y[ones - lo] = y_vals
        cum_x = np.cumsum(contrib_x)
        cum_y = np.cumsum(contrib_y)

        while ptr < cps.size and cps[ptr] <= hi:
            i = int(cps[ptr]) - lo
            out_x[ptr] = acc_x.value + cum_x[i]
            out_y[ptr] = acc_y.value + cum_y[i]
            ptr += 1
        acc_x.add(float(cum_x[-1]))
        acc_y.add(float(cum_y[-1]))
    return out_x, out_y


def run_experiment(
    config: ExperimentConfig,
    budget: int | None = None,
    threads: int | None = None,
) -> ConvergenceReport:
    """Run all replicas, aggregate quantile envelopes, and issue a verdict.

    Converging means the 90% quantile of the tail-sup statistic decayed by at
    least the configured factor in each of the last two decades; diverging
    means the 90% quantile of |S_n/n| grew by that factor in total across
    them; anything else is indeterminate.
    """
    config.validate()
    ceiling = DEFAULT_BUDGET if budget is None else int(budget)
    cells = config.horizon * config.replicas
    if cells > ceiling:
        fit_replicas = max(2, ceiling // config.horizon)
        raise BudgetError(
            f"horizon*replicas = {cells} exceeds the sample budget {ceiling}",
            suggestion=(
                f"rerun with replicas <= {fit_replicas} or a smaller horizon, "
                f"or raise the budget"
            ),
        )

    schedule = build_schedule(config.schedule_rule, config.horizon)
    capacity = config.x_model.block_capacity
    if capacity is not None:
        need = config.horizon - int(schedule.kappa(config.horizon))
        if need > capacity:
            raise ValidationError(
                f"x-model block capacity {capacity} cannot cover {need} draws; "
                f"increase generator_count/modulus or shrink the horizon"
            )

    conditions = full_condition_report(config)
    cps = np.asarray(config.checkpoint_grid(), dtype=np.int64)
    kappa_at = np.asarray(schedule.kappa(cps), dtype=np.int64)

    sums_x = np.zeros((config.replicas, cps.size))
    sums_y = np.zeros((config.replicas, cps.size))

    def work(r: int):
        sums_x[r], sums_y[r] = _replica_sums(config, schedule, cps, r)

    n_threads = threads if threads else 1
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            list(pool.map(work, range(config.replicas)))
    else:
        for r in range(config.replicas):
            work(r)

    abs_means = np.abs(sums_x + sums_y) / cps.astype(float)
    quantiles = {q: np.quantile(abs_means, q, axis=0) for q in (0.5, 0.9, 0.99)}
    tail_q90 = np.quantile(tail_sup_statistic(abs_means), 0.9, axis=0)
    factors = decade_decay_factors(cps, tail_q90)
    verdict = _issue_verdict(cps, tail_q90, quantiles[0.9], config.decay_threshold)

    return ConvergenceReport(
        config.mode,
        config.horizon,
        config.replicas,
        config.master_seed,
        tuple(int(c) for c in cps),
        kappa_at,
        sums_x,
        sums_y,
        quantiles,
        tail_q90,
        factors,
        verdict,
        config.decay_threshold,
        conditions,
    )


def _issue_verdict(cps, tail_q90, abs_q90, threshold: float) -> str:
    if tail_q90[-1] == 0.0:
        return "converging"
    early, late = last_two_decade_factors(cps, tail_q90)
    converges = early >= threshold and late >= threshold
    g_early, g_late = last_two_decade_factors(cps, abs_q90)
    product = g_early * g_late
    total_growth = _ratio(1.0, product) if product > 0 else math.inf
    diverges = total_growth >= threshold
    if converges and not diverges:
        return "converging"
    if diverges and not converges:
        return "diverging"
    return "indeterminate"


@dataclass
class ModeComparison:
    """Coupled-seed decomposition of the mixed path into its two parts."""

    theorem: ConvergenceReport
    x_only: ConvergenceReport
    y_only: ConvergenceReport
    identity_residual: float  # max |S_theorem - (S_x_only + S_y_only)|, exact 0


def compare_modes(config: ExperimentConfig, budget: int | None = None,
                  threads: int | None = None) -> ModeComparison:
    """Run theorem / x_only / y_only with shared seeds and check the identity."""
    reports = {
        mode: run_experiment(replace(config, mode=mode), budget, threads)
        for mode in ("theorem", "x_only", "y_only")
    }
    residual = float(
        np.max(np.abs(reports["theorem"].sums - (reports["x_only"].sums + reports["y_only"].sums)))
    )
    return ModeComparison(reports["theorem"], reports["x_only"], reports["y_only"], residual)
