"""Canned experiment scenarios with their expected verdicts."""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import ExperimentConfig
from .errors import ValidationError
from .generators import XModel, YModel
from .schedule import ScheduleRule


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    config: ExperimentConfig
    expected_conditions: str
    expected_simulation: str
    note: str


def _build_presets():
    iid_normal = XModel()
    rare_sqrt = ScheduleRule("power", exponent=0.5, density=1.0)

    presets = [
        ScenarioPreset(
            "baseline_theorem",
            ExperimentConfig(
                x_model=iid_normal,
                y_model=YModel("fully_dependent_pareto", 0.5, 0.0, tail_index=0.8),
                schedule_rule=rare_sqrt,
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=1_000_000,
                replicas=200,
                mode="theorem",
            ),
            "satisfied",
            "converging",
            "dense pairwise-independent background with a square-root-rare, "
            "maximally dependent infinite-mean tail",
        ),
        ScenarioPreset(
            "kolmogorov_iid",
            ExperimentConfig(
                x_model=iid_normal,
                y_model=YModel("iid_pareto", 0.5, 0.0, tail_index=0.8),
                schedule_rule=ScheduleRule("all_zeros"),
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=100_000,
                replicas=200,
                mode="theorem",
            ),
            "satisfied",
            "converging",
            "classical iid special case: the schedule never touches the y-source",
        ),
        ScenarioPreset(
            "x_only_pairwise",
            ExperimentConfig(
                x_model=XModel("walsh_rademacher", generator_count=17),
                y_model=YModel("iid_pareto", 0.5, 0.0, tail_index=0.8),
                schedule_rule=ScheduleRule("all_zeros"),
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=100_000,
                replicas=200,
                mode="x_only",
            ),
            "satisfied",
            "converging",
            "pairwise independent but jointly dependent sign products; "
            "x-part partial means only",
        ),
        ScenarioPreset(
            "y_only_rare",
            ExperimentConfig(
                x_model=iid_normal,
                y_model=YModel("fully_dependent_pareto", 0.5, 0.0, tail_index=0.8),
                schedule_rule=rare_sqrt,
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=1_000_000,
                replicas=200,
                mode="y_only",
            ),
            "satisfied",
            "converging",
            "rare-part partial means only: one heavy draw spread over sqrt-many slots",
        ),
        ScenarioPreset(
            "counterexample_dense",
            ExperimentConfig(
                x_model=iid_normal,
                y_model=YModel("iid_pareto", 0.5, 0.0, tail_index=0.8),
                schedule_rule=ScheduleRule("all_ones"),
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=100_000,
                replicas=100,
                mode="counterexample",
            ),
            "violated",
            "diverging",
            "every position takes the infinite-mean source: the rare-index "
            "condition fails and partial means blow up",
        ),
        ScenarioPreset(
            "counterexample_no_moment",
            ExperimentConfig(
                x_model=iid_normal,
                y_model=YModel("iid_pareto", 0.5, 0.0, tail_index=0.3),
                schedule_rule=rare_sqrt,
                moment_order=0.5,
                growth_exponent=0.0,
                horizon=100_000,
                replicas=100,
                mode="counterexample",
            ),
            "violated",
            "diverging",
            "tail index below the moment order: the fractional moment diverges "
            "and even sqrt-rare mixing cannot tame the sums",
        ),
    ]
    return {p.name: p for p in presets}


PRESETS = _build_presets()


def get_preset(name: str) -> ScenarioPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
