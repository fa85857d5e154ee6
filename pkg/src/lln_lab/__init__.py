"""Monte-Carlo laboratory for mixed-sequence strong-law diagnostics."""

__version__ = "0.1.0"

from .conditions import (
    ConditionReport,
    ConditionSettings,
    TailEnvelope,
    cesaro_tail_integral,
    cesaro_uniform_integrability_profile,
    check_mean_zero,
    fractional_moment_check,
    full_condition_report,
    minimal_tail_envelope,
    sup_tail_integral,
    uniform_integrability_profile,
)
from .diagnostics import (
    ConvergenceReport,
    ExperimentConfig,
    compare_modes,
    run_experiment,
    tail_sup_statistic,
)
from .errors import BudgetError, CapacityError, ConfigError, ValidationError
from .generators import (
    CenteredLattice,
    CenteredUniform,
    Normal,
    QuantileTable,
    Rademacher,
    ScaleRule,
    ShiftRule,
    XModel,
    YModel,
    sample_x_block,
    sample_y_block,
    tail_x,
    tail_y_pow_a,
)
from .proof_validators import (
    TruncationDiagnostics,
    ceiling_bound_check,
    default_checkpoints,
    kronecker_transfer,
    rare_part_mean_convergence,
    truncated_series,
    weighted_sum_transfer,
)
from .schedule import (
    MixSchedule,
    RarityVerdict,
    ScheduleRule,
    assemble_z,
    build_schedule,
    kappa_psi,
    rarity_exponent,
    rarity_statistic,
)
from .seeds import SeedStream

__all__ = [name for name in dir() if not name.startswith("_")]
