"""Fair council weights for heterogeneous voting systems.

Computes mean-square-optimal voting weights for two-tier (state/council)
systems under three voter-correlation models (independent, common-belief
mixture, and mean-field interaction) by exact computation, quadrature,
and Monte Carlo simulation, and measures how the fair weight scales with
population (the square-root law, the linear law, and the phase transition
between them).
"""

from .core import (
    ASYMPTOTIC,
    EXACT,
    MONTE_CARLO,
    CommonBelief,
    Independent,
    MarginEstimate,
    MeanField,
    RngStream,
    affirmative_count,
    as_outcome,
    majority_sign,
    margin,
    q_margin,
)
from .measures import (
    DiscreteSymmetric,
    GriddedDensity,
    MagnetizationPmf,
    PointMassZero,
    UniformSymmetric,
    belief_to_field,
    field_to_belief,
    magnetization_pmf,
    pmf_exact,
    sample,
    sample_totals,
)
from .estimators import (
    expected_margin,
    expected_margin_asymptotic,
    expected_margin_exact,
    expected_margin_mc,
)
from .commonbelief import (
    StraffinFamily,
    classify_regime,
    distribution_distance,
    margin_bound_check,
    mu_bar,
    second_moment,
)
from .meanfield import (
    CriticalCouplingError,
    ScalingFit,
    SubcriticalCouplingError,
    asymptotic_weight_meanfield,
    scaling_fit,
    solve_cj,
)
from .weights import (
    SEMI_EXACT,
    CouncilSpec,
    DeltaEstimate,
    StateSpec,
    WeightVector,
    delta,
    optimal_weights,
    verify_minimizer,
)
from .council import (
    SimulationResult,
    compare_weight_rules,
    council_decision,
    simulate,
    state_delegate_vote,
)

__version__ = "0.1.0"
