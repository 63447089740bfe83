"""Unequal-probability sampling designs, exact inclusion-probability
oracles, and preferential-attachment graph generators built on them."""

from .design import DEFAULT_SEED, DesignKind, DesignSpec, OrderPolicy
from .errors import (
    DegenerateDesignError,
    DuplicateSelectionRiskError,
    EnumerationTooLargeError,
    InfeasibleWeightsError,
    InsufficientDataError,
    PasampleError,
    RejectionBudgetError,
)
from .generator import (
    GrowthParams,
    OutcomeDistribution,
    attachment_step,
    canonical_certificate,
    generate,
    ordered_array_update,
    outcome_distribution,
    wheel_first_zero_threshold,
    wheel_joint_probability,
)
from .graph import Graph, WeightedProjection, complete_graph, jaccard_projection, wheel_minus_arc
from .oracle import (
    InclusionTable,
    Table1Row,
    check_marginalization,
    exact_cp,
    exact_dbd,
    exact_random_systematic,
    exact_systematic,
    monte_carlo_inclusion,
    table1_closed_forms,
)
from .sampling import (
    OrderedWeightArray,
    WeightedPopulation,
    sample_chao,
    sample_conditional_poisson,
    sample_draw_by_draw,
    sample_ordered_systematic,
    sample_random_systematic,
    systematic_at,
    target_first_order,
)

__version__ = "0.1.0"
