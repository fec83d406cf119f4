"""Exact tools for extreme negative dependence on finite probability spaces.

The library answers, with exact rational arithmetic and no sampling error:

* which dependence structure a random vector carries (comonotonicity,
  pairwise counter-monotonicity, mutual exclusivity, joint mixes, negative
  association, negative orthant dependence);
* how to build and dismantle such vectors (scaling representations,
  quantile couplings, increasing transforms);
* which marginal classes support them, and how to realise a coupling;
* worst- and best-case quantile risk aggregation, and Pareto-optimal risk
  sharing among agents using value-at-risk, including level recovery and
  the comonotonic efficiency gap.

A small CLI (``negdep``) runs JSON scenario files against the same code.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AllocationMismatch,
    ArityMismatch,
    DimensionMismatch,
    DomainError,
    IncompatibleAgents,
    InputError,
    InvalidDistribution,
    IoError,
    LevelOutOfRange,
    MassNotOne,
    NegdepError,
    NoMassAtEssInf,
    NonPositiveMass,
    NotAPartition,
    NotComonotonic,
    NotCounterMonotonicPair,
    NotMonotone,
    NotPcm,
    NotPcmType1,
    NotRepresentable,
    OverlappingIndexSets,
    ParameterOutOfRange,
    ParseError,
    SchemaError,
    SignViolation,
    SpaceMismatch,
    TooFewNonDegenerate,
    TooLarge,
    UncoveredSupport,
    Unsupported,
)
from .rationals import as_fraction, format_rational, parse_rational  # noqa: F401
from .space import (  # noqa: F401
    Composition,
    DiscreteDistribution,
    RandomVariable,
    RandomVector,
    Space,
    carve_segments,
    compose_lineage,
    distribution_of,
    ess_inf,
    ess_sup,
    expectation,
    lift_event,
    lift_variable,
    make_space,
    refine,
    uniform_space,
)
from .dependence import (  # noqa: F401
    MutualExclusivityType,
    NaVerdict,
    NaWitness,
    classify_mutual_exclusivity,
    frechet_lower_bound,
    is_comonotonic,
    is_comonotonic_pair,
    is_counter_monotonic_pair,
    is_joint_mix,
    is_negative_orthant_dependent,
    is_negatively_associated,
    is_pairwise_counter_monotonic,
    joint_cdf,
    joint_survival,
)
from .construct import (  # noqa: F401
    MonotoneMap,
    PcmRepresentation,
    apply_increasing_transforms,
    build_comonotonic,
    build_pcm,
    decompose_cm_pair,
    decompose_pcm,
    refine_for_marginals,
)
from .frechet import (  # noqa: F401
    AllDegenerateForm,
    BothSupportForm,
    PcmConstruction,
    PcmSupport,
    SymmetricPairForm,
    TwoPointForm,
    classify_both_support,
    construct_pcm_with_marginals,
    joint_mix_feasible,
    joint_mix_witness,
    supports_pcm,
)
from .risk import (  # noqa: F401
    AggregationReport,
    VarLevel,
    bernoulli_aggregation_bounds,
    convex_order_leq,
    coupling_sum_distribution,
    coupling_vertices,
    es,
    var,
)
from .sharing import (  # noqa: F401
    Allocation,
    AuctionResult,
    BoundReport,
    QuantileAgents,
    auction_optimum,
    comonotonic_gap,
    inf_convolution_var,
    levels_for_allocation,
    lower_bound_check,
    optimal_allocation,
    verify_pareto,
)
