"""Risk sharing among quantile agents.

Agent i assesses a position by ``var`` at its own level; levels must sum to
less than one for a finite optimum to exist.  The optimal total value is the
inf-convolution ``var(S, sum of levels)``, attained by a counter-monotonic
"tranche" allocation: the first n-1 agents each carry an upper slice of mass
alpha_i of S - ess_inf(S), the last carries the rest plus the floor.

:func:`levels_for_allocation` inverts the picture: given a counter-monotonic
allocation of exceedance type, it produces explicit levels for which that
allocation is Pareto optimal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dependence import (
    MutualExclusivityType,
    classify_mutual_exclusivity,
    is_comonotonic,
)
from .errors import (
    AllocationMismatch,
    ArityMismatch,
    DimensionMismatch,
    IncompatibleAgents,
    LevelOutOfRange,
    NoMassAtEssInf,
    NotComonotonic,
    NotPcmType1,
    ParameterOutOfRange,
    SpaceMismatch,
    TooFewNonDegenerate,
    TooLarge,
)
from .rationals import as_fraction
from .risk import var
from .space import (
    ONE,
    ZERO,
    RandomVariable,
    RandomVector,
    Space,
    carve_segments,
    ess_inf,
    lift_variable,
)

__all__ = [
    "QuantileAgents",
    "Allocation",
    "BoundReport",
    "AuctionResult",
    "DEFAULT_BUDGET",
    "inf_convolution_var",
    "optimal_allocation",
    "verify_pareto",
    "lower_bound_check",
    "levels_for_allocation",
    "comonotonic_gap",
    "auction_optimum",
]

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class QuantileAgents:
    """A tuple of quantile levels, one per agent, each in (0, 1)."""

    levels: tuple[Fraction, ...]

    def __post_init__(self):
        levels = tuple(as_fraction(a) for a in self.levels)
        if not levels:
            raise DimensionMismatch("need at least one agent")
        for a in levels:
            if not ZERO < a < ONE:
                raise LevelOutOfRange(f"level {a} outside (0, 1)")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return len(self.levels)

    @property
    def total_level(self) -> Fraction:
        return sum(self.levels, ZERO)

    @property
    def compatible(self) -> bool:
        """Whether a finite optimum exists (levels sum below one)."""
        return self.total_level < ONE


@dataclass(frozen=True)
class Allocation:
    """Components summing to the stated total on every atom."""

    components: RandomVector
    total: RandomVariable

    def __post_init__(self):
        if self.total.space != self.components.space:
            raise SpaceMismatch("total lives on a different space")
        s = self.components.sum_variable()
        if s != self.total:
            raise AllocationMismatch("components do not sum to the total")

    @property
    def n(self) -> int:
        return self.components.n

    @property
    def space(self) -> Space:
        return self.components.space

    @staticmethod
    def of_sum(components: RandomVector) -> "Allocation":
        return Allocation(components, components.sum_variable())


def _require_arity(alloc: Allocation, agents: QuantileAgents) -> None:
    if alloc.n != agents.n:
        raise ArityMismatch(
            f"{alloc.n} components shared among {agents.n} agents"
        )


def inf_convolution_var(S: RandomVariable, agents: QuantileAgents) -> Fraction:
    """Best achievable total value: var of S at the summed level."""
    if not agents.compatible:
        raise IncompatibleAgents(
            f"levels sum to {agents.total_level} >= 1; the optimum is -infinity"
        )
    return var(S, agents.total_level)


def optimal_allocation(S: RandomVariable, agents: QuantileAgents) -> Allocation:
    """A Pareto-optimal split of S: top tranches by mass, floor to the last agent.

    Atoms are ranked by decreasing S; agent i < n receives (S - m) on a slice
    of mass exactly alpha_i from the top (refining atoms as needed), and the
    last agent receives the remainder plus the essential infimum m.
    """
    if not agents.compatible:
        raise IncompatibleAgents(
            f"levels sum to {agents.total_level} >= 1; no optimum exists"
        )
    if agents.n < 2:
        raise DimensionMismatch("sharing needs at least two agents")
    space = S.space
    order = sorted(space.atoms, key=lambda a: (-S.value[a], space.atoms.index(a)))
    cuts = []
    acc = ZERO
    for a in agents.levels[:-1]:
        acc += a
        cuts.append(acc)
    refined, lineage, segments = carve_segments(space, order, cuts + [ONE])
    S_ref = lift_variable(S, refined, lineage)
    m = ess_inf(S_ref)
    excess = S_ref - m
    last = frozenset(segments[agents.n - 1])
    comps = []
    for i in range(agents.n - 1):
        block = frozenset(segments[i])
        comps.append(excess * RandomVariable.indicator(refined, block))
    comps.append(excess * RandomVariable.indicator(refined, last) + m)
    return Allocation(RandomVector(tuple(comps)), S_ref)


def verify_pareto(alloc: Allocation, agents: QuantileAgents) -> bool:
    """Exact optimality check: summed component vars equal the inf-convolution.

    Incompatible agents admit no optimum, so any allocation verifies False.
    """
    _require_arity(alloc, agents)
    if not agents.compatible:
        return False
    total = sum(
        (var(X, a) for X, a in zip(alloc.components.components, agents.levels)),
        ZERO,
    )
    return total == var(alloc.total, agents.total_level)


@dataclass(frozen=True)
class BoundReport:
    """Sides of the allocation lower bound: sum of vars vs the inf-convolution."""

    sum_var: Fraction
    bound: Fraction
    holds: bool


def lower_bound_check(alloc: Allocation, agents: QuantileAgents) -> BoundReport:
    """No allocation beats the inf-convolution; report both sides exactly."""
    _require_arity(alloc, agents)
    if not agents.compatible:
        raise IncompatibleAgents(
            f"levels sum to {agents.total_level} >= 1; the bound degenerates"
        )
    total = sum(
        (var(X, a) for X, a in zip(alloc.components.components, agents.levels)),
        ZERO,
    )
    bound = var(alloc.total, agents.total_level)
    return BoundReport(sum_var=total, bound=bound, holds=total >= bound)


def levels_for_allocation(alloc: Allocation) -> QuantileAgents:
    """Levels making a counter-monotonic exceedance allocation Pareto optimal.

    The allocation must be pairwise counter-monotonic of exceedance type with
    at least three non-degenerate components.  After recentring every
    component at zero, levels are read off exceedance probabilities, padded
    so they sum strictly below one; small corrections keep the verification
    exact when the aggregate floor is hit where some component is positive.
    """
    comps = alloc.components.components
    n = len(comps)
    if n < 2:
        raise DimensionMismatch("sharing needs at least two agents")
    nondeg = sum(1 for X in comps if not X.is_degenerate())
    if nondeg < 3:
        raise TooFewNonDegenerate(
            f"level recovery needs >= 3 non-degenerate components, found {nondeg}"
        )
    kind = classify_mutual_exclusivity(alloc.components)
    if kind not in (MutualExclusivityType.TYPE1, MutualExclusivityType.BOTH):
        raise NotPcmType1(
            "allocation is not counter-monotonic of exceedance type"
        )
    space = alloc.space
    shifts = [ess_inf(X) for X in comps]
    recentred = [X - s for X, s in zip(comps, shifts)]
    S0 = alloc.total - sum(shifts, ZERO)
    m = ess_inf(S0)
    floor = frozenset(a for a in space.atoms if S0.value[a] == m)
    if space.mass(floor) == 0:
        raise NoMassAtEssInf("aggregate carries no mass at its essential infimum")
    positive = [frozenset(a for a in space.atoms if Y.value[a] > 0) for Y in recentred]
    union_pos = frozenset(itertools.chain.from_iterable(positive))
    overlap = floor & union_pos
    if space.mass(overlap) == 0:
        pad = space.mass(floor) / (2 * n)
        levels = [space.mass(pos) + pad for pos in positive]
    else:
        j = next(
            i for i, pos in enumerate(positive) if space.mass(floor & pos) > 0
        )
        eps = space.mass(floor & positive[j]) / (2 * n)
        levels = [
            space.mass(positive[i]) + eps
            if i != j
            else space.mass(positive[j] - floor) + eps
            for i in range(n)
        ]
    return QuantileAgents(tuple(levels))


def comonotonic_gap(alloc: Allocation, agents: QuantileAgents) -> Fraction:
    """How much a comonotonic allocation loses against the optimum (never < 0)."""
    _require_arity(alloc, agents)
    if not agents.compatible:
        raise IncompatibleAgents(
            f"levels sum to {agents.total_level} >= 1; no optimum to compare with"
        )
    if not is_comonotonic(alloc.components):
        raise NotComonotonic("allocation is not comonotonic")
    total = sum(
        (var(X, a) for X, a in zip(alloc.components.components, agents.levels)),
        ZERO,
    )
    return total - var(alloc.total, agents.total_level)


@dataclass(frozen=True)
class AuctionResult:
    """Optimal value and all maximisers of the unit-auction sharing problem."""

    value: Fraction
    maximizers: tuple[Allocation, ...]


def auction_optimum(
    n: int,
    alpha,
    space: Space,
    grid: Sequence,
    budget: Optional[int] = None,
) -> AuctionResult:
    """Split one indivisible unit among n agents valuing wins at level alpha.

    Allocations take grid values and sum to one on each atom; the objective
    is the summed expected value of alpha per unit-winning component.  Brute
    enumeration shows the maximisers are exactly the indicator partitions,
    each worth alpha.
    """
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    if not isinstance(n, int) or n < 2:
        raise ParameterOutOfRange(f"need an integer n >= 2, got {n!r}")
    a = as_fraction(alpha)
    if not ZERO < a < ONE:
        raise ParameterOutOfRange(f"alpha {a} outside (0, 1)")
    pts = sorted({as_fraction(g) for g in grid})
    if any(not ZERO <= g <= ONE for g in pts):
        raise ParameterOutOfRange("grid values must lie in [0, 1]")
    if ZERO not in pts or ONE not in pts:
        raise ParameterOutOfRange("grid must contain both 0 and 1")
    if len(pts) ** n > budget:
        raise TooLarge(
            f"{len(pts)} grid values over {n} agents exceed budget {budget}"
        )
    splits = [
        combo
        for combo in itertools.product(pts, repeat=n)
        if sum(combo, ZERO) == ONE
    ]
    k = len(space.atoms)
    if len(splits) ** k > budget:
        raise TooLarge(
            f"{len(splits)}^{k} grid allocations exceed budget {budget}"
        )
    best = None
    arg: list[tuple] = []
    for assignment in itertools.product(splits, repeat=k):
        value = ZERO
        for atom, combo in zip(space.atoms, assignment):
            winners = sum(1 for v in combo if v >= ONE)
            if winners:
                value += space.prob[atom] * a * winners
        if best is None or value > best:
            best = value
            arg = [assignment]
        elif value == best:
            arg.append(assignment)
    maximizers = []
    for assignment in arg:
        rows = [
            [assignment[t][i] for t in range(k)] for i in range(n)
        ]
        maximizers.append(Allocation.of_sum(RandomVector.from_rows(space, rows)))
    if best != a or any(
        sorted(combo, reverse=True) != [ONE] + [ZERO] * (n - 1)
        for assignment in arg
        for combo in assignment
    ):
        raise AssertionError(
            "auction enumeration deviates from the indicator-partition optimum"
        )
    return AuctionResult(value=best, maximizers=tuple(maximizers))
