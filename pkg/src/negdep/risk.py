"""Quantile-based risk functionals and aggregation bounds, all exact.

Conventions: for a level a in (0, 1), ``var(F, a)`` is the left quantile of F
at 1 - a, and ``es(F, a)`` averages ``var`` over levels below a (computed as
a finite step integral).  Both are translation-equivariant and comonotonically
additive, which the tests exercise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import exactlp
from .errors import LevelOutOfRange, ParameterOutOfRange, TooLarge
from .rationals import as_fraction
from .space import (
    ONE,
    ZERO,
    DiscreteDistribution,
    RandomVariable,
    distribution_of,
)

__all__ = [
    "VarLevel",
    "AggregationReport",
    "var",
    "es",
    "convex_order_leq",
    "bernoulli_aggregation_bounds",
    "coupling_vertices",
    "coupling_sum_distribution",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1_000_000

Lossy = Union[DiscreteDistribution, RandomVariable]


@dataclass(frozen=True)
class VarLevel:
    """A quantile level, constrained to the open unit interval."""

    alpha: Fraction

    def __post_init__(self):
        a = as_fraction(self.alpha)
        if not ZERO < a < ONE:
            raise LevelOutOfRange(f"level {a} outside (0, 1)")
        object.__setattr__(self, "alpha", a)


def _level(alpha) -> Fraction:
    if isinstance(alpha, VarLevel):
        return alpha.alpha
    return VarLevel(as_fraction(alpha)).alpha


def _dist(F: Lossy) -> DiscreteDistribution:
    if isinstance(F, RandomVariable):
        return distribution_of(F)
    return F


def var(F: Lossy, alpha) -> Fraction:
    """Value-at-risk at level alpha: the left 1 - alpha quantile."""
    a = _level(alpha)
    return _dist(F).quantile(ONE - a)


def es(F: Lossy, alpha) -> Fraction:
    """Expected shortfall: the average of var over levels in (0, alpha)."""
    a = _level(alpha)
    d = _dist(F)
    total = ZERO
    upper = ZERO  # mass seen from the top down
    for pt, mass in zip(reversed(d.points), reversed(d.masses)):
        lo, hi = upper, upper + mass
        width = min(hi, a) - lo
        if width > 0:
            total += pt * width
        upper = hi
        if upper >= a:
            break
    return total / a


def convex_order_leq(F: Lossy, G: Lossy) -> bool:
    """Whether F precedes G in convex order (equal means, dominated stop-loss)."""
    dF, dG = _dist(F), _dist(G)
    if dF.mean() != dG.mean():
        return False
    # stop-loss curves are piecewise linear with kinks only at support points
    for t in sorted(set(dF.points) | set(dG.points)):
        if dF.stop_loss(t) > dG.stop_loss(t):
            return False
    return True


@dataclass(frozen=True)
class AggregationReport:
    """Extremes of VaR and ES for a sum of n Bernoulli(epsilon) risks."""

    n: int
    epsilon: Fraction
    alpha: Fraction
    var_worst: Fraction
    var_best: Fraction
    es_cm: Fraction
    es_comonotonic: Fraction
    worst_sum: DiscreteDistribution
    comonotonic_sum: DiscreteDistribution


def bernoulli_aggregation_bounds(n: int, epsilon, alpha) -> AggregationReport:
    """Best and worst VaR/ES of a sum of n Bernoulli(epsilon) risks.

    In the stated parameter regime (n/2 < alpha/epsilon < n, epsilon < 1/n)
    the counter-monotonic coupling turns the sum into a single
    Bernoulli(n * epsilon) risk, which maximises VaR (value 1) yet minimises
    ES, while the comonotonic coupling yields VaR 0 with the larger ES.
    """
    if not isinstance(n, int) or n < 2:
        raise ParameterOutOfRange(f"need an integer n >= 2, got {n!r}")
    eps = as_fraction(epsilon)
    a = as_fraction(alpha)
    if not ZERO < eps < Fraction(1, n):
        raise ParameterOutOfRange(f"epsilon {eps} outside (0, 1/{n})")
    if not ZERO < a < ONE:
        raise ParameterOutOfRange(f"alpha {a} outside (0, 1)")
    ratio = a / eps
    if not Fraction(n, 2) < ratio < n:
        raise ParameterOutOfRange(
            f"alpha/epsilon = {ratio} outside ({Fraction(n, 2)}, {n})"
        )
    worst = DiscreteDistribution.bernoulli(n * eps)
    como = DiscreteDistribution.two_point(0, n, eps)
    return AggregationReport(
        n=n,
        epsilon=eps,
        alpha=a,
        var_worst=var(worst, a),
        var_best=var(como, a),
        es_cm=es(worst, a),
        es_comonotonic=es(como, a),
        worst_sum=worst,
        comonotonic_sum=como,
    )


def coupling_vertices(
    marginals: Sequence[DiscreteDistribution], budget: Optional[int] = None
) -> list[dict]:
    """All extreme couplings of the marginals, as cell -> mass dictionaries.

    The couplings with given marginals form a bounded polytope; any linear
    (or concave) functional over it is extremised at one of these vertices,
    which makes the list a brute-force oracle for worst-case aggregation
    questions.  Budget-guarded: the basis enumeration grows combinatorially.
    """
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    cells = list(itertools.product(*[F.points for F in marginals]))
    if len(cells) > budget:
        raise TooLarge(f"{len(cells)} coupling cells exceed budget {budget}")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, F in enumerate(marginals):
        for pt, mass in zip(F.points, F.masses):
            rows.append([ONE if cell[i] == pt else ZERO for cell in cells])
            rhs.append(mass)
    verts = exactlp.polytope_vertices(rows, rhs, budget)
    return [
        {cell: w for cell, w in zip(cells, v) if w != 0} for v in verts
    ]


def coupling_sum_distribution(coupling: dict) -> DiscreteDistribution:
    """Distribution of the coordinate sum under a coupling pmf."""
    return DiscreteDistribution.from_pairs(
        (sum(cell, ZERO), w) for cell, w in coupling.items()
    )
