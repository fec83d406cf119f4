"""Dependence-structure checkers.

Comonotonicity of a pair is checked by the product criterion over all atom
pairs; counter-monotonicity is comonotonicity against the negated partner.
Negative association reduces to covariance sign checks over pairs of
upper-set indicators, enumerated exactly.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, SpaceMismatch, TooLarge
from .rationals import as_fraction
from .space import (
    ONE,
    ZERO,
    DiscreteDistribution,
    RandomVariable,
    RandomVector,
    ess_inf,
    ess_sup,
)

__all__ = [
    "MutualExclusivityType",
    "NaWitness",
    "NaVerdict",
    "DEFAULT_BUDGET",
    "is_comonotonic_pair",
    "is_counter_monotonic_pair",
    "is_comonotonic",
    "is_pairwise_counter_monotonic",
    "classify_mutual_exclusivity",
    "is_joint_mix",
    "is_negatively_associated",
    "is_negative_orthant_dependent",
    "joint_cdf",
    "joint_survival",
    "frechet_lower_bound",
]

DEFAULT_BUDGET = 1_000_000


class MutualExclusivityType(enum.Enum):
    """How a vector's components exclude one another, if at all."""

    TYPE1 = "Type1"  # at most one component above its essential infimum
    TYPE2 = "Type2"  # at most one component below its essential supremum
    BOTH = "Both"
    NEITHER = "Neither"


def _require_common_space(X: RandomVariable, Y: RandomVariable) -> None:
    if X.space != Y.space:
        raise SpaceMismatch("variables live on different spaces")


def is_comonotonic_pair(X: RandomVariable, Y: RandomVariable) -> bool:
    """True when (X(w) - X(w'))(Y(w) - Y(w')) >= 0 for all atom pairs."""
    _require_common_space(X, Y)
    pts = [(X.value[a], Y.value[a]) for a in X.space.atoms]
    for (x1, y1), (x2, y2) in itertools.combinations(pts, 2):
        if (x1 - x2) * (y1 - y2) < 0:
            return False
    return True


def is_counter_monotonic_pair(X: RandomVariable, Y: RandomVariable) -> bool:
    return is_comonotonic_pair(X, -Y)


def is_comonotonic(vector: RandomVector) -> bool:
    comps = vector.components
    return all(
        is_comonotonic_pair(comps[i], comps[j])
        for i, j in itertools.combinations(range(len(comps)), 2)
    )


def is_pairwise_counter_monotonic(vector: RandomVector) -> bool:
    """Every pair of distinct components is counter-monotonic."""
    comps = vector.components
    if len(comps) < 2:
        raise DimensionMismatch("pairwise checks need at least two components")
    return all(
        is_counter_monotonic_pair(comps[i], comps[j])
        for i, j in itertools.combinations(range(len(comps)), 2)
    )


def classify_mutual_exclusivity(vector: RandomVector) -> MutualExclusivityType:
    """Classify by counting, per atom, components away from their extremes.

    Type1 (exceedance): at most one component sits above its essential
    infimum at any atom.  Type2 (shortfall): at most one sits below its
    essential supremum.
    """
    comps = vector.components
    if len(comps) < 2:
        raise DimensionMismatch("classification needs at least two components")
    infs = [ess_inf(X) for X in comps]
    sups = [ess_sup(X) for X in comps]
    type1 = type2 = True
    for a in vector.space.atoms:
        above = sum(1 for X, lo in zip(comps, infs) if X.value[a] > lo)
        below = sum(1 for X, hi in zip(comps, sups) if X.value[a] < hi)
        if above > 1:
            type1 = False
        if below > 1:
            type2 = False
        if not (type1 or type2):
            return MutualExclusivityType.NEITHER
    if type1 and type2:
        return MutualExclusivityType.BOTH
    return MutualExclusivityType.TYPE1 if type1 else MutualExclusivityType.TYPE2


def is_joint_mix(vector: RandomVector) -> Optional[Fraction]:
    """The constant the components sum to, or None when the sum varies."""
    total = vector.sum_variable()
    vals = total.values_in_order()
    if all(v == vals[0] for v in vals):
        return vals[0]
    return None


# --- negative association -------------------------------------------------------


@dataclass(frozen=True)
class NaWitness:
    """A positively correlated pair of upper-set indicators."""

    index_set_i: tuple[int, ...]
    index_set_j: tuple[int, ...]
    upper_set_i: tuple[tuple[Fraction, ...], ...]
    upper_set_j: tuple[tuple[Fraction, ...], ...]
    covariance: Fraction


@dataclass(frozen=True)
class NaVerdict:
    negatively_associated: bool
    witness: Optional[NaWitness] = None


def _upper_sets(points: Sequence[tuple], cap: int) -> list[frozenset]:
    """All nonempty proper upper sets of distinct points under componentwise <=.

    Enumerated by backtracking along a descending linear extension: a point
    may join only when everything componentwise above it is already in.
    """
    k = len(points)
    order = sorted(range(k), key=lambda i: points[i], reverse=True)
    above = {
        i: [
            j
            for j in range(k)
            if j != i and all(pj >= pi for pj, pi in zip(points[j], points[i]))
        ]
        for i in range(k)
    }
    results: list[frozenset] = []
    chosen = [False] * k

    def walk(t: int) -> None:
        if t == k:
            size = sum(chosen)
            if 0 < size < k:
                results.append(frozenset(i for i in range(k) if chosen[i]))
                if len(results) > cap:
                    raise TooLarge(
                        f"more than {cap} upper sets on one margin"
                    )
            return
        i = order[t]
        walk(t + 1)
        if all(chosen[j] for j in above[i]):
            chosen[i] = True
            walk(t + 1)
            chosen[i] = False

    walk(0)
    return results


def _disjoint_pair_count(n: int) -> int:
    # unordered pairs of disjoint nonempty index sets
    return (3**n - 2 ** (n + 1) + 1) // 2


def is_negatively_associated(
    vector: RandomVector, budget: Optional[int] = None
) -> NaVerdict:
    """Exact negative-association verdict with a certifying witness on failure.

    Negative association asks Cov(f(X_I), g(X_J)) <= 0 for all disjoint
    nonempty index sets and all coordinatewise increasing f, g.  Since any
    increasing function on a finite grid is a positive combination of
    upper-set indicators plus a constant, it suffices to check all pairs of
    upper-set indicators; the checker enumerates exactly these.
    """
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    n = vector.n
    if n < 2:
        raise DimensionMismatch("negative association needs at least two components")
    if _disjoint_pair_count(n) > budget:
        raise TooLarge(
            f"{_disjoint_pair_count(n)} disjoint index-set pairs exceed budget {budget}"
        )
    atoms = vector.space.atoms
    masses = [vector.space.prob[a] for a in atoms]

    cache: dict[tuple[int, ...], tuple] = {}

    def margin(idx: tuple[int, ...]):
        if idx not in cache:
            raw = [tuple(vector.components[i].value[a] for i in idx) for a in atoms]
            points = sorted(set(raw))
            where = {p: t for t, p in enumerate(points)}
            atom_pt = [where[p] for p in raw]
            ups = _upper_sets(points, budget)
            cache[idx] = (points, atom_pt, ups)
        return cache[idx]

    spent = 0
    full = (1 << n) - 1
    for mask_i in range(1, full + 1):
        idx_i = tuple(k for k in range(n) if mask_i >> k & 1)
        for mask_j in range(mask_i + 1, full + 1):
            if mask_i & mask_j:
                continue
            idx_j = tuple(k for k in range(n) if mask_j >> k & 1)
            pts_i, atom_i, ups_i = margin(idx_i)
            pts_j, atom_j, ups_j = margin(idx_j)
            spent += max(1, len(ups_i) * len(ups_j))
            if spent > budget:
                raise TooLarge(
                    f"upper-set pair enumeration exceeds budget {budget}"
                )
            if not ups_i or not ups_j:
                continue
            # joint mass of (margin-i point, margin-j point)
            joint: dict[tuple[int, int], Fraction] = {}
            for t, m in enumerate(masses):
                key = (atom_i[t], atom_j[t])
                joint[key] = joint.get(key, ZERO) + m
            mass_i = [ZERO] * len(pts_i)
            for (pi, _), m in joint.items():
                mass_i[pi] += m
            mass_j = [ZERO] * len(pts_j)
            for (_, pj), m in joint.items():
                mass_j[pj] += m
            for U in ups_i:
                p_u = sum((mass_i[pi] for pi in U), ZERO)
                row = [ZERO] * len(pts_j)
                for (pi, pj), m in joint.items():
                    if pi in U:
                        row[pj] += m
                for V in ups_j:
                    p_v = sum((mass_j[pj] for pj in V), ZERO)
                    p_uv = sum((row[pj] for pj in V), ZERO)
                    cov = p_uv - p_u * p_v
                    if cov > 0:
                        return NaVerdict(
                            False,
                            NaWitness(
                                index_set_i=idx_i,
                                index_set_j=idx_j,
                                upper_set_i=tuple(sorted(pts_i[k] for k in U)),
                                upper_set_j=tuple(sorted(pts_j[k] for k in V)),
                                covariance=cov,
                            ),
                        )
    return NaVerdict(True, None)


def is_negative_orthant_dependent(vector: RandomVector) -> bool:
    """Joint cdf (and survival) below the independent product on the whole grid."""
    comps = vector.components
    if len(comps) < 2:
        raise DimensionMismatch("orthant dependence needs at least two components")
    supports = [sorted(set(X.values_in_order())) for X in comps]
    cdfs = []
    survs = []
    for X, supp in zip(comps, supports):
        cdfs.append({x: X.prob(lambda v, x=x: v <= x) for x in supp})
        survs.append({x: X.prob(lambda v, x=x: v > x) for x in supp})
    for point in itertools.product(*supports):
        lower = joint_cdf(vector, point)
        prod = ONE
        for F, x in zip(cdfs, point):
            prod *= F[x]
        if lower > prod:
            return False
        upper = joint_survival(vector, point)
        prod = ONE
        for S, x in zip(survs, point):
            prod *= S[x]
        if upper > prod:
            return False
    return True


def joint_cdf(vector: RandomVector, point: Sequence) -> Fraction:
    """P(X_1 <= x_1, ..., X_n <= x_n)."""
    xs = [as_fraction(x) for x in point]
    if len(xs) != vector.n:
        raise DimensionMismatch(f"{len(xs)} coordinates for {vector.n} components")
    total = ZERO
    for a in vector.space.atoms:
        if all(X.value[a] <= x for X, x in zip(vector.components, xs)):
            total += vector.space.prob[a]
    return total


def joint_survival(vector: RandomVector, point: Sequence) -> Fraction:
    """P(X_1 > x_1, ..., X_n > x_n)."""
    xs = [as_fraction(x) for x in point]
    if len(xs) != vector.n:
        raise DimensionMismatch(f"{len(xs)} coordinates for {vector.n} components")
    total = ZERO
    for a in vector.space.atoms:
        if all(X.value[a] > x for X, x in zip(vector.components, xs)):
            total += vector.space.prob[a]
    return total


def frechet_lower_bound(
    marginals: Sequence[DiscreteDistribution], point: Sequence
) -> Fraction:
    """Pointwise lower bound (sum of marginal cdfs minus n-1, clipped at 0)."""
    xs = [as_fraction(x) for x in point]
    if len(xs) != len(marginals):
        raise DimensionMismatch(
            f"{len(xs)} coordinates for {len(marginals)} marginals"
        )
    s = sum((F.cdf(x) for F, x in zip(marginals, xs)), ZERO) - (len(marginals) - 1)
    return max(ZERO, s)
