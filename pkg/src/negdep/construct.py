"""Building and dismantling extreme-dependence vectors.

Two canonical forms appear here:

* comonotonic vectors, assembled by feeding one uniform "driver" through the
  marginal quantile functions (the space must already resolve the marginals'
  cumulative levels; :func:`refine_for_marginals` prepares it);
* pairwise counter-monotonic vectors with at least three non-degenerate
  components, which always carry a scaling representation
  ``X_i = Z * 1_{A_i} + m_i`` with a sign-constant Z and a partition (A_i).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .dependence import (
    MutualExclusivityType,
    classify_mutual_exclusivity,
    is_comonotonic,
    is_counter_monotonic_pair,
    is_pairwise_counter_monotonic,
)
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    NotCounterMonotonicPair,
    NotMonotone,
    NotPcm,
    NotRepresentable,
    OverlappingIndexSets,
    SignViolation,
    SpaceMismatch,
    TooFewNonDegenerate,
    UncoveredSupport,
)
from .rationals import as_fraction
from .space import (
    ONE,
    ZERO,
    Composition,
    DiscreteDistribution,
    RandomVariable,
    RandomVector,
    Space,
    carve_segments,
    ess_inf,
    ess_sup,
)

__all__ = [
    "MonotoneMap",
    "PcmRepresentation",
    "build_comonotonic",
    "refine_for_marginals",
    "build_pcm",
    "decompose_pcm",
    "apply_increasing_transforms",
    "decompose_cm_pair",
]


@dataclass(frozen=True)
class MonotoneMap:
    """Tabulated coordinatewise-increasing map on a finite set of points."""

    entries: Mapping[tuple, Fraction]

    def __post_init__(self):
        table: dict[tuple[Fraction, ...], Fraction] = {}
        for key, out in self.entries.items():
            if not isinstance(key, tuple):
                key = (key,)
            table[tuple(as_fraction(k) for k in key)] = as_fraction(out)
        if not table:
            raise DimensionMismatch("a monotone map needs at least one entry")
        arities = {len(k) for k in table}
        if len(arities) != 1:
            raise DimensionMismatch(f"mixed input arities: {sorted(arities)}")
        for a, b in itertools.combinations(table, 2):
            if all(x <= y for x, y in zip(a, b)) and table[a] > table[b]:
                raise NotMonotone(f"f{a} = {table[a]} > f{b} = {table[b]}")
            if all(y <= x for x, y in zip(a, b)) and table[b] > table[a]:
                raise NotMonotone(f"f{b} = {table[b]} > f{a} = {table[a]}")
        object.__setattr__(self, "entries", dict(sorted(table.items())))

    @property
    def arity(self) -> int:
        return len(next(iter(self.entries)))

    def apply(self, point) -> Fraction:
        if not isinstance(point, tuple):
            point = (point,)
        point = tuple(as_fraction(x) for x in point)
        if len(point) != self.arity:
            raise DimensionMismatch(
                f"point of arity {len(point)} for a map of arity {self.arity}"
            )
        if point not in self.entries:
            raise UncoveredSupport(f"map not tabulated at {point}")
        return self.entries[point]

    @staticmethod
    def tabulate(pairs) -> "MonotoneMap":
        return MonotoneMap(dict(pairs))


@dataclass(frozen=True)
class PcmRepresentation:
    """Scaling form ``X_i = z * 1[A_i] + m_i`` of a counter-monotonic vector.

    ``kind`` fixes the sign constraint: exceedance (Type1) needs ``z >= 0``,
    shortfall (Type2) needs ``z <= 0``.  A vanishing z satisfies either; by
    convention it is recorded as Type1.
    """

    z: RandomVariable
    composition: Composition
    shifts: tuple[Fraction, ...]
    kind: MutualExclusivityType

    def __post_init__(self):
        if self.composition.space != self.z.space:
            raise SpaceMismatch("z and the composition live on different spaces")
        shifts = tuple(as_fraction(s) for s in self.shifts)
        if len(shifts) != self.composition.n:
            raise ArityMismatch(
                f"{len(shifts)} shifts for {self.composition.n} blocks"
            )
        if self.kind not in (
            MutualExclusivityType.TYPE1,
            MutualExclusivityType.TYPE2,
        ):
            raise SignViolation("representation kind must be Type1 or Type2")
        lo, hi = ess_inf(self.z), ess_sup(self.z)
        if self.kind is MutualExclusivityType.TYPE1 and lo < 0:
            raise SignViolation(f"Type1 requires z >= 0; min is {lo}")
        if self.kind is MutualExclusivityType.TYPE2 and hi > 0:
            raise SignViolation(f"Type2 requires z <= 0; max is {hi}")
        object.__setattr__(self, "shifts", shifts)

    @property
    def total_shift(self) -> Fraction:
        return sum(self.shifts, ZERO)

    def realize(self) -> RandomVector:
        space = self.z.space
        comps = []
        for block, shift in zip(self.composition.blocks, self.shifts):
            vals = {
                a: (self.z.value[a] if a in block else ZERO) + shift
                for a in space.atoms
            }
            comps.append(RandomVariable(space, vals))
        return RandomVector(tuple(comps))


def build_pcm(
    z: RandomVariable,
    composition: Composition,
    shifts: Sequence,
    kind: Optional[MutualExclusivityType] = None,
) -> RandomVector:
    """Realise ``X_i = z * 1[A_i] + m_i``; infers the sign kind when omitted."""
    if kind is None:
        lo, hi = ess_inf(z), ess_sup(z)
        if lo >= 0:
            kind = MutualExclusivityType.TYPE1
        elif hi <= 0:
            kind = MutualExclusivityType.TYPE2
        else:
            raise SignViolation(
                f"z changes sign (min {lo}, max {hi}); no scaling form applies"
            )
    rep = PcmRepresentation(z, composition, tuple(shifts), kind)
    return rep.realize()


def _nondegenerate_count(vector: RandomVector) -> int:
    return sum(1 for X in vector.components if not X.is_degenerate())


def decompose_pcm(vector: RandomVector) -> PcmRepresentation:
    """Recover the scaling representation of a counter-monotonic vector.

    Requires at least three non-degenerate components; with fewer, pairwise
    counter-monotonicity does not pin down the scaling form.
    """
    if not is_pairwise_counter_monotonic(vector):
        raise NotPcm("vector is not pairwise counter-monotonic")
    if _nondegenerate_count(vector) < 3:
        raise TooFewNonDegenerate(
            "the scaling representation needs >= 3 non-degenerate components"
        )
    kind = classify_mutual_exclusivity(vector)
    if kind is MutualExclusivityType.NEITHER:
        # unreachable for a genuine counter-monotonic vector of this size
        raise NotPcm("no mutual-exclusivity structure found")
    if kind is MutualExclusivityType.BOTH:  # impossible with >= 3 non-degenerate
        kind = MutualExclusivityType.TYPE1
    space = vector.space
    comps = vector.components
    if kind is MutualExclusivityType.TYPE1:
        shifts = tuple(ess_inf(X) for X in comps)
        raised = [
            frozenset(a for a in space.atoms if X.value[a] > s)
            for X, s in zip(comps, shifts)
        ]
    else:
        shifts = tuple(ess_sup(X) for X in comps)
        raised = [
            frozenset(a for a in space.atoms if X.value[a] < s)
            for X, s in zip(comps, shifts)
        ]
    m = sum(shifts, ZERO)
    z = vector.sum_variable() - m
    rest = frozenset(space.atoms) - frozenset(itertools.chain.from_iterable(raised))
    blocks = [raised[0] | rest] + raised[1:]
    return PcmRepresentation(z, Composition(space, tuple(blocks)), shifts, kind)


def refine_for_marginals(
    space: Space, marginals: Sequence[DiscreteDistribution]
) -> tuple[Space, dict]:
    """Refine a space so every marginal's cumulative levels sit on atom boundaries."""
    levels = sorted(
        {c for F in marginals for c in F.cumulative_masses() if c < ONE}
    )
    refined, lineage, _ = carve_segments(space, space.atoms, levels + [ONE])
    return refined, lineage


def build_comonotonic(
    space: Space, marginals: Sequence[DiscreteDistribution]
) -> RandomVector:
    """Drive every marginal's quantile function with one common uniform rank.

    Atoms are read in their given order as the rank variable; each marginal's
    cumulative levels must already fall on the induced mass boundaries, else
    :class:`NotRepresentable` is raised (``refine_for_marginals`` fixes that).
    """
    if not marginals:
        raise DimensionMismatch("need at least one marginal")
    prefix: list[Fraction] = []
    acc = ZERO
    for a in space.atoms:
        acc += space.prob[a]
        prefix.append(acc)
    boundary = set(prefix)
    comps = []
    for F in marginals:
        missing = [c for c in F.cumulative_masses() if c not in boundary]
        if missing:
            raise NotRepresentable(
                f"cumulative level {missing[0]} does not fall on an atom boundary"
            )
        vals = {}
        for a, right in zip(space.atoms, prefix):
            vals[a] = F.quantile(right)
        comps.append(RandomVariable(space, vals))
    return RandomVector(tuple(comps))


def apply_increasing_transforms(
    vector: RandomVector,
    index_sets: Sequence[Sequence[int]],
    maps: Sequence[MonotoneMap],
) -> RandomVector:
    """Push groups of components through increasing maps.

    With pairwise disjoint index sets the input must be pairwise
    counter-monotonic and the output is again so; overlapping index sets are
    admitted only for comonotonic input (where the output stays comonotonic).
    """
    if len(index_sets) != len(maps):
        raise ArityMismatch(
            f"{len(index_sets)} index sets against {len(maps)} maps"
        )
    if len(index_sets) < 2:
        raise DimensionMismatch("need at least two output components")
    sets = []
    for I in index_sets:
        I = tuple(int(i) for i in I)
        if not I:
            raise DimensionMismatch("empty index set")
        if any(i < 0 or i >= vector.n for i in I):
            raise DimensionMismatch(f"index out of range in {I}")
        if len(set(I)) != len(I):
            raise DimensionMismatch(f"repeated index within {I}")
        sets.append(I)
    for f, I in zip(maps, sets):
        if f.arity != len(I):
            raise ArityMismatch(
                f"map of arity {f.arity} applied to {len(I)} components"
            )
    disjoint = all(
        not (set(a) & set(b)) for a, b in itertools.combinations(sets, 2)
    )
    if disjoint:
        if not is_pairwise_counter_monotonic(vector):
            raise NotPcm("vector is not pairwise counter-monotonic")
    else:
        if not is_comonotonic(vector):
            raise OverlappingIndexSets(
                "overlapping index sets need a comonotonic input vector"
            )
    space = vector.space
    comps = []
    for f, I in zip(maps, sets):
        vals = {a: f.apply(tuple(vector.components[i].value[a] for i in I))
                for a in space.atoms}
        comps.append(RandomVariable(space, vals))
    return RandomVector(tuple(comps))


def decompose_cm_pair(
    X: RandomVariable, Y: RandomVariable
) -> tuple[MonotoneMap, MonotoneMap]:
    """Write a counter-monotonic pair as increasing functions of its difference.

    Returns (f, g) with ``X = f(X - Y)`` and ``Y = g(Y - X)`` on every atom.
    """
    if not is_counter_monotonic_pair(X, Y):
        raise NotCounterMonotonicPair("pair is not counter-monotonic")
    diff = X - Y
    f_tab: dict[tuple, Fraction] = {}
    g_tab: dict[tuple, Fraction] = {}
    for a in X.space.atoms:
        d = diff.value[a]
        f_tab[(d,)] = X.value[a]
        g_tab[(-d,)] = Y.value[a]
    return MonotoneMap(f_tab), MonotoneMap(g_tab)
