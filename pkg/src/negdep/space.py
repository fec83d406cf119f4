"""Finite probability spaces with exact rational masses.

A :class:`Space` is an ordered tuple of atom labels with strictly positive
rational masses summing to one.  Because no atom is null, every
"almost surely" statement in the library collapses to "at every atom", and
all verdicts are exact.

Atomless behaviour is emulated on demand: :func:`refine` splits one atom into
positively weighted children (returning a lineage map so existing random
variables can be transported), and :func:`carve_segments` refines a space
until prescribed cumulative-mass levels fall exactly on atom boundaries.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DimensionMismatch,
    InvalidDistribution,
    LevelOutOfRange,
    MassNotOne,
    NonPositiveMass,
    NotAPartition,
    ParameterOutOfRange,
    SpaceMismatch,
)
from .rationals import as_fraction

AtomId = str

ZERO = Fraction(0)
ONE = Fraction(1)

__all__ = [
    "AtomId",
    "ZERO",
    "ONE",
    "Space",
    "RandomVariable",
    "RandomVector",
    "Composition",
    "DiscreteDistribution",
    "make_space",
    "uniform_space",
    "ess_inf",
    "ess_sup",
    "expectation",
    "distribution_of",
    "refine",
    "lift_variable",
    "lift_event",
    "compose_lineage",
    "carve_segments",
]


@dataclass(frozen=True)
class Space:
    """Finite probability space: ordered atoms with positive masses summing to 1."""

    atoms: tuple[AtomId, ...]
    prob: Mapping[AtomId, Fraction]

    def __post_init__(self):
        atoms = tuple(str(a) for a in self.atoms)
        if len(set(atoms)) != len(atoms):
            raise SpaceMismatch("duplicate atom labels")
        if not atoms:
            raise MassNotOne("a probability space needs at least one atom")
        prob = {}
        for a in atoms:
            if a not in self.prob:
                raise SpaceMismatch(f"no mass given for atom {a!r}")
            m = as_fraction(self.prob[a])
            if m <= 0:
                raise NonPositiveMass(f"atom {a!r} has non-positive mass {m}")
            prob[a] = m
        if len(self.prob) != len(atoms):
            raise SpaceMismatch("mass given for unknown atoms")
        if sum(prob.values()) != ONE:
            raise MassNotOne(f"masses sum to {sum(prob.values())}, not 1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "prob", MappingProxyType(prob))

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return self.atoms == other.atoms and dict(self.prob) == dict(other.prob)

    def __hash__(self):
        return hash((self.atoms, tuple(self.prob[a] for a in self.atoms)))

    def mass(self, event: Iterable[AtomId]) -> Fraction:
        """Total probability of a set of atoms."""
        ev = set(event)
        unknown = ev - set(self.atoms)
        if unknown:
            raise SpaceMismatch(f"unknown atoms in event: {sorted(unknown)}")
        return sum((self.prob[a] for a in ev), ZERO)


def make_space(masses: Sequence, atoms: Optional[Sequence[AtomId]] = None) -> Space:
    """Build a space from a mass list; atoms default to ``w0, w1, ...``."""
    masses = [as_fraction(m) for m in masses]
    if atoms is None:
        atoms = tuple(f"w{i}" for i in range(len(masses)))
    else:
        atoms = tuple(atoms)
        if len(atoms) != len(masses):
            raise DimensionMismatch(
                f"{len(atoms)} atom labels for {len(masses)} masses"
            )
    return Space(atoms, dict(zip(atoms, masses)))


def uniform_space(n: int) -> Space:
    """Uniform space on ``n`` atoms."""
    if n < 1:
        raise NonPositiveMass("need at least one atom")
    return make_space([Fraction(1, n)] * n)


@dataclass(frozen=True)
class RandomVariable:
    """Exact rational random variable: one value per atom of its space."""

    space: Space
    value: Mapping[AtomId, Fraction]

    def __post_init__(self):
        vals = {}
        for a in self.space.atoms:
            if a not in self.value:
                raise SpaceMismatch(f"no value for atom {a!r}")
            vals[a] = as_fraction(self.value[a])
        if len(self.value) != len(self.space.atoms):
            raise SpaceMismatch("values given for unknown atoms")
        object.__setattr__(self, "value", MappingProxyType(vals))

    def __eq__(self, other):
        if not isinstance(other, RandomVariable):
            return NotImplemented
        return self.space == other.space and dict(self.value) == dict(other.value)

    def __hash__(self):
        return hash((self.space, tuple(self.value[a] for a in self.space.atoms)))

    # --- constructors -------------------------------------------------------

    @staticmethod
    def from_values(space: Space, values: Sequence) -> "RandomVariable":
        values = list(values)
        if len(values) != len(space.atoms):
            raise DimensionMismatch(
                f"{len(values)} values for {len(space.atoms)} atoms"
            )
        return RandomVariable(space, dict(zip(space.atoms, values)))

    @staticmethod
    def constant(space: Space, c) -> "RandomVariable":
        c = as_fraction(c)
        return RandomVariable(space, {a: c for a in space.atoms})

    @staticmethod
    def indicator(space: Space, event: Iterable[AtomId]) -> "RandomVariable":
        ev = set(event)
        unknown = ev - set(space.atoms)
        if unknown:
            raise SpaceMismatch(f"unknown atoms in event: {sorted(unknown)}")
        return RandomVariable(
            space, {a: ONE if a in ev else ZERO for a in space.atoms}
        )

    # --- arithmetic -----------------------------------------------------------

    def _zip(self, other, op):
        if isinstance(other, RandomVariable):
            if self.space != other.space:
                raise SpaceMismatch("variables live on different spaces")
            return RandomVariable(
                self.space,
                {a: op(self.value[a], other.value[a]) for a in self.space.atoms},
            )
        try:
            c = as_fraction(other)
        except Exception:
            return NotImplemented
        return RandomVariable(
            self.space, {a: op(self.value[a], c) for a in self.space.atoms}
        )

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._zip(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._zip(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self):
        return RandomVariable(
            self.space, {a: -self.value[a] for a in self.space.atoms}
        )

    # --- probability queries --------------------------------------------------

    def event(self, predicate) -> frozenset:
        """Atoms where ``predicate(value)`` holds."""
        return frozenset(a for a in self.space.atoms if predicate(self.value[a]))

    def prob(self, predicate) -> Fraction:
        return self.space.mass(self.event(predicate))

    def values_in_order(self) -> tuple[Fraction, ...]:
        return tuple(self.value[a] for a in self.space.atoms)

    def is_degenerate(self) -> bool:
        vals = self.values_in_order()
        return all(v == vals[0] for v in vals)


@dataclass(frozen=True)
class RandomVector:
    """Tuple of random variables on one common space."""

    components: tuple[RandomVariable, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise DimensionMismatch("a random vector needs at least one component")
        sp = comps[0].space
        for X in comps[1:]:
            if X.space != sp:
                raise SpaceMismatch("components live on different spaces")
        object.__setattr__(self, "components", comps)

    @staticmethod
    def from_rows(space: Space, rows: Sequence[Sequence]) -> "RandomVector":
        return RandomVector(
            tuple(RandomVariable.from_values(space, row) for row in rows)
        )

    @property
    def space(self) -> Space:
        return self.components[0].space

    @property
    def n(self) -> int:
        return len(self.components)

    def sum_variable(self) -> RandomVariable:
        total = self.components[0]
        for X in self.components[1:]:
            total = total + X
        return total

    def point_at(self, atom: AtomId) -> tuple[Fraction, ...]:
        return tuple(X.value[atom] for X in self.components)

    def subvector(self, indices: Sequence[int]) -> "RandomVector":
        return RandomVector(tuple(self.components[i] for i in indices))


@dataclass(frozen=True)
class Composition:
    """Ordered partition of a space's atoms into (possibly empty) blocks."""

    space: Space
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise DimensionMismatch("a composition needs at least one block")
        seen: set = set()
        for b in blocks:
            unknown = b - set(self.space.atoms)
            if unknown:
                raise NotAPartition(f"unknown atoms in block: {sorted(unknown)}")
            if seen & b:
                raise NotAPartition(f"atoms in several blocks: {sorted(seen & b)}")
            seen |= b
        if seen != set(self.space.atoms):
            raise NotAPartition(
                f"atoms not covered: {sorted(set(self.space.atoms) - seen)}"
            )
        object.__setattr__(self, "blocks", blocks)

    @staticmethod
    def from_index_lists(space: Space, index_lists: Sequence[Sequence[int]]) -> "Composition":
        atoms = space.atoms
        return Composition(
            space,
            tuple(frozenset(atoms[i] for i in block) for block in index_lists),
        )

    @property
    def n(self) -> int:
        return len(self.blocks)

    def block_masses(self) -> tuple[Fraction, ...]:
        return tuple(self.space.mass(b) for b in self.blocks)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported distribution on the rationals, stored in sorted order."""

    points: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        pts = [as_fraction(p) for p in self.points]
        ms = [as_fraction(m) for m in self.masses]
        if len(pts) != len(ms):
            raise InvalidDistribution(
                f"{len(pts)} points against {len(ms)} masses"
            )
        if not pts:
            raise InvalidDistribution("empty support")
        if len(set(pts)) != len(pts):
            raise InvalidDistribution("duplicate support points")
        for p, m in zip(pts, ms):
            if m <= 0:
                raise NonPositiveMass(f"mass at {p} is non-positive: {m}")
        if sum(ms) != ONE:
            raise MassNotOne(f"masses sum to {sum(ms)}, not 1")
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        object.__setattr__(self, "points", tuple(pts[i] for i in order))
        object.__setattr__(self, "masses", tuple(ms[i] for i in order))

    # --- constructors -----------------------------------------------------

    @staticmethod
    def from_pairs(pairs: Iterable[tuple]) -> "DiscreteDistribution":
        acc: dict[Fraction, Fraction] = {}
        for p, m in pairs:
            p = as_fraction(p)
            acc[p] = acc.get(p, ZERO) + as_fraction(m)
        acc = {p: m for p, m in acc.items() if m != 0}
        return DiscreteDistribution(tuple(acc.keys()), tuple(acc.values()))

    @staticmethod
    def point_mass(point) -> "DiscreteDistribution":
        return DiscreteDistribution((as_fraction(point),), (ONE,))

    @staticmethod
    def two_point(low, high, p_high) -> "DiscreteDistribution":
        """Mass ``p_high`` at ``high``, the rest at ``low``."""
        p = as_fraction(p_high)
        if p == 0:
            return DiscreteDistribution.point_mass(low)
        if p == 1:
            return DiscreteDistribution.point_mass(high)
        return DiscreteDistribution.from_pairs([(low, 1 - p), (high, p)])

    @staticmethod
    def bernoulli(p) -> "DiscreteDistribution":
        return DiscreteDistribution.two_point(0, 1, p)

    # --- queries -------------------------------------------------------------

    def cdf(self, x) -> Fraction:
        x = as_fraction(x)
        return sum((m for p, m in zip(self.points, self.masses) if p <= x), ZERO)

    def survival(self, x) -> Fraction:
        return ONE - self.cdf(x)

    def quantile(self, u) -> Fraction:
        """Left quantile: ``inf { x : cdf(x) >= u }`` for ``u`` in (0, 1]."""
        u = as_fraction(u)
        if not 0 < u <= 1:
            raise LevelOutOfRange(f"quantile level {u} outside (0, 1]")
        acc = ZERO
        for p, m in zip(self.points, self.masses):
            acc += m
            if acc >= u:
                return p
        return self.points[-1]

    def mean(self) -> Fraction:
        return sum((p * m for p, m in zip(self.points, self.masses)), ZERO)

    def stop_loss(self, t) -> Fraction:
        """Expected excess ``E[(X - t)_+]``."""
        t = as_fraction(t)
        return sum(
            ((p - t) * m for p, m in zip(self.points, self.masses) if p > t), ZERO
        )

    def negate(self) -> "DiscreteDistribution":
        return DiscreteDistribution.from_pairs(
            (-p, m) for p, m in zip(self.points, self.masses)
        )

    def shift(self, c) -> "DiscreteDistribution":
        c = as_fraction(c)
        return DiscreteDistribution.from_pairs(
            (p + c, m) for p, m in zip(self.points, self.masses)
        )

    def is_degenerate(self) -> bool:
        return len(self.points) == 1

    def min(self) -> Fraction:
        return self.points[0]

    def max(self) -> Fraction:
        return self.points[-1]

    def cumulative_masses(self) -> tuple[Fraction, ...]:
        out, acc = [], ZERO
        for m in self.masses:
            acc += m
            out.append(acc)
        return tuple(out)


# --- pointwise functionals ----------------------------------------------------


def ess_inf(X: RandomVariable) -> Fraction:
    """Essential infimum; with no null atoms this is the plain minimum."""
    return min(X.values_in_order())


def ess_sup(X: RandomVariable) -> Fraction:
    return max(X.values_in_order())


def expectation(X: RandomVariable) -> Fraction:
    return sum((X.space.prob[a] * X.value[a] for a in X.space.atoms), ZERO)


def distribution_of(X: RandomVariable) -> DiscreteDistribution:
    return DiscreteDistribution.from_pairs(
        (X.value[a], X.space.prob[a]) for a in X.space.atoms
    )


# --- refinement ----------------------------------------------------------------


def refine(space: Space, atom: AtomId, weights: Sequence) -> tuple[Space, dict]:
    """Split ``atom`` into children with conditional ``weights``.

    Returns the refined space and a lineage map sending *every* old atom to
    the tuple of its descendants (untouched atoms map to themselves).
    Splitting with ``[1]`` returns the space unchanged.
    """
    if atom not in space.atoms:
        raise SpaceMismatch(f"unknown atom {atom!r}")
    ws = [as_fraction(w) for w in weights]
    if not ws:
        raise NonPositiveMass("need at least one weight")
    for w in ws:
        if w <= 0:
            raise NonPositiveMass(f"split weight {w} is non-positive")
    if sum(ws) != ONE:
        raise MassNotOne(f"split weights sum to {sum(ws)}, not 1")
    if len(ws) == 1:
        return space, {a: (a,) for a in space.atoms}

    children = tuple(f"{atom}.{k}" for k in range(len(ws)))
    clash = set(children) & set(space.atoms)
    if clash:
        raise SpaceMismatch(f"child labels already taken: {sorted(clash)}")

    new_atoms: list[AtomId] = []
    new_prob: dict[AtomId, Fraction] = {}
    lineage: dict[AtomId, tuple[AtomId, ...]] = {}
    for a in space.atoms:
        if a == atom:
            new_atoms.extend(children)
            for c, w in zip(children, ws):
                new_prob[c] = space.prob[a] * w
            lineage[a] = children
        else:
            new_atoms.append(a)
            new_prob[a] = space.prob[a]
            lineage[a] = (a,)
    return Space(tuple(new_atoms), new_prob), lineage


def compose_lineage(first: Mapping, second: Mapping) -> dict:
    """Chain two lineage maps (old -> mid, mid -> new) into old -> new."""
    return {
        a: tuple(itertools.chain.from_iterable(second[c] for c in first[a]))
        for a in first
    }


def lift_variable(X: RandomVariable, refined: Space, lineage: Mapping) -> RandomVariable:
    """Transport a variable along a refinement (children copy the parent value)."""
    vals: dict[AtomId, Fraction] = {}
    for a in X.space.atoms:
        for c in lineage[a]:
            vals[c] = X.value[a]
    return RandomVariable(refined, vals)


def lift_event(event: Iterable[AtomId], lineage: Mapping) -> frozenset:
    return frozenset(
        itertools.chain.from_iterable(lineage[a] for a in set(event))
    )


def carve_segments(
    space: Space, ordered_atoms: Sequence[AtomId], levels: Sequence
) -> tuple[Space, dict, tuple[tuple[AtomId, ...], ...]]:
    """Refine until the running mass along ``ordered_atoms`` hits each level exactly.

    ``levels`` must be strictly increasing within ``(0, 1]``.  Returns the
    refined space, the lineage from the original space, and ``len(levels)+1``
    segments of refined atoms: segment ``k`` holds the atoms whose cumulative
    mass lies in ``(levels[k-1], levels[k]]`` (the last segment holds whatever
    sits above the final level and may be empty).
    """
    order = list(ordered_atoms)
    if sorted(order) != sorted(space.atoms):
        raise SpaceMismatch("ordered_atoms is not a permutation of the atoms")
    lvls = [as_fraction(l) for l in levels]
    for prev, cur in zip([ZERO] + lvls, lvls):
        if not prev < cur <= ONE:
            raise ParameterOutOfRange(
                f"carve levels must increase strictly within (0, 1]; got {cur}"
            )

    lineage = {a: (a,) for a in space.atoms}
    cur_space = space
    segments: list[list[AtomId]] = [[] for _ in range(len(lvls) + 1)]
    cum = ZERO
    li = 0  # index of the first level not yet reached
    i = 0
    while i < len(order):
        atom = order[i]
        m = cur_space.prob[atom]
        cuts = []
        j = li
        while j < len(lvls) and lvls[j] < cum + m:
            if lvls[j] > cum:
                cuts.append(lvls[j])
            j += 1
        if cuts:
            ws, prev = [], cum
            for L in cuts:
                ws.append((L - prev) / m)
                prev = L
            ws.append((cum + m - prev) / m)
            cur_space, step = refine(cur_space, atom, ws)
            lineage = compose_lineage(lineage, step)
            order[i : i + 1] = list(step[atom])
            continue  # children align with the cuts; reprocess from the first
        segments[li].append(atom)
        cum += m
        if li < len(lvls) and lvls[li] == cum:
            li += 1
        i += 1
    return cur_space, lineage, tuple(tuple(seg) for seg in segments)
