"""Distribution-class questions: which marginals admit which structures.

Given marginals F_1, ..., F_n, three questions are answered exactly:

* does some coupling make the vector pairwise counter-monotonic, and of
  which exclusivity type (:func:`supports_pcm`);
* does some coupling make it simultaneously a joint mix *and* pairwise
  counter-monotonic (:func:`classify_both_support`), which pins the marginals
  down to a rigid two-point family, an antithetic pair, or all constants;
* does some coupling make the sum constant at all (:func:`joint_mix_feasible`),
  decided by an exact feasibility program over the aligned grid.

:func:`construct_pcm_with_marginals` actually builds the coupling on (a
refinement of) a given space whenever one exists.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import exactlp
from .errors import DimensionMismatch, TooLarge, Unsupported
from .space import (
    ONE,
    ZERO,
    DiscreteDistribution,
    RandomVariable,
    RandomVector,
    Space,
    carve_segments,
)

__all__ = [
    "PcmSupport",
    "TwoPointForm",
    "SymmetricPairForm",
    "AllDegenerateForm",
    "BothSupportForm",
    "PcmConstruction",
    "DEFAULT_BUDGET",
    "supports_pcm",
    "classify_both_support",
    "construct_pcm_with_marginals",
    "joint_mix_feasible",
    "joint_mix_witness",
]

DEFAULT_BUDGET = 1_000_000


class PcmSupport(enum.Enum):
    """Whether a marginal class admits a pairwise counter-monotonic coupling."""

    BIVARIATE = "Bivariate"  # at most two non-degenerate marginals: always
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    BOTH = "Both"
    NO = "No"


@dataclass(frozen=True)
class TwoPointForm:
    """Marginals ``F_i = p_i d(shift_i + gap) + (1 - p_i) d(shift_i)``, sum(p) = 1.

    Exactly these classes (with at least three non-degenerate members) carry a
    coupling that is a joint mix and pairwise counter-monotonic at once; the
    constant sum is ``gap + sum(shifts)``.  The gap may be negative, in which
    case ``shift_i`` is the upper point.
    """

    gap: Fraction
    shifts: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]

    @property
    def center(self) -> Fraction:
        return self.gap + sum(self.shifts, ZERO)


@dataclass(frozen=True)
class SymmetricPairForm:
    """Two non-degenerate marginals that are reflections: X_i + X_j = pair_sum."""

    first: int
    second: int
    pair_sum: Fraction


@dataclass(frozen=True)
class AllDegenerateForm:
    values: tuple[Fraction, ...]


BothSupportForm = Union[TwoPointForm, SymmetricPairForm, AllDegenerateForm]


@dataclass(frozen=True)
class PcmConstruction:
    """A counter-monotonic coupling realised on a (possibly refined) space."""

    vector: RandomVector
    lineage: dict

    @property
    def space(self) -> Space:
        return self.vector.space


def _check_marginals(marginals: Sequence[DiscreteDistribution]) -> None:
    if len(marginals) < 2:
        raise DimensionMismatch("need at least two marginals")


def _nondegenerate_indices(marginals: Sequence[DiscreteDistribution]) -> list[int]:
    return [i for i, F in enumerate(marginals) if not F.is_degenerate()]


def supports_pcm(marginals: Sequence[DiscreteDistribution]) -> PcmSupport:
    """Decide counter-monotonic couplability from tail masses alone.

    With at most two non-degenerate marginals an antitone coupling always
    works.  With three or more, a coupling exists exactly when the exceedance
    probabilities ``1 - P(X_i = min)`` sum to at most one (Type1), or dually
    for the shortfall probabilities (Type2).
    """
    _check_marginals(marginals)
    nondeg = _nondegenerate_indices(marginals)
    if len(nondeg) <= 2:
        return PcmSupport.BIVARIATE
    heads = sum((ONE - F.cdf(F.min()) for F in marginals), ZERO)
    tails = sum((ONE - F.masses[-1] for F in marginals), ZERO)
    t1 = heads <= ONE
    t2 = tails <= ONE
    if t1 and t2:  # unreachable with >= 3 non-degenerate marginals
        return PcmSupport.BOTH
    if t1:
        return PcmSupport.TYPE1
    if t2:
        return PcmSupport.TYPE2
    return PcmSupport.NO


def classify_both_support(
    marginals: Sequence[DiscreteDistribution],
) -> Optional[BothSupportForm]:
    """Classify classes coupling into a joint mix that is also counter-monotonic.

    Returns None when no such coupling exists.  The positive cases: all
    marginals degenerate; exactly two non-degenerate ones forming an
    antithetic (reflection) pair; or every marginal two-point with a common
    gap and exceedance masses summing to one (in one of the two orientations).
    """
    _check_marginals(marginals)
    nondeg = _nondegenerate_indices(marginals)
    if not nondeg:
        return AllDegenerateForm(tuple(F.points[0] for F in marginals))
    if len(nondeg) == 1:
        return None  # its variation cannot cancel against constants
    if len(nondeg) == 2:
        i, j = nondeg
        Fi, Fj = marginals[i], marginals[j]
        c = Fi.min() + Fj.max()
        mirrored = Fj.negate().shift(c)
        if mirrored == Fi:
            return SymmetricPairForm(first=i, second=j, pair_sum=c)
        return None
    # three or more non-degenerate members: rigid two-point family
    if any(len(marginals[i].points) != 2 for i in nondeg):
        return None
    gaps = {marginals[i].max() - marginals[i].min() for i in nondeg}
    if len(gaps) != 1:
        return None
    g = gaps.pop()
    for gap in (g, -g):
        shifts, masses = [], []
        for F in marginals:
            if F.is_degenerate():
                shifts.append(F.points[0])
                masses.append(ZERO)
            elif gap > 0:
                shifts.append(F.min())
                masses.append(F.masses[-1])  # mass at the upper point
            else:
                shifts.append(F.max())
                masses.append(F.masses[0])  # mass at the lower point
        if sum(masses, ZERO) == ONE:
            return TwoPointForm(gap=gap, shifts=tuple(shifts), masses=tuple(masses))
    return None


# --- construction ----------------------------------------------------------------


def _prefix_intervals(space: Space) -> list[tuple[Fraction, Fraction]]:
    out, acc = [], ZERO
    for a in space.atoms:
        nxt = acc + space.prob[a]
        out.append((acc, nxt))
        acc = nxt
    return out


def _antitone_pair_values(
    space: Space, Fa: DiscreteDistribution, Fb: DiscreteDistribution
) -> tuple[Space, dict, dict, dict]:
    """Couple Fa increasing and Fb decreasing along the atom order."""
    levels = sorted(
        set(Fa.cumulative_masses())
        | {ONE - c for c in Fb.cumulative_masses() if c < ONE}
        | {ONE}
    )
    refined, lineage, _ = carve_segments(space, space.atoms, levels)
    va, vb = {}, {}
    for a, (left, right) in zip(refined.atoms, _prefix_intervals(refined)):
        va[a] = Fa.quantile(right)
        vb[a] = Fb.quantile(ONE - left)
    return refined, lineage, va, vb


def _type1_construction(
    space: Space, marginals: Sequence[DiscreteDistribution]
) -> PcmConstruction:
    """Tile (0, 1] with one run of exceedance intervals per marginal."""
    cuts: list[Fraction] = []
    owner: list[tuple[int, Fraction]] = []
    cursor = ZERO
    for i, F in enumerate(marginals):
        for pt, mass in zip(F.points, F.masses):
            if pt == F.min():
                continue
            cursor += mass
            cuts.append(cursor)
            owner.append((i, pt))
    if cursor < ONE:
        cuts.append(ONE)
    refined, lineage, segments = carve_segments(space, space.atoms, cuts)
    values = {
        i: {a: F.min() for a in refined.atoms} for i, F in enumerate(marginals)
    }
    for seg, who in zip(segments, owner):
        i, pt = who
        for a in seg:
            values[i][a] = pt
    comps = tuple(
        RandomVariable(refined, values[i]) for i in range(len(marginals))
    )
    return PcmConstruction(RandomVector(comps), lineage)


def construct_pcm_with_marginals(
    space: Space, marginals: Sequence[DiscreteDistribution]
) -> PcmConstruction:
    """Build a counter-monotonic coupling with the given marginals.

    The space is refined as needed (the lineage records how).  Raises
    :class:`Unsupported` when the class admits no such coupling.
    """
    verdict = supports_pcm(marginals)
    if verdict is PcmSupport.NO:
        raise Unsupported("marginals admit no counter-monotonic coupling")
    if verdict is PcmSupport.BIVARIATE:
        nondeg = _nondegenerate_indices(marginals)
        if len(nondeg) < 2:
            cuts = (
                sorted(set(marginals[nondeg[0]].cumulative_masses()) | {ONE})
                if nondeg
                else [ONE]
            )
            refined, lineage, _ = carve_segments(space, space.atoms, cuts)
            comps = []
            for i, F in enumerate(marginals):
                vals = {}
                for a, (_, right) in zip(refined.atoms, _prefix_intervals(refined)):
                    vals[a] = F.quantile(right)
                comps.append(RandomVariable(refined, vals))
            return PcmConstruction(RandomVector(tuple(comps)), lineage)
        i, j = nondeg
        refined, lineage, va, vb = _antitone_pair_values(
            space, marginals[i], marginals[j]
        )
        comps = []
        for k, F in enumerate(marginals):
            if k == i:
                comps.append(RandomVariable(refined, va))
            elif k == j:
                comps.append(RandomVariable(refined, vb))
            else:
                comps.append(RandomVariable.constant(refined, F.points[0]))
        return PcmConstruction(RandomVector(tuple(comps)), lineage)
    if verdict in (PcmSupport.TYPE1, PcmSupport.BOTH):
        return _type1_construction(space, marginals)
    # Type2: negate, build the exceedance form, negate back
    built = _type1_construction(space, [F.negate() for F in marginals])
    comps = tuple(-X for X in built.vector.components)
    return PcmConstruction(RandomVector(comps), built.lineage)


# --- joint mixes -------------------------------------------------------------------


def _hyperplane_cells(
    supports: Sequence[Sequence[Fraction]], target: Fraction, budget: int
) -> list[tuple[Fraction, ...]]:
    """Grid points with coordinate sum equal to target, found by pruned search."""
    n = len(supports)
    min_rest = [ZERO] * (n + 1)
    max_rest = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        min_rest[i] = min_rest[i + 1] + min(supports[i])
        max_rest[i] = max_rest[i + 1] + max(supports[i])
    cells: list[tuple[Fraction, ...]] = []
    partial: list[Fraction] = []

    def walk(i: int, acc: Fraction) -> None:
        if i == n:
            if acc == target:
                cells.append(tuple(partial))
                if len(cells) > budget:
                    raise TooLarge(
                        f"more than {budget} grid cells on the target hyperplane"
                    )
            return
        for v in supports[i]:
            if acc + v + min_rest[i + 1] <= target <= acc + v + max_rest[i + 1]:
                partial.append(v)
                walk(i + 1, acc + v)
                partial.pop()

    walk(0, ZERO)
    return cells


def joint_mix_witness(
    marginals: Sequence[DiscreteDistribution], budget: Optional[int] = None
) -> Optional[dict]:
    """A coupling with constant sum (cell -> mass), or None when impossible.

    The constant can only be the sum of the marginal means, so feasibility is
    a single exact program over the cells of that hyperplane.
    """
    _check_marginals(marginals)
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    center = sum((F.mean() for F in marginals), ZERO)
    supports = [list(F.points) for F in marginals]
    cells = _hyperplane_cells(supports, center, budget)
    if not cells:
        return None
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, F in enumerate(marginals):
        for pt, mass in zip(F.points, F.masses):
            rows.append([ONE if cell[i] == pt else ZERO for cell in cells])
            rhs.append(mass)
    sol = exactlp.nonneg_solve(rows, rhs)
    if sol is None:
        return None
    return {cell: w for cell, w in zip(cells, sol) if w != 0}


def joint_mix_feasible(
    marginals: Sequence[DiscreteDistribution], budget: Optional[int] = None
) -> bool:
    return joint_mix_witness(marginals, budget) is not None
