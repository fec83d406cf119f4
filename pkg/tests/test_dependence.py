"""Pairwise monotonicity, mutual exclusivity, joint mixes, negative association."""
import itertools
import random
from fractions import Fraction

import pytest

from negdep import (
    DimensionMismatch,
    MutualExclusivityType,
    RandomVariable,
    RandomVector,
    TooLarge,
    classify_mutual_exclusivity,
    distribution_of,
    expectation,
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
    make_space,
    uniform_space,
)
from generators import random_monotone_table, random_pcm_vector

F = Fraction


def lottery(n=3):
    """One winner out of n, equal odds; the canonical counter-monotonic vector."""
    sp = uniform_space(n)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return RandomVector.from_rows(sp, rows)


def test_comonotonic_pair_examples():
    sp = uniform_space(3)
    X = RandomVariable.from_values(sp, [0, 1, 2])
    Y = RandomVariable.from_values(sp, [0, 5, 5])
    Z = RandomVariable.from_values(sp, [2, 1, 0])
    assert is_comonotonic_pair(X, Y)
    assert not is_comonotonic_pair(X, Z)
    assert is_counter_monotonic_pair(X, Z)
    assert not is_counter_monotonic_pair(X, Y)
    # nonconstant variable is never counter-monotonic with itself
    assert not is_counter_monotonic_pair(X, X)
    C = RandomVariable.constant(sp, F(7))
    assert is_comonotonic_pair(X, C) and is_counter_monotonic_pair(X, C)


def test_comonotonic_vector():
    sp = uniform_space(3)
    rows = [[0, 1, 2], [0, 5, 5], [-1, -1, 0]]
    assert is_comonotonic(RandomVector.from_rows(sp, rows))
    rows[2] = [0, -1, -1]
    assert not is_comonotonic(RandomVector.from_rows(sp, rows))


def test_lottery_is_pcm():
    assert is_pairwise_counter_monotonic(lottery())
    assert is_pairwise_counter_monotonic(lottery(5))


def test_joint_mix_without_pcm():
    # X + X - 2X vanishes, yet the first two coordinates move together
    sp = uniform_space(2)
    X = RandomVariable.from_values(sp, [0, 1])
    V = RandomVector((X, X, RandomVariable.from_values(sp, [0, -2])))
    assert is_joint_mix(V) == 0
    assert not is_pairwise_counter_monotonic(V)


def test_pcm_needs_two_components():
    sp = uniform_space(2)
    X = RandomVariable.from_values(sp, [0, 1])
    with pytest.raises(DimensionMismatch):
        is_pairwise_counter_monotonic(RandomVector((X,)))


def test_classify_mutual_exclusivity():
    assert classify_mutual_exclusivity(lottery()) is MutualExclusivityType.TYPE1
    neg = RandomVector(tuple(-X for X in lottery().components))
    assert classify_mutual_exclusivity(neg) is MutualExclusivityType.TYPE2
    sp = uniform_space(2)
    X = RandomVariable.from_values(sp, [0, 1])
    pair = RandomVector((X, -X))
    assert classify_mutual_exclusivity(pair) is MutualExclusivityType.BOTH
    sp3 = uniform_space(3)
    A = RandomVariable.from_values(sp3, [0, 1, 2])
    B = RandomVariable.from_values(sp3, [2, 1, 0])
    assert classify_mutual_exclusivity(RandomVector((A, B))) is (
        MutualExclusivityType.NEITHER
    )


def test_joint_mix_values():
    assert is_joint_mix(lottery()) == 1
    sp = uniform_space(3)
    A = RandomVariable.from_values(sp, [0, 1, 2])
    B = RandomVariable.from_values(sp, [2, 1, 0])
    assert is_joint_mix(RandomVector((A, B))) == 2
    C = RandomVariable.from_values(sp, [0, 1, 1])
    assert is_joint_mix(RandomVector((A, C))) is None


def test_negative_association_lottery():
    verdict = is_negatively_associated(lottery())
    assert verdict.negatively_associated
    assert verdict.witness is None


def test_negative_association_independent_pair():
    # independent coordinates sit exactly on the boundary: all covariances zero
    sp = make_space(["1/4", "1/4", "1/4", "1/4"])
    X = RandomVariable.from_values(sp, [0, 0, 1, 1])
    Y = RandomVariable.from_values(sp, [0, 1, 0, 1])
    assert is_negatively_associated(RandomVector((X, Y))).negatively_associated


def test_negative_association_fails_with_witness():
    sp = uniform_space(2)
    X = RandomVariable.from_values(sp, [0, 1])
    verdict = is_negatively_associated(RandomVector((X, X)))
    assert not verdict.negatively_associated
    w = verdict.witness
    assert w is not None
    assert w.covariance == F(1, 4)
    assert set(w.index_set_i).isdisjoint(w.index_set_j)
    # recompute the covariance of the two indicator variables directly
    Ui = RandomVariable.indicator(sp, X.event(lambda v: (v,) in set(w.upper_set_i)))
    Uj = RandomVariable.indicator(sp, X.event(lambda v: (v,) in set(w.upper_set_j)))
    assert expectation(Ui * Uj) - expectation(Ui) * expectation(Uj) == w.covariance


def test_negative_association_budget():
    with pytest.raises(TooLarge):
        is_negatively_associated(lottery(4), budget=3)


def test_negative_orthant_dependence():
    assert is_negative_orthant_dependent(lottery())
    sp = uniform_space(2)
    X = RandomVariable.from_values(sp, [0, 1])
    assert not is_negative_orthant_dependent(RandomVector((X, X)))


def test_na_implies_nod_on_random_instances():
    rng = random.Random(101)
    for _ in range(25):
        V = random_pcm_vector(rng, max_atoms=7)
        assert is_negatively_associated(V).negatively_associated
        assert is_negative_orthant_dependent(V)


def test_joint_cdf_and_survival():
    L = lottery()
    assert joint_cdf(L, (0, 0, 0)) == 0
    assert joint_cdf(L, (1, 1, 0)) == F(2, 3)
    assert joint_cdf(L, (1, 1, 1)) == 1
    assert joint_survival(L, (0, 0, 0)) == 0
    assert joint_survival(L, (-1, -1, -1)) == 1


def test_frechet_lower_bound_values():
    b = distribution_of(lottery().components[0])
    marginals = (b, b, b)
    assert frechet_lower_bound(marginals, (0, 0, 0)) == 0
    assert frechet_lower_bound(marginals, (1, 1, 0)) == F(2, 3)
    assert frechet_lower_bound(marginals, (1, 1, 1)) == 1
    # lottery attains the bound everywhere on its grid
    for pt in itertools.product((0, 1), repeat=3):
        assert joint_cdf(lottery(), pt) == frechet_lower_bound(marginals, pt)


def test_na_checker_agrees_with_direct_covariances():
    # cross-validate the indicator reduction against arbitrary increasing maps
    rng = random.Random(102)
    for _ in range(20):
        V = random_pcm_vector(rng, n=3, max_atoms=6)
        assert is_negatively_associated(V).negatively_associated
        n = V.n
        for _ in range(25):
            idx = list(range(n))
            rng.shuffle(idx)
            cut = rng.randint(1, n - 1)
            I, J = sorted(idx[:cut]), sorted(idx[cut:])
            pts_i = {tuple(V.point_at(a)[i] for i in I) for a in V.space.atoms}
            pts_j = {tuple(V.point_at(a)[j] for j in J) for a in V.space.atoms}
            f = random_monotone_table(rng, pts_i)
            g = random_monotone_table(rng, pts_j)
            fv = RandomVariable.from_values(
                V.space,
                [f[tuple(V.point_at(a)[i] for i in I)] for a in V.space.atoms],
            )
            gv = RandomVariable.from_values(
                V.space,
                [g[tuple(V.point_at(a)[j] for j in J)] for a in V.space.atoms],
            )
            cov = expectation(fv * gv) - expectation(fv) * expectation(gv)
            assert cov <= 0
