"""Quantile and shortfall functionals, convex order, Bernoulli aggregation."""
import random
from fractions import Fraction

import pytest

from negdep import (
    DiscreteDistribution,
    LevelOutOfRange,
    ParameterOutOfRange,
    RandomVariable,
    TooLarge,
    VarLevel,
    bernoulli_aggregation_bounds,
    convex_order_leq,
    coupling_sum_distribution,
    coupling_vertices,
    distribution_of,
    es,
    uniform_space,
    var,
)
from generators import random_comonotonic_vector, random_distribution

F = Fraction
D = DiscreteDistribution


def test_var_level_validation():
    VarLevel(F(1, 2))
    for bad in (F(0), F(1), F(-1, 2), F(3, 2)):
        with pytest.raises(LevelOutOfRange):
            VarLevel(bad)


def test_level_argument_forms():
    b = D.bernoulli(F(1, 10))
    assert var(b, VarLevel(F(1, 20))) == var(b, F(1, 20)) == var(b, "1/20") == 1


def test_var_bernoulli_threshold():
    b = D.bernoulli(F(1, 10))
    assert var(b, F(1, 20)) == 1
    assert var(b, F(1, 10)) == 0  # left quantile: flat part goes to the lower value
    assert var(b, F(1, 5)) == 0


def test_var_uniform_frozen():
    sp = uniform_space(10)
    X = RandomVariable.from_values(sp, [F(k, 10) for k in range(1, 11)])
    assert var(X, F(3, 10)) == F(7, 10)
    assert var(X, F(1, 10)) == F(9, 10)


def test_var_constant():
    c = D.point_mass(F(5, 3))
    for a in (F(1, 100), F(1, 2), F(99, 100)):
        assert var(c, a) == F(5, 3)
        assert es(c, a) == F(5, 3)


def test_es_bernoulli_frozen():
    b = D.bernoulli(F(3, 10))
    assert es(b, F(1, 5)) == 1
    assert es(b, F(1, 2)) == F(3, 5)
    assert es(b, F(3, 10)) == 1


def test_es_tail_average_identity():
    # es(a) = var(a) + E[(X - var(a))_+] / a, the usual dual form
    rng = random.Random(401)
    for _ in range(200):
        d = random_distribution(rng)
        a = F(rng.randint(1, 23), 24)
        q = var(d, a)
        assert es(d, a) == q + d.stop_loss(q) / a


def test_es_dominates_var():
    rng = random.Random(402)
    for _ in range(100):
        d = random_distribution(rng)
        a = F(rng.randint(1, 23), 24)
        assert es(d, a) >= var(d, a)


def test_var_monotone_in_level():
    rng = random.Random(403)
    for _ in range(60):
        d = random_distribution(rng)
        a = F(rng.randint(1, 22), 24)
        b = a + F(1, 24)
        assert var(d, a) >= var(d, b)
        assert es(d, a) >= es(d, b)


def test_comonotonic_additivity():
    rng = random.Random(404)
    for _ in range(40):
        V = random_comonotonic_vector(rng, n=2)
        X, Y = V.components
        S = V.sum_variable()
        a = F(rng.randint(1, 11), 12)
        assert var(S, a) == var(X, a) + var(Y, a)
        assert es(S, a) == es(X, a) + es(Y, a)


def test_convex_order_examples():
    base = D.bernoulli(F(1, 2))
    spread = D.two_point(0, 2, F(1, 4))
    assert convex_order_leq(base, spread)
    assert not convex_order_leq(spread, base)
    assert convex_order_leq(base, base)
    assert not convex_order_leq(base, D.bernoulli(F(1, 3)))  # unequal means


def test_convex_order_mean_preserving_spread():
    rng = random.Random(405)
    for _ in range(60):
        d = random_distribution(rng)
        # push one support point apart, preserving the mean
        i = rng.randrange(len(d.points))
        delta = F(rng.randint(1, 3))
        pairs = list(zip(d.points, d.masses))
        x, m = pairs.pop(i)
        pairs += [(x - delta, m / 2), (x + delta, m / 2)]
        g = D.from_pairs(pairs)
        assert convex_order_leq(d, g)
        a = F(rng.randint(1, 11), 12)
        assert es(d, a) <= es(g, a)


def test_aggregation_frozen_var_regime():
    rep = bernoulli_aggregation_bounds(3, F(1, 10), F(1, 4))
    assert rep.var_worst == 1
    assert rep.var_best == 0
    assert rep.worst_sum == D.bernoulli(F(3, 10))
    assert rep.comonotonic_sum == D.two_point(0, 3, F(1, 10))


def test_aggregation_frozen_es_regime():
    rep = bernoulli_aggregation_bounds(3, F(1, 10), F(1, 5))
    assert rep.es_cm == 1
    assert rep.es_comonotonic == F(3, 2)
    assert rep.es_cm < rep.es_comonotonic


def test_aggregation_es_reversal_holds_in_regime():
    # the scattering coupling maximises VaR yet minimises ES
    rng = random.Random(406)
    for _ in range(40):
        n = rng.randint(2, 5)
        eps = F(1, n * rng.randint(2, 5))
        lo = F(n, 2) * eps
        hi = F(n) * eps
        alpha = (lo + hi) / 2
        rep = bernoulli_aggregation_bounds(n, eps, alpha)
        assert rep.var_worst == 1 and rep.var_best == 0
        assert rep.es_cm <= rep.es_comonotonic
        assert convex_order_leq(rep.worst_sum, rep.comonotonic_sum)


def test_aggregation_parameter_validation():
    good = dict(n=3, epsilon=F(1, 10), alpha=F(1, 4))
    bernoulli_aggregation_bounds(**good)
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(1, F(1, 10), F(1, 4))
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds("3", F(1, 10), F(1, 4))
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(3, F(1, 3), F(1, 4))  # epsilon >= 1/n
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(3, F(0), F(1, 4))
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(3, F(1, 10), F(1))  # alpha at the edge
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(3, F(1, 10), F(1, 10))  # ratio <= n/2
    with pytest.raises(ParameterOutOfRange):
        bernoulli_aggregation_bounds(3, F(1, 10), F(1, 2))  # ratio >= n


def test_coupling_vertices_two_coins():
    b = D.bernoulli(F(1, 2))
    verts = coupling_vertices([b, b])
    assert len(verts) == 2
    laws = {coupling_sum_distribution(v) for v in verts}
    assert laws == {D.two_point(0, 2, F(1, 2)), D.point_mass(F(1))}


def test_coupling_vertices_marginal_consistency():
    rng = random.Random(407)
    for _ in range(15):
        marginals = [random_distribution(rng, max_points=2) for _ in range(2)]
        for v in coupling_vertices(marginals):
            assert sum(v.values()) == 1
            assert all(w > 0 for w in v.values())
            for i, mu in enumerate(marginals):
                for x, m in zip(mu.points, mu.masses):
                    assert sum(w for cell, w in v.items() if cell[i] == x) == m


def test_coupling_vertices_budget():
    b = D.from_pairs([(j, F(1, 5)) for j in range(5)])
    with pytest.raises(TooLarge):
        coupling_vertices([b, b, b], budget=10)


def test_var_of_variable_matches_distribution():
    rng = random.Random(408)
    for _ in range(40):
        V = random_comonotonic_vector(rng, n=2)
        X = V.components[0]
        a = F(rng.randint(1, 11), 12)
        assert var(X, a) == var(distribution_of(X), a)
        assert es(X, a) == es(distribution_of(X), a)
