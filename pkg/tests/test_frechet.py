"""Which marginal classes support extreme negative dependence, and building it."""
import itertools
import random
from fractions import Fraction

import pytest

from negdep import (
    AllDegenerateForm,
    DiscreteDistribution,
    PcmSupport,
    SymmetricPairForm,
    TooLarge,
    TwoPointForm,
    Unsupported,
    classify_both_support,
    construct_pcm_with_marginals,
    distribution_of,
    expectation,
    frechet_lower_bound,
    is_counter_monotonic_pair,
    is_joint_mix,
    is_pairwise_counter_monotonic,
    joint_cdf,
    joint_mix_feasible,
    joint_mix_witness,
    make_space,
    supports_pcm,
)
from generators import random_distribution

F = Fraction
D = DiscreteDistribution
ONE_SPACE = make_space([F(1)])


def bern(p):
    return D.bernoulli(F(p) if not isinstance(p, tuple) else F(*p))


def two_point_family():
    return [
        D.from_pairs([(0, F(1, 2)), (2, F(1, 2))]),
        D.from_pairs([(1, F(3, 4)), (3, F(1, 4))]),
        D.from_pairs([(-1, F(3, 4)), (1, F(1, 4))]),
    ]


# ---------------------------------------------------------------------------
# support classification


def test_supports_small_bernoullis():
    assert supports_pcm([bern((3, 10))] * 3) is PcmSupport.TYPE1
    assert supports_pcm([bern((2, 5))] * 3) is PcmSupport.NO


def test_supports_type2_by_reflection():
    neg = [bern((3, 10)).negate()] * 3
    assert supports_pcm(neg) is PcmSupport.TYPE2


def test_supports_bivariate_for_two_nondegenerate():
    assert supports_pcm([bern((2, 5)), bern((2, 5))]) is PcmSupport.BIVARIATE
    assert (
        supports_pcm([bern((2, 5)), bern((2, 5)), D.point_mass(F(7))])
        is PcmSupport.BIVARIATE
    )
    assert supports_pcm([D.point_mass(F(1))] * 4) is PcmSupport.BIVARIATE


def test_supports_never_both_with_three_nondegenerate():
    rng = random.Random(301)
    for _ in range(200):
        marginals = [random_distribution(rng) for _ in range(rng.randint(3, 4))]
        if sum(1 for m in marginals if not m.is_degenerate()) < 3:
            continue
        assert supports_pcm(marginals) in (
            PcmSupport.TYPE1,
            PcmSupport.TYPE2,
            PcmSupport.NO,
        )


# ---------------------------------------------------------------------------
# simultaneous joint-mix / counter-monotonic classes


def test_classify_two_point_family():
    got = classify_both_support(two_point_family())
    assert got == TwoPointForm(
        gap=F(2),
        shifts=(F(0), F(1), F(-1)),
        masses=(F(1, 2), F(1, 4), F(1, 4)),
    )
    assert got.center == F(2)


def test_classify_negative_orientation():
    marginals = [
        D.two_point(0, 1, F(1, 2)),
        D.two_point(0, 1, F(3, 4)),
        D.two_point(0, 1, F(3, 4)),
    ]
    got = classify_both_support(marginals)
    assert got == TwoPointForm(
        gap=F(-1),
        shifts=(F(1), F(1), F(1)),
        masses=(F(1, 2), F(1, 4), F(1, 4)),
    )
    assert got.center == F(2)


def test_classify_symmetric_pair():
    marginals = [bern((1, 2)), bern((1, 2)).negate(), D.point_mass(F(3))]
    got = classify_both_support(marginals)
    assert got == SymmetricPairForm(first=0, second=1, pair_sum=F(0))


def test_classify_all_degenerate():
    marginals = [D.point_mass(F(2)), D.point_mass(F(-1, 2))]
    got = classify_both_support(marginals)
    assert got == AllDegenerateForm(values=(F(2), F(-1, 2)))


def test_classify_absent_cases():
    # exceedance masses sum to 9/10 one way, 21/10 the other; neither is 1
    assert classify_both_support([bern((3, 10))] * 3) is None
    # a single non-degenerate marginal cannot cancel against constants
    assert classify_both_support([bern((1, 2)), D.point_mass(F(0))]) is None
    # three-point marginal: not a two-point family
    mixed = [
        bern((1, 4)),
        bern((1, 4)),
        D.from_pairs([(0, F(1, 2)), (1, F(1, 4)), (2, F(1, 4))]),
    ]
    assert classify_both_support(mixed) is None
    # unequal gaps
    assert (
        classify_both_support([bern((1, 2)), bern((1, 4)), D.two_point(0, 2, F(1, 4))])
        is None
    )


def test_classify_agrees_with_support_and_mix():
    rng = random.Random(302)
    for _ in range(150):
        n = rng.randint(3, 4)
        gap = rng.choice([1, 2, 3])
        marginals = [
            D.two_point(
                s := rng.randint(-3, 3), s + gap, F(rng.randint(1, 5), 6)
            )
            for _ in range(n)
        ]
        got = classify_both_support(marginals)
        if got is not None:
            assert supports_pcm(marginals) is not PcmSupport.NO
            assert joint_mix_feasible(marginals)
            built = construct_pcm_with_marginals(ONE_SPACE, marginals)
            assert is_joint_mix(built.vector) == got.center
            assert is_pairwise_counter_monotonic(built.vector)


# ---------------------------------------------------------------------------
# construction with prescribed marginals


def check_construction(marginals, base=None):
    built = construct_pcm_with_marginals(base or ONE_SPACE, marginals)
    V = built.vector
    for X, mu in zip(V.components, marginals):
        assert distribution_of(X) == mu
    assert is_pairwise_counter_monotonic(V)
    for pt in itertools.product(*[mu.points for mu in marginals]):
        assert joint_cdf(V, pt) == frechet_lower_bound(marginals, pt)
    return built


def test_construct_lottery_thirds():
    built = check_construction([bern((1, 3))] * 3)
    rows = {X.values_in_order() for X in built.vector.components}
    assert rows == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_construct_two_point_family_is_joint_mix():
    built = check_construction(two_point_family())
    assert is_joint_mix(built.vector) == F(2)


def test_construct_type1_mixed_supports():
    mixed = [
        bern((1, 4)),
        bern((1, 4)),
        D.from_pairs([(0, F(1, 2)), (1, F(1, 4)), (2, F(1, 4))]),
    ]
    check_construction(mixed)


def test_construct_type2():
    check_construction([bern((3, 10)).negate()] * 3)


def test_construct_bivariate_antitone():
    marginals = [
        D.from_pairs([(0, F(1, 3)), (1, F(1, 3)), (4, F(1, 3))]),
        D.from_pairs([(-2, F(1, 2)), (5, F(1, 2))]),
    ]
    built = check_construction(marginals)
    X, Y = built.vector.components
    assert is_counter_monotonic_pair(X, Y)


def test_construct_bivariate_with_degenerate_extra():
    marginals = [bern((2, 5)), bern((2, 5)), D.point_mass(F(7))]
    built = check_construction(marginals)
    assert built.vector.components[2].is_degenerate()


def test_construct_respects_base_space():
    base = make_space(["1/2", "1/2"], atoms=["u", "v"])
    built = check_construction([bern((1, 3))] * 3, base=base)
    lineage = built.lineage
    assert sorted(lineage) == ["u", "v"]
    assert all(a.startswith(("u", "v")) for a in built.space.atoms)


def test_construct_unsupported():
    with pytest.raises(Unsupported):
        construct_pcm_with_marginals(ONE_SPACE, [bern((2, 5))] * 3)


def test_construct_random_supported_families():
    rng = random.Random(303)
    built_count = 0
    while built_count < 40:
        n = rng.randint(3, 4)
        # force small exceedance tails so Type1 support is common
        marginals = []
        for _ in range(n):
            lo = rng.randint(-3, 3)
            hi = lo + rng.randint(1, 3)
            marginals.append(D.two_point(lo, hi, F(1, rng.randint(4, 8))))
        if supports_pcm(marginals) is PcmSupport.NO:
            continue
        check_construction(marginals)
        built_count += 1


# ---------------------------------------------------------------------------
# joint-mix feasibility


def test_joint_mix_center_is_sum_of_means():
    marginals = two_point_family()
    w = joint_mix_witness(marginals)
    assert w is not None
    center = sum(mu.mean() for mu in marginals)
    assert all(sum(cell) == center for cell in w)


def test_joint_mix_witness_matches_marginals():
    marginals = two_point_family()
    w = joint_mix_witness(marginals)
    assert sum(w.values()) == 1
    for i, mu in enumerate(marginals):
        for x, m in zip(mu.points, mu.masses):
            assert sum(v for cell, v in w.items() if cell[i] == x) == m


def test_joint_mix_infeasible():
    assert joint_mix_witness([bern((3, 10))] * 3) is None
    assert not joint_mix_feasible([bern((3, 10))] * 3)


def test_joint_mix_pair():
    marginals = [bern((1, 2)), bern((1, 2)).negate()]
    assert joint_mix_feasible(marginals)
    w = joint_mix_witness(marginals)
    assert all(a + b == 0 for a, b in w)


def test_joint_mix_budget():
    marginals = [
        D.from_pairs([(j, F(1, 6)) for j in range(6)]) for _ in range(4)
    ]
    with pytest.raises(TooLarge):
        joint_mix_witness(marginals, budget=10)


def test_joint_mix_random_families():
    rng = random.Random(304)
    for _ in range(60):
        marginals = [random_distribution(rng, max_points=3) for _ in range(3)]
        w = joint_mix_witness(marginals)
        if w is None:
            continue
        center = sum(mu.mean() for mu in marginals)
        assert all(sum(cell) == center for cell in w)
        assert all(v > 0 for v in w.values())
        assert sum(w.values()) == 1
        for i, mu in enumerate(marginals):
            for x, m in zip(mu.points, mu.masses):
                assert sum(v for cell, v in w.items() if cell[i] == x) == m


def test_construction_mean_bookkeeping():
    # sum of the built vector has the marginals' total mean
    rng = random.Random(305)
    for _ in range(20):
        marginals = [
            D.two_point(rng.randint(-2, 2), rng.randint(3, 5), F(1, 6))
            for _ in range(3)
        ]
        if supports_pcm(marginals) is PcmSupport.NO:
            continue
        built = construct_pcm_with_marginals(ONE_SPACE, marginals)
        total = sum(mu.mean() for mu in marginals)
        assert expectation(built.vector.sum_variable()) == total
