"""Seeded random instance builders shared by the test modules.

Everything takes an explicit ``random.Random`` so test runs are reproducible;
no global randomness.
"""
from fractions import Fraction

from negdep import (
    Allocation,
    Composition,
    DiscreteDistribution,
    MonotoneMap,
    QuantileAgents,
    RandomVariable,
    RandomVector,
    Space,
    build_comonotonic,
    build_pcm,
    make_space,
    refine_for_marginals,
)


def random_masses(rng, k):
    weights = [rng.randint(1, 6) for _ in range(k)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_space(rng, min_atoms=2, max_atoms=10) -> Space:
    return make_space(random_masses(rng, rng.randint(min_atoms, max_atoms)))


def random_distribution(rng, max_points=4, lo=-4, hi=6) -> DiscreteDistribution:
    k = rng.randint(1, max_points)
    points = rng.sample(range(lo, hi + 1), k)
    return DiscreteDistribution(tuple(points), tuple(random_masses(rng, k)))


def random_fraction(rng, lo=-6, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_pcm_parts(rng, n=None, max_atoms=10):
    """(z, composition, shifts) whose realisation has >= 3 non-degenerate parts."""
    if n is None:
        n = rng.randint(3, 5)
    while True:
        k = rng.randint(n, max_atoms)
        space = make_space(random_masses(rng, k))
        sign = rng.choice([1, -1])
        owners = [rng.randrange(n) for _ in range(k)]
        # hand three distinct blocks one surely-active atom each
        chosen_blocks = rng.sample(range(n), 3)
        chosen_atoms = rng.sample(range(k), 3)
        for b, t in zip(chosen_blocks, chosen_atoms):
            owners[t] = b
        z_vals = [sign * rng.randint(0, 3) for _ in range(k)]
        for t in chosen_atoms:
            z_vals[t] = sign * rng.randint(1, 3)
        z = RandomVariable.from_values(space, z_vals)
        blocks = [
            frozenset(a for a, o in zip(space.atoms, owners) if o == i)
            for i in range(n)
        ]
        comp = Composition(space, tuple(blocks))
        shifts = tuple(random_fraction(rng) for _ in range(n))
        vector = build_pcm(z, comp, shifts)
        nondeg = sum(1 for X in vector.components if not X.is_degenerate())
        if nondeg >= 3:
            return z, comp, shifts


def random_pcm_vector(rng, n=None, max_atoms=10) -> RandomVector:
    z, comp, shifts = random_pcm_parts(rng, n=n, max_atoms=max_atoms)
    return build_pcm(z, comp, shifts)


def random_monotone_map(rng, points) -> MonotoneMap:
    """An increasing map tabulated exactly on the given tuple-points."""
    entries = {}
    base = Fraction(rng.randint(-3, 3))
    for p in sorted(set(points)):
        floor = base
        for q, v in entries.items():
            if all(qc <= pc for qc, pc in zip(q, p)) and v > floor:
                floor = v
        entries[p] = floor + rng.randint(0, 2)
    return MonotoneMap(entries)


def random_monotone_table(rng, points) -> dict:
    """Like random_monotone_map but as a raw dict (for oracle covariance work)."""
    return dict(random_monotone_map(rng, points).entries)


def random_compatible_levels(rng, n) -> QuantileAgents:
    weights = [rng.randint(1, 9) for _ in range(n)]
    scale = sum(weights) + rng.randint(1, 10)
    return QuantileAgents(tuple(Fraction(w, scale) for w in weights))


def random_comonotonic_vector(rng, n=2, max_points=4) -> RandomVector:
    marginals = [random_distribution(rng, max_points=max_points) for _ in range(n)]
    base = make_space([Fraction(1)])
    refined, _ = refine_for_marginals(base, marginals)
    return build_comonotonic(refined, marginals)


def random_pct1_allocation(rng, n=None, max_atoms=10) -> Allocation:
    """A counter-monotonic exceedance-type allocation of its own sum."""
    while True:
        if n is None:
            picked = rng.randint(3, 5)
        else:
            picked = n
        k = rng.randint(picked, max_atoms)
        space = make_space(random_masses(rng, k))
        owners = [rng.randrange(picked) for _ in range(k)]
        chosen_blocks = rng.sample(range(picked), 3)
        chosen_atoms = rng.sample(range(k), 3)
        for b, t in zip(chosen_blocks, chosen_atoms):
            owners[t] = b
        z_vals = [rng.randint(0, 4) for _ in range(k)]
        for t in chosen_atoms:
            z_vals[t] = rng.randint(1, 4)
        z = RandomVariable.from_values(space, z_vals)
        blocks = [
            frozenset(a for a, o in zip(space.atoms, owners) if o == i)
            for i in range(picked)
        ]
        shifts = tuple(random_fraction(rng) for _ in range(picked))
        vector = build_pcm(z, Composition(space, tuple(blocks)), shifts)
        nondeg = sum(1 for X in vector.components if not X.is_degenerate())
        if nondeg >= 3:
            return Allocation.of_sum(vector)


def random_split_allocation(rng, max_atoms=8, n=None) -> Allocation:
    """An arbitrary (unstructured) allocation: random components, summed total."""
    if n is None:
        n = rng.randint(2, 4)
    space = random_space(rng, max_atoms=max_atoms)
    rows = [
        [random_fraction(rng, lo=-4, hi=8) for _ in space.atoms] for _ in range(n)
    ]
    return Allocation.of_sum(RandomVector.from_rows(space, rows))
