"""Which marginal laws admit extreme negative dependence — and building it.

Three questions about a tuple of marginals, answered exactly:
  1. can some coupling make every pair counter-monotonic?  (supports_pcm)
  2. can some coupling make the sum constant?               (joint_mix_feasible)
  3. can one coupling do both at once?                      (classify_both_support)
When the answer to 1 is yes, construct_pcm_with_marginals exhibits a coupling,
and its joint law lands exactly on the pointwise lower bound
max(sum_i F_i(x_i) - n + 1, 0).
"""
import itertools

from fractions import Fraction

from negdep import (
    DiscreteDistribution,
    classify_both_support,
    construct_pcm_with_marginals,
    distribution_of,
    frechet_lower_bound,
    is_joint_mix,
    joint_cdf,
    joint_mix_feasible,
    make_space,
    supports_pcm,
)

F = Fraction
D = DiscreteDistribution
base = make_space([F(1)])  # constructions refine whatever space you hand them


def inspect(title, marginals):
    print(f"--- {title} ---")
    print("supports extreme coupling:", supports_pcm(marginals).value)
    print("joint mix feasible:", joint_mix_feasible(marginals))
    form = classify_both_support(marginals)
    print("simultaneous form:", form)
    return marginals


# Small Bernoulli exceedance probabilities: one run each fits inside (0,1].
inspect("three Bernoulli(3/10)", [D.bernoulli(F(3, 10))] * 3)
print()

# Larger ones leave no room in either orientation.
inspect("three Bernoulli(2/5)", [D.bernoulli(F(2, 5))] * 3)
print()

# Shifted two-point marginals with a common gap and exceedance masses summing
# to one support a coupling that is counter-monotonic AND has constant sum.
family = inspect(
    "two-point family with common gap 2",
    [
        D.from_pairs([(0, F(1, 2)), (2, F(1, 2))]),
        D.from_pairs([(1, F(3, 4)), (3, F(1, 4))]),
        D.from_pairs([(-1, F(3, 4)), (1, F(1, 4))]),
    ],
)

built = construct_pcm_with_marginals(base, family)
V = built.vector
print("\nconstructed on", len(built.space.atoms), "atoms")
print("constant sum:", is_joint_mix(V))
for X, mu in zip(V.components, family):
    assert distribution_of(X) == mu
grid = itertools.product(*[mu.points for mu in family])
exact = all(joint_cdf(V, p) == frechet_lower_bound(family, p) for p in grid)
print("joint law equals the pointwise lower bound:", exact)
