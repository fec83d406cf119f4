"""Splitting a risky total among agents who each care about one quantile.

The best achievable sum of individual valuations equals the quantile of the
total at the summed level (the inf-convolution).  The optimum is reached by a
tranche allocation that is pairwise counter-monotonic — extreme negative
dependence is not a pathology here but the shape of every optimum.
"""
from fractions import Fraction

from negdep import (
    Allocation,
    QuantileAgents,
    RandomVariable,
    RandomVector,
    comonotonic_gap,
    inf_convolution_var,
    levels_for_allocation,
    lower_bound_check,
    make_space,
    optimal_allocation,
    uniform_space,
    var,
    verify_pareto,
)

F = Fraction

# A total spread uniformly over ten scenarios, three agents at level 1/10.
space = uniform_space(10)
S = RandomVariable.from_values(space, [F(k, 10) for k in range(1, 11)])
agents = QuantileAgents((F(1, 10), F(1, 10), F(1, 10)))

print("inf-convolution value:", inf_convolution_var(S, agents))
best = optimal_allocation(S, agents)
for i, X in enumerate(best.components.components):
    print(f"  agent {i}: VaR = {var(X, agents.levels[i])}")
print("verifies as Pareto optimal:", verify_pareto(best, agents))

# Handing each agent the *whole* total on independent branches looks fair but
# wastes quantile capacity: the valuations sum to 2 against an optimum of 7/10.
masses, rows = [], [[], [], []]
for s in range(1, 11):
    for k, w in enumerate([F(1, 2), F(1, 4), F(1, 4)]):
        masses.append(w * F(1, 10))
        for i in range(3):
            rows[i].append(F(s, 10) if i == k else F(0))
branchy = Allocation.of_sum(RandomVector.from_rows(make_space(masses), rows))
report = lower_bound_check(branchy, agents)
print("\nbranch-split allocation: sum of VaRs", report.sum_var,
      "vs bound", report.bound)
print("verifies as optimal:", verify_pareto(branchy, agents))

# The reverse direction: given a counter-monotonic exceedance allocation,
# recover quantile levels for which it is optimal.
lottery = Allocation.of_sum(
    RandomVector.from_rows(uniform_space(3),
                           [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
)
recovered = levels_for_allocation(lottery)
print("\nlevels making the 3-lottery optimal:", recovered.levels)
print("and indeed:", verify_pareto(lottery, recovered))

# Comonotonic ("proportional") sharing can never beat the optimum; the gap is
# computable exactly.
half = RandomVariable.from_values(space, [F(k, 20) for k in range(1, 11)])
proportional = Allocation.of_sum(RandomVector((half, S - half)))
two = QuantileAgents((F(1, 5), F(1, 4)))
print("\nproportional split loses", comonotonic_gap(proportional, two),
      "against the optimum")
