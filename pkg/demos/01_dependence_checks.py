"""Checking how far a random vector sits from independence, in both directions.

The running example is the n-lottery: one winner among n tickets, equal odds.
Any two tickets move in opposite directions, which makes the lottery the
canonical pairwise counter-monotonic vector.
"""
from fractions import Fraction

from negdep import (
    RandomVariable,
    RandomVector,
    classify_mutual_exclusivity,
    is_comonotonic_pair,
    is_counter_monotonic_pair,
    is_joint_mix,
    is_negative_orthant_dependent,
    is_negatively_associated,
    is_pairwise_counter_monotonic,
    uniform_space,
)

n = 4
space = uniform_space(n)
tickets = RandomVector.from_rows(
    space, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
)

print(f"--- the {n}-lottery ---")
print("pairwise counter-monotonic:", is_pairwise_counter_monotonic(tickets))
print("mutual exclusivity:", classify_mutual_exclusivity(tickets).value)
print("joint mix center:", is_joint_mix(tickets))  # the sum is constant 1

verdict = is_negatively_associated(tickets)
print("negatively associated:", verdict.negatively_associated)
print("negative orthant dependent:", is_negative_orthant_dependent(tickets))

# Counter-monotonicity is a pair property; comonotonicity is its mirror.
X = RandomVariable.from_values(space, [0, 1, 2, 3])
Y = RandomVariable.from_values(space, [5, 4, 3, 0])
print("\n--- a hand-built pair ---")
print("X, Y counter-monotonic:", is_counter_monotonic_pair(X, Y))
print("X, -Y comonotonic:", is_comonotonic_pair(X, -Y))

# A vanishing sum alone is weaker than counter-monotonicity in every pair:
# (X, X, -2X) aggregates to zero yet its first two coordinates move together.
Z = RandomVariable.from_values(space, [0, 1, 0, 1])
trio = RandomVector((Z, Z, RandomVariable.from_values(space, [0, -2, 0, -2])))
print("\n--- joint mix without pairwise counter-monotonicity ---")
print("joint mix center:", is_joint_mix(trio))
print("pairwise counter-monotonic:", is_pairwise_counter_monotonic(trio))

# When negative association fails, the checker hands back a witness pair of
# increasing indicator events with positive covariance.
bad = RandomVector((Z, Z))
verdict = is_negatively_associated(bad)
print("\n--- a positively dependent pair ---")
print("negatively associated:", verdict.negatively_associated)
w = verdict.witness
print("witness covariance:", w.covariance, "on index sets",
      w.index_set_i, "and", w.index_set_j)
assert w.covariance > Fraction(0)
