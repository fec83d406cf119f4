"""How dependence alone swings a portfolio's quantile risk.

Take n identical Bernoulli(eps) losses.  Scattering them counter-monotonically
(the "one loss at a time" coupling) turns the sum into a single Bernoulli(n*eps)
loss; stacking them comonotonically gives an all-or-nothing loss of size n.
For quantile levels between n*eps and ... well, in the regime below, the two
couplings trade places depending on the risk measure:

  * value-at-risk is maximised by scattering (VaR 1 vs 0),
  * expected shortfall is maximised by stacking.

The claim is checked here against a brute-force enumeration of every extreme
coupling of the three marginals.
"""
from fractions import Fraction

from negdep import (
    DiscreteDistribution,
    bernoulli_aggregation_bounds,
    convex_order_leq,
    coupling_sum_distribution,
    coupling_vertices,
    es,
    var,
)

F = Fraction
n, eps, alpha_var, alpha_es = 3, F(1, 10), F(1, 4), F(1, 5)

report = bernoulli_aggregation_bounds(n, eps, alpha_var)
print(f"n={n}, eps={eps}, VaR level {alpha_var}:")
print("  scattered sum law:", report.worst_sum)
print("  stacked sum law:  ", report.comonotonic_sum)
print("  VaR scattered:", report.var_worst, " VaR stacked:", report.var_best)

report = bernoulli_aggregation_bounds(n, eps, alpha_es)
print(f"\nES level {alpha_es}:")
print("  ES scattered:", report.es_cm, " ES stacked:", report.es_comonotonic)
print("  scattered precedes stacked in convex order:",
      convex_order_leq(report.worst_sum, report.comonotonic_sum))

# Oracle: the couplings with these marginals form a polytope, and both VaR and
# ES of the sum are extremised at its vertices.  Enumerate all of them.
marginals = [DiscreteDistribution.bernoulli(eps)] * n
sums = [coupling_sum_distribution(v) for v in coupling_vertices(marginals)]
print(f"\n{len(sums)} extreme couplings enumerated")
print("  max VaR over all couplings:", max(var(d, alpha_var) for d in sums))
print("  min ES  over all couplings:", min(es(d, alpha_es) for d in sums))
print("  max ES  over all couplings:", max(es(d, alpha_es) for d in sums))
