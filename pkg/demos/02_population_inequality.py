"""The eight-population model and the Wigner form of Bell's inequality.

Perfectly anticorrelated pairs sort into eight populations by particle 1's
spin signs along the axes a, b, c.  A joint measurement outcome picks out the
populations compatible with it, and its probability is their count share.
For every nonnegative table, P(+a;+b) <= P(+a;+c) + P(+c;+b).
"""

import numpy as np

from bellstat import (
    PairOutcome,
    PopulationTable,
    exact_probability,
    outcome_populations,
    population_signs,
    wigner_check,
)

# The population rows: particle 2 always carries the opposite signs.
print("population  particle 1        particle 2")
for i in range(1, 9):
    p1, p2 = population_signs(i)
    fmt = lambda t: "(" + ", ".join(f"{s:+d}" for s in (t.s_a, t.s_b, t.s_c)) + ")"
    print(f"{i:>10}  {fmt(p1)}      {fmt(p2)}")

# Which populations can produce Alice=+a with Bob=+b?  Scan says rows 3 and 4
# (particle 1 must have +a, particle 2 must have +b, i.e. particle 1 has -b).
for outcome in (
    PairOutcome("a", +1, "b", +1),
    PairOutcome("a", +1, "c", +1),
    PairOutcome("c", +1, "b", +1),
    PairOutcome("a", +1, "a", +1),   # impossible: anticorrelation
):
    print(f"{outcome.label()} -> populations {sorted(outcome_populations(outcome))}")

# Exact probabilities are integer ratios; floats appear only at the boundary.
table = PopulationTable.from_counts((1, 2, 3, 4, 5, 6, 7, 8))
p = exact_probability(table, PairOutcome("c", +1, "b", +1))
print(f"\nramp table, (+c;+b): {p.numerator}/{p.denominator} = {p.value}")

# The inequality margin is exactly (N_2 + N_7) / total, so it can touch zero
# but never go negative, whatever the counts.
report = wigner_check(table)
print(f"lhs {report.lhs:.6f} <= rhs {report.rhs:.6f}, margin {report.margin:.6f}")

rng = np.random.default_rng(0)
worst = min(
    wigner_check(
        PopulationTable.from_counts(int(x) for x in row)
    ).margin
    for row in rng.integers(0, 1000, size=(5000, 8))
    if row.sum() > 0
)
print(f"smallest margin over 5000 random tables: {worst:.6f} (never below 0)")
