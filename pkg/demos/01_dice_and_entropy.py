"""Multiplicity and entropy warm-up with a pair of dice.

A macrostate is an aggregate description ("the dice total seven"); a
microstate is one arrangement realizing it (red 6, black 1).  Multiplicity
counts microstates per macrostate, and probabilities are multiplicity ratios.
"""

import math

from bellstat import (
    Multiplicity,
    combine,
    dice_multiplicity,
    dice_probability,
    entropy_from_multiplicity,
    gibbs_entropy,
    multiplicity_from_entropy,
)

# Every total from 2 to 12, its multiplicity, and its exact probability.
print("total  multiplicity  probability")
for total in range(2, 13):
    m = dice_multiplicity(total)
    print(f"{total:>5}  {int(m.omega):>12}  {dice_probability(total)}")

# Seven is the most likely macrostate: 6 of the 36 ordered pairs.
assert dice_probability(7) == dice_probability(2) * 6

# Two independent dice combine multiplicatively: 6 * 6 = 36 microstates.
one_die = Multiplicity(6)
both = combine(one_die, one_die)
print(f"\ncombined multiplicity: {both.omega:.0f}")

# Entropy is just a log-scale view of multiplicity, so combination becomes
# addition, and the round trip recovers the original count.
s_one = entropy_from_multiplicity(one_die)
s_both = entropy_from_multiplicity(both)
print(f"entropy of one die:  {s_one.s:.6f}")
print(f"entropy of the pair: {s_both.s:.6f}  (= {s_one.s:.6f} + {s_one.s:.6f})")
print(f"back from entropy:   {multiplicity_from_entropy(s_both).omega:.6f}")

# The probability-weighted (Gibbs) form agrees with the log-count form on
# uniform distributions; away from uniformity it is strictly smaller.
uniform = gibbs_entropy([1 / 36] * 36)
print(f"\nGibbs entropy, uniform over 36: {uniform.s:.6f} = ln 36 = {math.log(36):.6f}")
weighted = gibbs_entropy([dice_multiplicity(t).omega / 36 for t in range(2, 13)])
print(f"Gibbs entropy over dice totals: {weighted.s:.6f} (less: totals are not equiprobable)")
