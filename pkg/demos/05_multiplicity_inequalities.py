"""Three faces of the joint-multiplicity inequality, and when each breaks.

Assigning a multiplicity to each population and forming joint products gives
a sum-form inequality that is only guaranteed when the multiplicities are
roughly equal.  Reading the right side as a single four-way product instead
yields an inequality equivalent, through S = k ln(omega), to an entropy
statement: S_2 + S_7 >= 0.
"""

from bellstat import (
    MultiplicityVector,
    entropy_inequality,
    entropy_ratios,
    find_multiplicity_counterexample,
    multiplicity_inequality,
    multiplicity_probability,
    product_inequality,
)


def show(name, report):
    verdict = "holds" if report.holds else "VIOLATED"
    extra = ""
    if report.equal_multiplicity_precondition is not None:
        extra = f"  (roughly-equal precondition: {report.equal_multiplicity_precondition})"
    print(f"  {name:<22} lhs {report.lhs:>10.4f}  rhs {report.rhs:>10.4f}  {verdict}{extra}")


# Equal multiplicities: everything holds, probabilities are the symmetric 1/4.
equal = MultiplicityVector.equal(3.0)
print("equal multiplicities (all 3.0):")
show("sum form", multiplicity_inequality(equal))
show("product form", product_inequality(equal))
show("entropy form", entropy_inequality(equal))
print(f"  P(+a;+b) = {multiplicity_probability(equal, 3, 4)}")

# Spike populations 3 and 4 and the sum form collapses; the precondition flag
# warns that the equal-multiplicity assumption is far from satisfied.
spiked = MultiplicityVector.from_iterable([1, 1, 10, 10, 1, 1, 1, 1])
print("\nspiked multiplicities (10 on populations 3 and 4):")
show("sum form", multiplicity_inequality(spiked))
show("product form", product_inequality(spiked))
show("entropy form", entropy_inequality(spiked))

# Sub-unit multiplicities flip the product/entropy forms instead: negative
# entropies make S_2 + S_7 < 0 while the sum form is perfectly happy.
subunit = MultiplicityVector.from_iterable([1, 0.5, 1, 1, 1, 1, 0.5, 1])
print("\nsub-unit multiplicities (0.5 on populations 2 and 7):")
show("sum form", multiplicity_inequality(subunit))
show("product form", product_inequality(subunit))
show("entropy form", entropy_inequality(subunit))
print(f"  entropy shares S_i / sum S_j: "
      f"{', '.join(f'{x:+.3f}' for x in entropy_ratios(subunit))}")
print("  (diagnostic only; negative shares show these are not probabilities)")

# A seeded random search finds sum-form violators quickly once the spread of
# multiplicities is wide; restricted to equal vectors it never can.
found = find_multiplicity_counterexample(10_000, seed=42)
print(f"\nrandom search violator: {tuple(round(w, 3) for w in found.omegas)}")
report = multiplicity_inequality(found)
print(f"  re-check: lhs {report.lhs:.3f} vs rhs {report.rhs:.3f} -> holds = {report.holds}")
print(f"  equal-range search finds: "
      f"{find_multiplicity_counterexample(10_000, seed=42, log10_range=(0.0, 0.0))}")
