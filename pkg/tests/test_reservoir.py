"""Tests for reservoir sampling: determinism, depletion, and divergence."""

import math
from fractions import Fraction

import pytest

from bellstat import (
    CHUNK_SIZE,
    PairOutcome,
    PopulationTable,
    ReservoirSpec,
    ValidationError,
    depletion_trajectory,
    empirical_probability,
    exact_probability,
    finite_vs_infinite_divergence,
)
from bellstat.reservoir import sample

AB = PairOutcome("a", +1, "b", +1)


def expected_conditional(bag, population, step_target):
    """Exact oracle: expectation over all drain paths of the pre-draw
    conditional probability of ``population`` at ``step_target``."""

    def rec(state, step, path_prob):
        total = sum(state)
        if step == step_target:
            return path_prob * Fraction(state[population - 1], total)
        acc = Fraction(0)
        for i, c in enumerate(state):
            if c > 0:
                nxt = list(state)
                nxt[i] -= 1
                acc += rec(tuple(nxt), step + 1, path_prob * Fraction(c, total))
        return acc

    return rec(tuple(bag), 1, Fraction(1))


class TestSpecValidation:
    def test_empty_composition_rejected(self):
        with pytest.raises(ValidationError):
            ReservoirSpec.finite(PopulationTable.from_counts((0,) * 8), seed=1)
        with pytest.raises(ValidationError):
            ReservoirSpec.infinite(PopulationTable.from_counts((0,) * 8), seed=1)

    def test_bad_mode_rejected(self):
        with pytest.raises(ValidationError):
            ReservoirSpec("bottomless", PopulationTable.uniform(), 1)

    @pytest.mark.parametrize("seed", [-1, 2**64, 1.5, "7"])
    def test_bad_seed_rejected(self, seed):
        with pytest.raises(ValidationError):
            ReservoirSpec.finite(PopulationTable.uniform(), seed)

    def test_overdraw_rejected(self):
        spec = ReservoirSpec.finite(PopulationTable.uniform(), seed=1)
        with pytest.raises(ValidationError):
            sample(spec, 9)

    def test_zero_draws_rejected(self):
        spec = ReservoirSpec.infinite(PopulationTable.uniform(), seed=1)
        with pytest.raises(ValidationError):
            sample(spec, 0)


class TestDeterminism:
    def test_finite_sequences_are_reproducible(self):
        spec = ReservoirSpec.finite(PopulationTable.from_counts((3, 2, 1, 0, 1, 0, 0, 1)), seed=99)
        assert sample(spec, 8) == sample(spec, 8)

    def test_infinite_sequences_are_reproducible(self):
        spec = ReservoirSpec.infinite(PopulationTable.uniform(), seed=99)
        assert sample(spec, 5000) == sample(spec, 5000)

    def test_different_seeds_differ(self):
        bag = PopulationTable.uniform(100)
        a = sample(ReservoirSpec.infinite(bag, seed=1), 1000)
        b = sample(ReservoirSpec.infinite(bag, seed=2), 1000)
        assert [r.population for r in a] != [r.population for r in b]

    def test_worker_count_never_changes_the_draws(self):
        spec = ReservoirSpec.infinite(PopulationTable.uniform(), seed=5)
        n = CHUNK_SIZE + 1234  # spans two chunks
        assert sample(spec, n, workers=1) == sample(spec, n, workers=4)

    def test_prefix_stability_across_lengths(self):
        # chunk boundaries depend only on position, so a shorter run is a prefix
        spec = ReservoirSpec.infinite(PopulationTable.uniform(), seed=5)
        long = sample(spec, 2000)
        short = sample(spec, 1500)
        assert long[:1500] == short


class TestFiniteDraws:
    def test_singleton_bag(self):
        bag = PopulationTable.from_counts((1, 0, 0, 0, 0, 0, 0, 0))
        records = sample(ReservoirSpec.finite(bag, seed=3), 1)
        assert len(records) == 1
        assert records[0].population == 1
        assert records[0].conditional_probabilities[0] == 1.0

    def test_conservation_of_pairs(self):
        bag = PopulationTable.from_counts((3, 2, 1, 0, 1, 0, 0, 1))
        records = sample(ReservoirSpec.finite(bag, seed=17), bag.total)
        for r in records:
            assert r.remaining is not None
            assert r.remaining.counts[r.population - 1] >= 0
            assert sum(r.remaining.counts) + r.step == bag.total

    def test_conditional_probabilities_normalized(self):
        bag = PopulationTable.from_counts((3, 2, 1, 0, 1, 0, 0, 1))
        for r in sample(ReservoirSpec.finite(bag, seed=23), bag.total):
            assert math.fsum(r.conditional_probabilities) == pytest.approx(1.0, abs=1e-12)

    def test_first_draw_matches_infinite_mode(self):
        bag = PopulationTable.from_counts((4, 3, 2, 1, 0, 0, 5, 1))
        fin = sample(ReservoirSpec.finite(bag, seed=8), 1)[0]
        inf = sample(ReservoirSpec.infinite(bag, seed=8), 1)[0]
        assert fin.conditional_probabilities == inf.conditional_probabilities


class TestDepletion:
    def test_final_draw_is_certain(self):
        bag = PopulationTable.from_counts((2, 1, 0, 0, 0, 0, 0, 0))
        for seed in range(20):
            records = depletion_trajectory(ReservoirSpec.finite(bag, seed=seed))
            last = records[-1]
            assert last.conditional_probabilities[last.population - 1] == 1.0
            assert last.remaining is not None and last.remaining.total == 0

    def test_single_pair_trajectory(self):
        bag = PopulationTable.from_counts((0, 0, 0, 0, 0, 1, 0, 0))
        records = depletion_trajectory(ReservoirSpec.finite(bag, seed=0))
        assert len(records) == 1
        assert records[0].conditional_probabilities[5] == 1.0

    def test_last_survivor_series_is_nondecreasing(self):
        bag = PopulationTable.from_counts((5, 3, 0, 2, 0, 0, 0, 0))
        for seed in range(10):
            records = depletion_trajectory(ReservoirSpec.finite(bag, seed=seed))
            survivor = records[-1].population
            # once every other population is gone, the survivor's conditional
            # probability climbs monotonically to exactly 1
            alone = [
                r.conditional_probabilities[survivor - 1]
                for r in records
                if all(
                    p == 0.0
                    for i, p in enumerate(r.conditional_probabilities, start=1)
                    if i != survivor
                )
            ]
            assert alone, "survivor never stood alone"
            assert all(x <= y for x, y in zip(alone, alone[1:]))
            assert alone[-1] == 1.0

    def test_infinite_mode_rejected(self):
        with pytest.raises(ValidationError):
            depletion_trajectory(ReservoirSpec.infinite(PopulationTable.uniform(), seed=1))


class TestExchangeability:
    def test_enumeration_oracle_gives_half_at_every_step(self):
        bag = (4, 4, 0, 0, 0, 0, 0, 0)
        for step in range(1, 9):
            assert expected_conditional(bag, 1, step) == Fraction(1, 2)

    def test_montecarlo_mean_matches_oracle(self):
        bag = PopulationTable.from_counts((4, 4, 0, 0, 0, 0, 0, 0))
        step = 4
        n_seeds = 4000
        values = []
        for seed in range(n_seeds):
            records = sample(ReservoirSpec.finite(bag, seed=seed), step)
            values.append(records[step - 1].conditional_probabilities[0])
        mean = math.fsum(values) / n_seeds
        # pre-draw conditional probabilities at step 4 have bounded spread;
        # 4 sigma of the sample mean with a conservative variance bound
        spread = 4 * 0.5 / math.sqrt(n_seeds)
        assert abs(mean - 0.5) <= spread

    def test_marginal_population_frequency_is_composition_share(self):
        bag = PopulationTable.from_counts((3, 1, 2, 0, 1, 0, 0, 1))
        step = 5
        n_seeds = 10_000
        hits = [0] * 8
        for seed in range(n_seeds):
            records = sample(ReservoirSpec.finite(bag, seed=seed), step)
            hits[records[step - 1].population - 1] += 1
        for i in range(8):
            p = bag.counts[i] / bag.total
            stderr = math.sqrt(p * (1 - p) / n_seeds)
            assert abs(hits[i] / n_seeds - p) <= 4 * stderr + 1e-12


class TestEmpiricalProbability:
    def test_all_draws_in_contributing_population(self):
        bag = PopulationTable.from_counts((0, 0, 5, 0, 0, 0, 0, 0))
        draws = sample(ReservoirSpec.finite(bag, seed=1), 5)
        assert empirical_probability(draws, AB).p_hat == 1.0

    def test_all_draws_outside_contributing_population(self):
        bag = PopulationTable.from_counts((5, 0, 0, 0, 0, 0, 0, 0))
        draws = sample(ReservoirSpec.finite(bag, seed=1), 5)
        est = empirical_probability(draws, AB)
        assert est.p_hat == 0.0
        assert est.stderr == 0.0

    def test_empty_draw_list_rejected(self):
        with pytest.raises(ValidationError):
            empirical_probability([], AB)

    def test_infinite_uniform_estimate_converges(self):
        spec = ReservoirSpec.infinite(PopulationTable.uniform(), seed=31)
        draws = sample(spec, 100_000)
        est = empirical_probability(draws, AB)
        exact = exact_probability(PopulationTable.uniform(), AB).value
        assert abs(est.p_hat - exact) <= 4 * est.stderr


class TestDivergence:
    def test_single_draw_never_deviates(self):
        bag = PopulationTable.from_counts((2, 3, 4, 5, 0, 0, 1, 1))
        report = finite_vs_infinite_divergence(bag, 1, seeds=[0, 1, 2])
        assert report.max_abs_deviation == 0.0
        assert report.max_l1_deviation == 0.0

    def test_uniform_bag_l1_reaches_one_and_tops_out(self):
        bag = PopulationTable.uniform()
        report = finite_vs_infinite_divergence(bag, 8, seeds=range(6))
        for per_seed in report.per_seed:
            assert any(l1 == 1.0 for l1 in per_seed.l1_deviations)
            assert per_seed.max_l1_deviation == 1.75
        # the outcome-probability channel is bounded by 1 - 2/8
        assert report.max_abs_deviation <= 0.75 + 1e-12

    def test_deviation_shrinks_with_bag_scale(self):
        seeds = list(range(30))
        n = 8
        means = []
        for scale in (1, 10, 100):
            bag = PopulationTable.uniform(scale)
            report = finite_vs_infinite_divergence(bag, n, seeds=seeds)
            means.append(report.mean_max_abs_deviation)
        assert means[0] > means[1] > means[2]

    def test_worker_count_never_changes_the_report(self):
        bag = PopulationTable.uniform(2)
        a = finite_vs_infinite_divergence(bag, 16, seeds=range(8), workers=1)
        b = finite_vs_infinite_divergence(bag, 16, seeds=range(8), workers=4)
        assert a == b

    def test_overdraw_rejected(self):
        with pytest.raises(ValidationError):
            finite_vs_infinite_divergence(PopulationTable.uniform(), 9, seeds=[1])

    def test_requires_seeds(self):
        with pytest.raises(ValidationError):
            finite_vs_infinite_divergence(PopulationTable.uniform(), 4, seeds=[])
