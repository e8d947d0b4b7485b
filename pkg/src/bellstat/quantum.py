"""Quantum singlet-state baseline that violates the Wigner inequality.

The two-spin singlet is perfectly anticorrelated along any common axis, yet
its joint probabilities at inter-axis angle theta,

    P(+n1; +n2) = P(-n1; -n2) = (1/2) sin^2(theta / 2),
    P(+n1; -n2) = P(-n1; +n2) = (1/2) cos^2(theta / 2),

violate P(+a;+b) <= P(+a;+c) + P(+c;+b) for coplanar axes with a-c and c-b
spacing theta anywhere in 0 < theta < pi/2.  No population table can
reproduce those numbers, since every table satisfies the inequality with
margin (N_2 + N_7) / total >= 0.

The closed form above is never trusted bare: this module also carries a
brute-force oracle (:func:`singlet_prediction_statevector`) that builds the
explicit 4-component singlet state and evaluates projector expectation
values, and the test suite holds the two within 1e-12 across the full angle
range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ValidationError
from .populations import (
    TOL,
    AXIS_LABELS,
    Axis,
    AxisLabel,
    AxisTriple,
    PairOutcome,
    angle_between,
)
from .reservoir import EmpiricalEstimate
from .rng import stream

AxisChoicePolicy = Literal["uniform", "round-robin"] | tuple[AxisLabel, AxisLabel]


@dataclass(frozen=True)
class SingletPrediction:
    """Joint sign probabilities for one axis pair, in (Alice, Bob) sign order."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def probability(self, alice_sign: int, bob_sign: int) -> float:
        return {
            (+1, +1): self.p_pp,
            (+1, -1): self.p_pm,
            (-1, +1): self.p_mp,
            (-1, -1): self.p_mm,
        }[(alice_sign, bob_sign)]

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)


def singlet_prediction(axis1: Axis, axis2: Axis) -> SingletPrediction:
    """Singlet joint probabilities for Alice along axis1, Bob along axis2."""
    theta = angle_between(axis1, axis2)
    same = 0.5 * math.sin(theta / 2.0) ** 2
    diff = 0.5 * math.cos(theta / 2.0) ** 2
    return SingletPrediction(p_pp=same, p_pm=diff, p_mp=diff, p_mm=same)


_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
# (|01> - |10>) / sqrt(2) in the product basis |00>, |01>, |10>, |11>.
_SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)


def _projector(direction: Sequence[float], sign: int) -> np.ndarray:
    n_dot_sigma = sum(x * s for x, s in zip(direction, _PAULI))
    return 0.5 * (np.eye(2, dtype=complex) + sign * n_dot_sigma)


def singlet_prediction_statevector(axis1: Axis, axis2: Axis) -> SingletPrediction:
    """Brute-force oracle: projector expectation values on the explicit
    4-component singlet state.  Slower but assumption-free; used to verify
    :func:`singlet_prediction`.
    """
    def joint(s1: int, s2: int) -> float:
        op = np.kron(_projector(axis1.direction, s1), _projector(axis2.direction, s2))
        return float(np.real(np.vdot(_SINGLET, op @ _SINGLET)))

    return SingletPrediction(
        p_pp=joint(+1, +1),
        p_pm=joint(+1, -1),
        p_mp=joint(-1, +1),
        p_mm=joint(-1, -1),
    )


@dataclass(frozen=True)
class ScanPoint:
    """One spacing in an inequality scan.  ``theta`` is the a-c (= c-b) angle."""

    theta: float
    lhs: float
    rhs: float
    violated: bool


def quantum_wigner_scan(spacing: float, steps: int = 1) -> tuple[ScanPoint, ...]:
    """Scan the Wigner inequality on singlet predictions over coplanar axes.

    Evaluates ``steps`` equally spaced angles spacing/steps, 2*spacing/steps,
    ..., spacing.  At each angle theta the axes are coplanar with a-c and c-b
    angles theta (a-b angle 2*theta), giving lhs = (1/2) sin^2(theta) and
    rhs = sin^2(theta/2).  Violation is flagged where lhs > rhs + 1e-12;
    analytically that is exactly 0 < theta < pi/2.
    """
    if not 0.0 < spacing < math.pi:
        raise ValidationError(f"spacing must be in (0, pi), got {spacing!r}")
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps!r}")
    points = []
    for k in range(1, steps + 1):
        theta = float(spacing) * k / steps
        axes = AxisTriple.coplanar(theta)
        lhs = singlet_prediction(axes.a, axes.b).p_pp
        rhs = singlet_prediction(axes.a, axes.c).p_pp + singlet_prediction(axes.c, axes.b).p_pp
        points.append(ScanPoint(theta=theta, lhs=lhs, rhs=rhs, violated=lhs > rhs + TOL))
    return tuple(points)


@dataclass(frozen=True)
class SingletSampleCounts:
    """Empirical joint counts from a singlet sampler run.

    ``counts`` maps (alice_axis, alice_sign, bob_axis, bob_sign) to the
    number of pairs with that result; only nonzero cells are stored.
    """

    counts: dict[tuple[AxisLabel, int, AxisLabel, int], int]
    n: int
    seed: int

    def axis_pair_count(self, alice_axis: AxisLabel, bob_axis: AxisLabel) -> int:
        return sum(
            c
            for (a_ax, _, b_ax, _), c in self.counts.items()
            if a_ax == alice_axis and b_ax == bob_axis
        )

    def estimate(self, outcome: PairOutcome) -> EmpiricalEstimate:
        """Empirical probability of ``outcome`` conditional on its axis pair."""
        n_pair = self.axis_pair_count(outcome.alice_axis, outcome.bob_axis)
        if n_pair == 0:
            raise ValidationError(
                f"no samples for axis pair ({outcome.alice_axis}, {outcome.bob_axis})"
            )
        hits = self.counts.get(
            (outcome.alice_axis, outcome.alice_sign, outcome.bob_axis, outcome.bob_sign), 0
        )
        p_hat = hits / n_pair
        return EmpiricalEstimate(
            outcome=outcome,
            p_hat=p_hat,
            stderr=math.sqrt(p_hat * (1.0 - p_hat) / n_pair),
            n=n_pair,
        )

    def alice_sign_marginal(self) -> float:
        """Fraction of all pairs where Alice measured +1."""
        plus = sum(c for (_, a_sign, _, _), c in self.counts.items() if a_sign == +1)
        return plus / self.n


_SIGN_PAIRS: tuple[tuple[int, int], ...] = ((+1, +1), (+1, -1), (-1, +1), (-1, -1))


def singlet_sample(
    axes: AxisTriple,
    n: int,
    seed: int,
    policy: AxisChoicePolicy = "uniform",
) -> SingletSampleCounts:
    """Sample ``n`` singlet pairs, choosing axes per ``policy``.

    Policies: ``"uniform"`` draws Alice's and Bob's axes independently and
    uniformly from {a, b, c}; ``"round-robin"`` cycles through the nine
    ordered axis pairs; a tuple ``(alice_axis, bob_axis)`` fixes the pair.
    Joint signs are then drawn from :func:`singlet_prediction` for the chosen
    axes.  Deterministic given ``seed``.
    """
    if n < 1:
        raise ValidationError(f"sample count must be >= 1, got {n!r}")
    rng = stream(seed)

    if policy == "uniform":
        choices = rng.integers(0, 3, size=(n, 2))
        alice_idx, bob_idx = choices[:, 0], choices[:, 1]
    elif policy == "round-robin":
        pairs = np.arange(n) % 9
        alice_idx, bob_idx = pairs // 3, pairs % 3
    elif (
        isinstance(policy, tuple)
        and len(policy) == 2
        and all(ax in AXIS_LABELS for ax in policy)
    ):
        alice_idx = np.full(n, AXIS_LABELS.index(policy[0]))
        bob_idx = np.full(n, AXIS_LABELS.index(policy[1]))
    else:
        raise ValidationError(f"unknown axis choice policy {policy!r}")

    counts: dict[tuple[AxisLabel, int, AxisLabel, int], int] = {}
    for a_i, alice_axis in enumerate(AXIS_LABELS):
        for b_i, bob_axis in enumerate(AXIS_LABELS):
            mask = (alice_idx == a_i) & (bob_idx == b_i)
            m = int(np.count_nonzero(mask))
            if m == 0:
                continue
            prediction = singlet_prediction(axes.axis(alice_axis), axes.axis(bob_axis))
            thresholds = np.cumsum(prediction.as_tuple())
            thresholds[-1] = 1.0
            cells = np.searchsorted(thresholds, rng.random(m), side="right")
            for cell, count in zip(*np.unique(cells, return_counts=True)):
                s1, s2 = _SIGN_PAIRS[int(cell)]
                key = (alice_axis, s1, bob_axis, s2)
                counts[key] = counts.get(key, 0) + int(count)
    return SingletSampleCounts(counts=counts, n=n, seed=seed)
