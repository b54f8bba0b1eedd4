"""Destroy/repair operator bank, adaptive step sampling and SA acceptance.

Destroy operators 1..8 perturb one scenario parameter each: odd ids subtract
the step xi, even ids add it (1/2 -> ego speed, 3/4 -> objective speed,
5/6 -> gap, 7/8 -> deceleration). Repair operators 1..2 pick the nearest or
second-nearest untested grid scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .risk import INF
from .space import ContinuousPoint, Scenario, ScenarioSpace

N_DESTROY = 8
N_REPAIR = 2

# Destroy operators whose initial score is boosted (speed-reducing and
# deceleration-strengthening moves tend to raise risk).
_BOOSTED = (1, 2, 3, 7)


@dataclass
class OperatorBank:
    """Weights, cumulative scores and use counts for the adaptive operators."""

    destroy_weights: np.ndarray = field(
        default_factory=lambda: np.ones(N_DESTROY)
    )
    destroy_scores: np.ndarray = field(
        default_factory=lambda: np.array(
            [1.5 if i + 1 in _BOOSTED else 1.0 for i in range(N_DESTROY)]
        )
    )
    destroy_uses: np.ndarray = field(
        default_factory=lambda: np.zeros(N_DESTROY, dtype=np.int64)
    )
    repair_weights: np.ndarray = field(default_factory=lambda: np.ones(N_REPAIR))
    repair_scores: np.ndarray = field(default_factory=lambda: np.ones(N_REPAIR))
    repair_uses: np.ndarray = field(
        default_factory=lambda: np.zeros(N_REPAIR, dtype=np.int64)
    )


def init_bank() -> OperatorBank:
    return OperatorBank()


def roulette(weights: np.ndarray, rng) -> int:
    """0-based roulette-wheel draw proportional to weights."""
    total = float(weights.sum())
    if total <= 0.0:
        raise ValueError("roulette requires a positive total weight")
    u = rng.random() * total
    acc = 0.0
    for i, w in enumerate(weights):
        acc += float(w)
        if u < acc:
            return i
    return len(weights) - 1


def select_operator(bank: OperatorBank, kind: str, rng) -> int:
    """1-based operator id drawn by roulette over the bank's weights."""
    weights = bank.destroy_weights if kind == "destroy" else bank.repair_weights
    return roulette(weights, rng) + 1


def xi_fraction(
    crash: bool,
    gttc_min_value: float,
    it: int,
    it_max: int,
    rejection_count: int,
    rejection_threshold: int,
) -> float:
    """Upper bound of the destruction step as a fraction of the parameter range.

    Below the rejection threshold the step stays at the tightest band; once
    consecutive rejections exceed it, the band widens with the current
    scenario's risk level (riskier current scenario -> smaller, more local
    steps) and shrinks with search progress in the risk-free band.
    """
    if rejection_count <= rejection_threshold:
        return 0.1
    if crash:
        return 0.1
    if gttc_min_value <= 0.5:
        return 0.2
    if gttc_min_value <= 1.0:
        return 0.3
    if gttc_min_value <= 2.0:
        return 0.8
    return 0.8 - 0.4 * (it / it_max if it_max > 0 else 1.0)


def sample_xi(
    space: ScenarioSpace,
    param_index: int,
    crash: bool,
    gttc_min_value: float,
    it: int,
    it_max: int,
    rejection_count: int,
    rejection_threshold: int,
    rng,
) -> float:
    frac = xi_fraction(
        crash, gttc_min_value, it, it_max, rejection_count, rejection_threshold
    )
    span = space.specs[param_index].span
    if span == 0.0:
        return 0.0
    return rng.uniform(0.0, frac * span)


def destroy(
    current: Scenario, op_id: int, xi: float, space: ScenarioSpace
) -> ContinuousPoint:
    """Perturb one coordinate of the current scenario by +/-xi and clamp."""
    if not 1 <= op_id <= N_DESTROY:
        raise ValueError(f"invalid destroy operator {op_id}")
    param = (op_id - 1) // 2
    sign = -1.0 if op_id % 2 == 1 else 1.0
    coords = list(current.coords)
    coords[param] += sign * xi
    return space.clamp(tuple(coords))


def sa_accept(delta: float, t_current: float, rng) -> bool:
    """Metropolis rule: always accept improvements, worse moves w.p. exp(-d/T)."""
    if t_current <= 0.0:
        raise ValueError("temperature must be positive")
    if delta <= 0.0:
        return True
    return rng.random() < math.exp(-delta / t_current)


# Score credited to the operators of one iteration, banded by the new
# scenario's GTTC_min. Column order: improvement, accepted-worse, rejected.
_THETA_BANDS = (
    (0.5, (2.6, 2.0, 1.8)),
    (1.0, (2.2, 1.6, 1.4)),
    (2.0, (1.8, 1.2, 1.0)),
    (INF, (0.2, 0.1, 0.0)),
)


def score_delta(old: float, new: float, accepted: bool) -> float:
    if (old < 0.0 and not math.isinf(old)) or (new < 0.0 and not math.isinf(new)):
        raise ValueError("GTTC_min values must be nonnegative")
    for bound, (improved, acc, rej) in _THETA_BANDS:
        if new <= bound:
            if new < old:
                return improved
            return acc if accepted else rej
    raise AssertionError("unreachable")


def update_bank(
    bank: OperatorBank, destroy_id: int, repair_id: int, theta: float, rho: float
) -> OperatorBank:
    """Credit theta to both used operators and refresh their weights in place."""
    if not 0.0 < rho <= 1.0:
        raise ValueError("rho must be in (0, 1]")
    for uses, scores, weights, idx in (
        (bank.destroy_uses, bank.destroy_scores, bank.destroy_weights, destroy_id - 1),
        (bank.repair_uses, bank.repair_scores, bank.repair_weights, repair_id - 1),
    ):
        uses[idx] += 1
        scores[idx] += theta
        weights[idx] = (1.0 - rho) * weights[idx] + rho * scores[idx] / uses[idx]
    return bank
