"""Shared search machinery: tested-scenario archive, budgeted evaluation
driver, per-evaluation logging and the run-result container."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .risk import INF, ScenarioClass
from .sim import EvaluationResult
from .space import ContinuousPoint, Scenario, ScenarioSpace

# Finite stand-in for the +inf GTTC sentinel in SA delta arithmetic.
F_CAP = 1e6


def capped(gttc_min_value: float) -> float:
    return min(gttc_min_value, F_CAP)


class SpaceExhausted(Exception):
    """Every grid scenario has been tested."""


class Archive:
    """Set of tested scenario indices with fast neighborhood-box queries."""

    def __init__(self, space: ScenarioSpace):
        self.space = space
        self.tested = np.zeros(space.cardinality, dtype=bool)
        self._grid = self.tested.reshape(space.shape)
        self._axis_values = [
            np.array([spec.value(k) for k in range(spec.levels)])
            for spec in space.specs
        ]
        self._gammas = np.array([max(g, 1.0) if g == 0 else g for g in space.gammas])
        self.order: list[int] = []

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, idx: int) -> bool:
        return bool(self.tested[idx])

    @property
    def full(self) -> bool:
        return len(self.order) == self.space.cardinality

    def add(self, idx: int) -> None:
        assert not self.tested[idx], f"scenario {idx} was already tested"
        self.tested[idx] = True
        self.order.append(idx)

    def untested_in_box(self, point: ContinuousPoint, j: int) -> np.ndarray:
        """Flat indices of untested scenarios in the jth box around point,
        sorted by step-normalized distance then by flat index."""
        windows = self.space.box_windows(point, j)
        if any(lo > hi for lo, hi in windows):
            return np.empty(0, dtype=np.int64)
        slices = tuple(slice(lo, hi + 1) for lo, hi in windows)
        sub = self._grid[slices]
        pos = np.argwhere(~sub)
        if pos.size == 0:
            return np.empty(0, dtype=np.int64)
        offsets = np.array([lo for lo, _ in windows])
        levels = pos + offsets
        flat = np.ravel_multi_index(levels.T, self.space.shape)
        dist2 = np.zeros(len(flat))
        for i in range(4):
            coords = self._axis_values[i][levels[:, i]]
            dist2 += ((coords - point[i]) / self._gammas[i]) ** 2
        return flat[np.lexsort((flat, dist2))].astype(np.int64)

    def nearest_untested(self, point: ContinuousPoint) -> int:
        """Globally nearest untested scenario (ties by smaller flat index)."""
        best_flat = -1
        best_d = INF
        max_j = self.space.max_ring
        j = 1
        while j <= max_j:
            flats = self.untested_in_box(point, j)
            if len(flats):
                cand = int(flats[0])
                d = self.space.distance(point, self.space.index_to_scenario(cand).coords)
                if d < best_d or (d == best_d and cand < best_flat):
                    best_flat, best_d = cand, d
                # anything outside box j is farther than j in normalized units
                if j >= best_d:
                    return best_flat
            j += 1
        if best_flat >= 0:
            return best_flat
        raise SpaceExhausted


@dataclass(frozen=True)
class LogRow:
    """One evaluation, in the order it happened."""

    iteration: int
    scenario: Scenario
    gttc_min: float
    risk_class: ScenarioClass
    accepted: bool
    destroy_op: int | None = None
    repair_op: int | None = None
    t_current: float | None = None


class BudgetedEvaluator:
    """Wraps the scenario evaluator with archive bookkeeping and a budget."""

    def __init__(
        self,
        space: ScenarioSpace,
        evaluator: Callable[[Scenario], EvaluationResult],
        budget: int,
    ):
        if budget > space.cardinality:
            raise ValueError("budget exceeds the scenario space cardinality")
        self.space = space
        self.archive = Archive(space)
        self._evaluator = evaluator
        self.budget = budget
        self.results: dict[int, EvaluationResult] = {}
        self.rows: list[LogRow] = []

    @property
    def count(self) -> int:
        return len(self.archive)

    @property
    def remaining(self) -> int:
        return self.budget - self.count

    def evaluate(self, scenario: Scenario) -> EvaluationResult:
        assert self.remaining > 0, "evaluation budget exhausted"
        res = self._evaluator(scenario)
        self.archive.add(scenario.index)
        self.results[scenario.index] = res
        return res

    def log(self, scenario: Scenario, res: EvaluationResult, accepted: bool,
            destroy_op: int | None = None, repair_op: int | None = None,
            t_current: float | None = None) -> None:
        self.rows.append(LogRow(
            iteration=self.count - 1,
            scenario=scenario,
            gttc_min=res.gttc_min,
            risk_class=res.risk_class,
            accepted=accepted,
            destroy_op=destroy_op,
            repair_op=repair_op,
            t_current=t_current,
        ))


@dataclass
class RunResult:
    """Outcome of one search campaign."""

    algorithm: str
    seed: int
    rows: list[LogRow]
    archive_order: list[int]
    omega_star: list[int]
    bank: object | None = None
    invalid: bool = False
    extras: dict = field(default_factory=dict)

    @property
    def n_evaluations(self) -> int:
        return len(self.archive_order)

    @property
    def best_gttc_min(self) -> float:
        return min((r.gttc_min for r in self.rows), default=INF)

    def classified_sets(self) -> dict[ScenarioClass, set[int]]:
        sets: dict[ScenarioClass, set[int]] = {c: set() for c in ScenarioClass}
        for row in self.rows:
            sets[row.risk_class].add(row.scenario.index)
        return sets
