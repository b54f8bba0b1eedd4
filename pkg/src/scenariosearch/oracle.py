"""Brute-force ground truth: evaluate every grid scenario once.

Per-scenario seeding makes each result independent of evaluation order, so
the map is identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from .metrics import ClassifiedSets
from .risk import ScenarioClass
from .sim import EgoControllerConfig, EvaluationResult, SimConfig, evaluate
from .space import ParamSpec, ScenarioSpace, build_space

_CHUNK = 2048


def resolve_workers(workers: int | None) -> int:
    """Explicit argument wins, then SF_WORKERS, then the CPU count."""
    if workers is not None and workers > 0:
        return workers
    env = os.environ.get("SF_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def _evaluate_range(
    specs: tuple[ParamSpec, ...],
    sim_config: SimConfig,
    ego_config: EgoControllerConfig,
    run_seed: int,
    start: int,
    stop: int,
) -> list[EvaluationResult]:
    space = build_space(list(specs))
    return [
        evaluate(space.index_to_scenario(i), sim_config, ego_config, run_seed)
        for i in range(start, stop)
    ]


def brute_force_oracle(
    space: ScenarioSpace,
    sim_config: SimConfig,
    ego_config: EgoControllerConfig,
    run_seed: int,
    workers: int | None = None,
) -> list[EvaluationResult]:
    """Full classification map, indexed by flat scenario index."""
    n = space.cardinality
    workers = resolve_workers(workers)
    if workers == 1 or n <= _CHUNK:
        return _evaluate_range(space.specs, sim_config, ego_config, run_seed, 0, n)
    bounds = list(range(0, n, _CHUNK)) + [n]
    results: list[EvaluationResult] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_evaluate_range, space.specs, sim_config, ego_config,
                        run_seed, lo, hi)
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]
        for fut in futures:  # submission order keeps the map index-sorted
            results.extend(fut.result())
    return results


def oracle_classified_sets(oracle: list[EvaluationResult]) -> ClassifiedSets:
    sets: ClassifiedSets = {c: set() for c in ScenarioClass}
    for res in oracle:
        sets[res.risk_class].add(res.scenario_index)
    return sets
