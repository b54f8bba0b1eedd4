"""Experiment configuration: a flat INI-style `key = value` file with one
section per subsystem. See configs/default.cfg for the documented schema."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .alvns import SearchConfig
from .baselines import GAConfig
from .sim import EgoControllerConfig, SimConfig
from .space import PARAM_NAMES, ConfigurationError, ParamSpec, ScenarioSpace, build_space

ALGORITHMS = ("alvns-sa", "alns-sa", "ga", "random")


@dataclass(frozen=True)
class ExperimentConfig:
    space: ScenarioSpace
    sim: SimConfig
    ego: EgoControllerConfig
    algorithms: tuple[str, ...]
    seeds: tuple[int, ...]
    budget: int
    oracle_seed: int = 0
    workers: int | None = None
    sa_params: dict = field(default_factory=dict)
    ga_params: dict = field(default_factory=dict)

    def search_config(self, seed: int) -> SearchConfig:
        return SearchConfig(budget=self.budget, seed=seed, **self.sa_params)

    def ga_config(self, seed: int) -> GAConfig:
        return GAConfig(budget=self.budget, seed=seed, **self.ga_params)


def _parse_axis(name: str, text: str) -> ParamSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(
            f"[space] {name}: expected start:step:levels, got {text!r}")
    try:
        return ParamSpec(name, float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ConfigurationError(f"[space] {name}: {exc}") from exc


def load_config(path: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    read = parser.read(path)
    if not read:
        raise ConfigurationError(f"config file not found: {path}")
    try:
        return _build(parser)
    except (configparser.Error, KeyError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"invalid config {path}: {exc}") from exc


def _build(parser: configparser.ConfigParser) -> ExperimentConfig:
    space_sec = parser["space"]
    specs = [_parse_axis(name, space_sec[name]) for name in PARAM_NAMES]
    space = build_space(specs)

    sim_sec = parser["sim"] if parser.has_section("sim") else {}
    sim = SimConfig(
        dt=float(sim_sec.get("dt", 0.1)),
        t_max=float(sim_sec.get("t_max", 30.0)),
        sigma=float(sim_sec.get("sigma", 0.1)),
        open_gap_exit=int(sim_sec.get("open_gap_exit", 20)),
    )
    ego_sec = parser["ego"] if parser.has_section("ego") else {}
    ego = EgoControllerConfig(
        reaction_time=float(ego_sec.get("reaction_time", 0.5)),
        max_brake=float(ego_sec.get("max_brake", 6.0)),
        ttc_trigger=float(ego_sec.get("ttc_trigger", 2.5)),
        min_gap_trigger=float(ego_sec.get("min_gap_trigger", 5.0)),
    )

    run_sec = parser["run"]
    algorithms = tuple(
        a.strip() for a in run_sec.get("algorithms", ",".join(ALGORITHMS)).split(",")
        if a.strip()
    )
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {algo!r}")
    if not algorithms:
        raise ConfigurationError("at least one algorithm must be enabled")
    seeds = tuple(int(s) for s in run_sec.get("seeds", "1").split(",") if s.strip())
    if not seeds:
        raise ConfigurationError("at least one seed is required")
    budget = int(run_sec.get("budget", 11000))
    if not 1 <= budget <= space.cardinality:
        raise ConfigurationError(
            f"budget {budget} must be in [1, {space.cardinality}]")

    sa_sec = parser["alvns_sa"] if parser.has_section("alvns_sa") else {}
    sa_params = dict(
        t_begin=float(sa_sec.get("t_begin", 1.0)),
        t_end=float(sa_sec.get("t_end", 0.01)),
        alpha=float(sa_sec.get("alpha", 0.95)),
        rho=float(sa_sec.get("rho", 0.3)),
        rejection_threshold=int(sa_sec.get("rejection_threshold", 5)),
    )
    ga_sec = parser["ga"] if parser.has_section("ga") else {}
    ga_params = dict(
        population=int(ga_sec.get("population", 100)),
        crossover=float(ga_sec.get("crossover", 0.75)),
        mutation=float(ga_sec.get("mutation", 0.05)),
        generations=int(ga_sec.get("generations", 1500)),
    )

    workers_raw = int(run_sec.get("workers", 0))
    return ExperimentConfig(
        space=space,
        sim=sim,
        ego=ego,
        algorithms=algorithms,
        seeds=seeds,
        budget=budget,
        oracle_seed=int(run_sec.get("oracle_seed", 0)),
        workers=workers_raw if workers_raw > 0 else None,
        sa_params=sa_params,
        ga_params=ga_params,
    )
