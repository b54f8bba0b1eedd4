"""Reproducible random number generation.

Every stochastic component draws from numpy PCG64. Per-scenario streams are
derived with a SplitMix64 mix of (run_seed, scenario_index), so a scenario's
evaluation result depends only on the run seed and the scenario, never on
evaluation order or worker layout.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 output step (Steele et al. finalizer)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def scenario_seed(run_seed: int, scenario_index: int) -> int:
    """64-bit stream seed for one scenario under one run seed."""
    return splitmix64(splitmix64(run_seed & _MASK64) ^ (scenario_index & _MASK64))


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
