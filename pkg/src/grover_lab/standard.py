"""Conventional Grover search: oracle, inversion about the mean, iteration plan."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .instance import SearchInstance, angle_of, f_eval
from .statevector import (
    StateVector,
    _check_dims,
    hadamard_all,
    measure,
    solution_probability,
    uniform_state,
)

# Cost model: preparing the uniform state costs n steps (one Hadamard layer
# per qubit); every operator application on the 2-D subspace costs one step
# plus the oracle queries it contains.
OPERATOR_STEP = 1


@dataclass
class RunReport:
    mode: str
    n: int
    M: int
    iterations: int
    oracle_queries: int
    step_count: int
    measured: int
    verified: bool
    success_fraction: float
    shots: int
    seed: int
    success_probability: float = float("nan")
    histogram: dict[int, int] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        keys = (
            "mode", "n", "M", "iterations", "oracle_queries", "step_count",
            "measured", "verified", "success_fraction", "shots", "seed",
        )
        return {k: getattr(self, k) for k in keys}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class IterationPlan:
    I: int
    theta: float
    predicted_success: float


def oracle_flip(state: StateVector, inst: SearchInstance) -> StateVector:
    _check_dims(state, inst)
    out = state.amplitudes.copy()
    out[inst.mask] *= -1
    return StateVector(out, state.n)


def conditional_phase(state: StateVector) -> StateVector:
    """Phase -1 on every basis state except |0>."""
    out = state.amplitudes.copy()
    out[1:] *= -1
    return StateVector(out, state.n)


def diffusion(state: StateVector) -> StateVector:
    amps = state.amplitudes
    return StateVector(2.0 * amps.mean() - amps, state.n)


def diffusion_sandwich(state: StateVector) -> StateVector:
    """H, conditional phase, H.

    The phase step is ``2|0><0| - I``, so this equals :func:`diffusion`
    exactly (no global sign), up to rounding.
    """
    return hadamard_all(conditional_phase(hadamard_all(state)))


def grover_iteration(state: StateVector, inst: SearchInstance, sandwich: bool = False) -> StateVector:
    flipped = oracle_flip(state, inst)
    if sandwich:
        return diffusion_sandwich(flipped)
    return diffusion(flipped)


def plan_iterations(inst: SearchInstance) -> IterationPlan:
    theta = angle_of(inst).theta
    if inst.M == inst.N:
        count = 0
    else:
        # round half away from zero; the ratio is always positive here
        count = int(math.floor((math.pi / 2 - theta) / (2 * theta) + 0.5))
    predicted = math.sin((2 * count + 1) * theta) ** 2
    return IterationPlan(count, theta, predicted)


def summarize(samples, inst):
    """Histogram and fraction of samples that are solutions."""
    hist = Counter(samples)
    hits = sum(c for x, c in hist.items() if inst.is_solution(x))
    return dict(sorted(hist.items())), hits / len(samples)


def run_standard(inst: SearchInstance, shots: int = 1, seed: int = 0) -> RunReport:
    plan = plan_iterations(inst)
    state = uniform_state(inst.n)
    for _ in range(plan.I):
        state = grover_iteration(state, inst)
    samples = measure(state, shots, seed)
    hist, fraction = summarize(samples, inst)
    measured = samples[0]
    return RunReport(
        mode="standard",
        n=inst.n,
        M=inst.M,
        iterations=plan.I,
        oracle_queries=plan.I,
        step_count=inst.n + plan.I * (OPERATOR_STEP + 1),
        measured=measured,
        verified=bool(f_eval(inst, measured)),
        success_fraction=fraction,
        shots=shots,
        seed=seed,
        success_probability=solution_probability(state, inst),
        histogram=hist,
    )


def rotation_curve(inst: SearchInstance, iterations: int) -> np.ndarray:
    """Simulated solution probability after 0..iterations Grover iterations."""
    state = uniform_state(inst.n)
    out = [solution_probability(state, inst)]
    for _ in range(iterations):
        state = grover_iteration(state, inst)
        out.append(solution_probability(state, inst))
    return np.array(out)
