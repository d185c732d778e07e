"""Single-iteration search for a known number of solutions.

With ``sin(theta) = sqrt(m/N)`` the uniform state sits at angle ``theta``
from the non-solution axis. Rotating it directly by ``pi/2 - theta`` lands
it on the solution axis, so one application suffices. That rotation is

    A = [[sin t, -cos t],
         [cos t,  sin t]]

and factors as ``A = X @ O`` with ``O = diag(1, -1)`` the oracle and

    X = [[sin t,  cos t],
         [cos t, -sin t]]

a reflection. In the full N-dimensional space the 2x2 matrices act on
span{|alpha>, |beta>} (uniform over non-solutions and over solutions) and
as the identity on its orthogonal complement.

Note the lift needs the solution set to form |beta>; it is a mathematical
unitary, not an oracle-only circuit. One oracle query is charged per
application of A, for its O factor.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GroverLabError
from .instance import SearchInstance, f_eval
from .standard import OPERATOR_STEP, RunReport, summarize
from .statevector import (
    StateVector,
    measure,
    recombine,
    solution_probability,
    split,
    uniform_state,
)

ORACLE = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True)
class OperatorSet:
    theta_assumed: float
    N: int
    O: np.ndarray
    X: np.ndarray
    A: np.ndarray

    def to_dict(self) -> dict:
        return {
            "theta": self.theta_assumed,
            "O": self.O.tolist(),
            "X": self.X.tolist(),
            "A": self.A.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ReducedState:
    c0: float
    c1: float

    @classmethod
    def from_angle(cls, theta: float) -> "ReducedState":
        return cls(math.cos(theta), math.sin(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1])


def operators_from_trig(sin_t: float, cos_t: float, N: int) -> OperatorSet:
    X = np.array([[sin_t, cos_t], [cos_t, -sin_t]])
    A = np.array([[sin_t, -cos_t], [cos_t, sin_t]])
    theta = math.atan2(sin_t, cos_t)
    return OperatorSet(theta, N, ORACLE.copy(), X, A)


def operators_from_angle(theta: float, N: int) -> OperatorSet:
    return operators_from_trig(math.sin(theta), math.cos(theta), N)


def build_operators(m: int, N: int) -> OperatorSet:
    if not 1 <= m <= N:
        raise GroverLabError("bad-count", f"m={m} outside [1, {N}]")
    # square roots of exact ratios keep m = N exact (cos = 0, A = I)
    return operators_from_trig(math.sqrt(m / N), math.sqrt((N - m) / N), N)


def apply_A_reduced(ops: OperatorSet, s: ReducedState) -> ReducedState:
    c0, c1 = ops.A @ s.as_array()
    return ReducedState(float(c0), float(c1))


def lift_apply(state: StateVector, inst: SearchInstance, matrix: np.ndarray) -> StateVector:
    """Apply a 2x2 matrix on span{|alpha>, |beta>}, identity elsewhere.

    If every index is a solution the span is one-dimensional and there is
    no room to rotate; the state is returned unchanged.
    """
    a, b, residual = split(state, inst)
    if inst.M == inst.N:
        return StateVector(state.amplitudes.copy(), state.n)
    a2 = matrix[0, 0] * a + matrix[0, 1] * b
    b2 = matrix[1, 0] * a + matrix[1, 1] * b
    return StateVector(recombine(a2, b2, residual, inst), state.n)


def lift_apply_A(state: StateVector, inst: SearchInstance, ops: OperatorSet) -> StateVector:
    if ops.N != inst.N:
        raise GroverLabError("shape-error", f"operators built for N={ops.N}, instance has N={inst.N}")
    return lift_apply(state, inst, ops.A)


def lift_apply_X(state: StateVector, inst: SearchInstance, ops: OperatorSet) -> StateVector:
    if ops.N != inst.N:
        raise GroverLabError("shape-error", f"operators built for N={ops.N}, instance has N={inst.N}")
    return lift_apply(state, inst, ops.X)


def mismatch_probability(theta_true: float, theta_assumed: float) -> float:
    """Success probability of one rotation built for the wrong angle."""
    return math.cos(theta_true - theta_assumed) ** 2


def prepare_modified(inst: SearchInstance, m: int) -> StateVector:
    """Uniform state after one application of A built for ``m`` solutions."""
    return lift_apply_A(uniform_state(inst.n), inst, build_operators(m, inst.N))


def run_modified(inst: SearchInstance, m: int, shots: int = 1, seed=0) -> RunReport:
    state = prepare_modified(inst, m)
    samples = measure(state, shots, seed)
    hist, fraction = summarize(samples, inst)
    measured = samples[0]
    return RunReport(
        mode="modified",
        n=inst.n,
        M=inst.M,
        iterations=1,
        oracle_queries=1,
        step_count=inst.n + OPERATOR_STEP + 1,
        measured=measured,
        verified=bool(f_eval(inst, measured)),
        success_fraction=fraction,
        shots=shots,
        seed=seed,
        success_probability=solution_probability(state, inst),
        histogram=hist,
    )


def run_modified_known_m(inst: SearchInstance, shots: int = 1, seed: int = 0) -> RunReport:
    return run_modified(inst, inst.M, shots, seed)
