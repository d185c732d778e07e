"""Dense state-vector engine shared by both search algorithms.

All operations are pure: they return a new :class:`StateVector` and leave
their input untouched. Amplitudes are complex128.

Sampling uses numpy's PCG64 bit generator seeded directly with the caller's
seed (an int or a sequence of ints), then inverse-CDF lookup over the
cumulative probability array, so sample sequences are stable across
platforms for a fixed numpy version.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GroverLabError
from .instance import SearchInstance

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class StateVector:
    __slots__ = ("amplitudes", "n")

    def __init__(self, amplitudes, n: int | None = None):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        size = amps.shape[0]
        if n is None:
            n = size.bit_length() - 1
        if size != 1 << n or n < 1:
            raise GroverLabError("shape-error", f"length {size} is not 2**n for n >= 1")
        amps.flags.writeable = False
        self.amplitudes = amps
        self.n = n

    @property
    def N(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_json(self) -> str:
        """Debug dump: index-ordered list of ``[re, im]`` pairs."""
        return json.dumps([[float(z.real), float(z.imag)] for z in self.amplitudes])

    def __repr__(self):
        return f"StateVector(n={self.n})"


@dataclass(frozen=True)
class SubspaceCoords:
    a: complex
    b: complex
    residual_norm: float


def basis_state(n: int, index: int) -> StateVector:
    N = 1 << n
    if not 0 <= index < N:
        raise GroverLabError("bad-index", f"index {index} outside [0, {N - 1}]")
    amps = np.zeros(N, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, n)


def uniform_state(n: int) -> StateVector:
    if n < 1:
        raise GroverLabError("bad-dimension", f"n={n} must be >= 1")
    N = 1 << n
    return StateVector(np.full(N, 1.0 / math.sqrt(N), dtype=np.complex128), n)


def fwht(values: np.ndarray) -> np.ndarray:
    """Normalized fast Walsh-Hadamard transform, in place on ``values``.

    Each butterfly stage pairs entries ``h`` apart and scales by 1/sqrt(2),
    so the transform is orthonormal and its own inverse.
    """
    N = values.shape[0]
    h = 1
    while h < N:
        blocks = values.reshape(-1, 2, h)
        top = blocks[:, 0, :].copy()
        bottom = blocks[:, 1, :]
        blocks[:, 0, :] += bottom
        blocks[:, 1, :] = top - bottom
        blocks *= _INV_SQRT2
        h <<= 1
    return values


def hadamard_all(state: StateVector) -> StateVector:
    out = state.amplitudes.copy()
    fwht(out)
    return StateVector(out, state.n)


def _generator(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def measure(state: StateVector, shots: int, seed) -> list[int]:
    if shots < 1:
        raise GroverLabError("bad-count", f"shots={shots} must be >= 1")
    cdf = np.cumsum(state.probabilities())
    total = cdf[-1]
    if not total > 0.0:
        raise GroverLabError("invalid-state", "state has zero norm")
    u = _generator(seed).random(shots) * total
    # side="right" never lands on a zero-probability index
    picks = np.searchsorted(cdf, u, side="right")
    np.minimum(picks, state.N - 1, out=picks)
    return picks.tolist()


def _check_dims(state: StateVector, inst: SearchInstance) -> None:
    if state.N != inst.N:
        raise GroverLabError("shape-error", f"state has N={state.N}, instance has N={inst.N}")


def solution_probability(state: StateVector, inst: SearchInstance) -> float:
    _check_dims(state, inst)
    return float(np.sum(state.probabilities()[inst.mask]))


def subspace_basis(inst: SearchInstance) -> tuple[np.ndarray, np.ndarray]:
    """The uniform non-solution vector and uniform solution vector.

    When every index is a solution the non-solution vector is all zeros.
    """
    mask = inst.mask
    alpha = np.zeros(inst.N)
    beta = np.zeros(inst.N)
    beta[mask] = 1.0 / math.sqrt(inst.M)
    if inst.M < inst.N:
        alpha[~mask] = 1.0 / math.sqrt(inst.N - inst.M)
    return alpha, beta


def _overlaps(amps: np.ndarray, inst: SearchInstance) -> tuple[complex, complex]:
    mask = inst.mask
    b = complex(amps[mask].sum()) / math.sqrt(inst.M)
    a = 0j
    if inst.M < inst.N:
        a = complex(amps[~mask].sum()) / math.sqrt(inst.N - inst.M)
    return a, b


def split(state: StateVector, inst: SearchInstance) -> tuple[complex, complex, np.ndarray]:
    """Return ``(a, b, residual)`` with ``state = a|alpha> + b|beta> + residual``."""
    _check_dims(state, inst)
    amps = state.amplitudes
    a, b = _overlaps(amps, inst)
    mask = inst.mask
    residual = amps.copy()
    residual[mask] -= b / math.sqrt(inst.M)
    if inst.M < inst.N:
        residual[~mask] -= a / math.sqrt(inst.N - inst.M)
    return a, b, residual


def recombine(a: complex, b: complex, residual: np.ndarray, inst: SearchInstance) -> np.ndarray:
    out = np.array(residual, dtype=np.complex128)
    mask = inst.mask
    out[mask] += b / math.sqrt(inst.M)
    if inst.M < inst.N:
        out[~mask] += a / math.sqrt(inst.N - inst.M)
    return out


def decompose(state: StateVector, inst: SearchInstance) -> SubspaceCoords:
    a, b, residual = split(state, inst)
    return SubspaceCoords(a, b, float(np.linalg.norm(residual)))
