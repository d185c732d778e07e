"""Search problems: the solution set, the membership function and the angle."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import GroverLabError

DEFAULT_MAX_N = 24
MAX_N_ENV = "GROVER_LAB_MAX_N"


def max_qubits() -> int:
    """Largest register size accepted, honouring ``GROVER_LAB_MAX_N``."""
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise GroverLabError("bad-dimension", f"{MAX_N_ENV}={raw!r} is not an integer")


@dataclass(frozen=True)
class SearchInstance:
    n: int
    solutions: tuple[int, ...]
    _members: frozenset = field(repr=False, compare=False)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def M(self) -> int:
        return len(self.solutions)

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean array of length N, True on solution indices (read-only)."""
        m = np.zeros(self.N, dtype=bool)
        m[list(self.solutions)] = True
        m.flags.writeable = False
        return m

    def is_solution(self, x: int) -> bool:
        return x in self._members

    def to_dict(self) -> dict:
        return {"n": self.n, "solutions": list(self.solutions)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class AngleParams:
    theta: float
    cos_theta: float
    sin_theta: float


def make_instance(n, solutions, max_n: int | None = None) -> SearchInstance:
    if max_n is None:
        max_n = max_qubits()
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise GroverLabError("bad-dimension", f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 1 or n > max_n:
        raise GroverLabError("bad-dimension", f"n={n} outside [1, {max_n}]")
    idx = sorted({int(x) for x in solutions})
    if not idx:
        raise GroverLabError("no-solutions", "solution set is empty")
    N = 1 << n
    if idx[0] < 0 or idx[-1] >= N:
        bad = idx[0] if idx[0] < 0 else idx[-1]
        raise GroverLabError("bad-index", f"solution index {bad} outside [0, {N - 1}]")
    return SearchInstance(n, tuple(idx), frozenset(idx))


def instance_from_dict(data: dict, max_n: int | None = None) -> SearchInstance:
    """Build an instance from the ``{"n": int, "solutions": [...]}`` literal."""
    try:
        n = data["n"]
        solutions = data["solutions"]
    except (KeyError, TypeError):
        raise GroverLabError("bad-instance", 'expected {"n": int, "solutions": [int, ...]}')
    return make_instance(n, solutions, max_n=max_n)


def instance_from_json(text: str, max_n: int | None = None) -> SearchInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroverLabError("bad-instance", str(exc))
    return instance_from_dict(data, max_n=max_n)


def f_eval(inst: SearchInstance, x: int) -> int:
    """Classical membership function: 1 if ``x`` is a solution, else 0."""
    if not 0 <= x < inst.N:
        raise GroverLabError("bad-index", f"x={x} outside [0, {inst.N - 1}]")
    return 1 if inst.is_solution(x) else 0


def angle_of(inst: SearchInstance) -> AngleParams:
    return angle_for_count(inst.M, inst.N)


def angle_for_count(m: int, N: int) -> AngleParams:
    # M == N gives cos = 0 exactly and theta = pi/2
    sin_t = math.sqrt(m / N)
    cos_t = math.sqrt((N - m) / N)
    return AngleParams(math.asin(sin_t), cos_t, sin_t)


def random_instance(n: int, M: int, seed: int, max_n: int | None = None) -> SearchInstance:
    """M distinct solutions drawn uniformly from [0, 2**n), reproducible per seed."""
    if max_n is None:
        max_n = max_qubits()
    if n < 1 or n > max_n:
        raise GroverLabError("bad-dimension", f"n={n} outside [1, {max_n}]")
    N = 1 << n
    if not 1 <= M <= N:
        raise GroverLabError("bad-count", f"M={M} outside [1, {N}]")
    rng = np.random.Generator(np.random.PCG64(seed))
    picks = rng.choice(N, size=M, replace=False)
    return make_instance(n, picks.tolist(), max_n=max_n)
