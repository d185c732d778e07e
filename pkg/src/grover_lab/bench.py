"""Parameter sweeps and the built-in self-test suite."""

from __future__ import annotations

import csv
import io
import json
import re
import time
from dataclasses import dataclass

import numpy as np

from .bounded import BoundedConfig, run_bounded
from .errors import GroverLabError
from .instance import angle_of, random_instance
from .modified import (
    ReducedState,
    apply_A_reduced,
    build_operators,
    lift_apply_A,
    operators_from_angle,
    run_modified_known_m,
)
from .standard import plan_iterations, rotation_curve, run_standard
from .statevector import decompose, solution_probability, uniform_state

MODES = ("standard", "modified", "bounded")
CSV_HEADER = (
    "n", "N", "M", "mode", "iterations", "oracle_queries",
    "step_count", "success_fraction", "wall_time_ms",
)

_RULE_RE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(M)?\s*$")


@dataclass(frozen=True)
class MMaxRule:
    """``"4"`` means a fixed bound of 4; ``"2M"`` or ``"2*M"`` means twice the true M."""

    value: int
    per_solution: bool

    @classmethod
    def parse(cls, text) -> "MMaxRule":
        if isinstance(text, int):
            return cls(text, False)
        match = _RULE_RE.match(str(text))
        if not match or (match.group(1) is None and match.group(2) is None):
            raise GroverLabError("bad-rule", f"cannot parse m_max rule {text!r}")
        factor = int(match.group(1)) if match.group(1) else 1
        if factor < 1:
            raise GroverLabError("bad-rule", f"m_max rule {text!r} must be positive")
        return cls(factor, match.group(2) is not None)

    def resolve(self, M: int, N: int) -> int:
        bound = self.value * M if self.per_solution else self.value
        return min(bound, N)


@dataclass(frozen=True)
class SweepSpec:
    n_range: tuple[int, ...]
    M_values: tuple[int, ...]
    modes: tuple[str, ...] = MODES
    shots: int = 1
    seed: int = 0
    m_max_rule: MMaxRule = MMaxRule(1, True)
    order: str = "ascending"
    timing: bool = False

    def __post_init__(self):
        if not self.modes:
            raise GroverLabError("bad-spec", "modes must be non-empty")
        for mode in self.modes:
            if mode not in MODES:
                raise GroverLabError("bad-spec", f"unknown mode {mode!r}")
        if self.shots < 1:
            raise GroverLabError("bad-count", "shots must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        known = {"n_range", "M_values", "modes", "shots", "seed", "m_max_rule", "order", "timing"}
        extra = set(data) - known
        if extra:
            raise GroverLabError("bad-spec", f"unknown keys {sorted(extra)}")
        kwargs = dict(data)
        for key in ("n_range", "M_values", "modes"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        if "m_max_rule" in kwargs:
            kwargs["m_max_rule"] = MMaxRule.parse(kwargs["m_max_rule"])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise GroverLabError("bad-spec", str(exc))


@dataclass(frozen=True)
class SweepRow:
    n: int
    N: int
    M: int
    mode: str
    iterations: int
    oracle_queries: int
    step_count: int
    success_fraction: float
    wall_time_ms: float | None = None


def derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _run_one(inst, mode, spec, seed):
    if mode == "standard":
        r = run_standard(inst, spec.shots, seed)
        return r.iterations, r.oracle_queries, r.step_count, r.success_fraction
    if mode == "modified":
        r = run_modified_known_m(inst, spec.shots, seed)
        return r.iterations, r.oracle_queries, r.step_count, r.success_fraction
    cfg = BoundedConfig(
        m_max=spec.m_max_rule.resolve(inst.M, inst.N),
        shots_per_trial=spec.shots,
        candidate_order=spec.order,
        seed=seed,
    )
    r = run_bounded(inst, cfg)
    return r.trials_used, r.total_oracle_queries, r.step_count, 0.0 if r.exhausted else 1.0


def run_sweep(spec: SweepSpec, warn=None) -> list[SweepRow]:
    """One row per feasible (n, M, mode), in n, M, mode order.

    Infeasible pairs (M > 2**n) are skipped and reported through ``warn``.
    """
    rows = []
    for n in spec.n_range:
        N = 1 << n
        for M in spec.M_values:
            if not 1 <= M <= N:
                if warn is not None:
                    warn(f"skipping infeasible pair n={n}, M={M}")
                continue
            inst = random_instance(n, M, derive_seed(spec.seed, n, M))
            for k, mode in enumerate(spec.modes):
                start = time.perf_counter()
                iters, queries, steps, frac = _run_one(inst, mode, spec, derive_seed(spec.seed, n, M, k))
                elapsed = (time.perf_counter() - start) * 1e3 if spec.timing else None
                rows.append(SweepRow(n, N, M, mode, iters, queries, steps, frac, elapsed))
    return rows


def _row_values(row: SweepRow) -> list[str]:
    wall = "" if row.wall_time_ms is None else repr(round(row.wall_time_ms, 3))
    return [
        str(row.n), str(row.N), str(row.M), row.mode, str(row.iterations),
        str(row.oracle_queries), str(row.step_count),
        f"{row.success_fraction:.6f}", wall,
    ]


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_row_values(row))
    return buf.getvalue()


def rows_to_jsonl(rows: list[SweepRow]) -> str:
    lines = []
    for row in rows:
        d = {
            "n": row.n, "N": row.N, "M": row.M, "mode": row.mode,
            "iterations": row.iterations, "oracle_queries": row.oracle_queries,
            "step_count": row.step_count,
            "success_fraction": round(row.success_fraction, 6),
            "wall_time_ms": None if row.wall_time_ms is None else round(row.wall_time_ms, 3),
        }
        lines.append(json.dumps(d))
    return "".join(line + "\n" for line in lines)


def read_csv_rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


# -- self-test ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _skewed_ops(m, N, skew):
    if skew == 0.0:
        return build_operators(m, N)
    return operators_from_angle(build_operators(m, N).theta_assumed + skew, N)


def check_operator_identities(rng, pairs=200):
    worst = 0.0
    for _ in range(pairs):
        N = 1 << int(rng.integers(1, 25))
        m = int(rng.integers(1, N + 1))
        ops = build_operators(m, N)
        worst = max(worst, float(np.abs(ops.X @ ops.O - ops.A).max()))
        for U in (ops.O, ops.X, ops.A):
            worst = max(worst, float(np.abs(U.T @ U - np.eye(2)).max()))
    return CheckResult("operator_identities", bool(worst <= 1e-14), f"max deviation {worst:.3e}")


def check_reduced_full(rng, max_n=10, skew=0.0, trials=60):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, max_n + 1))
        N = 1 << n
        inst = random_instance(n, int(rng.integers(1, max(N, 2))), int(rng.integers(2**31)))
        m = int(rng.integers(1, N + 1))
        if inst.M == N:
            continue
        ops = _skewed_ops(m, N, skew)
        coords = decompose(lift_apply_A(uniform_state(n), inst, ops), inst)
        red = apply_A_reduced(ops, ReducedState.from_angle(angle_of(inst).theta))
        worst = max(worst, abs(coords.a - red.c0), abs(coords.b - red.c1), coords.residual_norm)
    return CheckResult("reduced_full_equivalence", bool(worst <= 1e-10), f"max deviation {worst:.3e}")


def check_single_shot(rng, max_n=10, skew=0.0, per_n=5):
    worst = 0.0
    for n in range(1, max_n + 1):
        N = 1 << n
        counts = [1, N] + [int(rng.integers(1, N + 1)) for _ in range(per_n)]
        for M in counts:
            inst = random_instance(n, M, int(rng.integers(2**31)))
            state = lift_apply_A(uniform_state(n), inst, _skewed_ops(M, N, skew))
            worst = max(worst, abs(1.0 - solution_probability(state, inst)))
    return CheckResult("single_shot_exactness", bool(worst <= 1e-10), f"max |1 - p| {worst:.3e}")


def check_iteration_prediction(rng, max_n=10, trials=20):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, max_n + 1))
        N = 1 << n
        inst = random_instance(n, int(rng.integers(1, N + 1)), int(rng.integers(2**31)))
        plan = plan_iterations(inst)
        simulated = rotation_curve(inst, plan.I)[-1]
        worst = max(worst, abs(simulated - plan.predicted_success))
    return CheckResult("iteration_prediction", bool(worst <= 1e-9), f"max deviation {worst:.3e}")


def selftest(seed: int = 0, skew_theta: float = 0.0, max_n: int = 10) -> list[CheckResult]:
    rng = np.random.Generator(np.random.PCG64(seed))
    return [
        check_operator_identities(rng),
        check_reduced_full(rng, max_n, skew_theta),
        check_single_shot(rng, max_n, skew_theta),
        check_iteration_prediction(rng, max_n),
    ]
