"""Search with only an upper bound on the number of solutions.

Each candidate count m in 1..m_max gets one run of the single-iteration
algorithm; every measured sample is checked with the classical membership
function and the first verified sample is returned. The trial with m equal
to the true count succeeds with certainty, so a correct bound always
yields a solution.

Accounting per trial: one quantum oracle query (the O inside A), one
classical query per checked sample, and ``n + 2`` steps for preparation
and the rotation plus one step per classical check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import GroverLabError
from .instance import SearchInstance, angle_for_count, angle_of, f_eval
from .modified import mismatch_probability, prepare_modified
from .standard import OPERATOR_STEP
from .statevector import measure

ORDERS = ("ascending", "descending")
_ORDER_ALIASES = {"asc": "ascending", "desc": "descending"}


@dataclass(frozen=True)
class BoundedConfig:
    m_max: int
    shots_per_trial: int = 1
    candidate_order: str = "ascending"
    seed: int = 0

    def __post_init__(self):
        order = _ORDER_ALIASES.get(self.candidate_order, self.candidate_order)
        if order not in ORDERS:
            raise GroverLabError("bad-order", f"candidate_order must be one of {ORDERS}")
        object.__setattr__(self, "candidate_order", order)
        if self.m_max < 1:
            raise GroverLabError("bad-count", f"m_max={self.m_max} must be >= 1")
        if self.shots_per_trial < 1:
            raise GroverLabError("bad-count", f"shots_per_trial={self.shots_per_trial} must be >= 1")

    def candidates(self) -> list[int]:
        ms = list(range(1, self.m_max + 1))
        return ms[::-1] if self.candidate_order == "descending" else ms


@dataclass(frozen=True)
class Trial:
    m: int
    measured: int
    verified: bool


@dataclass
class BoundedReport:
    found: int | None
    trials_used: int
    quantum_queries: int
    classical_queries: int
    step_count: int
    per_trial: list[Trial] = field(default_factory=list)

    @property
    def total_oracle_queries(self) -> int:
        return self.quantum_queries + self.classical_queries

    @property
    def exhausted(self) -> bool:
        return self.found is None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "trials_used": self.trials_used,
            "quantum_queries": self.quantum_queries,
            "classical_queries": self.classical_queries,
            "per_trial": [
                {"m": t.m, "measured": t.measured, "verified": t.verified}
                for t in self.per_trial
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_config(inst: SearchInstance, cfg: BoundedConfig) -> None:
    if cfg.m_max > inst.N:
        raise GroverLabError("bad-count", f"m_max={cfg.m_max} exceeds N={inst.N}")


def run_bounded(inst: SearchInstance, cfg: BoundedConfig) -> BoundedReport:
    _check_config(inst, cfg)
    trial_cost = inst.n + OPERATOR_STEP + 1
    report = BoundedReport(None, 0, 0, 0, 0)
    for m in cfg.candidates():
        state = prepare_modified(inst, m)
        # independent substream per candidate so trials replay in isolation
        samples = measure(state, cfg.shots_per_trial, (cfg.seed, m))
        report.trials_used += 1
        report.quantum_queries += 1
        report.classical_queries += len(samples)
        report.step_count += trial_cost + len(samples)
        hit = next((x for x in samples if f_eval(inst, x)), None)
        if hit is None:
            report.per_trial.append(Trial(m, samples[0], False))
            continue
        report.per_trial.append(Trial(m, hit, True))
        report.found = hit
        break
    return report


def trial_success_probability(inst: SearchInstance, m: int) -> float:
    """Chance one sample of the trial assuming ``m`` solutions is a solution."""
    if inst.M == inst.N:
        return 1.0
    return mismatch_probability(angle_of(inst).theta, angle_for_count(m, inst.N).theta)


def expected_queries(inst: SearchInstance, cfg: BoundedConfig) -> float:
    """Expected ``total_oracle_queries`` of :func:`run_bounded`.

    A trial is reached only if every earlier trial produced no verified
    sample; each reached trial costs 1 + shots_per_trial queries.
    """
    _check_config(inst, cfg)
    per_trial = 1 + cfg.shots_per_trial
    reach = 1.0
    total = 0.0
    for m in cfg.candidates():
        total += reach * per_trial
        p = trial_success_probability(inst, m)
        reach *= (1.0 - p) ** cfg.shots_per_trial
        if reach == 0.0:
            break
    return total


def expected_queries_variance(inst: SearchInstance, cfg: BoundedConfig) -> float:
    """Variance of ``total_oracle_queries``; used to size Monte-Carlo checks."""
    _check_config(inst, cfg)
    per_trial = 1 + cfg.shots_per_trial
    reach = 1.0
    mean = 0.0
    second = 0.0
    for k, m in enumerate(cfg.candidates(), start=1):
        fail = (1.0 - trial_success_probability(inst, m)) ** cfg.shots_per_trial
        stop_here = reach * (1.0 - fail) if k < cfg.m_max else reach
        cost = k * per_trial
        mean += stop_here * cost
        second += stop_here * cost * cost
        reach *= fail
    return max(second - mean * mean, 0.0)

