import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20261016))


def random_unit_vector(rng, N, complex_=True):
    v = rng.normal(size=N)
    if complex_:
        v = v + 1j * rng.normal(size=N)
    return v / np.linalg.norm(v)


_ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line: ``record(label, passed, detail)``."""

    def _record(label, passed, detail=""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
