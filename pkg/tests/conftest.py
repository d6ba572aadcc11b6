from functools import reduce

import numpy as np
import pytest

from tripartite.quantum import BlochDirection, make_state

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense_observable(*directions):
    """Explicit 8x8 Kronecker product; independent of the tensor-contraction path."""
    mats = [d.n[0] * X + d.n[1] * Y + d.n[2] * Z for d in directions]
    return reduce(np.kron, mats)


def random_state(rng):
    return make_state(rng.normal(size=8) + 1j * rng.normal(size=8))


def random_direction(rng):
    v = rng.normal(size=3)
    return BlochDirection(v / np.linalg.norm(v))


@pytest.fixture
def rng():
    return np.random.default_rng(20021208)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        status = "PASS" if report.passed else "FAIL"
        line = f"[{status}] criterion {marker.args[0]}"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)
