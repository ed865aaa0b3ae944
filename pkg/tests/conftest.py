import numpy as np
import pytest

_ACCEPTANCE: list[tuple[str, str]] = []


def oracle_matrix(n, x):
    """Explicit ``I - 2|x><x|``; independent of the amplitude-level code."""
    m = np.eye(n, dtype=complex)
    m[x, x] = -1.0
    return m


def inversion_matrix(n):
    s = np.full((n, 1), 1 / np.sqrt(n))
    return 2 * (s @ s.T) - np.eye(n)


def random_state(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _ACCEPTANCE.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {label}")
