import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dubins_pair.integrate import TimeGrid
from dubins_pair.model import BoundaryConditions, PairState, Weights
from dubins_pair.scenario import builtin_scenario
from dubins_pair.solver import SolveOptions, fbsm_solve, shooting_solve

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_pair(rng: np.random.Generator, min_gap: float = 0.5) -> np.ndarray:
    """Six finite state components with the vehicles at least ``min_gap`` apart."""
    while True:
        s = rng.uniform(-3, 3, 6)
        if np.hypot(s[0] - s[3], s[1] - s[4]) > min_gap:
            return s


def smooth_scenario(seed: int = 11) -> tuple[BoundaryConditions, Weights]:
    """A short, well-separated manoeuvre used wherever a generic problem is needed."""
    rng = np.random.default_rng(seed)
    a0 = np.r_[rng.uniform(-1, 1, 2), rng.uniform(-0.5, 0.5)]
    b0 = a0 + np.r_[4.0, 1.0, rng.uniform(-0.5, 0.5)]
    a1 = a0 + np.r_[rng.uniform(1, 2), rng.uniform(1, 2), rng.uniform(-0.5, 0.5)]
    b1 = b0 + np.r_[rng.uniform(1, 2), rng.uniform(-2, -1), rng.uniform(-0.5, 0.5)]
    bc = BoundaryConditions(PairState.from_array(np.r_[a0, b0]), PairState.from_array(np.r_[a1, b1]), 2.0)
    return bc, Weights(delta=1.0, beta=0.1, alpha=0.07, rho=0.8)


@pytest.fixture(scope="session")
def baseline():
    return builtin_scenario("baseline")


@pytest.fixture(scope="session")
def baseline_fbsm(baseline):
    return fbsm_solve(baseline.bc, baseline.weights, baseline.options,
                      grid=TimeGrid(baseline.horizon, baseline.steps))


@pytest.fixture(scope="session")
def baseline_shooting(baseline, baseline_fbsm):
    opts = SolveOptions(max_iterations=100)
    return shooting_solve(baseline.bc, baseline.weights, opts, grid=TimeGrid(baseline.horizon, baseline.steps),
                          guess=baseline_fbsm.costates.nodes[0])



# --- acceptance report ------------------------------------------------------
# Tests marked ``criterion(n, title)`` get one PASS/FAIL line at the end of the run.

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.failed:
        _criteria[number] = ("FAIL", title)
    elif report.when == "call" and number not in _criteria:
        _criteria[number] = ("PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"{status}  criterion {number}: {title}")
