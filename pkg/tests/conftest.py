import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ecoplan import bundled  # noqa: E402
from ecoplan.model import VehicleParams  # noqa: E402


@pytest.fixture
def unit_drag_params():
    """m=1500 kg, rho*c_d*A_f = 1, c_r = 0.012, eta_max = 0.9, P_aux = 1 kW."""
    return VehicleParams(m=1500.0, rho_a=1.0, c_d=1.0, A_f=1.0, c_r=0.012, g=9.81,
                         eta_max=0.9, P_aux=1000.0, a_min=-2.0, a_max=2.0)


@pytest.fixture(scope="session")
def bench_problem():
    return bundled.problem()


@pytest.fixture(scope="session")
def bench_table(bench_problem):
    from ecoplan import dp
    return dp.solve(bench_problem)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
