import math

import pytest

from wigner_well import GaussianPacketSpec, WellConfig, expansion_coefficients


@pytest.fixture(scope="session")
def well():
    # 2m = L = hbar = 1
    return WellConfig(mass=0.5, length=1.0, hbar=1.0)


@pytest.fixture(scope="session")
def gaussian():
    return GaussianPacketSpec(x0=0.5, p0=40 * math.pi, b=math.sqrt(2) / 20)


@pytest.fixture(scope="session")
def coeffs(well, gaussian):
    return expansion_coefficients(well, gaussian)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda text: text[5:]):
            terminalreporter.write_line(line)
