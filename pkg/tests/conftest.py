import math

import pytest

from erep.power import UavPhysicalParams, derive_power_model


def zeng_power(v, exponent=0.5, W=20.0, R=0.4, omega=300.0, k=0.1, delta=0.012, rho=1.225, d0=0.6, s=0.05):
    """Scalar, term-by-term evaluation straight from the raw constants (test oracle)."""
    A = math.pi * R * R
    utip = omega * R
    v0 = math.sqrt(W / (2 * rho * A))
    pb = delta / 8 * rho * s * A * omega ** 3 * R ** 3
    pind = (1 + k) * W ** 1.5 / math.sqrt(2 * rho * A)
    blade = pb * (1 + 3 * v * v / (utip * utip))
    induced = pind * (math.sqrt(1 + v ** 4 / (4 * v0 ** 4)) - v * v / (2 * v0 * v0)) ** exponent
    parasite = 0.5 * d0 * rho * s * A * v ** 3
    return blade + induced + parasite


@pytest.fixture(scope="session")
def model():
    return derive_power_model(UavPhysicalParams())


@pytest.fixture(scope="session")
def model_printed():
    """The 3/2-exponent variant of the induced term."""
    return derive_power_model(UavPhysicalParams(induced_exponent=1.5))


ACCEPTANCE = {}


def record(criterion, ok, detail):
    ACCEPTANCE[criterion] = (bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}")
