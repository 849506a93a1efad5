import math

import mpmath
import numpy as np
import pytest

KERNELS = ["loops", "numpy"]

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES = {}


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


def mp_faddeeva(z, dps=40):
    """w(z) = exp(-z^2) erfc(-iz) in extended precision."""
    with mpmath.workdps(dps):
        zz = mpmath.mpc(z)
        return complex(mpmath.exp(-zz * zz) * mpmath.erfc(-1j * zz))


def mp_faddeeva_series(z, terms=200, dps=60):
    """Maclaurin series w(z) = sum (iz)^n / Gamma(n/2 + 1)."""
    with mpmath.workdps(dps):
        iz = mpmath.mpc(0, 1) * mpmath.mpc(z)
        return complex(mpmath.fsum(iz**n / mpmath.gamma(mpmath.mpf(n) / 2 + 1) for n in range(terms)))


def closed_form(y):
    return 0.5 * math.sqrt(math.pi) * math.exp(y) / math.sqrt(-y)


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
