import os
import subprocess
import sys

from shipwave import _accel, backend

SNIPPET = """
from shipwave import backend, levin
from shipwave.clenshaw_curtis import integrate_I
r = levin.solve_corrected((-1, -0.5, 0.5), 60)
c = integrate_I((-1, 0, 0.1), 1e-10)
print(backend(), repr(r.value), repr(c.value))
"""


def run(flag):
    env = dict(os.environ, SHIPWAVE_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, timeout=300, check=True)
    name, lev, cc = out.stdout.split()
    return name, complex(lev), complex(cc)


def test_backend_name():
    assert backend() in ("numba", "numpy")
    assert backend() == ("numba" if _accel.NUMBA_ENABLED else "numpy")


def test_flag_selects_numpy_and_results_agree():
    name_off, lev_off, cc_off = run("1")
    name_on, lev_on, cc_on = run("0")
    assert name_off == "numpy"
    assert name_on in ("numba", "numpy")
    assert abs(lev_off - lev_on) <= 1e-13
    assert abs(cc_off - cc_on) <= 1e-13
