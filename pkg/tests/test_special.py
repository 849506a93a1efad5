import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mp_faddeeva, mp_faddeeva_series
from shipwave.errors import DomainError, SpecialFunctionOverflow
from shipwave.special import erfc_complex, faddeeva_w, faddeeva_w_loops, faddeeva_w_numpy

IMPLS = {"loops": faddeeva_w_loops, "numpy": faddeeva_w_numpy}


def test_w_at_zero():
    assert faddeeva_w(0j) == pytest.approx(1.0, abs=1e-16)


def test_w_at_i():
    # e erfc(1)
    assert abs(faddeeva_w(1j) - 0.42758357615580700442) < 1e-15


def test_w_large_argument_asymptotics():
    eta = 1e6 * (1 + 1j)
    assert abs(faddeeva_w(eta) * math.sqrt(math.pi) * eta / 1j - 1.0) <= 1e-10


@pytest.mark.parametrize("name", list(IMPLS))
def test_maclaurin_oracle_small_disc(name):
    rng = np.random.default_rng(11)
    r = 3.0 * np.sqrt(rng.uniform(0, 1, 60))
    a = rng.uniform(-math.pi, math.pi, 60)
    z = r * np.exp(1j * a)
    got = IMPLS[name](z)
    ref = np.array([mp_faddeeva_series(v) for v in z])
    assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-12


@pytest.mark.parametrize("name", list(IMPLS))
def test_relative_accuracy_wide_plane(name):
    rng = np.random.default_rng(5)
    z = np.concatenate(
        [
            rng.uniform(-30, 30, 150) + 1j * rng.uniform(0, 30, 150),
            rng.uniform(-8, 8, 80) + 1j * rng.uniform(-5, 0, 80),
            10.0 ** rng.uniform(-3, 8, 50) * np.exp(1j * rng.uniform(0, math.pi, 50)),
            np.linspace(-6, 6, 41) + 0j,
        ]
    )
    got = IMPLS[name](z)
    ref = np.array([mp_faddeeva(v) for v in z])
    assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-13


def test_kernels_agree():
    rng = np.random.default_rng(2)
    z = rng.uniform(-20, 20, 500) + 1j * rng.uniform(-4, 20, 500)
    a, b = faddeeva_w_loops(z), faddeeva_w_numpy(z)
    assert np.max(np.abs(a - b) / np.abs(b)) <= 1e-14


def test_array_shape_preserved():
    z = np.zeros((2, 3), dtype=complex)
    assert faddeeva_w(z).shape == (2, 3)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50), st.floats(-10, 50))
def test_schwarz_symmetry(x, y):
    eta = complex(x, y)
    assert cmath.isclose(faddeeva_w(-eta.conjugate()), faddeeva_w(eta).conjugate(), rel_tol=1e-14, abs_tol=1e-300)


def test_deep_lower_half_plane_overflows():
    with pytest.raises(SpecialFunctionOverflow):
        faddeeva_w(complex(0.0, -30.0))


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        faddeeva_w(complex(math.nan, 0.0))


def test_erfc_values():
    assert erfc_complex(0j) == pytest.approx(1.0)
    assert erfc_complex(10.0 + 0j).real == pytest.approx(2.0884875837625447570e-45, rel=1e-12)


def test_erfc_reflection_sample():
    rng = np.random.default_rng(3)
    r = 5.0 * np.sqrt(rng.uniform(0, 1, 100))
    z = r * np.exp(1j * rng.uniform(-math.pi, math.pi, 100))
    assert np.max(np.abs(erfc_complex(z) + erfc_complex(-z) - 2.0)) <= 1e-13


def test_erfc_against_mpmath():
    import mpmath

    rng = np.random.default_rng(4)
    z = rng.uniform(0, 18, 80) + 1j * rng.uniform(-18, 18, 80)
    z = z[np.abs(z) <= 26]
    got = erfc_complex(z)
    ref = np.array([complex(mpmath.erfc(mpmath.mpc(v))) for v in z])
    ok = np.abs(ref) > 1e-300
    assert np.max(np.abs(got[ok] - ref[ok]) / np.abs(ref[ok])) <= 1e-12


def test_erfc_overflow():
    with pytest.raises(SpecialFunctionOverflow):
        erfc_complex(complex(0.0, 40.0))
