import numpy as np
import pytest

from conftest import rel
from shipwave.clenshaw_curtis import integrate_I
from shipwave.derivatives import (
    UNIT_DIRECTIONS,
    Direction,
    deriv_cc,
    deriv_hat_phi,
    deriv_levin,
    deriv_levin_adaptive,
    deriv_lhat,
    deriv_phi_at_one,
    gradient_cc,
    varpi_circ,
)
from shipwave.errors import DomainError
from shipwave.levin import sigma

H = 1e-5


def fd_gradient(p, eps=1e-13):
    g = []
    for k in range(3):
        e = np.zeros(3)
        e[k] = H
        a = integrate_I(tuple(np.add(p, e)), eps).value
        b = integrate_I(tuple(np.subtract(p, e)), eps).value
        g.append((a - b) / (2 * H))
    return np.array(g)


def test_direction_validation():
    with pytest.raises(DomainError):
        Direction(0, 0, 0)
    with pytest.raises(DomainError):
        Direction(1, float("nan"), 0)
    assert Direction(1, 2, 3).c0 == 2 + 3j


def test_varpi_circ_endpoints():
    d = (0.7, -1.2, 2.0)
    assert varpi_circ(1.0, d) == pytest.approx(-1.2 + 2.0j)
    assert varpi_circ(0.0, d) == pytest.approx(-1.2 + 0.7j)


def test_endpoint_value():
    assert deriv_phi_at_one((-3.0, -1.0, 0.0), (0, 1, 0)) == pytest.approx(-0.5)


@pytest.mark.parametrize("corrected", [False, True])
@pytest.mark.parametrize("d", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, -1)])
def test_endpoint_identity(corrected, d):
    p = (-1.5, -0.4, 0.3)
    res = deriv_levin(p, d, 60, corrected=corrected)
    full = res.phi_values[-1] + (deriv_hat_phi(1.0, p, d) if corrected else 0.0)
    target = deriv_phi_at_one(p, d)
    assert abs(full - target) <= 1e-12 * (1 + abs(target))


def test_deriv_lhat_matches_operator():
    p, d = (-1.0, -0.5, 0.5), (1.0, -0.5, 2.0)
    t, h = 0.3, 1e-6
    slope = (deriv_hat_phi(t + h, p, d) - deriv_hat_phi(t - h, p, d)) / (2 * h)
    one = 1 - t
    expect = one**3 * slope + (sigma(t, p) + one**2) * deriv_hat_phi(t, p, d)
    assert abs(deriv_lhat(t, p, d) - expect) <= 1e-6 * max(1.0, abs(expect))


def test_corrected_rhs_decays_at_one():
    # residual right-hand side varpi_o - L phi_hat vanishes as tau -> 1
    p, d = (-2.0, -0.3, 0.4), (1.0, 1.0, 1.0)
    gaps = [abs(varpi_circ(t, d) - deriv_lhat(t, p, d)) for t in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_cc_matches_fd():
    p = (-1.0, -1.0, 0.0)
    j = deriv_cc(p, (1, 0, 0), 1e-13).value
    assert rel(j, fd_gradient(p)[0]) <= 1e-6


def test_linearity_and_additivity():
    p = (-1.0, -0.5, 0.5)
    l, l2 = np.array([1.0, 2.0, -1.0]), np.array([0.3, -1.0, 0.5])
    a = deriv_cc(p, tuple(3 * l), 1e-13).value
    b = deriv_cc(p, tuple(l), 1e-13).value
    assert rel(a, 3 * b) <= 1e-11
    c = deriv_cc(p, tuple(l + l2), 1e-13).value
    assert rel(c, b + deriv_cc(p, tuple(l2), 1e-13).value) <= 1e-11


def test_cross_engine():
    p, d = (-1.0, -0.5, 0.5), (1, 0, 0)
    a = deriv_levin(p, d, 100).value
    b = deriv_cc(p, d, 1e-12).value
    assert abs(a - b) <= 1e-9


def test_levin_needs_negative_y():
    with pytest.raises(DomainError):
        deriv_levin((-1.0, 0.0, 0.1), (1, 0, 0), 50)


def test_gradient_against_fd():
    rng = np.random.default_rng(5)
    for _ in range(5):
        p = (rng.uniform(-5, 0), rng.uniform(-1.5, -0.25), rng.uniform(-1, 1))
        g, _ = gradient_cc(p, 1e-13)
        assert rel(g, fd_gradient(p)) <= 1e-6


def test_engines_within_estimates():
    rng = np.random.default_rng(8)
    for _ in range(10):
        p = (rng.uniform(-8, 0), rng.uniform(-1.0, -0.1), rng.uniform(-2, 2))
        for d in UNIT_DIRECTIONS:
            lev, ok = deriv_levin_adaptive(p, d, 1e-11, corrected=True)
            cc = deriv_cc(p, d, 1e-12)
            assert ok
            assert abs(lev.value - cc.value) <= max(lev.error_estimate, cc.error_estimate, 1e-10)
