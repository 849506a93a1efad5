import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import closed_form
from shipwave.clenshaw_curtis import steepest_angle
from shipwave.errors import DegeneratePointError, DomainError, TrackSingularityError
from shipwave.point import FieldPoint
from shipwave.wavelike import (
    EvalConfig,
    closed_form_axis,
    critical_points,
    eval_I,
    eval_I_infinity,
    eval_J,
)

CC = EvalConfig(method="cc")


def test_closed_form_values():
    assert closed_form_axis(-1.0) == pytest.approx(0.32602466608664617, rel=1e-15)
    assert closed_form_axis(-4.0) == pytest.approx(0.5 * math.sqrt(math.pi) * math.exp(-4) / 2, rel=1e-15)
    assert 0 < closed_form_axis(-50.0) < 1e-20
    with pytest.raises(DomainError):
        closed_form_axis(0.0)


def test_closed_form_decays_monotonically():
    v = [closed_form_axis(y) for y in np.linspace(-50, -1, 50)]
    assert np.all(np.diff(v) > 0)


def test_critical_points_examples():
    a, b = critical_points((-4.0, -0.3, 1.0))
    assert a == pytest.approx(1 - math.sqrt(0.5)) and b == pytest.approx(1 + math.sqrt(0.5))
    (c,) = critical_points((-2 * math.sqrt(2), 0.0, 1.0))
    assert c == pytest.approx(math.sqrt(2) / 2)
    assert critical_points((-1.0, -1.0, 1.0)) == ()
    assert critical_points((-4.0, -1.0, -1.0)) == ()


def test_track_and_domain_errors():
    with pytest.raises(TrackSingularityError):
        eval_I((-1.0, 0.0, 0.0))
    with pytest.raises(DegeneratePointError):
        eval_I((0.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        eval_I((1.0, -1.0, 0.0))
    with pytest.raises(DomainError):
        eval_I((-1.0, 1.0, 0.0))
    with pytest.raises(DomainError):
        EvalConfig(method="simpson")


def test_closed_form_dispatch():
    rep = eval_I((0.0, -1.0, 0.0))
    assert rep.method == "closed_form"
    assert rep.value == pytest.approx(closed_form(-1.0), rel=1e-15)


def test_cross_engine():
    p = (-1.0, -0.5, 0.5)
    a = eval_I(p, EvalConfig(method="levin", m=100)).value
    b = eval_I(p, EvalConfig(method="cc", eps=1e-12)).value
    assert abs(a - b) <= 1e-10


def test_auto_dispatch():
    assert eval_I((-1.0, -0.5, 0.5)).method == "levin_corrected"
    assert eval_I((-1.0, -0.01, 0.5)).method == "cc"
    assert eval_I((-10.0, -0.1, 0.0)).method == "cc"  # D = 250


def test_explicit_methods():
    p = (-1.0, -0.5, 0.5)
    assert eval_I(p, EvalConfig(method="levin-plain", m=50)).method == "levin_plain"
    rep = eval_I(p, EvalConfig(method="levin-corrected", m=50))
    assert rep.method == "levin_corrected" and rep.eval_count == 51 and rep.order == 50


def test_report_diagnostics():
    p = FieldPoint(-3.0, -0.4, 0.3)
    rep = eval_I(p, CC)
    assert rep.d_param == pytest.approx(9 / (4 * 0.5))
    assert rep.theta == pytest.approx(steepest_angle(-0.4, 0.3))
    cos2 = math.cos(2 * rep.theta)
    assert cos2 == pytest.approx(0.4 / 0.5)
    assert rep.critical_points == critical_points(p)


def test_infinity_positive_x():
    rep = eval_I_infinity(1.0, -0.3, 0.2)
    assert rep.value == 0.0 and rep.eval_count == 0
    assert eval_I_infinity(0.0, -0.3, 0.2).value == 0.0


@pytest.mark.parametrize("y,z,ref", [(-0.5, 0.5, -0.3132089735), (-0.01, 0.1, -2.1157417380)])
def test_infinity_table(y, z, ref):
    assert abs(eval_I_infinity(-1.0, y, z, CC).value - ref) <= 1e-8


def test_infinity_is_real():
    assert isinstance(eval_I_infinity(-1.0, -0.5, 0.5).value, float)


@settings(max_examples=25, deadline=None)
@given(st.floats(-8, -0.01), st.floats(-1, -0.02), st.floats(-1, 1))
def test_z_symmetry(x, y, z):
    assert eval_I_infinity(x, y, z).value == eval_I_infinity(x, y, -z).value


def test_eval_J_dispatch():
    p, d = (-1.0, -0.5, 0.5), (1, 0, 0)
    assert eval_J(p, d).method == "levin_corrected"
    assert eval_J((-1.0, 0.0, 0.5), d).method == "cc"
    with pytest.raises(DomainError):
        eval_J((-1.0, 0.0, 0.5), d, EvalConfig(method="levin", m=50))
    a, b = eval_J(p, d).value, eval_J(p, d, CC).value
    assert abs(a - b) <= 1e-9
