"""Scalar building blocks: Pochhammer symbols, gamma ratios, Gauss 2F1."""

import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from lauridec.errors import DomainError, ParameterError
from lauridec.hyper import (
    GaussParams,
    Truncation,
    gauss_2f1,
    gauss_2f1_at_one,
    log_gamma_ratio,
    log_pochhammer,
    pochhammer,
)

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False,
                   allow_infinity=False)
small_int = st.integers(min_value=0, max_value=20)


@given(a=finite, m=small_int, n=small_int)
def test_pochhammer_addition(a, m, n):
    lhs = pochhammer(a, m + n)
    rhs = pochhammer(a, m) * pochhammer(a + m, n)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


@given(a=st.floats(min_value=0.1, max_value=4.0), m=small_int)
def test_pochhammer_doubling(a, m):
    lhs = pochhammer(a, 2 * m)
    rhs = 4.0**m * pochhammer(0.5 * a, m) * pochhammer(0.5 * (a + 1.0), m)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@given(a=st.floats(min_value=0.05, max_value=6.0), m=small_int)
def test_log_pochhammer_matches_direct(a, m):
    log, sign = log_pochhammer(a, m)
    assert sign == 1.0
    assert math.exp(float(log)) == pytest.approx(pochhammer(a, m), rel=1e-12)


def test_log_pochhammer_negative_base_sign():
    log, sign = log_pochhammer(-2.5, 3)
    direct = (-2.5) * (-1.5) * (-0.5)
    assert sign * math.exp(float(log)) == pytest.approx(direct, rel=1e-12)


def test_log_gamma_ratio():
    log, sign = log_gamma_ratio((2.5, 0.7), (1.3, 1.9))
    direct = (math.gamma(2.5) * math.gamma(0.7)) / (
        math.gamma(1.3) * math.gamma(1.9)
    )
    assert sign * math.exp(log) == pytest.approx(direct, rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(min_value=0.1, max_value=2.0),
    b=st.floats(min_value=0.1, max_value=2.0),
    c=st.floats(min_value=0.3, max_value=2.5),
    x=st.floats(min_value=-0.9, max_value=0.9),
)
def test_gauss_2f1_against_mpmath(a, b, c, x):
    got = gauss_2f1(GaussParams(a, b, c), x).value
    want = float(mpmath.hyp2f1(a, b, c, x))
    assert got == pytest.approx(want, rel=1e-10, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(min_value=0.1, max_value=1.5),
    b=st.floats(min_value=0.1, max_value=1.5),
    c=st.floats(min_value=0.3, max_value=2.5),
    x=st.floats(min_value=-40.0, max_value=-1.0),
)
def test_gauss_2f1_autotransformation(a, b, c, x):
    """F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1)) for far-negative x."""
    got = gauss_2f1(GaussParams(a, b, c), x).value
    y = x / (x - 1.0)
    want = (1.0 - x) ** (-a) * gauss_2f1(GaussParams(a, c - b, c), y).value
    assert got == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_gauss_2f1_at_one():
    a, b, c = 0.4, 0.7, 2.0
    want = (math.gamma(c) * math.gamma(c - a - b)) / (
        math.gamma(c - a) * math.gamma(c - b)
    )
    assert gauss_2f1_at_one(GaussParams(a, b, c)) == pytest.approx(want, rel=1e-13)


def test_gauss_params_reject_bad_c():
    with pytest.raises(ParameterError):
        GaussParams(0.5, 0.5, -2.0)


def test_gauss_2f1_domain():
    with pytest.raises(DomainError):
        gauss_2f1(GaussParams(0.5, 0.5, 1.5), 1.2)


def test_truncation_validation():
    with pytest.raises(ParameterError):
        Truncation(rel_tol=0.0)
    with pytest.raises(ParameterError):
        Truncation(max_total_degree=0)
