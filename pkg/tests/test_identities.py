"""Summation and limit identities for the one- and two-sided series."""

import math

import pytest

from lauridec.direct import LauricellaAParams, LauricellaBParams
from lauridec.errors import DomainError, ParameterError
from lauridec.hyper import GaussParams, Truncation, gauss_2f1_at_one
from lauridec.identities import (
    lemma2_fa,
    lemma2_fb,
    lemma3_fa,
    lemma3_fb,
    t_recurrence_check,
    t_sum_fa,
)

T60 = Truncation(rel_tol=1e-9, max_total_degree=60)


def test_summation_fa_three_variables():
    r = lemma2_fa(2.0, (0.3, 0.4, 0.5), T60)
    assert r.converged
    assert r.rel_err <= 1e-8


def test_summation_fb_three_variables():
    r = lemma2_fb(2.4, (0.2, 0.3, 0.4), T60)
    assert r.converged
    assert r.rel_err <= 1e-7


def test_summation_two_variables_reproduces_gauss_theorem():
    """For two variables the sum collapses to 2F1(b1, b2; a; 1)."""
    a, b = 1.7, (0.35, 0.25)
    total, _, converged = t_sum_fa(a, b, T60)
    assert converged
    gauss = gauss_2f1_at_one(GaussParams(b[0], b[1], a))
    closed = (
        math.gamma(a - sum(b))
        * math.gamma(a)
        / (math.gamma(a - b[0]) * math.gamma(a - b[1]))
    )
    assert gauss == pytest.approx(closed, rel=1e-13)
    assert total == pytest.approx(closed, rel=1e-10)


def test_summation_single_variable_is_trivial():
    total, _, converged = t_sum_fa(2.0, (0.3,), T60)
    assert converged and total == 1.0


@pytest.mark.parametrize("n,a", [(2, 1.8), (3, 2.2)])
def test_t_recurrence(n, a):
    b = tuple(0.1 + 0.08 * k for k in range(n))
    r = t_recurrence_check(a, b, T60)
    assert r.converged
    assert r.rel_err <= 1e-9


def test_summation_rejects_bad_parameters():
    with pytest.raises(DomainError):
        lemma2_fa(0.5, (0.3, 0.4))
    with pytest.raises(ParameterError):
        lemma2_fa(-1.0, (0.3,))


def test_limit_fa():
    p = LauricellaAParams(2.5, (0.4, 0.3), (1.9, 1.8))
    r = lemma3_fa(p)
    assert r.converged  # monotone approach
    assert r.rel_err <= 1e-3


def test_limit_fb():
    p = LauricellaBParams((1.5, 1.6), (0.4, 0.3), 1.6)
    r = lemma3_fb(p)
    assert r.converged
    assert r.rel_err <= 1e-3


def test_limit_rejects_bad_z():
    p = LauricellaAParams(1.6, (0.4, 0.3), (1.5, 1.4))
    with pytest.raises(DomainError):
        lemma3_fa(p, z_values=(0.5,))


def test_limit_rejects_degenerate_parameters():
    with pytest.raises(DomainError):
        lemma3_fa(LauricellaAParams(0.5, (0.4, 0.3), (1.5, 1.4)))
    with pytest.raises(DomainError):
        lemma3_fb(LauricellaBParams((0.4, 1.6), (0.4, 0.3), 1.6))
