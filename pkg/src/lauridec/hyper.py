"""Pochhammer symbols, signed log-gamma helpers and a Gauss 2F1 evaluator.

Everything downstream (multi-variable series, decompositions, the PDE
kernels) is built on top of the three public entry points here:

- ``pochhammer``         rising factorial (a)_m
- ``gauss_2f1``          F(a,b;c;x) for x < 1
- ``gauss_2f1_at_one``   the classical closed form at x = 1

Internally the 2F1 series is summed in vectorised chunks with a
three-consecutive-small-terms stopping rule; negative arguments go through
the autotransformation F(a,b;c;x) = (1-x)^{-b} F(c-a,b;c;x/(x-1)), whose
transformed argument always lies in [0,1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, gammasgn

from .errors import DomainError, ParameterError

__all__ = [
    "GaussParams",
    "Truncation",
    "EvalResult",
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_at_one",
    "log_gamma_ratio",
    "log_pochhammer",
]

_INT_TOL = 1e-12


def _is_nonpositive_integer(x: float, tol: float = _INT_TOL) -> bool:
    return x <= tol and abs(x - round(x)) <= tol


@dataclass(frozen=True)
class GaussParams:
    """Parameters (a, b, c) of the Gauss hypergeometric function."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if _is_nonpositive_integer(self.c):
            raise ParameterError(f"c = {self.c} is zero or a negative integer")


@dataclass(frozen=True)
class Truncation:
    """Series-control policy: relative tail tolerance and hard caps."""

    rel_tol: float = 1e-12
    max_total_degree: int = 200
    max_terms: int = 10_000_000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol must be positive")
        if self.max_total_degree < 1:
            raise ParameterError("max_total_degree must be >= 1")
        if self.max_terms < 1:
            raise ParameterError("max_terms must be >= 1")


@dataclass(frozen=True)
class EvalResult:
    """A value together with convergence diagnostics."""

    value: float
    tail_estimate: float
    terms_used: int
    converged: bool


def pochhammer(a: float, m: int) -> float:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1); (a)_0 = 1."""
    if m < 0:
        raise ParameterError("pochhammer order must be non-negative")
    if m < 64:
        out = 1.0
        for i in range(m):
            out *= a + i
        return out
    if a > 0:
        return math.exp(gammaln(a + m) - gammaln(a))
    # Negative/zero base with large order: accumulate in log space with sign.
    vals = a + np.arange(m, dtype=float)
    if np.any(vals == 0.0):
        return 0.0
    sign = 1.0 if (vals < 0).sum() % 2 == 0 else -1.0
    return sign * math.exp(np.log(np.abs(vals)).sum())


def log_pochhammer(a: float, m) -> tuple:
    """(log|(a)_m|, sign) for scalar or array integer order m.

    For positive base this is a plain log-gamma difference; otherwise the
    product is accumulated explicitly.
    """
    m_arr = np.asarray(m)
    if a > 0:
        return gammaln(a + m_arr) - gammaln(a), np.ones_like(m_arr, dtype=float)
    mmax = int(m_arr.max()) if m_arr.size else 0
    vals = a + np.arange(mmax, dtype=float)
    with np.errstate(divide="ignore"):
        step = np.log(np.abs(vals))
    logs = np.concatenate(([0.0], np.cumsum(step)))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(vals))))
    return logs[m_arr], signs[m_arr]


def log_gamma_ratio(numerators, denominators) -> tuple:
    """(log|ratio|, sign) of prod Gamma(num) / prod Gamma(den).

    A Gamma pole in the denominator yields sign 0 and log -inf in the
    numerator position convention (the ratio is 0).
    """
    log = 0.0
    sign = 1.0
    for v in numerators:
        log += gammaln(v)
        sign *= gammasgn(v)
    for v in denominators:
        log -= gammaln(v)
        s = gammasgn(v)
        if s == 0.0:
            return -math.inf, 0.0
        sign *= s
    return log, sign


def _series_2f1(a: float, b: float, c: float, x: float, t: Truncation):
    """Sum the defining 2F1 series at 0 <= x < 1.

    Returns (sum, last_term_magnitude, terms_used, converged).  Terms follow
    the ratio recurrence t_{i+1} = t_i (a+i)(b+i) x / ((c+i)(1+i)) and are
    generated in chunks so slow near-unit arguments stay cheap.
    """
    total = 0.0
    term0 = 1.0
    i0 = 0
    chunk = 32
    while i0 < t.max_terms:
        k = min(chunk, t.max_terms - i0)
        i = np.arange(i0, i0 + k, dtype=float)
        ratios = (a + i) * (b + i) * x / ((c + i) * (1.0 + i))
        terms = term0 * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        total += terms.sum()
        term0 = terms[-1] * ratios[-1]
        i0 += k
        tail = np.abs(terms[-3:]).max() if k >= 3 else abs(terms).max()
        if k >= 3 and tail <= t.rel_tol * max(1.0, abs(total)):
            return total, abs(terms[-1]), i0, True
        chunk = min(chunk * 2, 65536)
    return total, abs(term0), i0, False


def log_gauss_2f1(a: float, b: float, c: float, x: float, t: Truncation):
    """(log|F|, sign, terms_used, converged) of F(a,b;c;x) for x < 1.

    The log form lets callers combine the value with huge or tiny power
    prefactors without overflow; x may be arbitrarily negative.
    """
    if _is_nonpositive_integer(c):
        raise ParameterError(f"c = {c} is zero or a negative integer")
    if x >= 1.0:
        raise DomainError(f"gauss_2f1 requires x < 1, got {x}")
    if x < 0.0:
        pref = -b * math.log1p(-x)
        s, tail, used, conv = _series_2f1(c - a, b, c, x / (x - 1.0), t)
    else:
        pref = 0.0
        s, tail, used, conv = _series_2f1(a, b, c, x, t)
    if s == 0.0:
        return -math.inf, 0.0, used, conv
    return pref + math.log(abs(s)), math.copysign(1.0, s), used, conv


def gauss_2f1(p: GaussParams, x: float, t: Truncation = Truncation()) -> EvalResult:
    """Gauss hypergeometric function F(a,b;c;x) for x < 1."""
    if x >= 1.0:
        raise DomainError(f"gauss_2f1 requires x < 1, got {x}")
    if x < 0.0:
        pref = (1.0 - x) ** (-p.b)
        s, tail, used, conv = _series_2f1(p.c - p.a, p.b, p.c, x / (x - 1.0), t)
        return EvalResult(pref * s, pref * tail, used, conv)
    s, tail, used, conv = _series_2f1(p.a, p.b, p.c, x, t)
    return EvalResult(s, tail, used, conv)


def gauss_2f1_at_one(p: GaussParams) -> float:
    """F(a,b;c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))."""
    if p.c - p.a - p.b <= 0:
        raise DomainError(
            f"gauss_2f1_at_one requires c - a - b > 0, got {p.c - p.a - p.b}"
        )
    log, sign = log_gamma_ratio((p.c, p.c - p.a - p.b), (p.c - p.a, p.c - p.b))
    if sign == 0.0:
        return 0.0
    return sign * math.exp(log)
