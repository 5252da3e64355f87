"""Acceleration machinery for slowly convergent multi-index sums.

The summation identities converge only algebraically (term blocks decay
like a power of the total degree), so plain degree-block truncation cannot
reach tight tolerances.  Two devices are provided:

- :func:`alternating_block_total`: exact degree-block partial sums followed
  by a Levin u-transformation.  For the sign-alternating series the
  transform removes the algebraic transients and reaches near machine
  precision from a few dozen blocks.
- :func:`de_axis`: double-exponential (tanh-sinh) quadrature nodes on
  (0, 1) with asymmetric cut-offs matched to the endpoint power exponents.
  The one-signed series is summed exactly by rewriting each term as a
  product of Beta integrals and exchanging sum and integral, which turns
  the multi-index sum into a low-dimensional integral with algebraic
  endpoint singularities -- exactly what tanh-sinh quadrature handles.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import comb

__all__ = [
    "levin_u",
    "degree_block_sums",
    "alternating_block_total",
    "de_axis",
]


def levin_u(psums, beta: float = 1.0):
    """Levin u-transformation of a partial-sum sequence.

    Returns (estimate, error_estimate); the estimate is picked from the
    transform column with the smallest successive difference.
    """
    S = np.asarray(psums, dtype=np.longdouble)
    K = len(S) - 1
    if K < 3:
        return float(S[-1]), math.inf
    a = np.empty(K + 1, dtype=np.longdouble)
    a[0] = S[0]
    a[1:] = np.diff(S)
    om = (beta + np.arange(K + 1)) * np.where(a == 0, 1e-300, a)
    ests = []
    for k in range(3, K + 1):
        num = np.longdouble(0)
        den = np.longdouble(0)
        for j in range(k + 1):
            c = (-1.0) ** j * comb(k, j) * ((beta + j) / (beta + k)) ** (k - 1)
            num += c * S[j] / om[j]
            den += c / om[j]
        if den != 0:
            ests.append(float(num / den))
    if len(ests) < 2:
        return float(S[-1]), math.inf
    errs = [abs(ests[i] - ests[i - 1]) for i in range(1, len(ests))]
    i = int(np.argmin(errs))
    return ests[i + 1], errs[i]


def _compositions(k: int, total: int) -> np.ndarray:
    """All length-k nonnegative integer vectors summing to ``total``."""
    if k == 1:
        return np.array([[float(total)]])
    parts = []
    for v in range(total + 1):
        sub = _compositions(k - 1, total - v)
        parts.append(np.hstack([np.full((len(sub), 1), float(v)), sub]))
    return np.vstack(parts)


def degree_block_sums(term, nslots: int, max_degree: int):
    """Exact sums of ``term`` over each total-degree block 0..max_degree.

    Returns (block_sums, evaluations).  Blocks of five or more slots are
    enumerated in slices over the leading slot to bound peak memory.
    """
    sums = np.empty(max_degree + 1)
    evals = 0
    for D in range(max_degree + 1):
        if nslots >= 5:
            s = 0.0
            for v in range(D + 1):
                sub = _compositions(nslots - 1, D - v)
                pts = np.hstack([np.full((len(sub), 1), float(v)), sub])
                s += float(np.sum(term(pts)))
                evals += len(pts)
            sums[D] = s
        else:
            pts = _compositions(nslots, D)
            sums[D] = float(np.sum(term(pts)))
            evals += len(pts)
    return sums, evals


def alternating_block_total(term, nslots: int, max_degree: int, window: int = 37):
    """Total of the alternating series sum_m (-1)^|m| term(m).

    Degree blocks are summed exactly and the alternating block sequence is
    extrapolated with the Levin u-transformation over the trailing
    ``window`` partial sums.  Returns (value, evaluations, error_estimate).
    """
    blocks, evals = degree_block_sums(term, nslots, max_degree)
    signs = np.where(np.arange(max_degree + 1) % 2 == 1, -1.0, 1.0)
    psums = np.cumsum(signs * blocks)
    est, err = levin_u(psums[-window:] if len(psums) > window else psums)
    return est, evals, err


def de_axis(e_left: float, e_right: float, h: float, decades: float):
    """Tanh-sinh nodes and log-weights for int_0^1 t^(eL-1) (1-t)^(eR-1) g.

    Returns (log_t, log_1mt, log_w) arrays.  The cut-offs are chosen so the
    weight times the endpoint power is below exp(-decades) at both ends.
    """
    u_lo = -math.asinh(decades / (math.pi * e_left))
    u_hi = math.asinh(decades / (math.pi * e_right))
    npts = int(math.ceil((u_hi - u_lo) / h)) + 1
    uu = np.linspace(u_lo, u_hi, npts)
    step = uu[1] - uu[0]
    ps = math.pi * np.sinh(uu)
    log_t = -np.logaddexp(0.0, -ps)
    log_1mt = -np.logaddexp(0.0, ps)
    log_w = (
        math.log(math.pi)
        + np.log(np.cosh(uu))
        + log_t
        + log_1mt
        + math.log(step)
    )
    return log_t, log_1mt, log_w
