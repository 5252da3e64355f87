"""Direct multi-series evaluation of the Lauricella functions F_A and F_B.

These are deliberately brute-force: the defining series summed by total
degree blocks with vectorised terms.  They serve as the ground-truth oracle
for the decomposition and recurrence evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, ParameterError
from .hyper import EvalResult, Truncation, _is_nonpositive_integer, log_pochhammer

__all__ = [
    "LauricellaAParams",
    "LauricellaBParams",
    "enumerate_multi_indices",
    "compositions_of",
    "fa_direct",
    "fb_direct",
]


@dataclass(frozen=True)
class LauricellaAParams:
    """Parameters (a; b_1..b_n; c_1..c_n) of F_A with per-axis denominators."""

    a: float
    b: tuple
    c: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        object.__setattr__(self, "c", tuple(float(v) for v in self.c))
        if len(self.b) != len(self.c) or len(self.b) < 1:
            raise ParameterError("b and c must have equal length n >= 1")
        for ck in self.c:
            if _is_nonpositive_integer(ck):
                raise ParameterError(f"c entry {ck} is zero or a negative integer")

    @property
    def n(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class LauricellaBParams:
    """Parameters (a_1..a_n; b_1..b_n; c) of F_B with a shared denominator."""

    a: tuple
    b: tuple
    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != len(self.b) or len(self.a) < 1:
            raise ParameterError("a and b must have equal length n >= 1")
        if _is_nonpositive_integer(self.c):
            raise ParameterError(f"c = {self.c} is zero or a negative integer")

    @property
    def n(self) -> int:
        return len(self.a)


def enumerate_multi_indices(n: int, total_degree: int):
    """Yield all non-negative integer vectors of length n summing to
    total_degree, first component ascending (lexicographic)."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if n == 1:
        yield (total_degree,)
        return
    for first in range(total_degree + 1):
        for rest in enumerate_multi_indices(n - 1, total_degree - first):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def compositions_of(n: int, total_degree: int) -> np.ndarray:
    """All multi-indices of one degree block as a read-only (count, n) array."""
    arr = np.array(list(enumerate_multi_indices(n, total_degree)), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _log_power(m: np.ndarray, x: float):
    """(log|x^m|, sign(x)^m) columns, with the 0^0 = 1 convention."""
    if x == 0.0:
        return np.where(m == 0, 0.0, -np.inf), np.where(m == 0, 1.0, 0.0)
    return m * math.log(abs(x)), np.where(m % 2 == 0, 1.0, math.copysign(1.0, x))


def _sum_degree_blocks(n: int, t: Truncation, block_fn) -> EvalResult:
    """Sum degree blocks d = 0, 1, ... with the three-small-blocks rule.

    ``block_fn(d, M)`` maps a degree and its (count, n) index array to the
    block contribution.
    """
    total = 0.0
    terms_used = 0
    small = 0
    tail = math.inf
    for d in range(t.max_total_degree + 1):
        M = compositions_of(n, d)
        block = block_fn(d, M)
        total += block
        terms_used += M.shape[0]
        tail = abs(block)
        if tail <= t.rel_tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return EvalResult(total, tail, terms_used, True)
        else:
            small = 0
        if terms_used >= t.max_terms:
            break
    return EvalResult(total, tail, terms_used, False)


def fa_direct(p: LauricellaAParams, x, t: Truncation = Truncation()) -> EvalResult:
    """F_A(a; b; c; x) from the defining series, valid on sum |x_k| < 1."""
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if sum(abs(v) for v in x) >= 1.0:
        raise DomainError("fa_direct requires sum of |x_k| < 1")
    maxj = t.max_total_degree + 1
    J = np.arange(maxj + 1)
    la, sa = log_pochhammer(p.a, J)
    lfact = gammaln(J + 1.0)
    lb = [log_pochhammer(bk, J) for bk in p.b]
    lc = [log_pochhammer(ck, J) for ck in p.c]

    def block_fn(d: int, M: np.ndarray) -> float:
        lt = np.full(M.shape[0], la[d])
        sg = np.full(M.shape[0], sa[d])
        for k in range(p.n):
            mk = M[:, k]
            lpx, spx = _log_power(mk, x[k])
            lt = lt + lb[k][0][mk] - lc[k][0][mk] - lfact[mk] + lpx
            sg = sg * lb[k][1][mk] * lc[k][1][mk] * spx
        return float((sg * np.exp(lt)).sum())

    return _sum_degree_blocks(p.n, t, block_fn)


def fb_direct(p: LauricellaBParams, x, t: Truncation = Truncation()) -> EvalResult:
    """F_B(a; b; c; x) from the defining series, valid on max |x_k| < 1."""
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if max(abs(v) for v in x) >= 1.0:
        raise DomainError("fb_direct requires max |x_k| < 1")
    maxj = t.max_total_degree + 1
    J = np.arange(maxj + 1)
    lc, sc = log_pochhammer(p.c, J)
    lfact = gammaln(J + 1.0)
    la = [log_pochhammer(ak, J) for ak in p.a]
    lb = [log_pochhammer(bk, J) for bk in p.b]

    def block_fn(d: int, M: np.ndarray) -> float:
        lt = np.full(M.shape[0], -lc[d])
        sg = np.full(M.shape[0], sc[d])
        for k in range(p.n):
            mk = M[:, k]
            lpx, spx = _log_power(mk, x[k])
            lt = lt + la[k][0][mk] + lb[k][0][mk] - lfact[mk] + lpx
            sg = sg * la[k][1][mk] * lb[k][1][mk] * spx
        return float((sg * np.exp(lt)).sum())

    return _sum_degree_blocks(p.n, t, block_fn)
