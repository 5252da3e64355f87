"""Non-recurrent decompositions of F_A / F_B and the recurrent oracles.

The decompositions express F_A^(n) and F_B^(n) as sums over a triangular
family of indices m_{i,j} (2 <= i <= j <= n) of products of Gauss 2F1
values; only the two partial-sum functions A(k) and B(k) of the index family
enter the terms.  The recurrent evaluators peel off one variable at a time
and serve as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, ParameterError
from .hyper import (
    EvalResult,
    GaussParams,
    Truncation,
    _is_nonpositive_integer,
    gauss_2f1,
    log_gauss_2f1,
    log_pochhammer,
)
from .direct import (
    LauricellaAParams,
    LauricellaBParams,
    compositions_of,
    fa_direct,
    fb_direct,
)

__all__ = [
    "IndexMatrix",
    "index_sums",
    "triangular_slots",
    "index_sum_maps",
    "fa_decomposed",
    "fb_decomposed",
    "fa_recurrent",
    "fb_recurrent",
]


@dataclass(frozen=True)
class IndexMatrix:
    """The index family m_{i,j}, 2 <= i <= j <= n, as an explicit map."""

    n: int
    m: dict

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError("n must be >= 1")
        expected = set(triangular_slots(self.n))
        if set(self.m.keys()) != expected:
            raise ParameterError(
                f"index matrix keys must be exactly {{(i,j): 2<=i<=j<={self.n}}}"
            )
        for key, v in self.m.items():
            if not (isinstance(v, (int, np.integer)) and v >= 0):
                raise ParameterError(f"entry m[{key}] = {v} is not a non-negative integer")

    @property
    def total_degree(self) -> int:
        return sum(self.m.values())


def index_sums(M: IndexMatrix):
    """Partial sums (A(k), B(k)) for k = 1..n, straight from the definitions."""
    n = M.n
    A = []
    B = []
    for k in range(1, n + 1):
        a_k = sum(
            M.m[(i, j)]
            for i in range(2, k + 2)
            for j in range(i, n + 1)
            if (i, j) in M.m
        )
        b_k = sum(M.m[(i, k)] for i in range(2, k + 1) if (i, k) in M.m) + sum(
            M.m[(k + 1, i)] for i in range(k + 1, n + 1) if (k + 1, i) in M.m
        )
        A.append(a_k)
        B.append(b_k)
    return tuple(A), tuple(B)


@lru_cache(maxsize=None)
def triangular_slots(n: int):
    """Ordered key list [(i,j): 2 <= i <= j <= n]; empty for n = 1."""
    return tuple((i, j) for i in range(2, n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def index_sum_maps(n: int):
    """0/1 matrices so that A = M @ Amap.T and B = M @ Bmap.T.

    Rows k = 1..n, columns in ``triangular_slots`` order; M holds the slot
    values of one index matrix per row.
    """
    sl = triangular_slots(n)
    amap = np.zeros((n, len(sl)), dtype=np.int64)
    bmap = np.zeros((n, len(sl)), dtype=np.int64)
    for idx, (i, j) in enumerate(sl):
        for k in range(1, n + 1):
            if i <= k + 1:
                amap[k - 1, idx] = 1
            if (j == k and i <= k) or (i == k + 1 and j >= k + 1):
                bmap[k - 1, idx] = 1
    amap.setflags(write=False)
    bmap.setflags(write=False)
    return amap, bmap


def _log_poch_rows(base: np.ndarray, j: np.ndarray):
    """Vectorised (log|(base)_j|, sign) for per-row bases."""
    out_log = np.empty(base.shape)
    out_sgn = np.ones(base.shape)
    pos = base > 0
    out_log[pos] = gammaln(base[pos] + j[pos]) - gammaln(base[pos])
    for idx in np.flatnonzero(~pos):
        l, s = log_pochhammer(float(base[idx]), int(j[idx]))
        out_log[idx] = float(l)
        out_sgn[idx] = float(s)
    return out_log, out_sgn


def _sum_slot_blocks(nslots: int, t: Truncation, block_fn) -> EvalResult:
    total = 0.0
    used = 0
    small = 0
    tail = math.inf
    for d in range(t.max_total_degree + 1):
        M = compositions_of(nslots, d)
        block = block_fn(d, M)
        total += block
        used += M.shape[0]
        tail = abs(block)
        if tail <= t.rel_tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return EvalResult(total, tail, used, True)
        else:
            small = 0
        if used >= t.max_terms:
            break
    return EvalResult(total, tail, used, False)


def _gather_2f1(cache: dict, key_k: int, A: np.ndarray, B: np.ndarray, factory):
    """Per-row (log|F|, sign) of cached 2F1 factors keyed by (k, A, B)."""
    logs = np.empty(A.shape[0])
    sgns = np.empty(A.shape[0])
    for row in range(A.shape[0]):
        key = (key_k, int(A[row]), int(B[row]))
        hit = cache.get(key)
        if hit is None:
            hit = factory(int(A[row]), int(B[row]))
            cache[key] = hit
        logs[row] = hit[0]
        sgns[row] = hit[1]
    return logs, sgns


def fa_decomposed(p: LauricellaAParams, x, t: Truncation = Truncation()) -> EvalResult:
    """F_A via the non-recurrent decomposition into 2F1 products.

    Each x_k may be any value < 1 (arbitrarily negative is fine: the 2F1
    factors go through the autotransformation), which extends the usable
    region well beyond the simplex of the defining series.
    """
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if max(x) >= 1.0:
        raise DomainError("fa_decomposed requires every x_k < 1")
    n = p.n
    if n == 1:
        r = gauss_2f1(GaussParams(p.a, p.b[0], p.c[0]), x[0], t)
        return r
    amap, bmap = index_sum_maps(n)
    nslots = amap.shape[1]
    maxj = 2 * t.max_total_degree + 2
    J = np.arange(maxj + 1)
    la, sa = log_pochhammer(p.a, J)
    lfact = gammaln(J + 1.0)
    lb = [log_pochhammer(bk, J) for bk in p.b]
    lc = [log_pochhammer(ck, J) for ck in p.c]
    logx = [math.log(abs(v)) if v != 0.0 else -math.inf for v in x]
    cache: dict = {}

    def factory_for(k):
        def factory(a_k, b_k):
            lg, sg, _, _ = log_gauss_2f1(
                p.a + a_k, p.b[k] + b_k, p.c[k] + b_k, x[k], t
            )
            return lg, sg

        return factory

    factories = [factory_for(k) for k in range(n)]

    def block_fn(d: int, M: np.ndarray) -> float:
        A = M @ amap.T
        B = M @ bmap.T
        lt = np.full(M.shape[0], la[d]) - lfact[M].sum(axis=1)
        sg = np.full(M.shape[0], sa[d])
        for k in range(n):
            bk = B[:, k]
            if x[k] == 0.0:
                dead = bk != 0
                lt = lt + np.where(dead, -np.inf, 0.0)
            else:
                lt = lt + bk * logx[k]
                if x[k] < 0.0:
                    sg = sg * np.where(bk % 2 == 0, 1.0, -1.0)
            lt = lt + lb[k][0][bk] - lc[k][0][bk]
            sg = sg * lb[k][1][bk] * lc[k][1][bk]
            flog, fsgn = _gather_2f1(cache, k, A[:, k], bk, factories[k])
            lt = lt + flog
            sg = sg * fsgn
        return float((sg * np.exp(lt)).sum())

    return _sum_slot_blocks(nslots, t, block_fn)


def fb_decomposed(p: LauricellaBParams, x, t: Truncation = Truncation()) -> EvalResult:
    """F_B via the non-recurrent decomposition into 2F1 products.

    The shared-denominator Pochhammer ratio for axis k is taken with base
    c - 1 + 2 A(k-1) (the base advances with the accumulated partial sums;
    with a literal constant base the sum fails to reproduce fb_direct for
    n >= 3, while this form matches to machine precision).
    """
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if max(x) >= 1.0:
        raise DomainError("fb_decomposed requires every x_k < 1")
    if abs(p.c - 1.0) <= 1e-12:
        raise ParameterError("fb_decomposed requires c != 1 (base c-1 vanishes)")
    n = p.n
    if n == 1:
        return gauss_2f1(GaussParams(p.a[0], p.b[0], p.c), x[0], t)
    amap, bmap = index_sum_maps(n)
    nslots = amap.shape[1]
    maxj = 2 * t.max_total_degree + 2
    J = np.arange(maxj + 1)
    lcpoch, scpoch = log_pochhammer(p.c, J)
    lfact = gammaln(J + 1.0)
    la = [log_pochhammer(ak, J) for ak in p.a]
    lb = [log_pochhammer(bk, J) for bk in p.b]
    logx = [math.log(abs(v)) if v != 0.0 else -math.inf for v in x]
    cache: dict = {}

    def factory_for(k):
        def factory(a_k, b_k):
            lg, sg, _, _ = log_gauss_2f1(
                p.a[k] + b_k, p.b[k] + b_k, p.c + 2 * a_k, x[k], t
            )
            return lg, sg

        return factory

    factories = [factory_for(k) for k in range(n)]

    def block_fn(d: int, M: np.ndarray) -> float:
        A = M @ amap.T
        B = M @ bmap.T
        lt = np.full(M.shape[0], -lcpoch[2 * d]) - lfact[M].sum(axis=1)
        sg = np.full(M.shape[0], scpoch[2 * d] * (1.0 if d % 2 == 0 else -1.0))
        a_prev = np.zeros(M.shape[0], dtype=np.int64)
        for k in range(n):
            ak = A[:, k]
            bk = B[:, k]
            d_a = ak - a_prev
            base = p.c - 1.0 + 2.0 * a_prev
            l1, s1 = _log_poch_rows(base, d_a)
            l2, s2 = _log_poch_rows(base, 2 * d_a)
            if x[k] == 0.0:
                lt = lt + np.where(bk != 0, -np.inf, 0.0)
            else:
                lt = lt + bk * logx[k]
                if x[k] < 0.0:
                    sg = sg * np.where(bk % 2 == 0, 1.0, -1.0)
            lt = lt + la[k][0][bk] + lb[k][0][bk] + l1 - l2
            sg = sg * la[k][1][bk] * lb[k][1][bk] * s1 * s2
            flog, fsgn = _gather_2f1(cache, k, ak, bk, factories[k])
            lt = lt + flog
            sg = sg * fsgn
            a_prev = ak
        return float((sg * np.exp(lt)).sum())

    return _sum_slot_blocks(nslots, t, block_fn)


def fa_recurrent(
    p: LauricellaAParams, x, t: Truncation = Truncation(), depth: int | None = None
) -> EvalResult:
    """F_A by peeling the first variable off with the recurrence expansion.

    ``depth`` bounds how many recurrence steps are unrolled; when exhausted
    the remaining inner function falls back to the direct series.
    """
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if sum(abs(v) for v in x) >= 1.0:
        raise DomainError("fa_recurrent requires sum of |x_k| < 1")
    if depth is None:
        depth = p.n - 1
    if p.n == 1:
        return gauss_2f1(GaussParams(p.a, p.b[0], p.c[0]), x[0], t)
    if depth <= 0:
        return fa_direct(p, x, t)
    maxj = t.max_total_degree + 1
    J = np.arange(maxj + 1)
    la, sa = log_pochhammer(p.a, J)
    lfact = gammaln(J + 1.0)
    lb = [log_pochhammer(bk, J) for bk in p.b]
    lc = [log_pochhammer(ck, J) for ck in p.c]
    f1_cache: dict = {}

    total = 0.0
    used = 0
    small = 0
    tail = math.inf
    for d in range(t.max_total_degree + 1):
        M = compositions_of(p.n - 1, d)
        block = 0.0
        for row in M:
            coef_log = la[d] + lb[0][0][d] - lc[0][0][d]
            coef_sgn = sa[d] * lb[0][1][d] * lc[0][1][d]
            if x[0] != 0.0:
                coef_log += d * math.log(abs(x[0]))
                if x[0] < 0.0 and d % 2 == 1:
                    coef_sgn = -coef_sgn
            elif d > 0:
                continue
            ok = True
            for j, mj in enumerate(row, start=1):
                if x[j] == 0.0 and mj > 0:
                    ok = False
                    break
                coef_log += lb[j][0][mj] - lc[j][0][mj] - lfact[mj]
                coef_sgn *= lb[j][1][mj] * lc[j][1][mj]
                if mj:
                    coef_log += mj * math.log(abs(x[j]))
                    if x[j] < 0.0 and mj % 2 == 1:
                        coef_sgn = -coef_sgn
            if not ok:
                continue
            f1 = f1_cache.get(d)
            if f1 is None:
                f1 = gauss_2f1(
                    GaussParams(p.a + d, p.b[0] + d, p.c[0] + d), x[0], t
                ).value
                f1_cache[d] = f1
            inner_p = LauricellaAParams(
                p.a + d,
                tuple(p.b[j + 1] + row[j] for j in range(p.n - 1)),
                tuple(p.c[j + 1] + row[j] for j in range(p.n - 1)),
            )
            inner = fa_recurrent(inner_p, x[1:], t, depth - 1)
            block += coef_sgn * math.exp(coef_log) * f1 * inner.value
            used += 1 + inner.terms_used
        total += block
        tail = abs(block)
        if tail <= t.rel_tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return EvalResult(total, tail, used, True)
        else:
            small = 0
        if used >= t.max_terms:
            break
    return EvalResult(total, tail, used, False)


def fb_recurrent(
    p: LauricellaBParams, x, t: Truncation = Truncation(), depth: int | None = None
) -> EvalResult:
    """F_B by peeling the first variable off with the recurrence expansion."""
    x = tuple(float(v) for v in x)
    if len(x) != p.n:
        raise ParameterError("x length must match parameter length")
    if max(abs(v) for v in x) >= 1.0:
        raise DomainError("fb_recurrent requires max |x_k| < 1")
    if abs(p.c - 1.0) <= 1e-12:
        raise ParameterError("fb_recurrent requires c != 1")
    if depth is None:
        depth = p.n - 1
    if p.n == 1:
        return gauss_2f1(GaussParams(p.a[0], p.b[0], p.c), x[0], t)
    if depth <= 0:
        return fb_direct(p, x, t)
    maxj = 2 * t.max_total_degree + 2
    J = np.arange(maxj + 1)
    lcpoch, scpoch = log_pochhammer(p.c, J)
    lfact = gammaln(J + 1.0)
    la = [log_pochhammer(ak, J) for ak in p.a]
    lb = [log_pochhammer(bk, J) for bk in p.b]
    f1_cache: dict = {}

    total = 0.0
    used = 0
    small = 0
    tail = math.inf
    for d in range(t.max_total_degree + 1):
        M = compositions_of(p.n - 1, d)
        shift_log, shift_sgn = log_pochhammer(p.c - 1.0 + d, d) if d else (0.0, 1.0)
        if shift_sgn == 0.0:
            raise ParameterError("vanishing Pochhammer base c - 1 + d")
        block = 0.0
        for row in M:
            coef_log = la[0][0][d] + lb[0][0][d] - float(shift_log) - lcpoch[2 * d]
            coef_sgn = (
                la[0][1][d]
                * lb[0][1][d]
                * float(shift_sgn)
                * scpoch[2 * d]
                * (1.0 if d % 2 == 0 else -1.0)
            )
            if x[0] != 0.0:
                coef_log += d * math.log(abs(x[0]))
                if x[0] < 0.0 and d % 2 == 1:
                    coef_sgn = -coef_sgn
            elif d > 0:
                continue
            ok = True
            for j, mj in enumerate(row, start=1):
                if x[j] == 0.0 and mj > 0:
                    ok = False
                    break
                coef_log += la[j][0][mj] + lb[j][0][mj] - lfact[mj]
                coef_sgn *= la[j][1][mj] * lb[j][1][mj]
                if mj:
                    coef_log += mj * math.log(abs(x[j]))
                    if x[j] < 0.0 and mj % 2 == 1:
                        coef_sgn = -coef_sgn
            if not ok:
                continue
            f1 = f1_cache.get(d)
            if f1 is None:
                f1 = gauss_2f1(
                    GaussParams(p.a[0] + d, p.b[0] + d, p.c + 2 * d), x[0], t
                ).value
                f1_cache[d] = f1
            inner_p = LauricellaBParams(
                tuple(p.a[j + 1] + row[j] for j in range(p.n - 1)),
                tuple(p.b[j + 1] + row[j] for j in range(p.n - 1)),
                p.c + 2 * d,
            )
            inner = fb_recurrent(inner_p, x[1:], t, depth - 1)
            block += coef_sgn * math.exp(coef_log) * f1 * inner.value
            used += 1 + inner.terms_used
        total += block
        tail = abs(block)
        if tail <= t.rel_tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return EvalResult(total, tail, used, True)
        else:
            small = 0
        if used >= t.max_terms:
            break
    return EvalResult(total, tail, used, False)
