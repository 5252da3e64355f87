"""Random in-domain parameter draws shared by the CLI sweeps and the tests.

All draws use an explicit :class:`numpy.random.Generator` so every sweep is
reproducible from a seed.
"""

from __future__ import annotations

import numpy as np

from .direct import LauricellaAParams, LauricellaBParams

__all__ = [
    "random_fa_case",
    "random_fb_case",
    "random_summation_case",
    "random_limit_fa_case",
    "random_limit_fb_case",
]


def random_fa_case(rng: np.random.Generator, n: int):
    """Parameters and a point with sum |x_k| < 1 for the per-axis-denominator
    function (the common convergence domain of all three evaluators)."""
    a = float(rng.uniform(0.3, 2.0))
    b = tuple(float(v) for v in rng.uniform(0.2, 1.5, n))
    c = tuple(float(v) for v in rng.uniform(0.6, 2.2, n))
    radius = float(rng.uniform(0.2, 0.8))
    weights = rng.dirichlet(np.ones(n)) * radius
    signs = rng.choice((-1.0, 1.0), n)
    x = tuple(float(v) for v in weights * signs)
    return LauricellaAParams(a, b, c), x


def random_fb_case(rng: np.random.Generator, n: int):
    """Parameters and a point with max |x_k| < 1 for the shared-denominator
    function; c is kept away from 1 (the decomposition base c - 1)."""
    a = tuple(float(v) for v in rng.uniform(0.2, 1.5, n))
    b = tuple(float(v) for v in rng.uniform(0.2, 1.5, n))
    c = float(rng.uniform(1.3, 2.5))
    x = tuple(float(v) for v in rng.uniform(-0.55, 0.55, n))
    return LauricellaBParams(a, b, c), x


def random_summation_case(rng: np.random.Generator, n: int):
    """(a, b) with a in [1, 3], b_k in (0, 0.4] and margin a - sum(b) >= 0.3."""
    b = tuple(float(v) for v in rng.uniform(0.05, 0.4, n))
    lo = max(1.0, sum(b) + 0.3)
    a = float(rng.uniform(lo, 3.0))
    return a, b


def random_limit_fa_case(rng: np.random.Generator, n: int):
    """Limit-formula parameters with per-axis gaps c_k - b_k >= 1 and margin
    a - sum(b) >= 1.3; the approach error decays roughly like
    z^min(a - sum(b), 1), so these draws reach the 1e-3 band at z = 1e-4."""
    b = tuple(float(v) for v in rng.uniform(0.2, 0.6, n))
    c = tuple(bk + float(rng.uniform(1.0, 1.8)) for bk in b)
    a = sum(b) + float(rng.uniform(1.3, 2.0))
    return LauricellaAParams(a, b, c)


def random_limit_fb_case(rng: np.random.Generator, n: int):
    """Limit-formula parameters with per-axis gaps a_k - b_k >= 1 and
    c > sum(b)."""
    b = tuple(float(v) for v in rng.uniform(0.2, 0.6, n))
    a = tuple(bk + float(rng.uniform(1.0, 1.8)) for bk in b)
    c = sum(b) + float(rng.uniform(0.5, 1.5))
    return LauricellaBParams(a, b, c)
