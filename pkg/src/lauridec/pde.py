"""Fundamental solutions, Green's function, and the Holmgren problem.

The elliptic equation

    sum_{i=1}^m u_{x_i x_i} + sum_{k=1}^n (2 alpha_k / x_k) u_{x_k} = 0,
    0 < 2 alpha_k < 1,

on the part of the ball of radius ``a`` cut out by the coordinate planes
x_k = 0 (k = 1..n) admits the fundamental solution

    q0(x; xi) = gamma0 * r^(-2 alpha0) * F_A^(n)(alpha0, alpha; 2 alpha; sigma),

with r^2 = sum (x_i - xi_i)^2, r_k^2 = r^2 + 4 x_k xi_k,
sigma_k = 1 - r_k^2 / r^2, alpha0 = (m - 2)/2 + sum alpha_k and

    gamma0 = 2^(2 alpha0 - m) Gamma(alpha0) / pi^(m/2) * prod Gamma(alpha_k)/Gamma(2 alpha_k).

The Green's function is built by inversion in the sphere,
G0(x; xi) = q0(x; xi) - (a/R0)^(2 alpha0) q0(x; xibar) with
xibar = (a/R0)^2 xi, and the Holmgren-problem solution is recovered by
boundary quadrature:

    u(xi) = - sum_k int_{S_k} K_k(x~; xi) nu_k dS_k
            + int_S x^(2 alpha) (dG0/dn) phi dS,

where K_k is the trace kernel on the plane piece S_k and
x^(2 alpha) = prod_k x_k^(2 alpha_k).  The trace kernel is defined as the
weighted trace x~^(2 alpha, k-omitted) * G0(x~; xi) at x_k = 0; on that
plane the k-th Lauricella argument vanishes, so the n-variable kernel
collapses to an (n-1)-variable one automatically.

The module also evaluates the surface-angle constants

    L_{2m} = 2 pi^m / (m-1)!,    L_{2m+1} = 2^(m+1) pi^m / (2m-1)!!

by direct quadrature of the nested sine integrals, and the limit constant

    aleph -> Gamma(m/2)/Gamma(alpha0 + 1) * prod Gamma(2 alpha_k)/Gamma(alpha_k),

which is obtained from the summation identity for the one-signed series
(through :func:`lauridec.identities.t_sum_fa`), not from the closed form.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .direct import LauricellaAParams
from .decomposition import fa_decomposed
from .errors import DomainError, ParameterError, QuadratureError, SingularityError
from .hyper import Truncation
from .identities import t_sum_fa

__all__ = [
    "PDEConfig",
    "Point",
    "BoundaryData",
    "QuadratureGrid",
    "GridPiece",
    "fundamental_solution",
    "green_function",
    "green_trace_kernel",
    "holmgren_solve",
    "pde_residual",
    "build_boundary_grid",
    "surface_constant_quadrature",
    "surface_constant_closed",
    "aleph_limit",
    "aleph_limit_closed",
]


# --------------------------------------------------------------------------
# configuration and geometry types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PDEConfig:
    """Problem data: dimension, singular axes, exponents, sphere radius."""

    m: int
    n: int
    alpha: tuple
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if self.m < 2:
            raise ParameterError("dimension m must be >= 2")
        if not 0 < self.n <= self.m:
            raise ParameterError("singular axis count n must satisfy 0 < n <= m")
        if len(self.alpha) != self.n:
            raise ParameterError("alpha must have length n")
        for a in self.alpha:
            if not 0.0 < 2.0 * a < 1.0:
                raise ParameterError("each exponent must satisfy 0 < 2*alpha_k < 1")
        if not self.radius > 0.0:
            raise ParameterError("radius must be positive")
        if self.alpha0 <= 0.0:
            raise ParameterError("derived exponent alpha0 must be positive")

    @property
    def alpha0(self) -> float:
        return 0.5 * (self.m - 2) + sum(self.alpha)

    @property
    def gamma0(self) -> float:
        lg = (
            (2.0 * self.alpha0 - self.m) * math.log(2.0)
            + gammaln(self.alpha0)
            - 0.5 * self.m * math.log(math.pi)
        )
        for a in self.alpha:
            lg += gammaln(a) - gammaln(2.0 * a)
        return math.exp(lg)


@dataclass(frozen=True)
class Point:
    """Evaluation point; ``coords`` has the full space dimension m."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))


def _coords(x, m: int) -> np.ndarray:
    arr = np.asarray(getattr(x, "coords", x), dtype=float)
    if arr.shape != (m,):
        raise ParameterError(f"point must have {m} coordinates")
    return arr


def _check_nonneg_singular(cfg: PDEConfig, arr: np.ndarray, name: str):
    if np.any(arr[: cfg.n] < 0.0):
        raise DomainError(f"{name} must have nonnegative singular coordinates")


def _check_interior(cfg: PDEConfig, arr: np.ndarray, name: str):
    if np.any(arr[: cfg.n] <= 0.0):
        raise DomainError(f"{name} must have strictly positive singular coordinates")


@dataclass(frozen=True)
class BoundaryData:
    """Dirichlet data ``phi`` on the sphere piece and the n weighted
    normal-derivative traces ``nu[k]`` on the plane pieces x_{k+1} = 0."""

    phi: object
    nu: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(self.nu))


@dataclass(frozen=True)
class GridPiece:
    """Quadrature nodes for one boundary piece.

    ``tag`` is "S" for the sphere piece or "S_k" (k = 1..n) for the plane
    piece on x_k = 0; ``nodes`` is a tuple of (Point, weight) pairs.
    """

    tag: str
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "nodes",
            tuple((Point(tuple(_np_coords(p))), float(w)) for p, w in self.nodes),
        )


def _np_coords(p):
    return np.asarray(getattr(p, "coords", p), dtype=float)


@dataclass(frozen=True)
class QuadratureGrid:
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def validate(self, cfg: PDEConfig):
        tol = 1e-12 * cfg.radius
        for piece in self.pieces:
            for pt, w in piece.nodes:
                if w <= 0.0:
                    raise ParameterError("quadrature weights must be positive")
                arr = _coords(pt, cfg.m)
                if piece.tag == "S":
                    if abs(np.linalg.norm(arr) - cfg.radius) > tol:
                        raise DomainError("sphere-piece node off the sphere")
                elif piece.tag.startswith("S_"):
                    k = int(piece.tag[2:])
                    if not 1 <= k <= cfg.n:
                        raise ParameterError(f"unknown boundary piece {piece.tag}")
                    if abs(arr[k - 1]) > tol:
                        raise DomainError(f"plane-piece node off x_{k} = 0")
                else:
                    raise ParameterError(f"unknown boundary piece tag {piece.tag!r}")


# --------------------------------------------------------------------------
# kernels
# --------------------------------------------------------------------------


def fundamental_solution(
    cfg: PDEConfig, x, xi, t: Truncation = Truncation()
) -> float:
    """q0(x; xi) = gamma0 * r^(-2 alpha0) * F_A^(n)(alpha0, alpha; 2 alpha; sigma)."""
    xa = _coords(x, cfg.m)
    xb = _coords(xi, cfg.m)
    _check_nonneg_singular(cfg, xa, "x")
    _check_nonneg_singular(cfg, xb, "xi")
    r2 = float(np.sum((xa - xb) ** 2))
    if r2 == 0.0:
        raise SingularityError("fundamental solution evaluated at x = xi")
    sigma = tuple(
        -4.0 * xa[k] * xb[k] / r2 for k in range(cfg.n)
    )  # 1 - r_k^2/r^2 with r_k^2 = r^2 + 4 x_k xi_k
    if max(sigma) >= 1.0:
        raise DomainError("sigma_k >= 1 outside the kernel's domain")
    fa = 1.0
    if cfg.n >= 1:
        p = LauricellaAParams(
            cfg.alpha0, cfg.alpha, tuple(2.0 * a for a in cfg.alpha)
        )
        fa = fa_decomposed(p, sigma, t).value
    return cfg.gamma0 * r2 ** (-cfg.alpha0) * fa


def _inversion_image(cfg: PDEConfig, xi: np.ndarray):
    """Return (xibar, (a/R0)^(2 alpha0)); errors if xi is not inside the ball."""
    r0 = float(np.linalg.norm(xi))
    if r0 == 0.0 or r0 >= cfg.radius:
        raise DomainError("xi must satisfy 0 < |xi| < radius")
    scale = (cfg.radius / r0) ** 2
    return scale * xi, (cfg.radius / r0) ** (2.0 * cfg.alpha0)


def green_function(cfg: PDEConfig, x, xi, t: Truncation = Truncation()) -> float:
    """G0(x; xi) = q0(x; xi) - (a/R0)^(2 alpha0) q0(x; xibar)."""
    xb = _coords(xi, cfg.m)
    xibar, factor = _inversion_image(cfg, xb)
    return fundamental_solution(cfg, x, xi, t) - factor * fundamental_solution(
        cfg, x, xibar, t
    )


def green_trace_kernel(
    cfg: PDEConfig, k: int, x_tilde, xi, t: Truncation = Truncation()
) -> float:
    """Weighted trace of G0 on the plane piece x_k = 0 (k is 1-based).

    Equals prod_{j != k, j <= n} x_j^(2 alpha_j) * G0(x~; xi) with the k-th
    coordinate of x~ set exactly to zero; there the k-th Lauricella argument
    vanishes, so both terms reduce to (n-1)-variable kernels.
    """
    if not 1 <= k <= cfg.n:
        raise ParameterError("axis index k must satisfy 1 <= k <= n")
    xa = _coords(x_tilde, cfg.m).copy()
    if abs(xa[k - 1]) > 1e-12 * cfg.radius:
        raise DomainError(f"trace point must lie on x_{k} = 0")
    xa[k - 1] = 0.0
    weight = 1.0
    for j in range(cfg.n):
        if j != k - 1:
            weight *= xa[j] ** (2.0 * cfg.alpha[j])
    if weight == 0.0:
        return 0.0
    return weight * green_function(cfg, xa, xi, t)


# --------------------------------------------------------------------------
# Holmgren solver
# --------------------------------------------------------------------------


@functools.lru_cache(maxsize=1 << 18)
def _green_cached(cfg_key, x_key, xi_key, t_key):
    cfg = PDEConfig(cfg_key[0], cfg_key[1], cfg_key[2], cfg_key[3])
    t = Truncation(*t_key)
    return green_function(cfg, x_key, xi_key, t)


def _cfg_key(cfg: PDEConfig):
    return (cfg.m, cfg.n, cfg.alpha, cfg.radius)


def holmgren_solve(
    cfg: PDEConfig,
    data: BoundaryData,
    grid: QuadratureGrid,
    xi,
    t: Truncation = Truncation(),
) -> float:
    """Boundary-quadrature approximation of the Holmgren-problem solution.

    u(xi) = - sum_k int_{S_k} K_k(x~; xi) nu_k dS_k
            + int_S x^(2 alpha) (dG0/dn) phi dS,

    with dG0/dn the radial central difference (step 1e-5 * radius) along the
    normal pointing *into* the domain: with the inner normal the constant
    solution u = 1 is reproduced with value +1, which fixes the orientation
    convention of the formula.
    Green kernel values are memoized, so repeated solves on the same grid
    and interior point (different boundary data) cost almost nothing.
    """
    grid.validate(cfg)
    xb = _coords(xi, cfg.m)
    _check_interior(cfg, xb, "xi")
    if np.linalg.norm(xb) >= cfg.radius:
        raise DomainError("xi must lie inside the sphere")
    if len(data.nu) != cfg.n:
        raise ParameterError("boundary data must supply n normal traces nu_k")
    ck = _cfg_key(cfg)
    tk = (t.rel_tol, t.max_total_degree, t.max_terms)
    xik = tuple(xb)
    h = 1e-5 * cfg.radius
    total = 0.0
    for piece in grid.pieces:
        acc = 0.0
        if piece.tag == "S":
            for pt, w in piece.nodes:
                arr = _np_coords(pt)
                if np.linalg.norm(arr - xb) <= 1e-12 * cfg.radius:
                    raise QuadratureError("quadrature node coincides with xi")
                scale_p = 1.0 + h / cfg.radius
                scale_m = 1.0 - h / cfg.radius
                gp = _green_cached(ck, tuple(scale_p * arr), xik, tk)
                gm = _green_cached(ck, tuple(scale_m * arr), xik, tk)
                dgdn = (gm - gp) / (2.0 * h)
                wfac = math.prod(
                    arr[j] ** (2.0 * cfg.alpha[j]) for j in range(cfg.n)
                )
                acc += w * wfac * dgdn * float(data.phi(pt))
            total += acc
        else:
            k = int(piece.tag[2:])
            nu_k = data.nu[k - 1]
            for pt, w in piece.nodes:
                arr = _np_coords(pt)
                if np.linalg.norm(arr - xb) <= 1e-12 * cfg.radius:
                    raise QuadratureError("quadrature node coincides with xi")
                acc += w * green_trace_kernel(cfg, k, arr, xb, t) * float(nu_k(pt))
            total -= acc
    return total


def pde_residual(cfg: PDEConfig, u, x, h: float) -> float:
    """Central-difference residual of the singular-coefficient equation at x."""
    if h <= 0.0:
        raise ParameterError("step h must be positive")
    xa = _coords(x, cfg.m)
    if np.any(xa[: cfg.n] <= 2.0 * h):
        raise DomainError("finite-difference stencil leaves the domain")

    def ev(arr):
        return float(u(Point(tuple(arr))))

    u0 = ev(xa)
    res = 0.0
    for i in range(cfg.m):
        step = np.zeros(cfg.m)
        step[i] = h
        up = ev(xa + step)
        um = ev(xa - step)
        res += (up - 2.0 * u0 + um) / (h * h)
        if i < cfg.n:
            res += (2.0 * cfg.alpha[i] / xa[i]) * (up - um) / (2.0 * h)
    return res


# --------------------------------------------------------------------------
# quadrature grid construction
# --------------------------------------------------------------------------


def _graded_fractions(levels: int = 8, ratio: float = 0.5, mid_panels: int = 2):
    """Panel breakpoints on [0, 1], geometrically refined toward both ends."""
    first = 1.0 / (mid_panels + 2)
    lo = [first * ratio**j for j in range(levels, 0, -1)]
    interior = list(np.linspace(first, 1.0 - first, mid_panels + 1))
    hi = [1.0 - first * ratio**j for j in range(1, levels + 1)]
    return np.array([0.0] + lo + interior + hi + [1.0])


def _panel_gauss(breaks: np.ndarray, order: int):
    """Composite Gauss-Legendre nodes/weights over the given panels."""
    gx, gw = np.polynomial.legendre.leggauss(order)
    nodes = []
    weights = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes.append(mid + half * gx)
        weights.append(half * gw)
    return np.concatenate(nodes), np.concatenate(weights)


def _graded_rule(lo: float, hi: float, min_nodes: int):
    fr = _graded_fractions()
    order = max(2, math.ceil(min_nodes / (len(fr) - 1)))
    s, w = _panel_gauss(fr, order)
    return lo + (hi - lo) * s, (hi - lo) * w


def build_boundary_grid(cfg: PDEConfig, nodes_per_piece: int = 512) -> QuadratureGrid:
    """Composite Gauss-Legendre grid, graded (ratio 0.5, 8 levels) toward the
    edges where boundary pieces meet the singular planes.

    Supported geometries: m = 2 with n in {1, 2} (half / quarter disc) and
    m = 3 with n = 1 (half ball).
    """
    a = cfg.radius
    pieces = []
    if cfg.m == 2 and cfg.n in (1, 2):
        th_lo, th_hi = (-0.5 * math.pi, 0.5 * math.pi) if cfg.n == 1 else (
            0.0,
            0.5 * math.pi,
        )
        th, wth = _graded_rule(th_lo, th_hi, nodes_per_piece)
        sphere = [
            (Point((a * math.cos(t_), a * math.sin(t_))), a * w_)
            for t_, w_ in zip(th, wth)
        ]
        pieces.append(GridPiece("S", tuple(sphere)))
        if cfg.n == 1:
            s, ws = _graded_rule(-a, a, nodes_per_piece)
            pieces.append(
                GridPiece("S_1", tuple((Point((0.0, v)), w_) for v, w_ in zip(s, ws)))
            )
        else:
            s, ws = _graded_rule(0.0, a, nodes_per_piece)
            pieces.append(
                GridPiece("S_1", tuple((Point((0.0, v)), w_) for v, w_ in zip(s, ws)))
            )
            pieces.append(
                GridPiece("S_2", tuple((Point((v, 0.0)), w_) for v, w_ in zip(s, ws)))
            )
    elif cfg.m == 3 and cfg.n == 1:
        n1d = max(8, math.ceil(math.sqrt(nodes_per_piece)))
        th, wth = _graded_rule(0.0, 0.5 * math.pi, n1d)
        ps, wps = _graded_rule(0.0, 2.0 * math.pi, n1d)
        sphere = []
        for t_, wt_ in zip(th, wth):
            for p_, wp_ in zip(ps, wps):
                pt = Point(
                    (
                        a * math.cos(t_),
                        a * math.sin(t_) * math.cos(p_),
                        a * math.sin(t_) * math.sin(p_),
                    )
                )
                sphere.append((pt, a * a * math.sin(t_) * wt_ * wp_))
        pieces.append(GridPiece("S", tuple(sphere)))
        rr, wr = _graded_rule(0.0, a, n1d)
        plane = []
        for r_, wrr in zip(rr, wr):
            for p_, wp_ in zip(ps, wps):
                pt = Point((0.0, r_ * math.cos(p_), r_ * math.sin(p_)))
                plane.append((pt, r_ * wrr * wp_))
        pieces.append(GridPiece("S_1", tuple(plane)))
    else:
        raise ParameterError(
            "grid construction supports m=2 with n in {1,2} and m=3 with n=1"
        )
    return QuadratureGrid(tuple(pieces))


# --------------------------------------------------------------------------
# constants: surface angles and the aleph limit
# --------------------------------------------------------------------------


def surface_constant_quadrature(m: int, order: int = 96) -> float:
    """L_m = 2 pi * prod_{j=1}^{m-2} int_0^pi sin^j t dt by Gauss-Legendre."""
    if m < 2:
        raise ParameterError("surface constant requires m >= 2")
    gx, gw = np.polynomial.legendre.leggauss(order)
    t_ = 0.5 * math.pi * (gx + 1.0)
    w_ = 0.5 * math.pi * gw
    value = 2.0 * math.pi
    for j in range(1, m - 1):
        value *= float(np.sum(w_ * np.sin(t_) ** j))
    return value


def surface_constant_closed(m: int) -> float:
    """L_{2p} = 2 pi^p / (p-1)!,  L_{2p+1} = 2^(p+1) pi^p / (2p-1)!!."""
    if m < 2:
        raise ParameterError("surface constant requires m >= 2")
    if m % 2 == 0:
        p = m // 2
        return 2.0 * math.pi**p / math.factorial(p - 1)
    p = (m - 1) // 2
    dfact = math.prod(range(1, 2 * p, 2))
    return 2.0 ** (p + 1) * math.pi**p / dfact


def aleph_limit(cfg: PDEConfig, t: Truncation = Truncation()) -> float:
    """The small-radius limit of the flux sum aleph, computed through the
    one-signed summation identity (not from its closed form).

    The defining multi-index sum is the normalized one-signed series T_n
    with parameters a = alpha0 + 1, b_k = alpha_k, times the gamma-function
    prefactor prod_k Gamma(2 alpha_k) Gamma(a - alpha_k) / (Gamma(alpha_k) Gamma(a)).
    """
    a = cfg.alpha0 + 1.0
    total, _, converged = t_sum_fa(a, cfg.alpha, t)
    if not converged:
        raise QuadratureError("one-signed series total did not converge")
    lg = 0.0
    for ak in cfg.alpha:
        lg += gammaln(2.0 * ak) + gammaln(a - ak) - gammaln(ak) - gammaln(a)
    return math.exp(lg) * total


def aleph_limit_closed(cfg: PDEConfig) -> float:
    """Gamma(m/2)/Gamma(alpha0 + 1) * prod Gamma(2 alpha_k)/Gamma(alpha_k)."""
    lg = gammaln(0.5 * cfg.m) - gammaln(cfg.alpha0 + 1.0)
    for ak in cfg.alpha:
        lg += gammaln(2.0 * ak) - gammaln(ak)
    return math.exp(lg)
