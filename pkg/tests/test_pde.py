"""Kernels, boundary solver, and constants for the singular elliptic equation."""

import math

import numpy as np
import pytest

from lauridec.errors import (
    DomainError,
    ParameterError,
    QuadratureError,
    SingularityError,
)
from lauridec.hyper import GaussParams, gauss_2f1
from lauridec.pde import (
    BoundaryData,
    GridPiece,
    PDEConfig,
    Point,
    QuadratureGrid,
    aleph_limit,
    aleph_limit_closed,
    build_boundary_grid,
    fundamental_solution,
    green_function,
    green_trace_kernel,
    holmgren_solve,
    pde_residual,
    surface_constant_closed,
    surface_constant_quadrature,
)

CFG = PDEConfig(2, 1, (0.25,), 1.0)


def test_config_validation():
    with pytest.raises(ParameterError):
        PDEConfig(1, 1, (0.25,))
    with pytest.raises(ParameterError):
        PDEConfig(2, 3, (0.1, 0.1, 0.1))
    with pytest.raises(ParameterError):
        PDEConfig(2, 1, (0.6,))  # 2 alpha >= 1
    with pytest.raises(ParameterError):
        PDEConfig(2, 1, (0.25,), radius=0.0)


def test_kernel_reduces_to_single_gauss_function():
    q = fundamental_solution(CFG, (1.0, 0.0), (2.0, 0.0))
    sigma = -4.0 * 1.0 * 2.0 / 1.0
    ref = CFG.gamma0 * gauss_2f1(GaussParams(0.25, 0.25, 0.5), sigma).value
    assert q == pytest.approx(ref, rel=1e-13)


def test_kernel_symmetry():
    v1 = fundamental_solution(CFG, (0.4, 0.1), (0.7, -0.3))
    v2 = fundamental_solution(CFG, (0.7, -0.3), (0.4, 0.1))
    assert v1 == pytest.approx(v2, rel=1e-13)


def test_kernel_approaches_classical_laplace_kernel():
    """Small exponents, far from the singular plane: the kernel is within
    1% of c * r^(2-m) with the classical constant."""
    cfg = PDEConfig(3, 1, (1e-3,), 1.0)
    x = (50.0, 0.0, 0.0)
    xi = (50.5, 0.3, 0.1)
    r = math.dist(x, xi)
    classical = math.gamma(0.5 * 3 - 1.0) / (4.0 * math.pi**1.5) * r ** (2 - 3)
    got = fundamental_solution(cfg, x, xi)
    assert abs(got - classical) / classical < 0.01


def test_kernel_errors():
    with pytest.raises(SingularityError):
        fundamental_solution(CFG, (0.4, 0.1), (0.4, 0.1))
    with pytest.raises(DomainError):
        fundamental_solution(CFG, (-0.4, 0.1), (0.4, 0.1))


def test_green_vanishes_on_sphere():
    rng = np.random.default_rng(5)
    xi = (0.3, 0.1)
    for _ in range(20):
        th = rng.uniform(-0.5 * math.pi, 0.5 * math.pi)
        x = (math.cos(th), math.sin(th))
        g = green_function(CFG, x, xi)
        q = fundamental_solution(CFG, x, xi)
        assert abs(g) <= 1e-8 * abs(q)


def test_green_nonsingular_axis_relabeling():
    cfg = PDEConfig(3, 1, (0.2,), 1.0)
    v1 = green_function(cfg, (0.4, 0.1, 0.3), (0.3, 0.2, -0.1))
    v2 = green_function(cfg, (0.4, 0.3, 0.1), (0.3, -0.1, 0.2))
    assert v1 == pytest.approx(v2, rel=1e-13)


def test_green_domain_errors():
    with pytest.raises(DomainError):
        green_function(CFG, (0.4, 0.1), (1.2, 0.0))
    with pytest.raises(DomainError):
        green_function(CFG, (0.4, 0.1), (0.0, 0.0))


def test_trace_kernel_closed_form_single_axis():
    """With one singular axis the trace kernel is an explicit two-distance
    expression (the inner function degenerates to 1 on the plane)."""
    xi = np.array([0.3, 0.2])
    r0 = float(np.linalg.norm(xi))
    xibar = (CFG.radius / r0) ** 2 * xi
    pt = (0.0, 0.45)
    rho1 = math.dist(pt, xi)
    rho2 = math.dist(pt, tuple(xibar))
    want = CFG.gamma0 * (
        rho1 ** (-2 * CFG.alpha0)
        - (CFG.radius / r0) ** (2 * CFG.alpha0) * rho2 ** (-2 * CFG.alpha0)
    )
    got = green_trace_kernel(CFG, 1, pt, tuple(xi))
    assert got == pytest.approx(want, rel=1e-12)


def test_trace_kernel_matches_weighted_limit():
    cfg = PDEConfig(2, 2, (0.2, 0.3), 1.0)
    xi = (0.3, 0.2)
    pt = (0.0, 0.45)
    kernel = green_trace_kernel(cfg, 1, pt, xi)
    eps = 1e-5
    off = (0.45 ** (2 * 0.3)) * green_function(cfg, (eps, 0.45), xi)
    assert kernel == pytest.approx(off, rel=1e-4)


def test_trace_kernel_positive_near_origin():
    for s in (0.05, 0.2, 0.4):
        assert green_trace_kernel(CFG, 1, (0.0, s), (0.5, 0.1)) > 0.0


def test_trace_kernel_errors():
    with pytest.raises(ParameterError):
        green_trace_kernel(CFG, 2, (0.0, 0.4), (0.3, 0.2))
    with pytest.raises(DomainError):
        green_trace_kernel(CFG, 1, (0.2, 0.4), (0.3, 0.2))


def test_holmgren_constant_solution_small_grid():
    grid = build_boundary_grid(CFG, 128)
    data = BoundaryData(phi=lambda p: 1.0, nu=(lambda p: 0.0,))
    u = holmgren_solve(CFG, data, grid, (0.3, 0.2))
    assert u == pytest.approx(1.0, abs=1e-6)


def test_holmgren_quarter_disc():
    cfg = PDEConfig(2, 2, (0.2, 0.3), 1.0)
    grid = build_boundary_grid(cfg, 128)
    data = BoundaryData(phi=lambda p: 1.0, nu=(lambda p: 0.0, lambda p: 0.0))
    u = holmgren_solve(cfg, data, grid, (0.3, 0.2))
    assert u == pytest.approx(1.0, abs=1e-5)


def test_holmgren_node_coincides_with_xi():
    piece = GridPiece("S_1", (((1e-13, 0.4), 1.0),))
    grid = QuadratureGrid((piece,))
    data = BoundaryData(phi=lambda p: 1.0, nu=(lambda p: 0.0,))
    with pytest.raises(QuadratureError):
        holmgren_solve(CFG, data, grid, (1e-13, 0.4))


def test_grid_validation():
    bad = QuadratureGrid((GridPiece("S", (((0.5, 0.0), 1.0),)),))
    with pytest.raises(DomainError):
        bad.validate(CFG)
    neg = QuadratureGrid((GridPiece("S", (((1.0, 0.0), -1.0),)),))
    with pytest.raises(ParameterError):
        neg.validate(CFG)
    tagged = QuadratureGrid((GridPiece("bogus", (((1.0, 0.0), 1.0),)),))
    with pytest.raises(ParameterError):
        tagged.validate(CFG)


def test_build_grid_unsupported_geometry():
    with pytest.raises(ParameterError):
        build_boundary_grid(PDEConfig(3, 2, (0.2, 0.2)), 64)


def test_residual_trivial_solutions():
    assert pde_residual(CFG, lambda p: 1.0, (0.4, 0.5), 1e-3) == 0.0
    lin = pde_residual(CFG, lambda p: p.coords[1], (0.4, 0.5), 1e-3)
    assert abs(lin) <= 1e-10


def test_residual_stencil_domain_error():
    with pytest.raises(DomainError):
        pde_residual(CFG, lambda p: 1.0, (1e-4, 0.5), 1e-3)


def test_residual_of_kernel_is_small():
    xi = (0.9, 0.2)
    u = lambda p: fundamental_solution(CFG, p, xi)
    r = pde_residual(CFG, u, (0.4, 0.5), 1e-3)
    assert abs(r) <= 1e-4


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_surface_constants(m):
    got = surface_constant_quadrature(m)
    want = surface_constant_closed(m)
    assert abs(got - want) / want <= 1e-10


@pytest.mark.parametrize(
    "m,n,alpha",
    [(2, 1, (0.25,)), (3, 1, (0.3,)), (3, 2, (0.2, 0.3)), (4, 2, (0.15, 0.35))],
)
def test_flux_limit_constant(m, n, alpha):
    cfg = PDEConfig(m, n, alpha)
    got = aleph_limit(cfg)
    want = aleph_limit_closed(cfg)
    assert abs(got - want) / want <= 1e-7
