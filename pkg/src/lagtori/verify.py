"""Named numerical checks and the suite runner behind ``lagtori verify``.

Every check returns ``(max_error, params)`` and carries a default tolerance;
a check passes iff ``max_error <= tolerance``.  Boolean checks report 0 or 1
against tolerance 0.  Random samples come from a generator seeded by the suite
seed and the check name, so reports are reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .classifier import (
    Kind,
    case2_route,
    classify_case1_by_area,
    classify_pq,
    classify_via_reduction,
    classify_xy,
)
from .disk_reduction import (
    circle_area_clockwise,
    circle_level_set_points,
    circle_moduli,
    circle_sample,
    check_semiconjugacy,
    enclosed_area_quadrature,
    fiber_of_circle,
    gamma_reduced,
    gamma_sample,
    h_level,
    integral_abs_p_term,
    integral_sqrt_term,
    lifted_curve,
    norm_on_gamma,
    omega_p_density,
    polynomial_fields,
    psi_inv,
    psi_minus1,
    reduced_via_composition,
    sigma_value,
    target_radius,
)
from .energy_germs import (
    UNBOUNDED,
    energy_fiber,
    germ_consistency,
    germ_L,
    germ_T_diag,
    germs_linearly_equivalent,
)
from .errors import UsageError
from .polytopes import FiberLabel, PQCoord, Region, case_region, pq_to_xy
from .probes import (
    FiberMove,
    fiber_moves_p1,
    free_action_check,
    move_probes,
    p2_vertical_probe,
    probe_pair,
)
from .sphere_geom import (
    ProductPoint,
    TangentPair,
    area_form_half,
    d1_d2,
    omega_product,
    rotate_e1,
    rotation_Rt,
)
from .torus_lab import (
    TorusParam,
    f1,
    f2,
    gamma1,
    gamma1_derivative,
    l1_residuals,
    moment_map,
    product_torus_point,
    torus_point,
    torus_tangents,
    x_f2,
)

SUITES = ("all", "curves", "reduction", "appendix", "classify", "probes", "germs")

# Ten interior points off the diagonal and off the case boundary p^2 = q^4.
TEN_POINTS = [
    PQCoord(0.3, 0.7),
    PQCoord(-0.2, 0.8),
    PQCoord(0.5, 0.7),
    PQCoord(-0.5, 0.7),
    PQCoord(0.1, 0.4),
    PQCoord(-0.05, 0.3),
    PQCoord(0.6, 0.9),
    PQCoord(-0.8, 0.95),
    PQCoord(0.02, 0.15),
    PQCoord(0.25, 0.55),
]

APPENDIX_QS = (0.5, 0.6, 0.7, 0.8, 0.9)


def appendix_grid() -> list[PQCoord]:
    return [PQCoord(s * 0.5 * q * q, q) for q in APPENDIX_QS for s in (1.0, -1.0)]


def interior_grid(m: int) -> list[PQCoord]:
    """``m x m`` cell-centred grid of P2 interior points; never hits ``p = 0``."""
    out = []
    for j in range(m):
        q = (j + 0.5) / m
        for i in range(m):
            out.append(PQCoord(q * (2.0 * (i + 0.5) / m - 1.0), q))
    return out


def case1_grid(m: int) -> list[PQCoord]:
    """Grid points with ``0 < |p| <= 0.9 q^2``, inside the area-identity hypothesis.

    Nearer the case boundary ``Gamma`` passes close to the origin and 4096
    samples stop resolving it.
    """
    out = []
    for j in range(m):
        q = 0.1 + 0.85 * (j + 0.5) / m
        for i in range(m):
            frac = 2.0 * (i + 0.5) / m - 1.0
            out.append(PQCoord(0.9 * frac * q * q, q))
    return out


@dataclass
class CheckResult:
    name: str
    params: dict
    max_error: float
    tolerance: float
    passed: bool
    runtime_ms: float

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    suite: str
    version: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"passed": passed, "failed": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary,
            "wall_ms": self.wall_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "param_summary", "max_error", "tolerance", "passed", "runtime_ms"])
        for c in self.checks:
            summary = ";".join(f"{k}={v}" for k, v in c.params.items())
            writer.writerow([c.name, summary, repr(c.max_error), repr(c.tolerance), c.passed, repr(c.runtime_ms)])
        return buf.getvalue()


@dataclass
class Ctx:
    grid: int
    rng: np.random.Generator


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    tolerance: float
    fn: Callable[[Ctx], tuple[float, dict]]


CHECKS: list[Check] = []


def check(name: str, suite: str, tolerance: float):
    def deco(fn):
        CHECKS.append(Check(name, suite, tolerance, fn))
        return fn

    return deco


def _random_disk(rng: np.random.Generator, n: int, rmax: float = 0.95) -> np.ndarray:
    r = rmax * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def _bool(ok: bool) -> float:
    return 0.0 if ok else 1.0


# ---------------------------------------------------------------- curves


@check("sphere.rotation_norm", "curves", 1e-12)
def chk_rotation_norm(ctx: Ctx):
    vs = ctx.rng.normal(size=(100, 3))
    err = 0.0
    for t in np.linspace(-2 * np.pi, 2 * np.pi, 8 * ctx.grid + 1):
        rt = rotation_Rt(t)
        err = max(err, np.max(np.abs(np.linalg.norm(vs @ rt.T, axis=1) - np.linalg.norm(vs, axis=1))))
        err = max(err, abs(np.linalg.det(rt) - 1.0), np.max(np.abs(rt @ [1, 0, 0] - [1, 0, 0])))
    return err, {"t_samples": 8 * ctx.grid + 1, "vectors": 100}


@check("sphere.conjugation", "curves", 1e-12)
def chk_conjugation(ctx: Ctx):
    d1, d2 = d1_d2()
    err = 0.0
    for t in np.linspace(0, 2 * np.pi, 8 * ctx.grid + 1):
        rt, rmt = rotation_Rt(t), rotation_Rt(-t)
        err = max(err, np.max(np.abs(np.linalg.inv(d1) @ rt @ d1 - rt)))
        err = max(err, np.max(np.abs(np.linalg.inv(d2) @ rmt @ d2 - rt)))
        err = max(err, np.max(np.abs(d2 @ rt @ np.linalg.inv(d2) - rmt)))
    return err, {"t_samples": 8 * ctx.grid + 1}


def sphere_area_total(n_u: int = 48, n_phi: int = 96) -> float:
    """Total ``(1/2) omega_std`` area of S^2 by Gauss-Legendre x trapezoid quadrature."""
    u, wu = np.polynomial.legendre.leggauss(n_u)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    uu, pp = np.meshgrid(u, phi, indexing="ij")
    s = np.sqrt(1 - uu**2)
    x = np.stack([s * np.cos(pp), s * np.sin(pp), uu], axis=-1)
    # tangents of (u, phi) -> x, oriented so the frame is positive w.r.t. the outward normal
    xu = np.stack([-uu / s * np.cos(pp), -uu / s * np.sin(pp), np.ones_like(uu)], axis=-1)
    xphi = np.stack([-s * np.sin(pp), s * np.cos(pp), np.zeros_like(uu)], axis=-1)
    dens = area_form_half(x, xphi, xu)
    return float(np.sum(dens * wu[:, None]) * 2 * np.pi / n_phi)


@check("sphere.total_area", "curves", 1e-3)
def chk_total_area(ctx: Ctx):
    return abs(sphere_area_total() - 2 * np.pi), {"oracle": "gauss-legendre x trapezoid"}


def tangency_error(pq: PQCoord, n: int = 256) -> float:
    theta = 2 * np.pi * np.arange(n) / n
    pt = gamma1(theta, pq)
    xf = x_f2(pt, pq.q)
    dg = gamma1_derivative(theta, pq)
    return float(np.max(np.hypot(np.linalg.norm(dg.a - xf.a, axis=-1), np.linalg.norm(dg.b - xf.b, axis=-1))))


def tangency_error_fd(pq: PQCoord, n: int = 256, h: float = 1e-5) -> float:
    theta = 2 * np.pi * np.arange(n) / n
    xf = x_f2(gamma1(theta, pq), pq.q)
    plus, minus = gamma1(theta + h, pq), gamma1(theta - h, pq)
    da = (plus.vv - minus.vv) / (2 * h)
    db = (plus.ww - minus.ww) / (2 * h)
    return float(np.max(np.hypot(np.linalg.norm(da - xf.a, axis=-1), np.linalg.norm(db - xf.b, axis=-1))))


@check("torus.integral_curve", "curves", 1e-8)
def chk_integral_curve(ctx: Ctx):
    pts = TEN_POINTS
    return max(tangency_error(pq) for pq in pts), {"points": len(pts), "samples": 256, "derivative": "analytic"}


@check("torus.integral_curve_fd", "curves", 1e-6)
def chk_integral_curve_fd(ctx: Ctx):
    pts = TEN_POINTS
    return max(tangency_error_fd(pq) for pq in pts), {"points": len(pts), "samples": 256, "h": 1e-5}


def lagrangian_error(pq: PQCoord, m: int = 32) -> float:
    g = 2 * np.pi * np.arange(m) / m
    th, t = np.meshgrid(g, g, indexing="ij")
    pt = torus_point(TorusParam(th, t), pq)
    u_theta, u_t = torus_tangents(TorusParam(th, t), pq)
    return float(np.max(np.abs(omega_product(pt, u_theta, u_t))))


@check("torus.lagrangian", "curves", 1e-10)
def chk_lagrangian(ctx: Ctx):
    return max(lagrangian_error(pq) for pq in TEN_POINTS), {"points": 10, "grid": "32x32"}


def level_set_error(pq: PQCoord, m: int = 16) -> float:
    g = 2 * np.pi * np.arange(m) / m
    th, t = np.meshgrid(g, g, indexing="ij")
    pt = torus_point(TorusParam(th, t), pq)
    e1 = np.max(np.abs(f1(pt) + 2 * pq.p))
    e2 = np.max(np.abs(f2(pt, pq.q) - (2 * pq.q**2 - 1) / (4 * pq.q)))
    r_sum, r_dot = l1_residuals(pt, pq)
    return float(max(e1, e2, np.max(r_sum), np.max(r_dot)))


@check("torus.level_sets", "curves", 1e-12)
def chk_level_sets(ctx: Ctx):
    pts = TEN_POINTS + interior_grid(ctx.grid)
    return max(level_set_error(pq) for pq in pts), {"points": len(pts), "grid": "16x16"}


@check("torus.poisson_commutation", "curves", 1e-10)
def chk_poisson(ctx: Ctx):
    """``{F1, F2} = 0``: X_F2 kills F1, and F2 is constant along the F1 flow."""
    err = 0.0
    for pq in TEN_POINTS:
        theta = ctx.rng.uniform(0, 2 * np.pi, 20)
        t = ctx.rng.uniform(0, 2 * np.pi, 20)
        pt = torus_point(TorusParam(theta, t), pq)
        xf = x_f2(pt, pq.q)
        # dF1(X) = -(X_a + X_b) . e1
        err = max(err, np.max(np.abs(xf.a[..., 0] + xf.b[..., 0])))
        for s in ctx.rng.uniform(-np.pi, np.pi, 8):
            rot = ProductPoint(rotate_e1(pt.vv, s), rotate_e1(pt.ww, s))
            err = max(err, np.max(np.abs(f1(rot) - f1(pt))), np.max(np.abs(f2(rot, pq.q) - f2(pt, pq.q))))
    return float(err), {"points": 10, "samples": 20, "flow_times": 8}


@check("torus.product_torus", "curves", 1e-12)
def chk_product_torus(ctx: Ctx):
    err = 0.0
    h = 1e-4
    for _ in range(10):
        fl = FiberLabel(*ctx.rng.uniform(-0.49, 0.49, 2))
        th1, th2 = ctx.rng.uniform(0, 2 * np.pi, (2, 32))
        pt = product_torus_point(fl, th1, th2)
        mx, my = moment_map(pt)
        err = max(err, np.max(np.abs(mx - fl.xi)), np.max(np.abs(my - fl.zeta)))
        err = max(err, np.max(np.abs(np.linalg.norm(pt.vv, axis=-1) - 1)), np.max(np.abs(np.linalg.norm(pt.ww, axis=-1) - 1)))
        d1 = (product_torus_point(fl, th1 + h, th2).stacked() - product_torus_point(fl, th1 - h, th2).stacked()) / (2 * h)
        d2 = (product_torus_point(fl, th1, th2 + h).stacked() - product_torus_point(fl, th1, th2 - h).stacked()) / (2 * h)
        u1 = TangentPair(d1[..., :3], d1[..., 3:])
        u2 = TangentPair(d2[..., :3], d2[..., 3:])
        err = max(err, np.max(np.abs(omega_product(pt, u1, u2))))
    return float(err), {"labels": 10, "samples": 32}


# ------------------------------------------------------------- reduction


def psi_jacobian_ratio_error(z: np.ndarray, h: float = 1e-6) -> float:
    """``|pullback of (1/2) omega_std / (2 dx^dy) - 1|`` by central differences."""
    base = psi_minus1(z).v
    dx = (psi_minus1(z + h).v - psi_minus1(z - h).v) / (2 * h)
    dy = (psi_minus1(z + 1j * h).v - psi_minus1(z - 1j * h).v) / (2 * h)
    ratio = area_form_half(base, dx, dy) / 2.0
    return float(np.max(np.abs(ratio - 1.0)))


@check("psi.symplectic", "reduction", 1e-6)
def chk_psi_symplectic(ctx: Ctx):
    z = _random_disk(ctx.rng, 100)
    return psi_jacobian_ratio_error(z), {"points": 100, "h": 1e-6}


def psi_equivariance_error(z: np.ndarray, ts: np.ndarray) -> float:
    err = 0.0
    for t in ts:
        err = max(err, np.max(np.abs(psi_minus1(np.exp(1j * t) * z).v - rotate_e1(psi_minus1(z).v, t))))
    return float(err)


@check("psi.equivariance", "reduction", 1e-12)
def chk_psi_equivariance(ctx: Ctx):
    z = _random_disk(ctx.rng, 100)
    ts = np.linspace(0, 2 * np.pi, 4 * ctx.grid + 1)
    return psi_equivariance_error(z, ts), {"points": 100, "t_samples": len(ts)}


@check("psi.roundtrip", "reduction", 1e-12)
def chk_psi_roundtrip(ctx: Ctx):
    z = _random_disk(ctx.rng, 200)
    return float(np.max(np.abs(psi_inv(psi_minus1(z)) - z))), {"points": 200}


def h_level_error(pq: PQCoord, n: int = 128) -> float:
    theta = 2 * np.pi * np.arange(n) / n
    z1, z2 = lifted_curve(theta, pq)
    return float(np.max(np.abs(h_level(z1, z2) + pq.p)))


@check("reduction.h_level", "reduction", 1e-12)
def chk_h_level(ctx: Ctx):
    return max(h_level_error(pq) for pq in TEN_POINTS), {"points": 10, "samples": 128}


def gamma_agreement_error(pq: PQCoord, n: int = 128) -> float:
    theta = 2 * np.pi * np.arange(n) / n
    return float(np.max(np.abs(gamma_reduced(theta, pq) - reduced_via_composition(theta, pq))))


@check("reduction.gamma_closed_form", "reduction", 1e-10)
def chk_gamma_agreement(ctx: Ctx):
    return max(gamma_agreement_error(pq) for pq in TEN_POINTS), {"points": 10, "samples": 128}


def semiconjugacy_error(rng: np.random.Generator, n: int = 100) -> float:
    # keep |z1 z2| < 1 automatically; both factors inside the unit disk
    z1 = _random_disk(rng, n)
    z2 = _random_disk(rng, n)
    return max(check_semiconjugacy(k, z1, z2) for k in polynomial_fields())


@check("reduction.semiconjugacy", "reduction", 1e-8)
def chk_semiconjugacy(ctx: Ctx):
    return semiconjugacy_error(ctx.rng), {"points": 100, "fields": len(polynomial_fields())}


def sigma_exterior_derivative_error(rng: np.random.Generator, n: int = 50, h: float = 1e-5) -> float:
    err = 0.0
    for _ in range(n):
        z = complex(_random_disk(rng, 1, 0.9)[0])
        p = float(rng.choice([-1, 1]) * rng.uniform(0.1, 0.9))
        _, sy_p = sigma_value(z + h, p)
        _, sy_m = sigma_value(z - h, p)
        sx_p, _ = sigma_value(z + 1j * h, p)
        sx_m, _ = sigma_value(z - 1j * h, p)
        curl = (sy_p - sy_m) / (2 * h) - (sx_p - sx_m) / (2 * h)
        err = max(err, abs(curl - omega_p_density(z, p)))
    return err


@check("reduction.sigma_primitive", "reduction", 1e-6)
def chk_sigma(ctx: Ctx):
    return sigma_exterior_derivative_error(ctx.rng), {"points": 50, "h": 1e-5}


def random_r_p(rng: np.random.Generator, n: int) -> list[tuple[float, float]]:
    """Pairs (r, p) whose circle fiber is interior to P1 (needs r < sqrt(1 - |p|))."""
    out = []
    for _ in range(n):
        p = float(rng.uniform(-0.9, 0.9))
        r = float(rng.uniform(0.01, 0.99) * math.sqrt(1 - abs(p)))
        out.append((r, p))
    return out


def circle_moduli_error(pairs) -> float:
    err = 0.0
    for r, p in pairs:
        r1, r2 = circle_moduli(fiber_of_circle(r, p))
        err = max(err, abs(r1 * r2 - r), abs(r1 * r1 - r2 * r2 + p))
    return err


@check("circle.moduli", "reduction", 1e-12)
def chk_circle_moduli(ctx: Ctx):
    return circle_moduli_error(random_r_p(ctx.rng, 100)), {"pairs": 100}


def circle_inclusion_error(pairs, rng: np.random.Generator, m: int = 16) -> float:
    """Two-way sampled inclusion between ``F^-1(S^1(r)) & H^-1(-p)`` and the fiber preimage."""
    err = 0.0
    for r, p in pairs:
        fl = fiber_of_circle(r, p)
        th1, th2 = rng.uniform(0, 2 * np.pi, (2, m))
        # fiber -> level set
        pt = product_torus_point(fl, th1, th2)
        z1, z2 = psi_inv(pt.vv), psi_inv(pt.ww)
        err = max(err, np.max(np.abs(np.abs(z1 * z2) - r)), np.max(np.abs(h_level(z1, z2) + p)))
        # level set (moduli by root finding) -> fiber
        w1, w2 = circle_level_set_points(r, p, th1, th2)
        back = ProductPoint(psi_minus1(w1), psi_minus1(w2))
        mx, my = moment_map(back)
        err = max(err, np.max(np.abs(mx - fl.xi)), np.max(np.abs(my - fl.zeta)))
    return float(err)


@check("circle.inclusion", "reduction", 1e-10)
def chk_circle_inclusion(ctx: Ctx):
    return circle_inclusion_error(random_r_p(ctx.rng, 100), ctx.rng), {"pairs": 100, "samples": 16}


def radius_identity_error(m: int = 50) -> float:
    err = 0.0
    for pq in interior_grid(m):
        r = target_radius(pq)
        err = max(err, abs(math.sqrt(pq.p**2 + 4 * r * r) - (abs(pq.p) + 2 - 2 * pq.q)))
    return err


@check("radius.identity", "reduction", 1e-12)
def chk_radius(ctx: Ctx):
    return radius_identity_error(50), {"grid": "50x50"}


# -------------------------------------------------------------- appendix


def area_identity_error(points, n: int = 4096) -> float:
    return max(abs(enclosed_area_quadrature(gamma_sample(pq, n), pq.p) - 2 * math.pi * (pq.q - 1)) for pq in points)


@check("appendix.area", "appendix", 1e-8)
def chk_area(ctx: Ctx):
    pts = appendix_grid() + case1_grid(ctx.grid)
    return area_identity_error(pts), {"points": len(pts), "n": 4096}


def intermediate_integral_errors(points, n: int = 4096) -> tuple[float, float]:
    e_sqrt = e_abs = 0.0
    for pq in points:
        c = gamma_sample(pq, n)
        e_sqrt = max(e_sqrt, abs(integral_sqrt_term(c, pq.p) - (4 * math.pi * pq.q - 4 * math.pi)))
        e_abs = max(e_abs, abs(integral_abs_p_term(c, pq.p)))
    return e_sqrt, e_abs


@check("appendix.sqrt_integral", "appendix", 1e-7)
def chk_sqrt_integral(ctx: Ctx):
    pts = appendix_grid() + case1_grid(ctx.grid)
    return intermediate_integral_errors(pts)[0], {"points": len(pts), "n": 4096}


@check("appendix.abs_p_integral", "appendix", 1e-8)
def chk_abs_integral(ctx: Ctx):
    pts = appendix_grid() + case1_grid(ctx.grid)
    return intermediate_integral_errors(pts)[1], {"points": len(pts), "n": 4096}


def norm_formula_error(points, n: int = 256) -> float:
    theta = 2 * np.pi * np.arange(n) / n
    return float(max(np.max(np.abs(np.abs(gamma_reduced(theta, pq)) - norm_on_gamma(theta, pq))) for pq in points))


@check("appendix.norm_formula", "appendix", 1e-12)
def chk_norm(ctx: Ctx):
    return norm_formula_error(TEN_POINTS), {"points": 10, "samples": 256}


@check("appendix.doubling", "appendix", 1e-9)
def chk_doubling(ctx: Ctx):
    err = 0.0
    for pq in appendix_grid():
        a = enclosed_area_quadrature(gamma_sample(pq, 1024), pq.p)
        b = enclosed_area_quadrature(gamma_sample(pq, 2048), pq.p)
        err = max(err, abs(a - b))
    return err, {"n": "1024 vs 2048"}


@check("appendix.orientation", "appendix", 1e-8)
def chk_orientation(ctx: Ctx):
    err = 0.0
    for pq in appendix_grid():
        rev = enclosed_area_quadrature(gamma_sample(pq, reverse=True), pq.p)
        err = max(err, abs(rev - (2 * math.pi - 2 * math.pi * pq.q)))
    return err, {"points": len(appendix_grid())}


@check("appendix.circle_area", "appendix", 1e-10)
def chk_circle_area(ctx: Ctx):
    err = 0.0
    for pq in appendix_grid():
        r = target_radius(pq)
        c = circle_sample(r, 4096)
        err = max(err, abs(enclosed_area_quadrature(c, pq.p) - circle_area_clockwise(r, pq.p)))
        err = max(err, abs(circle_area_clockwise(r, pq.p) - 2 * math.pi * (pq.q - 1)))
    return err, {"points": len(appendix_grid())}


# -------------------------------------------------------------- classify


def path_independence_error(points, numeric: bool = False) -> float:
    err = 0.0
    for pq in points:
        direct = classify_pq(pq).fiber
        via = classify_via_reduction(pq, numeric=numeric)
        err = max(err, abs(via.xi - direct.xi), abs(via.zeta - direct.zeta))
    return err


@check("classify.path_independence", "classify", 1e-12)
def chk_path_independence(ctx: Ctx):
    return path_independence_error(interior_grid(50)), {"grid": "50x50"}


@check("classify.numeric_area_route", "classify", 1e-8)
def chk_numeric_route(ctx: Ctx):
    pts = [pq for pq in interior_grid(ctx.grid) if pq.q < 0.99]
    return path_independence_error(pts, numeric=True), {"points": len(pts), "n": 4096}


def xy_coherence_error(points) -> float:
    err = 0.0
    for pq in points:
        a, b = classify_pq(pq), classify_xy(pq_to_xy(pq))
        if a.kind is not b.kind or a.branch is not b.branch or a.reason is not b.reason:
            return math.inf
        if a.fiber is not None:
            err = max(err, abs(a.fiber.xi - b.fiber.xi), abs(a.fiber.zeta - b.fiber.zeta))
    return err


@check("classify.xy_coherence", "classify", 1e-12)
def chk_xy(ctx: Ctx):
    pts = interior_grid(50) + [PQCoord(0.0, (j + 0.5) / 20) for j in range(20)]
    return xy_coherence_error(pts), {"points": len(pts)}


def boundary_continuity_error(qs) -> float:
    """Case-1 area route and Case-2 probe route evaluated on ``p^2 = q^4``."""
    err = 0.0
    for q in qs:
        for p in (q * q, -q * q):
            pq = PQCoord(p, q)
            a = classify_case1_by_area(pq)
            b = case2_route(pq)
            c = classify_pq(pq).fiber
            err = max(err, abs(a.xi - b.xi), abs(a.zeta - b.zeta), abs(a.xi - c.xi), abs(a.zeta - c.zeta))
    return err


@check("classify.boundary_continuity", "classify", 1e-12)
def chk_boundary(ctx: Ctx):
    qs = [0.05 + 0.9 * (j + 0.5) / (4 * ctx.grid) for j in range(4 * ctx.grid)]
    return boundary_continuity_error(qs), {"q_samples": len(qs)}


@check("classify.energy_coherence", "classify", 1e-12)
def chk_energy_coherence(ctx: Ctx):
    err = 0.0
    count = 0
    for pq in interior_grid(50):
        p, q = pq
        if q > 0.5 and abs(p) <= 2 * q - 1:
            e = energy_fiber(classify_pq(pq).fiber)
            err = max(err, abs(e - (1 - q)))
            count += 1
    return err, {"points": count, "region": "q>1/2, |p|<=2q-1"}


@check("classify.diagonal_verdicts", "classify", 0.0)
def chk_diagonal(ctx: Ctx):
    ok = True
    for j in range(1, 20):
        q = j / 20
        out = classify_pq(PQCoord(0.0, q))
        want = "GermArgument" if q > 0.5 else "CitedFOOO"
        ok &= out.kind is Kind.NON_PRODUCT and out.reason.value == want
    return _bool(ok), {"q_samples": 19}


# ---------------------------------------------------------------- probes


def probe_a_values(n: int = 20) -> list[float]:
    return [-0.95 + 1.9 * k / (n - 1) for k in range(n)]


@check("probes.vertical_symmetric", "probes", 0.0)
def chk_vertical(ctx: Ctx):
    ok = True
    for a in probe_a_values(20):
        pr = p2_vertical_probe(a)
        ok &= pr.symmetric and pr.endpoint[1] == 1 and pr.endpoint[0] == pr.base[0]
    return _bool(ok), {"a_values": 20}


def probe_involution_error(rng: np.random.Generator, n: int = 200) -> tuple[bool, float]:
    exact = True
    err = 0.0
    for _ in range(n):
        a = Fraction(int(rng.integers(-999, 1000)), 1000) or Fraction(1, 1000)
        lo = abs(a)
        q = lo + (1 - lo) * Fraction(int(rng.integers(1, 1000)), 1000)
        exact &= probe_pair(a, probe_pair(a, q)) == q
        af, qf = float(a), float(q)
        err = max(err, abs(probe_pair(af, probe_pair(af, qf)) - qf))
    return exact, err


@check("probes.pair_involution", "probes", 1e-15)
def chk_involution(ctx: Ctx):
    exact, err = probe_involution_error(ctx.rng)
    return (err if exact else math.inf), {"samples": 200, "rational_exact": exact}


@check("probes.free_action", "probes", 0.0)
def chk_free(ctx: Ctx):
    ok = all(free_action_check(a, 1000, seed=int(ctx.rng.integers(2**31))) for a in (0.3, -0.3, 0.7, -0.7, 0.99, -0.99))
    return _bool(ok), {"a_values": 6, "samples": 1000}


def case2_points(m: int) -> list[PQCoord]:
    return [pq for pq in interior_grid(m) if case_region(pq) is Region.CASE2]


@check("probes.case1_reachability", "probes", 0.0)
def chk_reach(ctx: Ctx):
    pts = case2_points(max(ctx.grid, 20))
    failing = [pq for pq in pts if not pq.p**2 < probe_pair(pq.p, pq.q) ** 4]
    return float(len(failing)), {"case2_points": len(pts), "failing": len(failing)}


@check("probes.case2_consistency", "probes", 1e-12)
def chk_case2(ctx: Ctx):
    err = 0.0
    pts = case2_points(max(ctx.grid, 20))
    for pq in pts:
        here = classify_pq(pq).fiber
        there = classify_pq(PQCoord(pq.p, probe_pair(pq.p, pq.q))).fiber
        err = max(err, abs(energy_fiber(here) - energy_fiber(there)))
        moved = there
        for mv in (FiberMove.REFLECT_XI, FiberMove.REFLECT_ZETA, FiberMove.SWAP):
            moved = fiber_moves_p1(moved, mv)
        err = max(err, abs(moved.xi - here.xi), abs(moved.zeta - here.zeta))
    return err, {"case2_points": len(pts)}


@check("probes.p1_moves_symmetric", "probes", 0.0)
def chk_moves(ctx: Ctx):
    ok = True
    count = 0
    for _ in range(50):
        fl = FiberLabel(*np.round(ctx.rng.uniform(-0.45, 0.45, 2), 4))
        for mv in FiberMove:
            for pr in move_probes(fl, mv):
                ok &= pr.symmetric
                count += 1
    return _bool(ok), {"labels": 50, "probes": count}


# ----------------------------------------------------------------- germs


GERM_QS = [0.55 + 0.05 * k for k in range(9)]
GERM_D1 = (0.01, -0.01, 0.03, -0.03)
GERM_D2 = (0.01, -0.01, 0.02, -0.02)


@check("germs.consistency", "germs", 1e-12)
def chk_germ_consistency(ctx: Ctx):
    err = max(germ_consistency(q, d1, d2) for q in GERM_QS for d1 in GERM_D1 for d2 in GERM_D2)
    return err, {"q": len(GERM_QS), "d1": len(GERM_D1), "d2": len(GERM_D2)}


def germ_grid(n: int = 20) -> tuple[list[float], list[float]]:
    qs = [0.5 + 0.5 * (j + 0.5) / n for j in range(n)]
    half = n // 2
    pos = [0.5 * (k + 0.5) / half for k in range(half)]
    xis = [-x for x in reversed(pos)] + pos
    return qs, xis


@check("germs.inequivalence", "germs", 0.0)
def chk_inequivalence(ctx: Ctx):
    qs, xis = germ_grid(20)
    bad = sum(germs_linearly_equivalent(germ_L(q), germ_T_diag(x)) for q in qs for x in xis)
    return float(bad), {"pairs": len(qs) * len(xis)}


@check("germs.energy_move_invariance", "germs", 1e-15)
def chk_energy_moves(ctx: Ctx):
    err = 0.0
    for _ in range(100):
        fl = FiberLabel(*ctx.rng.uniform(-0.49, 0.49, 2))
        e = energy_fiber(fl)
        for mv in FiberMove:
            e2 = energy_fiber(fiber_moves_p1(fl, mv))
            if e is UNBOUNDED or e2 is UNBOUNDED:
                return math.inf, {}
            err = max(err, abs(e - e2))
    return err, {"labels": 100}


# ---------------------------------------------------------------- runner


def _rng_for(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_check(chk: Check, grid: int, seed: int, tol_overrides: dict | None = None, timing: bool = True) -> CheckResult:
    tol = (tol_overrides or {}).get(chk.name, chk.tolerance)
    start = time.perf_counter()
    err, params = chk.fn(Ctx(grid, _rng_for(seed, chk.name)))
    elapsed = (time.perf_counter() - start) * 1e3 if timing else 0.0
    err = float(err)
    return CheckResult(chk.name, params, err, float(tol), bool(err <= tol), round(elapsed, 3))


def run_suite(
    name: str = "all",
    grid_density: int = 8,
    tol_overrides: dict | None = None,
    seed: int = 0,
    timing: bool = True,
    jobs: int = 1,
) -> Report:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if grid_density < 4:
        raise UsageError("grid density must be at least 4")
    unknown = set(tol_overrides or {}) - {c.name for c in CHECKS}
    if unknown:
        raise UsageError(f"unknown check name(s) in tolerance overrides: {sorted(unknown)}")
    selected = [c for c in CHECKS if name == "all" or c.suite == name]
    start = time.perf_counter()
    run = lambda c: run_check(c, grid_density, seed, tol_overrides, timing)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, selected))
    else:
        results = [run(c) for c in selected]
    wall = round((time.perf_counter() - start) * 1e3, 3) if timing else 0.0
    return Report(name, __version__, seed, results, wall)
