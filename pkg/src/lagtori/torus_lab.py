"""Explicit FOOO tori ``L1(p, q)`` and standard product tori ``T(xi, zeta)``.

``L1(p, q) = {(v, w) : v1 + w1 = 2p, v . w = 2q^2 - 1}`` is swept out by the
curve ``gamma1`` (an integral curve of ``X_F2``) under the diagonal rotation
``(R_t, R_t)`` about e1.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import BoundaryError, DomainError
from .polytopes import FiberLabel, PQCoord, require_interior_p1, require_interior_p2
from .sphere_geom import ProductPoint, SpherePoint, TangentPair, project_tangent, rotate_e1

RADICAND_GUARD = 1e-14


class TorusParam(NamedTuple):
    theta: float
    t: float


class _Consts(NamedTuple):
    p: float
    q: float
    a: float  # sqrt(1 - q^2)
    b: float  # sqrt(q^2 - p^2)
    c: float  # a * b / q


def _consts(pq: PQCoord) -> _Consts:
    p, q = require_interior_p2(pq)
    if q * q - p * p < RADICAND_GUARD:
        raise BoundaryError(f"q^2 - p^2 = {q * q - p * p:.3e} too small; gamma1 degenerates")
    a = np.sqrt(1.0 - q * q)
    b = np.sqrt(q * q - p * p)
    return _Consts(p, q, a, b, a * b / q)


def base_point(pq: PQCoord) -> ProductPoint:
    k = _consts(pq)
    v0 = np.array([k.p, k.a, k.b])
    w0 = np.array([k.p, -k.a, k.b])
    return ProductPoint(SpherePoint(v0), SpherePoint(w0))


def _gamma1_arrays(theta, k: _Consts) -> tuple[np.ndarray, np.ndarray]:
    theta = np.asarray(theta, dtype=float)
    s, co = np.sin(theta), np.cos(theta)
    v = np.stack([k.p + k.c * s, k.a * co, k.b - (k.p * k.a / k.q) * s], axis=-1)
    w = np.stack([k.p - k.c * s, -k.a * co, k.b + (k.p * k.a / k.q) * s], axis=-1)
    return v, w


def gamma1(theta, pq: PQCoord) -> ProductPoint:
    """The curve obtained by rotating ``base_point`` about ``v0 + w0`` by ``theta``."""
    v, w = _gamma1_arrays(theta, _consts(pq))
    return ProductPoint(SpherePoint(v), SpherePoint(w))


def gamma1_derivative(theta, pq: PQCoord) -> TangentPair:
    """Analytic ``d gamma1 / d theta``."""
    k = _consts(pq)
    theta = np.asarray(theta, dtype=float)
    s, co = np.sin(theta), np.cos(theta)
    dv = np.stack([k.c * co, -k.a * s, -(k.p * k.a / k.q) * co], axis=-1)
    return TangentPair(dv, -dv)


def torus_point(tp: TorusParam, pq: PQCoord) -> ProductPoint:
    """Parametrization ``(theta, t) -> (R_t v, R_t w)`` of ``L1(p, q)``; broadcasts."""
    theta, t = np.broadcast_arrays(np.asarray(tp[0], float), np.asarray(tp[1], float))
    v, w = _gamma1_arrays(theta, _consts(pq))
    return ProductPoint(SpherePoint(rotate_e1(v, t)), SpherePoint(rotate_e1(w, t)))


def torus_tangents(tp: TorusParam, pq: PQCoord, h: float = 1e-3) -> tuple[TangentPair, TangentPair]:
    """Coordinate tangents ``(d/dtheta, d/dt)`` by fourth-order central differences.

    Results are projected to the tangent spaces at the base point.
    """
    theta, t = np.broadcast_arrays(np.asarray(tp[0], float), np.asarray(tp[1], float))
    base = torus_point((theta, t), pq)

    def stencil(shift_theta, shift_t):
        acc_v = np.zeros(base.vv.shape)
        acc_w = np.zeros(base.ww.shape)
        for coef, m in ((1.0, -2), (-8.0, -1), (8.0, 1), (-1.0, 2)):
            pt = torus_point((theta + m * shift_theta, t + m * shift_t), pq)
            acc_v += coef * pt.vv
            acc_w += coef * pt.ww
        acc_v /= 12.0 * h
        acc_w /= 12.0 * h
        return TangentPair(project_tangent(base.vv, acc_v), project_tangent(base.ww, acc_w))

    return stencil(h, 0.0), stencil(0.0, h)


def _check_q(q: float) -> None:
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")


def f1(pt: ProductPoint):
    """``F1(v, w) = -(v + w) . e1``, generator of the diagonal rotation."""
    return -(pt.vv[..., 0] + pt.ww[..., 0])


def f2(pt: ProductPoint, q: float):
    """``F2(v, w) = v . w / (4q)``."""
    _check_q(q)
    return np.sum(pt.vv * pt.ww, axis=-1) / (4.0 * q)


def x_f2(pt: ProductPoint, q: float) -> TangentPair:
    """Hamiltonian vector field of ``F2`` for the product of half-area forms."""
    _check_q(q)
    cross = np.cross(pt.vv, pt.ww) / (2.0 * q)
    return TangentPair(cross, -cross)


def product_torus_point(fl: FiberLabel, theta1, theta2) -> ProductPoint:
    xi, zeta = require_interior_p1(fl)
    theta1, theta2 = np.broadcast_arrays(np.asarray(theta1, float), np.asarray(theta2, float))
    r1 = np.sqrt(1.0 - 4.0 * xi * xi)
    r2 = np.sqrt(1.0 - 4.0 * zeta * zeta)
    v = np.stack([np.full(theta1.shape, 2.0 * xi), r1 * np.cos(theta1), r1 * np.sin(theta1)], axis=-1)
    w = np.stack([np.full(theta2.shape, 2.0 * zeta), r2 * np.cos(theta2), r2 * np.sin(theta2)], axis=-1)
    return ProductPoint(SpherePoint(v), SpherePoint(w))


def moment_map(pt: ProductPoint) -> tuple[np.ndarray, np.ndarray]:
    """Standard moment map ``(v, w) -> (v1 / 2, w1 / 2)`` onto P1."""
    return 0.5 * pt.vv[..., 0], 0.5 * pt.ww[..., 0]


def l1_residuals(pt: ProductPoint, pq: PQCoord) -> tuple[np.ndarray, np.ndarray]:
    p, q = pq
    r_sum = np.abs(pt.vv[..., 0] + pt.ww[..., 0] - 2.0 * p)
    r_dot = np.abs(np.sum(pt.vv * pt.ww, axis=-1) - (2.0 * q * q - 1.0))
    return r_sum, r_dot


def membership_L1(pt: ProductPoint, pq: PQCoord, tol: float = 1e-10) -> bool:
    """True iff every sampled point satisfies both defining equations of ``L1(p, q)``."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    r_sum, r_dot = l1_residuals(pt, pq)
    return bool(np.all(r_sum <= tol) and np.all(r_dot <= tol))
