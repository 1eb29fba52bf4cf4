"""Vector algebra on R^3 and the product symplectic structure of S^2 x S^2.

The unit sphere carries the area form ``omega_std`` of total area 4*pi.  Every
formula downstream uses half of it, so :func:`area_form_half` stores the scaled
form directly.  Arrays follow numpy conventions: a point or vector has shape
``(..., 3)`` and operations broadcast over the leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

UNIT_TOL = 1e-12
RENORM_TOL = 1e-9
TANGENT_TOL = 1e-10

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def _as_vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape[-1:] != (3,):
        raise DomainError(f"expected trailing axis of length 3, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector has non-finite components")
    return arr


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """Point (or batch of points) of the unit sphere.

    Inputs within ``RENORM_TOL`` of unit norm are re-normalized; anything
    further away is rejected.
    """

    v: np.ndarray

    def __post_init__(self):
        arr = _as_vec3(self.v)
        norms = np.linalg.norm(arr, axis=-1)
        dev = np.max(np.abs(norms - 1.0)) if arr.size else 0.0
        if dev > RENORM_TOL:
            raise DomainError(f"not on the unit sphere (norm deviation {dev:.3e})")
        if dev > UNIT_TOL:
            arr = arr / norms[..., None]
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "v", arr)

    def __iter__(self):
        return iter(self.v)


@dataclass(frozen=True, eq=False)
class ProductPoint:
    """Point of S^2 x S^2, stored as two (batched) sphere points."""

    v: SpherePoint
    w: SpherePoint

    def __post_init__(self):
        if not isinstance(self.v, SpherePoint):
            object.__setattr__(self, "v", SpherePoint(self.v))
        if not isinstance(self.w, SpherePoint):
            object.__setattr__(self, "w", SpherePoint(self.w))
        if self.v.v.shape != self.w.v.shape:
            raise DomainError("factor shapes differ")

    @property
    def vv(self) -> np.ndarray:
        return self.v.v

    @property
    def ww(self) -> np.ndarray:
        return self.w.v

    def stacked(self) -> np.ndarray:
        """Return the point as an array of shape ``(..., 6)``."""
        return np.concatenate([self.vv, self.ww], axis=-1)


@dataclass(frozen=True, eq=False)
class TangentPair:
    """Tangent vector to S^2 x S^2: ``a`` at the first factor, ``b`` at the second."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _as_vec3(self.a))
        object.__setattr__(self, "b", _as_vec3(self.b))

    def check_tangent(self, pt: ProductPoint, tol: float = TANGENT_TOL) -> None:
        for vec, base, name in ((self.a, pt.vv, "a"), (self.b, pt.ww, "b")):
            scale = np.maximum(1.0, np.linalg.norm(vec, axis=-1))
            resid = np.abs(np.sum(vec * base, axis=-1)) / scale
            if np.any(resid > tol):
                raise DomainError(f"component {name} is not tangent (residual {np.max(resid):.3e})")


def project_tangent(base: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Orthogonal projection of ``vec`` onto the tangent plane at ``base``."""
    return vec - np.sum(vec * base, axis=-1, keepdims=True) * base


def area_form_half(v, a, b) -> np.ndarray | float:
    """Evaluate ``(1/2) omega_std`` at ``v`` on the tangent vectors ``a``, ``b``.

    On the unit sphere ``omega_std(a, b) = v . (a x b)``.
    """
    v = np.asarray(v.v if isinstance(v, SpherePoint) else v, dtype=float)
    val = 0.5 * np.sum(v * np.cross(a, b), axis=-1)
    return float(val) if np.ndim(val) == 0 else val


def omega_product(pt: ProductPoint, u1: TangentPair, u2: TangentPair):
    """Product form ``(1/2) omega_std + (1/2) omega_std`` on S^2 x S^2."""
    return area_form_half(pt.vv, u1.a, u2.a) + area_form_half(pt.ww, u1.b, u2.b)


def rotation_Rt(t: float) -> np.ndarray:
    """Rotation about the e1 axis by angle ``t``."""
    c, s = np.cos(t), np.sin(t)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotate_e1(vecs: np.ndarray, t) -> np.ndarray:
    """Apply ``R_t`` to a batch of vectors; ``t`` broadcasts against the batch."""
    vecs = np.asarray(vecs, dtype=float)
    c, s = np.cos(t), np.sin(t)
    out = np.empty(np.broadcast_shapes(vecs.shape, np.shape(t) + (3,)))
    out[..., 0] = vecs[..., 0]
    out[..., 1] = c * vecs[..., 1] - s * vecs[..., 2]
    out[..., 2] = s * vecs[..., 1] + c * vecs[..., 2]
    return out


def d1_d2() -> tuple[np.ndarray, np.ndarray]:
    """The pair conjugating the diagonal action ``(R_t, R_t)`` to ``(R_t, R_-t)``."""
    return np.eye(3), np.diag([-1.0, -1.0, 1.0])
