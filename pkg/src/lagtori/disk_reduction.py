"""Reduction of ``L1(p, q)`` to a closed curve in the unit disk.

Pipeline: ``gamma1`` -> conjugate by ``(D1, D2)`` -> pull back to the bidisk by
``psi_minus1 x psi_minus1`` -> push forward by ``F(z1, z2) = z1 z2``.  The
resulting curve ``Gamma`` lives in ``(B^2(1), omega^p)`` with
``omega^p = 2 / sqrt(p^2 + 4|z|^2) dx ^ dy``.

Disk points are plain Python/numpy complex numbers.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, HypothesisError, SingularityError
from .polytopes import FiberLabel, PQCoord, require_interior_p1, require_interior_p2
from .sphere_geom import SpherePoint, d1_d2
from .torus_lab import _consts, _gamma1_arrays

POLE_TOL = 1e-12
DENOM_TOL = 1e-12
DEFAULT_N = 4096


def as_disk(z) -> np.ndarray | complex:
    """Validate that ``z`` lies in the open unit disk."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("disk point is not finite")
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError("point outside the open unit disk")
    return complex(arr) if arr.ndim == 0 else arr


def psi_minus1(z) -> SpherePoint:
    """Symplectomorphism ``(B^2(1), 2 dx^dy) -> (S^2 - {-e1}, omega_std / 2)``."""
    z = np.asarray(as_disk(z))
    r2 = np.abs(z) ** 2
    k = 2.0 * np.sqrt(1.0 - r2)
    return SpherePoint(np.stack([1.0 - 2.0 * r2, k * z.real, k * z.imag], axis=-1))


def psi_inv(v) -> np.ndarray | complex:
    """Inverse of :func:`psi_minus1`, ``v -> (v2 + i v3) / sqrt(2 (1 + v1))``."""
    v = np.asarray(v.v if isinstance(v, SpherePoint) else v, dtype=float)
    if np.any(v[..., 0] <= -1.0 + POLE_TOL):
        raise SingularityError("psi_inv is singular at -e1")
    # on the unit sphere v2^2 + v3^2 = (1 - v1)(1 + v1), so |z|^2 = (1 - v1) / 2;
    # taking the modulus that way avoids cancellation near the pole
    w = v[..., 1] + 1j * v[..., 2]
    rho = np.abs(w)
    modulus = np.sqrt(np.clip(0.5 * (1.0 - v[..., 0]), 0.0, None))
    z = np.where(rho > 0, w * modulus / np.where(rho > 0, rho, 1.0), 0.0)
    return complex(z) if z.ndim == 0 else z


def h_level(z1, z2):
    """Moment map ``|z1|^2 - |z2|^2`` of the anti-diagonal circle action."""
    return np.abs(z1) ** 2 - np.abs(z2) ** 2


def f_mul(z1, z2):
    w = np.asarray(z1, dtype=complex) * np.asarray(z2, dtype=complex)
    return complex(w) if w.ndim == 0 else w


def lifted_curve(theta, pq: PQCoord) -> tuple[np.ndarray, np.ndarray]:
    """The curve ``(psi x psi)^-1 (D1, D2) gamma1(theta)`` in the bidisk."""
    k = _consts(pq)
    v, w = _gamma1_arrays(theta, k)
    d1, d2 = d1_d2()
    return psi_inv(v @ d1.T), psi_inv(w @ d2.T)


def reduced_via_composition(theta, pq: PQCoord):
    """``Gamma`` computed through the full chain of maps (independent of the closed form)."""
    z1, z2 = lifted_curve(theta, pq)
    return z1 * z2


def gamma_reduced(theta, pq: PQCoord):
    """Closed-form parametrization of the reduced curve ``Gamma``."""
    k = _consts(pq)
    theta = np.asarray(theta, dtype=float)
    s = k.c * np.sin(theta)
    denom_sq = (1.0 + s) ** 2 - k.p**2
    if np.any(denom_sq < DENOM_TOL):
        raise SingularityError("Gamma denominator vanishes")
    num = (
        1.0
        - 2.0 * k.q**2
        + k.p**2
        - (k.q**2 - k.p**2) * (1.0 - k.q**2) / k.q**2 * np.sin(theta) ** 2
        + 2j * k.b * k.a * np.cos(theta)
    )
    z = num / (2.0 * np.sqrt(denom_sq))
    return complex(z) if z.ndim == 0 else z


def norm_on_gamma(theta, pq: PQCoord):
    """Closed form for ``|Gamma(theta)|``."""
    k = _consts(pq)
    s = k.c * np.sin(np.asarray(theta, dtype=float))
    rad = 0.25 * (1.0 - s) ** 2 - 0.25 * k.p**2
    if np.any(rad < -1e-14):
        raise DomainError("negative radicand in the norm formula")
    out = np.sqrt(np.maximum(rad, 0.0))
    return float(out) if out.ndim == 0 else out


def omega_p_density(z, p: float):
    """Density of ``omega^p`` with respect to ``dx ^ dy``."""
    r2 = np.abs(np.asarray(z)) ** 2
    if p == 0 and np.any(r2 == 0):
        raise SingularityError("omega^0 is singular at the origin")
    out = 2.0 / np.sqrt(p * p + 4.0 * r2)
    return float(out) if out.ndim == 0 else out


def sigma_value(z, p: float) -> tuple:
    """Cartesian coefficients ``(sigma_x, sigma_y)`` of the primitive ``sigma`` of ``omega^p``.

    ``sigma = (sqrt(p^2 + 4r^2)/2 - |p|/2) dphi``, written so that it is
    smooth through the origin.
    """
    z = np.asarray(z, dtype=complex)
    r2 = np.abs(z) ** 2
    denom = np.sqrt(p * p + 4.0 * r2) + abs(p)
    if np.any(denom == 0):
        raise SingularityError("sigma is undefined at the origin when p = 0")
    sx, sy = -2.0 * z.imag / denom, 2.0 * z.real / denom
    if sx.ndim == 0:
        return float(sx), float(sy)
    return sx, sy


class Orientation(str, enum.Enum):
    THETA_INCREASING = "theta-increasing"
    REVERSED = "reversed"


@dataclass(frozen=True, eq=False)
class CurveSample:
    """A closed curve sampled at ``theta_k = 2 pi k / n`` in traversal order.

    ``orientation`` records how traversal relates to the source
    parametrization: reversed samples hold ``z(2 pi - theta_k)``.
    """

    points: np.ndarray
    orientation: Orientation = Orientation.THETA_INCREASING
    derivative_hint: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size < 16:
            raise DomainError("a curve sample needs at least 16 points")
        if not np.all(np.isfinite(pts)):
            raise DomainError("curve sample has non-finite points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @property
    def n(self) -> int:
        return self.points.size

    @property
    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n) / self.n

    @classmethod
    def from_function(cls, fn: Callable, n: int = DEFAULT_N, reverse: bool = False) -> "CurveSample":
        theta = 2.0 * np.pi * np.arange(n) / n
        if reverse:
            return cls(fn(2.0 * np.pi - theta), Orientation.REVERSED)
        return cls(fn(theta), Orientation.THETA_INCREASING)

    def reversed(self) -> "CurveSample":
        pts = np.roll(self.points[::-1], 1)
        flip = Orientation.REVERSED if self.orientation is Orientation.THETA_INCREASING else Orientation.THETA_INCREASING
        return CurveSample(pts, flip)

    def derivative(self) -> np.ndarray:
        """``dz/dtheta`` by spectral differentiation of the periodic samples."""
        if self.derivative_hint is not None:
            return np.asarray(self.derivative_hint, dtype=complex)
        n = self.n
        k = np.fft.fftfreq(n, d=1.0 / n)
        if n % 2 == 0:
            k[n // 2] = 0.0
        return np.fft.ifft(1j * k * np.fft.fft(self.points))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theta", "re", "im"])
        for th, z in zip(self.thetas, self.points):
            writer.writerow([repr(float(th)), repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, orientation: Orientation = Orientation.THETA_INCREASING) -> "CurveSample":
        rows = list(csv.DictReader(io.StringIO(text)))
        pts = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
        return cls(pts, orientation)


def periodic_trapezoid(values: np.ndarray) -> float:
    """Composite trapezoid rule over one period sampled at ``n`` equispaced nodes."""
    values = np.asarray(values)
    return float(np.real(np.sum(values)) * 2.0 * np.pi / values.size)


def enclosed_area_quadrature(curve: CurveSample, p: float) -> float:
    """Signed ``omega^p``-area enclosed by ``curve``, i.e. the line integral of ``sigma``."""
    dz = curve.derivative()
    sx, sy = sigma_value(curve.points, p)
    return periodic_trapezoid(sx * dz.real + sy * dz.imag)


def _dphi(curve: CurveSample, min_radius: float = 1e-12) -> np.ndarray:
    z = curve.points
    r2 = np.abs(z) ** 2
    if np.any(r2 < min_radius**2):
        raise SingularityError("curve passes through the origin; dphi undefined")
    dz = curve.derivative()
    return (z.real * dz.imag - z.imag * dz.real) / r2


def integral_sqrt_term(curve: CurveSample, p: float) -> float:
    """Line integral of ``sqrt(p^2 + 4 r^2) dphi`` along the curve."""
    return periodic_trapezoid(np.sqrt(p * p + 4.0 * np.abs(curve.points) ** 2) * _dphi(curve))


def integral_abs_p_term(curve: CurveSample, p: float) -> float:
    """Line integral of ``(|p| / 2) dphi`` along the curve."""
    return periodic_trapezoid(0.5 * abs(p) * _dphi(curve))


def gamma_sample(pq: PQCoord, n: int = DEFAULT_N, reverse: bool = False) -> CurveSample:
    return CurveSample.from_function(lambda th: gamma_reduced(th, pq), n=n, reverse=reverse)


def circle_sample(r: float, n: int = DEFAULT_N, clockwise: bool = True) -> CurveSample:
    """``S^1(r)`` with its exact tangent; clockwise by default."""
    theta = 2.0 * np.pi * np.arange(n) / n
    sign = -1.0 if clockwise else 1.0
    pts = r * np.exp(1j * sign * theta)
    orient = Orientation.REVERSED if clockwise else Orientation.THETA_INCREASING
    return CurveSample(pts, orient, derivative_hint=1j * sign * pts)


def enclosed_area_closed(pq: PQCoord, orientation: Orientation | str = Orientation.THETA_INCREASING) -> float:
    """Closed-form ``omega^p``-area of ``Gamma``: ``2 pi (q - 1)`` for theta-increasing traversal."""
    p, q = pq
    if not (0.0 < p * p < q**4):
        raise HypothesisError(f"area formula needs 0 < p^2 < q^4, got p={p}, q={q}")
    require_interior_p2(pq)
    val = 2.0 * math.pi * (q - 1.0)
    return -val if Orientation(orientation) is Orientation.REVERSED else val


def circle_area_clockwise(r: float, p: float) -> float:
    """``omega^p``-area of the clockwise circle of radius ``r``."""
    return math.pi * abs(p) - math.pi * math.sqrt(p * p + 4.0 * r * r)


def target_radius(pq: PQCoord) -> float:
    """Radius of the clockwise circle with the same ``omega^p``-area as ``Gamma``."""
    p, q = require_interior_p2(pq)
    if p == 0:
        raise DomainError("target radius needs p != 0")
    return math.sqrt((1.0 - q) * (1.0 - q + abs(p)))


def fiber_of_circle(r: float, p: float) -> FiberLabel:
    """Standard fiber whose bidisk preimage is ``F^-1(S^1(r)) & H^-1(-p)``."""
    if not r > 0:
        raise DomainError("radius must be positive")
    root = math.sqrt(p * p + 4.0 * r * r)
    return require_interior_p1(FiberLabel((1.0 + p - root) / 2.0, (1.0 - p - root) / 2.0))


def circle_moduli(fl: FiberLabel) -> tuple[float, float]:
    """Moduli ``(|z1|, |z2|)`` of the bidisk preimage of ``T(xi, zeta)``."""
    xi, zeta = fl
    return math.sqrt((1.0 - 2.0 * xi) / 2.0), math.sqrt((1.0 - 2.0 * zeta) / 2.0)


def circle_level_set_points(r: float, p: float, angles1: Sequence[float], angles2: Sequence[float]):
    """Points of ``F^-1(S^1(r)) & H^-1(-p)`` found by root-finding on the moduli.

    Solves ``rho^2 - (r / rho)^2 = -p`` for ``rho = |z1|`` with a bracketing
    method, so it does not reuse the closed-form moduli.
    """
    g = lambda rho: rho * rho - (r / rho) ** 2 + p
    rho1 = brentq(g, r * 1e-6 + 1e-300, 1.0 + abs(p) + r, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    rho2 = r / rho1
    a1 = np.asarray(angles1, dtype=float)
    a2 = np.asarray(angles2, dtype=float)
    return rho1 * np.exp(1j * a1), rho2 * np.exp(1j * a2)


@dataclass(frozen=True, eq=False)
class ScalarField2:
    """A function ``K(x, y)`` on the disk together with its gradient.

    The gradient is checked against central differences at construction.
    """

    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    grad: Callable[[np.ndarray, np.ndarray], tuple]
    name: str = "K"
    fd_tol: float = 1e-6

    def __post_init__(self):
        probes = np.array([[0.0, 0.0], [0.3, -0.2], [-0.5, 0.4], [0.1, 0.7], [-0.6, -0.6]])
        h = 1e-5
        for x, y in probes:
            gx, gy = self.grad(np.float64(x), np.float64(y))
            fx = (self.func(x + h, y) - self.func(x - h, y)) / (2 * h)
            fy = (self.func(x, y + h) - self.func(x, y - h)) / (2 * h)
            err = max(abs(fx - gx), abs(fy - gy))
            if not err <= self.fd_tol:
                raise DomainError(f"gradient of {self.name} disagrees with finite differences ({err:.3e})")


def semiconjugacy_sides(K: ScalarField2, z1, z2) -> tuple:
    """Both sides of ``dF(X_{K o F}) = V^{p,K}(F)`` as complex vectors.

    Left: push forward of the Hamiltonian field of ``K o F`` on
    ``(B^2, 2 dx^dy)^2``, computed from the chain rule.  Right: the reduced
    field ``V^{p,K}`` at ``F(z1, z2)`` with ``p`` the level of ``H``.
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    w = z1 * z2
    kx, ky = K.grad(w.real, w.imag)
    kx = np.asarray(kx, dtype=float) + np.zeros(w.shape)
    ky = np.asarray(ky, dtype=float) + np.zeros(w.shape)

    left = np.zeros(w.shape, dtype=complex)
    for other in (z2, z1):
        # d(z1 z2)/dx_j = other, d(z1 z2)/dy_j = i * other
        dfx, dfy = other, 1j * other
        gx = kx * dfx.real + ky * dfx.imag
        gy = kx * dfy.real + ky * dfy.imag
        # Hamiltonian field for 2 dx^dy with omega(X, .) = -dG
        xx, xy = -0.5 * gy, 0.5 * gx
        left = left + dfx * xx + dfy * xy

    p = h_level(z1, z2)
    right = 0.5 * np.sqrt(p * p + 4.0 * np.abs(w) ** 2) * (-ky + 1j * kx)
    return left, right


def check_semiconjugacy(K: ScalarField2, z1, z2) -> float:
    """Largest modulus of the difference between the two sides over the inputs."""
    as_disk(z1)
    as_disk(z2)
    left, right = semiconjugacy_sides(K, z1, z2)
    return float(np.max(np.abs(left - right)))


def polynomial_fields() -> list[ScalarField2]:
    """``x^2 - y`` plus the monomial basis of degree <= 2."""
    return [
        ScalarField2(lambda x, y: x * x - y, lambda x, y: (2 * x, -1.0 + 0 * y), "x^2-y"),
        ScalarField2(lambda x, y: 1.0 + 0 * x, lambda x, y: (0 * x, 0 * y), "1"),
        ScalarField2(lambda x, y: x, lambda x, y: (1.0 + 0 * x, 0 * y), "x"),
        ScalarField2(lambda x, y: y, lambda x, y: (0 * x, 1.0 + 0 * y), "y"),
        ScalarField2(lambda x, y: x * x, lambda x, y: (2 * x, 0 * y), "x^2"),
        ScalarField2(lambda x, y: x * y, lambda x, y: (y, x), "xy"),
        ScalarField2(lambda x, y: y * y, lambda x, y: (0 * x, 2 * y), "y^2"),
    ]
