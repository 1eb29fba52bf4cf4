"""Symmetric probes in rational polygons and the fiber moves they induce.

Probe geometry runs in exact rational arithmetic.  Float inputs are snapped to
fractions with denominator at most ``10**6`` and the snap distance is kept on
the result.

The isotopy statement for equidistant points of a symmetric probe is taken as
given; this module only checks that each probe used is valid and symmetric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    DomainError,
    NonPrimitiveDirectionError,
    NotOnBoundaryError,
    TransversalityError,
    VertexBaseError,
)
from .polytopes import FiberLabel, RationalPolytope, p1_square, p2_polytope, require_interior_p1

MAX_DENOMINATOR = 10**6


def snap(value: float | Fraction) -> tuple[Fraction, float]:
    """Nearest fraction with bounded denominator and the distance moved."""
    if isinstance(value, Fraction):
        return value, 0.0
    frac = Fraction(value).limit_denominator(MAX_DENOMINATOR)
    return frac, abs(float(frac) - float(value))


@dataclass(frozen=True)
class Probe:
    polytope: RationalPolytope
    base: tuple[Fraction, Fraction]
    direction: tuple[int, int]
    endpoint: tuple[Fraction, Fraction]
    entry_facet: int
    exit_facet: int | None
    symmetric: bool
    snap_distance: float = 0.0

    @property
    def length(self) -> Fraction:
        """Lattice length (number of direction steps from base to endpoint)."""
        d = self.direction
        i = 0 if d[0] != 0 else 1
        return (self.endpoint[i] - self.base[i]) / d[i]

    def point_at(self, s: Fraction | float) -> tuple[float, float]:
        return (
            float(self.base[0]) + float(s) * self.direction[0],
            float(self.base[1]) + float(s) * self.direction[1],
        )

    def to_json(self) -> dict:
        return {
            "polytope": self.polytope.name,
            "base": [float(c) for c in self.base],
            "base_exact": [str(c) for c in self.base],
            "direction": list(self.direction),
            "endpoint": [float(c) for c in self.endpoint],
            "endpoint_exact": [str(c) for c in self.endpoint],
            "entry_facet": self.entry_facet,
            "exit_facet": self.exit_facet,
            "symmetric": self.symmetric,
            "length": float(self.length),
            "snap_distance": self.snap_distance,
        }


def _tight(polytope: RationalPolytope, point) -> list[int]:
    return [i for i, h in enumerate(polytope.halfspaces) if h.slack_exact(point) == 0]


def validate_probe(polytope: RationalPolytope, base: Sequence[float], direction: Sequence[int]) -> Probe:
    """Check the probe conditions and compute the exit point.

    Raises a distinct error for a non-primitive direction, a base not on the
    boundary, a base on a vertex, and a direction not integrally transverse
    (pairing +1 with the inward primitive normal) to the entry facet.
    """
    d = tuple(int(c) for c in direction)
    if tuple(direction) != d:
        raise NonPrimitiveDirectionError(f"direction {direction} is not integral")
    if d == (0, 0) or math.gcd(*d) != 1:
        raise NonPrimitiveDirectionError(f"direction {d} is not primitive")

    bx, ex = snap(base[0])
    by, ey = snap(base[1])
    b = (bx, by)
    snap_distance = math.hypot(ex, ey)
    hs = polytope.halfspaces
    if any(h.slack_exact(b) < 0 for h in hs):
        raise NotOnBoundaryError(f"base {tuple(map(float, b))} lies outside {polytope.name}")
    tight = _tight(polytope, b)
    if not tight:
        raise NotOnBoundaryError(f"base {tuple(map(float, b))} is not on the boundary of {polytope.name}")
    if len(tight) > 1:
        raise VertexBaseError(f"base {tuple(map(float, b))} is a vertex of {polytope.name}")
    entry = tight[0]
    pairing = hs[entry].normal[0] * d[0] + hs[entry].normal[1] * d[1]
    if abs(pairing) != 1:
        raise TransversalityError(f"direction {d} pairs {pairing} with the facet normal {hs[entry].normal}")
    if pairing < 0:
        raise TransversalityError(f"direction {d} points out of {polytope.name}")

    # walk until the first facet whose slack decreases to zero
    t_exit = None
    for h in hs:
        rate = h.normal[0] * d[0] + h.normal[1] * d[1]
        if rate < 0:
            t = h.slack_exact(b) / -rate
            if t > 0 and (t_exit is None or t < t_exit):
                t_exit = t
    if t_exit is None:
        raise DomainError("probe does not exit the polytope (unbounded direction)")
    end = (bx + t_exit * d[0], by + t_exit * d[1])
    exits = _tight(polytope, end)
    exit_facet = exits[0] if len(exits) == 1 else None
    symmetric = False
    if exit_facet is not None:
        n = hs[exit_facet].normal
        symmetric = abs(n[0] * d[0] + n[1] * d[1]) == 1
    return Probe(polytope, b, d, end, entry, exit_facet, symmetric, snap_distance)


def p2_vertical_probe(a: float) -> Probe:
    """The probe ``{p = a}`` in P2 from the facet ``q = |a|`` up to ``q = 1``."""
    return validate_probe(p2_polytope(), (a, abs(a)), (0, 1))


def probe_pair(a, q):
    """Partner of ``(a, q)`` on the probe ``{p = a}``: same distance to the other end.

    Fraction inputs give an exact Fraction result.
    """
    if a == 0 or not (abs(a) < q < 1):
        raise DomainError(f"probe pairing needs a != 0 and |a| < q < 1, got a={a}, q={q}")
    return 1 - q + abs(a)


class FiberMove(str, enum.Enum):
    REFLECT_XI = "ReflectXi"
    REFLECT_ZETA = "ReflectZeta"
    SWAP = "Swap"


def move_probes(fl: FiberLabel, move: FiberMove | str) -> list[Probe]:
    """Symmetric probes in P1 realizing ``move`` at ``fl``.

    Returns an empty list when the move fixes ``fl``.  A swap on the
    anti-diagonal ``xi + zeta = 0`` would need a corner-to-corner probe, so it
    is realized by the two reflections instead.
    """
    xi, zeta = require_interior_p1(fl)
    move = FiberMove(move)
    square = p1_square()
    if move is FiberMove.REFLECT_XI:
        return [] if xi == 0 else [validate_probe(square, (-0.5, zeta), (1, 0))]
    if move is FiberMove.REFLECT_ZETA:
        return [] if zeta == 0 else [validate_probe(square, (xi, -0.5), (0, 1))]
    if xi == zeta:
        return []
    s = xi + zeta
    if s == 0:
        return move_probes(fl, FiberMove.REFLECT_XI) + move_probes(FiberLabel(-xi, zeta), FiberMove.REFLECT_ZETA)
    # the line x + y = s, entered on the left (s < 0) or top (s > 0) edge
    base = (s - 0.5, 0.5) if s > 0 else (-0.5, s + 0.5)
    return [validate_probe(square, base, (1, -1))]


def fiber_moves_p1(fl: FiberLabel, move: FiberMove | str) -> FiberLabel:
    """Apply a reflection or the swap to a P1 label after validating its probe(s)."""
    probes = move_probes(fl, move)
    for pr in probes:
        if not pr.symmetric:
            raise TransversalityError(f"probe for {move} at {tuple(fl)} is not symmetric")
    xi, zeta = fl
    move = FiberMove(move)
    if move is FiberMove.REFLECT_XI:
        return FiberLabel(-xi, zeta)
    if move is FiberMove.REFLECT_ZETA:
        return FiberLabel(xi, -zeta)
    return FiberLabel(zeta, xi)


def equidistant_on_probe(probe: Probe, x: Sequence[float], y: Sequence[float], tol: float = 1e-12) -> bool:
    """True iff ``x`` and ``y`` lie on the probe at equal distance from its two ends."""
    base = np.array([float(c) for c in probe.base])
    end = np.array([float(c) for c in probe.endpoint])
    d = np.array(probe.direction, dtype=float)
    d = d / np.linalg.norm(d)
    length = float(np.dot(end - base, d))
    out = []
    for pt in (x, y):
        rel = np.asarray(pt, dtype=float) - base
        along = float(np.dot(rel, d))
        if np.linalg.norm(rel - along * d) > tol:
            return False
        out.append(along)
    return abs(out[0] - (length - out[1])) <= tol


def action_on_z(points: np.ndarray, theta) -> np.ndarray:
    """Rotate both (v2, v3) and (w2, w3) by ``theta``; ``points`` has shape (..., 6)."""
    points = np.asarray(points, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    out = points.copy()
    for j in (1, 4):
        out[..., j] = c * points[..., j] - s * points[..., j + 1]
        out[..., j + 1] = s * points[..., j] + c * points[..., j + 1]
    return out


def sample_z(a: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Points of ``Z = {v1 + w1 = 2a}``, including the extreme values of v1."""
    lo, hi = max(-1.0, 2 * a - 1.0), min(1.0, 2 * a + 1.0)
    v1 = rng.uniform(lo, hi, samples)
    v1[:2] = lo, hi
    w1 = 2 * a - v1
    phi_v = rng.uniform(0, 2 * np.pi, samples)
    phi_w = rng.uniform(0, 2 * np.pi, samples)
    rv = np.sqrt(np.clip(1 - v1 * v1, 0, None))
    rw = np.sqrt(np.clip(1 - w1 * w1, 0, None))
    return np.stack(
        [v1, rv * np.cos(phi_v), rv * np.sin(phi_v), w1, rw * np.cos(phi_w), rw * np.sin(phi_w)], axis=-1
    )


def free_action_check(a: float, samples: int = 1000, seed: int = 0, n_angles: int = 64, tol: float = 1e-12) -> bool:
    """Search sampled points of ``Z`` for a nontrivial stabilizer of the circle action.

    Returns True when no sampled point is fixed by any sampled angle in
    ``(0, 2 pi)``.
    """
    if not (-1 < a < 1) or a == 0:
        raise DomainError(f"free action needs -1 < a < 1 and a != 0, got {a}")
    if samples < 1:
        raise DomainError("samples must be positive")
    rng = np.random.default_rng(seed)
    pts = sample_z(a, samples, rng)
    thetas = 2 * np.pi * np.arange(1, n_angles) / n_angles
    thetas = np.concatenate([thetas, rng.uniform(1e-3, 2 * np.pi - 1e-3, n_angles)])
    for th in thetas:
        moved = action_on_z(pts, th)
        if np.any(np.max(np.abs(moved - pts), axis=-1) <= tol):
            return False
    return True
