"""Moment polytopes, the (x, y) <-> (p, q) change of coordinates, case dispatch.

``P1`` is the square of the standard toric structure on S^2 x S^2.  ``P2`` is
the degenerate Hirzebruch polytope, which we keep canonically in (p, q)
coordinates as the triangle ``-q <= p <= q, q <= 1``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BoundaryError, DomainError, OutsideError

FACET_TOL = 1e-12


class XYCoord(NamedTuple):
    x: float
    y: float


class PQCoord(NamedTuple):
    p: float
    q: float


class FiberLabel(NamedTuple):
    """Point ``(xi, zeta)`` of P1 naming the standard toric fiber ``T(xi, zeta)``."""

    xi: float
    zeta: float


def xy_to_pq(xy: XYCoord) -> PQCoord:
    x, y = xy
    return PQCoord(x + y - 1.0, 1.0 - y)


def pq_to_xy(pq: PQCoord) -> XYCoord:
    p, q = pq
    return XYCoord(p + q, 1.0 - q)


@dataclass(frozen=True)
class Halfspace:
    """Constraint ``<normal, x> >= offset`` with a primitive inward integer normal."""

    normal: tuple[int, int]
    offset: Fraction

    def __post_init__(self):
        a, b = (int(c) for c in self.normal)
        if (a, b) == (0, 0) or math.gcd(a, b) != 1:
            raise DomainError(f"normal {self.normal} is not primitive")
        object.__setattr__(self, "normal", (a, b))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def slack(self, point) -> float:
        """Signed Euclidean distance to the facet line (positive inside)."""
        a, b = self.normal
        return (a * point[0] + b * point[1] - float(self.offset)) / math.hypot(a, b)

    def slack_exact(self, point: Sequence[Fraction]) -> Fraction:
        a, b = self.normal
        return a * point[0] + b * point[1] - self.offset


@dataclass(frozen=True)
class RationalPolytope:
    name: str
    halfspaces: tuple[Halfspace, ...]

    def __post_init__(self):
        if not self.halfspaces:
            raise DomainError("polytope needs at least one halfspace")

    def slacks(self, point) -> np.ndarray:
        return np.array([h.slack(point) for h in self.halfspaces])

    def contains(self, point, tol: float = FACET_TOL) -> bool:
        return bool(np.all(self.slacks(point) >= -tol))

    def strictly_contains(self, point, tol: float = FACET_TOL) -> bool:
        return bool(np.all(self.slacks(point) > tol))

    def active_facets(self, point, tol: float = FACET_TOL) -> list[int]:
        return [i for i, s in enumerate(self.slacks(point)) if abs(s) <= tol]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "normals": [list(h.normal) for h in self.halfspaces],
            "offsets": [float(h.offset) for h in self.halfspaces],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "RationalPolytope":
        if isinstance(doc, str):
            doc = json.loads(doc)
        hs = tuple(
            Halfspace(tuple(n), Fraction(str(c)).limit_denominator(10**6))
            for n, c in zip(doc["normals"], doc["offsets"])
        )
        return cls(doc.get("name", "polytope"), hs)


_HALF = Fraction(1, 2)


def p1_square() -> RationalPolytope:
    """The square ``[-1/2, 1/2]^2`` in (xi, zeta) coordinates."""
    return RationalPolytope(
        "P1",
        (
            Halfspace((1, 0), -_HALF),
            Halfspace((-1, 0), -_HALF),
            Halfspace((0, 1), -_HALF),
            Halfspace((0, -1), -_HALF),
        ),
    )


def p2_polytope() -> RationalPolytope:
    """The triangle ``|p| <= q <= 1`` in (p, q) coordinates."""
    return RationalPolytope(
        "P2",
        (
            Halfspace((1, 1), Fraction(0)),
            Halfspace((-1, 1), Fraction(0)),
            Halfspace((0, -1), Fraction(-1)),
        ),
    )


class Region(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    DIAGONAL = "Diagonal"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


def case_region(pq: PQCoord, tol: float = FACET_TOL) -> Region:
    p, q = pq
    slacks = p2_polytope().slacks(pq)
    if np.any(slacks < -tol):
        return Region.OUTSIDE
    if np.any(slacks <= tol):
        return Region.BOUNDARY
    if abs(p) <= tol:
        return Region.DIAGONAL
    if p * p < q**4:
        return Region.CASE1
    return Region.CASE2


def require_interior_p2(pq: PQCoord) -> PQCoord:
    """Return ``pq`` as a PQCoord or raise if it is not interior to P2."""
    pq = PQCoord(float(pq[0]), float(pq[1]))
    region = case_region(pq)
    if region is Region.OUTSIDE:
        raise OutsideError(f"(p, q) = {tuple(pq)} lies outside P2 (need |p| <= q <= 1)")
    if region is Region.BOUNDARY:
        raise BoundaryError(f"(p, q) = {tuple(pq)} lies on the boundary of P2 (need |p| < q < 1)")
    return pq


def require_interior_p1(fl: FiberLabel) -> FiberLabel:
    fl = FiberLabel(float(fl[0]), float(fl[1]))
    slacks = p1_square().slacks(fl)
    if np.any(slacks < -FACET_TOL):
        raise OutsideError(f"label {tuple(fl)} lies outside P1")
    if np.any(slacks <= FACET_TOL):
        raise BoundaryError(f"label {tuple(fl)} lies on the boundary of P1")
    return fl
