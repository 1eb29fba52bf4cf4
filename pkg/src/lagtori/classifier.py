"""Which standard toric fiber, if any, a FOOO torus ``L(x, y)`` is isotopic to.

Off the diagonal ``p = 0`` the answer is a fiber ``T(xi, zeta)`` given in
closed form.  On the diagonal the torus is not isotopic to any product torus;
the reason recorded depends on whether ``q > 1/2`` (displacement energy germ
argument) or ``q <= 1/2`` (Floer-theoretic result cited from the literature).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import math

from .disk_reduction import enclosed_area_quadrature, fiber_of_circle, gamma_sample, target_radius
from .errors import DomainError
from .polytopes import (
    FiberLabel,
    PQCoord,
    Region,
    XYCoord,
    case_region,
    require_interior_p2,
    xy_to_pq,
)
from .probes import FiberMove, fiber_moves_p1, probe_pair


class Kind(str, enum.Enum):
    STANDARD_FIBER = "StandardFiber"
    NON_PRODUCT = "NonProduct"


class Branch(str, enum.Enum):
    CASE1_POS = "Case1Pos"
    CASE1_NEG = "Case1Neg"
    CASE2_POS = "Case2Pos"
    CASE2_NEG = "Case2Neg"


class Reason(str, enum.Enum):
    GERM_ARGUMENT = "GermArgument"
    CITED_FOOO = "CitedFOOO"


CASE2_MOVES = (FiberMove.REFLECT_XI, FiberMove.REFLECT_ZETA, FiberMove.SWAP)


@dataclass(frozen=True)
class ClassificationOutcome:
    kind: Kind
    pq: PQCoord
    fiber: FiberLabel | None = None
    branch: Branch | None = None
    reason: Reason | None = None

    def to_json(self) -> dict:
        x, y = self.pq.p + self.pq.q, 1.0 - self.pq.q
        return {
            "input": {"x": x, "y": y, "p": self.pq.p, "q": self.pq.q},
            "kind": self.kind.value,
            "xi": None if self.fiber is None else self.fiber.xi,
            "zeta": None if self.fiber is None else self.fiber.zeta,
            "branch": None if self.branch is None else self.branch.value,
            "reason": None if self.reason is None else self.reason.value,
        }


def _branch(pq: PQCoord, region: Region) -> Branch:
    pos = pq.p > 0
    if region is Region.CASE1:
        return Branch.CASE1_POS if pos else Branch.CASE1_NEG
    return Branch.CASE2_POS if pos else Branch.CASE2_NEG


def _diagonal(pq: PQCoord) -> ClassificationOutcome:
    reason = Reason.GERM_ARGUMENT if pq.q > 0.5 else Reason.CITED_FOOO
    return ClassificationOutcome(Kind.NON_PRODUCT, pq, reason=reason)


def classify_pq(pq: PQCoord) -> ClassificationOutcome:
    pq = require_interior_p2(pq)
    region = case_region(pq)
    if region is Region.DIAGONAL:
        return _diagonal(pq)
    p, q = pq
    if p > 0:
        fiber = FiberLabel(q - 0.5, q - p - 0.5)
    else:
        fiber = FiberLabel(q + p - 0.5, q - 0.5)
    return ClassificationOutcome(Kind.STANDARD_FIBER, pq, fiber, _branch(pq, region))


def classify_xy(xy: XYCoord) -> ClassificationOutcome:
    """Same classification, with the fiber evaluated from the (x, y) formulas."""
    x, y = float(xy[0]), float(xy[1])
    pq = require_interior_p2(xy_to_pq(XYCoord(x, y)))
    region = case_region(pq)
    if region is Region.DIAGONAL:
        return _diagonal(pq)
    if 1.0 - y < x:
        fiber = FiberLabel(0.5 - y, 1.5 - 2.0 * y - x)
    else:
        fiber = FiberLabel(-0.5 + x, 0.5 - y)
    return ClassificationOutcome(Kind.STANDARD_FIBER, pq, fiber, _branch(pq, region))


def classify_case1_by_area(pq: PQCoord, numeric: bool = False, n: int = 4096) -> FiberLabel:
    """Fiber of the circle with the same ``omega^p``-area as the reduced curve.

    With ``numeric=True`` the radius is solved from the quadrature area of the
    sampled curve rather than from the closed-form radius.
    """
    p = pq[0]
    if not numeric:
        return fiber_of_circle(target_radius(pq), p)
    area = enclosed_area_quadrature(gamma_sample(pq, n), p)
    # clockwise circle: area = pi |p| - pi sqrt(p^2 + 4 r^2)
    root = abs(p) - area / math.pi
    return fiber_of_circle(0.5 * math.sqrt(root * root - p * p), p)


def classify_via_reduction(pq: PQCoord, trace: list | None = None, numeric: bool = False) -> FiberLabel:
    """Recompute the fiber through the reduction route instead of the closed forms.

    Case 1 goes through the equal-area circle.  Case 2 first moves along the
    probe ``{p = const}`` into Case 1, then applies the P1 moves
    ReflectXi, ReflectZeta, Swap.  If ``trace`` is given, intermediate
    points are appended to it.  ``numeric`` is passed to
    :func:`classify_case1_by_area`.
    """
    pq = require_interior_p2(pq)
    region = case_region(pq)
    if region is Region.DIAGONAL:
        raise DomainError("the reduction route needs p != 0")
    if region is Region.CASE1:
        fiber = classify_case1_by_area(pq, numeric)
        if trace is not None:
            trace.append(("case1", pq, fiber))
        return fiber
    return case2_route(pq, trace, numeric)


def case2_route(pq: PQCoord, trace: list | None = None, numeric: bool = False) -> FiberLabel:
    """Probe ``(p, q)`` to ``(p, 1 - q + |p|)``, classify there by area, then apply the P1 moves."""
    p, q = pq
    partner = PQCoord(p, probe_pair(p, q))
    if case_region(partner) is not Region.CASE1:
        raise DomainError(f"probe partner {tuple(partner)} is not in Case 1")
    fiber = classify_case1_by_area(partner, numeric)
    if trace is not None:
        trace.append(("probe", partner, fiber))
    for move in CASE2_MOVES:
        fiber = fiber_moves_p1(fiber, move)
        if trace is not None:
            trace.append((move.value, None, fiber))
    return fiber


def cross_check(pq: PQCoord, tol: float = 1e-12) -> dict:
    """Compare the closed-form answer with the reduction route."""
    direct = classify_pq(pq)
    if direct.kind is Kind.NON_PRODUCT:
        return {"agree": None, "max_error": None}
    via = classify_via_reduction(pq)
    err = max(abs(via.xi - direct.fiber.xi), abs(via.zeta - direct.fiber.zeta))
    return {"agree": err <= tol, "max_error": err, "via_xi": via.xi, "via_zeta": via.zeta}

