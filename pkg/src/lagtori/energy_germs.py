"""Displacement energies of standard fibers and displacement-energy germs.

A germ is modeled as a minimum of affine functions of the cohomology shift
``delta``.  Two germs can only be related by a linear change of variables if
their active gradients span spaces of the same dimension, which is what
separates the diagonal FOOO tori from the diagonal standard fibers.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classifier import Kind, classify_pq
from .errors import DomainError
from .polytopes import FiberLabel, PQCoord, require_interior_p1


class _Unbounded:
    """Displacement energy of a nondisplaceable fiber.  Not a number on purpose."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


def energy_fiber(fl: FiberLabel) -> float | _Unbounded:
    """Displacement energy ``min(1/2 - |xi|, 1/2 - |zeta|)`` of ``T(xi, zeta)``.

    The Clifford torus ``T(0, 0)`` is nondisplaceable and returns ``UNBOUNDED``.
    """
    xi, zeta = require_interior_p1(fl)
    if xi == 0 and zeta == 0:
        return UNBOUNDED
    return min(0.5 - abs(xi), 0.5 - abs(zeta))


class Combiner(str, enum.Enum):
    MIN = "Min"
    SINGLE = "Single"


class Domain(str, enum.Enum):
    ALL = "All"
    DELTA1_NONZERO = "Delta1Nonzero"


@dataclass(frozen=True)
class AffinePiece:
    grad: tuple[float, float]
    const: float

    def __call__(self, delta) -> float:
        return self.const + self.grad[0] * delta[0] + self.grad[1] * delta[1]


@dataclass(frozen=True)
class GermModel:
    pieces: tuple[AffinePiece, ...]
    combiner: Combiner
    domain: Domain = Domain.ALL

    def __post_init__(self):
        if not self.pieces:
            raise DomainError("a germ needs at least one affine piece")
        if self.combiner is Combiner.SINGLE and len(self.pieces) != 1:
            raise DomainError("a Single germ has exactly one piece")
        if not all(np.isfinite(pc.grad).all() and np.isfinite(pc.const) for pc in self.pieces):
            raise DomainError("germ pieces must be finite")

    def __call__(self, delta: Sequence[float]) -> float:
        if self.domain is Domain.DELTA1_NONZERO and delta[0] == 0:
            raise DomainError("germ is only modeled for delta1 != 0")
        return min(pc(delta) for pc in self.pieces)

    def gradient_matrix(self) -> np.ndarray:
        return np.array([pc.grad for pc in self.pieces], dtype=float)

    def span_dimension(self) -> int:
        return int(np.linalg.matrix_rank(self.gradient_matrix()))

    def to_json(self) -> dict:
        return {
            "pieces": [{"grad": list(pc.grad), "const": pc.const} for pc in self.pieces],
            "combiner": self.combiner.value,
            "domain": self.domain.value,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GermModel":
        pieces = tuple(AffinePiece(tuple(float(g) for g in pc["grad"]), float(pc["const"])) for pc in doc["pieces"])
        return cls(pieces, Combiner(doc["combiner"]), Domain(doc.get("domain", "All")))


def germ_L(q: float) -> GermModel:
    """Germ of the diagonal FOOO torus ``L1(0, q)``, ``1/2 < q < 1``: ``1 - q - delta2``."""
    if not (0.5 < q < 1):
        raise DomainError(f"germ of L1(0, q) is modeled for 1/2 < q < 1, got {q}")
    return GermModel((AffinePiece((0.0, -1.0), 1.0 - q),), Combiner.SINGLE, Domain.DELTA1_NONZERO)


def germ_T_diag(xi: float) -> GermModel:
    """Germ of the standard fiber ``T(xi, xi)`` for ``0 < |xi| < 1/2``."""
    if xi == 0 or not abs(xi) < 0.5:
        raise DomainError(f"germ of T(xi, xi) needs 0 < |xi| < 1/2, got {xi}")
    sign = -1.0 if xi > 0 else 1.0
    const = 0.5 - abs(xi)
    return GermModel(
        (AffinePiece((sign, 0.0), const), AffinePiece((0.0, sign), const)),
        Combiner.MIN,
    )


def find_linear_equivalence(g1: GermModel, g2: GermModel, bound: int = 3, tol: float = 1e-12) -> np.ndarray | None:
    """Integer matrix ``M`` with ``g1 = g2 o M`` on piece gradients, or None.

    Only gradients are matched: this decides whether the two germs have the
    same piece structure, not whether their values agree.
    """
    if g1.span_dimension() != g2.span_dimension():
        return None
    if g1.combiner is not g2.combiner or len(g1.pieces) != len(g2.pieces) or g1.domain is not g2.domain:
        return None
    a1 = g1.gradient_matrix()
    a2 = g2.gradient_matrix()
    rng = range(-bound, bound + 1)
    for entries in itertools.product(rng, repeat=4):
        m = np.array(entries, dtype=float).reshape(2, 2)
        if round(np.linalg.det(m)) == 0:
            continue
        if g1.domain is Domain.DELTA1_NONZERO and m[0, 1] != 0:
            # M must carry the excluded line delta1 = 0 to itself
            continue
        pulled = a2 @ m
        if _same_rows(a1, pulled, tol):
            return m.astype(int)
    return None


def _same_rows(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    unused = list(range(len(b)))
    for row in a:
        hit = next((j for j in unused if np.max(np.abs(b[j] - row)) <= tol), None)
        if hit is None:
            return False
        unused.remove(hit)
    return True


def germs_linearly_equivalent(g1: GermModel, g2: GermModel, bound: int = 3) -> bool:
    return find_linear_equivalence(g1, g2, bound) is not None


def germ_consistency(q: float, d1: float, d2: float) -> float:
    """Residual between the energy of the classified shifted torus and ``1 - q - d2``."""
    if not (0.5 < q < 1):
        raise DomainError(f"need 1/2 < q < 1, got {q}")
    if d1 == 0:
        raise DomainError("need d1 != 0")
    outcome = classify_pq(PQCoord(d1, q + d2))
    if outcome.kind is not Kind.STANDARD_FIBER:
        raise DomainError("shifted torus did not classify to a standard fiber")
    energy = energy_fiber(outcome.fiber)
    if energy is UNBOUNDED:
        raise DomainError("shifted torus classified to the Clifford torus")
    return abs(energy - (1.0 - q - d2))
