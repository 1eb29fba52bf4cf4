"""Numerical companion for classifying FOOO tori in S^2 x S^2 up to Hamiltonian isotopy."""

__version__ = "0.1.0"

from .classifier import ClassificationOutcome, classify_pq, classify_via_reduction, classify_xy  # noqa: E402
from .polytopes import FiberLabel, PQCoord, XYCoord  # noqa: E402

__all__ = [
    "__version__",
    "ClassificationOutcome",
    "classify_pq",
    "classify_xy",
    "classify_via_reduction",
    "FiberLabel",
    "PQCoord",
    "XYCoord",
]
