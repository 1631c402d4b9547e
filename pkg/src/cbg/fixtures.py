"""Small worked instances used by the tests, the CLI fixtures and the README."""

from __future__ import annotations

from .graphs import SimpleGraph
from .linalg import PrimeFieldMatrix

__all__ = [
    "claw",
    "paw",
    "claw_basis",
    "principal_minor_obstruction",
    "TWISTED_PRESENTATION",
    "twisted_raag",
    "twisted_basis",
    "TWISTED_BASIS_GRAPH_EDGES",
]


def claw() -> SimpleGraph:
    """K_{1,3} with centre 1."""
    return SimpleGraph(4, {(1, 2), (1, 3), (1, 4)})


def paw() -> SimpleGraph:
    """The claw plus the edge {2, 4}: a triangle 1-2-4 with pendant vertex 3."""
    return claw().add_edges([(2, 4)])


def claw_basis() -> PrimeFieldMatrix:
    """Basis {v1*, v2*+v4*, v2*, v3*} over F_2.

    On the claw its basis graph is the claw again, on the paw it gains the
    edge {2, 3}, and in the paw case the natural row order is not a good
    reordering.
    """
    return PrimeFieldMatrix([[1, 0, 0, 0], [0, 1, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]], 2)


def principal_minor_obstruction() -> PrimeFieldMatrix:
    """Invertible over F_2, yet every row order has a singular 2x2 principal minor."""
    return PrimeFieldMatrix([[1, 1, 0, 0], [1, 1, 1, 1], [0, 0, 1, 0], [0, 1, 1, 1]], 2)


TWISTED_PRESENTATION = """\
# five generators; x2 x5 x4 commutes with x1 and with x3, and x4 commutes with x5
gens: x1 x2 x3 x4 x5
rel: x1x2x5x4 = x2x5x4x1, x3x2x5x4 = x2x5x4x3, x4x5 = x5x4
"""


def twisted_raag() -> SimpleGraph:
    """The path x1 - y - x3 plus the edge x4 - x5, where y = x2 x5 x4."""
    return SimpleGraph(5, {(1, 2), (2, 3), (4, 5)})


def twisted_basis() -> PrimeFieldMatrix:
    """The generator duals x1*..x5* written in the vertex duals of :func:`twisted_raag`.

    Since y = x2 x5 x4, the dual of x2 becomes y*, the duals of x4 and x5
    pick up a y* summand, and the duals of x1 and x3 are unchanged.
    """
    return PrimeFieldMatrix(
        [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 1, 0, 0, 1]], 2
    )


TWISTED_BASIS_GRAPH_EDGES = frozenset({(1, 2), (1, 4), (1, 5), (2, 3), (3, 4), (3, 5), (4, 5)})
