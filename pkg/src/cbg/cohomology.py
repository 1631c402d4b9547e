"""Degree 1 and 2 cohomology of a right-angled Artin group over F_p.

H^1 has the vertex-dual basis v_1^*..v_n^*, H^2 the edge-dual basis.  For
an edge {i < j} the product v_i^* ⌣ v_j^* is the edge class with sign +1,
so two degree-one classes u, v multiply to the vector whose coefficient on
edge {i < j} is ``u_i v_j - u_j v_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvariantViolation, SingularMatrixError
from .graphs import SimpleGraph, VertexMap, are_isomorphic, find_subgraph_embedding
from .linalg import PrimeFieldMatrix, is_invertible

__all__ = [
    "Degree1Vector",
    "Degree2Vector",
    "CohomologyBasis",
    "cup_deg1",
    "cup_rows",
    "null_connected",
    "cohomology_basis_graph",
    "verify_containment",
    "EdgeCountReport",
    "edge_count_report",
]


@dataclass(frozen=True)
class Degree1Vector:
    graph: SimpleGraph
    coeffs: tuple[int, ...]
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))
        if len(self.coeffs) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} coefficients, got {len(self.coeffs)}")

    @classmethod
    def dual(cls, graph: SimpleGraph, i: int, p: int = 2) -> "Degree1Vector":
        """The vertex-dual class v_i^*."""
        return cls(graph, tuple(int(k == i) for k in graph.vertices), p)

    def __add__(self, other: "Degree1Vector") -> "Degree1Vector":
        self._check(other)
        return Degree1Vector(self.graph, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def scale(self, c: int) -> "Degree1Vector":
        return Degree1Vector(self.graph, tuple(c * a for a in self.coeffs), self.p)

    def _check(self, other: "Degree1Vector") -> None:
        if self.graph != other.graph or self.p != other.p:
            raise ValueError("degree-one classes live over different graphs or fields")


@dataclass(frozen=True)
class Degree2Vector:
    """Element of H^2 in edge-dual coordinates; ``values`` follows ``graph.edge_list()``."""

    graph: SimpleGraph
    values: tuple[int, ...]
    p: int = 2

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.graph.edge_list(), self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def __add__(self, other: "Degree2Vector") -> "Degree2Vector":
        if self.graph != other.graph or self.p != other.p:
            raise ValueError("degree-two classes live over different graphs or fields")
        return Degree2Vector(
            self.graph, tuple((a + b) % self.p for a, b in zip(self.values, other.values)), self.p
        )


def cup_rows(graph: SimpleGraph, u: Sequence[int], v: Sequence[int], p: int) -> tuple[int, ...]:
    """Cup product of two coefficient rows (0-based sequences), edge-ordered."""
    return tuple(
        (u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]) % p for i, j in graph.edge_list()
    )


def cup_deg1(graph: SimpleGraph, u: Degree1Vector, v: Degree1Vector) -> Degree2Vector:
    if u.graph != graph or v.graph != graph:
        raise ValueError("cup product arguments belong to a different graph")
    if u.p != v.p:
        raise ValueError("cup product arguments belong to different fields")
    return Degree2Vector(graph, cup_rows(graph, u.coeffs, v.coeffs, u.p), u.p)


@dataclass(frozen=True)
class CohomologyBasis:
    """A basis w_1..w_n of H^1; row i of ``matrix`` is w_i in vertex-dual coordinates."""

    graph: SimpleGraph
    matrix: PrimeFieldMatrix

    def __post_init__(self):
        A = self.matrix
        if A.n_rows != self.graph.n or A.n_cols != self.graph.n:
            raise ValueError(
                f"basis matrix is {A.n_rows}x{A.n_cols}, graph has {self.graph.n} vertices"
            )
        if not is_invertible(A):
            raise SingularMatrixError("basis matrix is singular, so its rows are not a basis")

    @property
    def p(self) -> int:
        return self.matrix.p

    def vector(self, i: int) -> Degree1Vector:
        return Degree1Vector(self.graph, self.matrix.row(i), self.p)


def _basis(graph: SimpleGraph, basis: CohomologyBasis | PrimeFieldMatrix) -> CohomologyBasis:
    if isinstance(basis, CohomologyBasis):
        if basis.graph != graph:
            raise ValueError("basis belongs to a different graph")
        return basis
    return CohomologyBasis(graph, basis)


def null_connected(graph: SimpleGraph, A: PrimeFieldMatrix, r: int, s: int) -> bool:
    """Rows r and s have a singular 2x2 minor on every edge of the graph."""
    if r == s:
        raise ValueError("null-connectedness compares two distinct rows")
    ar, as_ = A.row(r), A.row(s)
    p = A.p
    return all((ar[i - 1] * as_[j - 1] - ar[j - 1] * as_[i - 1]) % p == 0 for i, j in graph.edges)


def cohomology_basis_graph(
    graph: SimpleGraph, basis: CohomologyBasis | PrimeFieldMatrix
) -> SimpleGraph:
    """Graph on basis indices 1..n with an edge where the cup product is nonzero."""
    B = _basis(graph, basis)
    rows, p, n = B.matrix.rows, B.p, graph.n
    edges = graph.edge_list()
    out = set()
    for r in range(n):
        ar = rows[r]
        for s in range(r + 1, n):
            as_ = rows[s]
            for i, j in edges:
                if (ar[i - 1] * as_[j - 1] - ar[j - 1] * as_[i - 1]) % p:
                    out.add((r + 1, s + 1))
                    break
    return SimpleGraph(n, out)


def verify_containment(
    graph: SimpleGraph, basis: CohomologyBasis | PrimeFieldMatrix
) -> VertexMap:
    """An embedding of the defining graph into its cohomology basis graph.

    Tries the row-reordering construction first and falls back to a generic
    subgraph search.  Failure is a defect, reported as InvariantViolation.
    """
    from .tracks import embedding_from_reordering

    B = _basis(graph, basis)
    GB = cohomology_basis_graph(graph, B)
    try:
        phi = embedding_from_reordering(graph, B.matrix)
    except InvariantViolation:
        phi = None
    if phi is not None and phi.is_embedding(graph, GB):
        return phi
    phi = find_subgraph_embedding(graph, GB)
    if phi is None:
        raise InvariantViolation("defining graph does not embed in its cohomology basis graph")
    return phi


@dataclass(frozen=True)
class EdgeCountReport:
    graph_edges: int
    basis_graph_edges: int
    minimal: bool  # basis graph has as few edges as possible, hence is isomorphic

    def to_json(self) -> dict:
        return {
            "graph_edges": self.graph_edges,
            "basis_graph_edges": self.basis_graph_edges,
            "minimal": self.minimal,
        }


def edge_count_report(
    graph: SimpleGraph, basis: CohomologyBasis | PrimeFieldMatrix, check_isomorphism: bool = True
) -> EdgeCountReport:
    GB = cohomology_basis_graph(graph, basis)
    if GB.m < graph.m:
        raise InvariantViolation(f"basis graph has {GB.m} < {graph.m} edges")
    minimal = GB.m == graph.m
    if minimal and check_isomorphism and graph.n <= 10 and not are_isomorphic(graph, GB):
        raise InvariantViolation("edge-minimal basis graph is not isomorphic to the defining graph")
    return EdgeCountReport(graph.m, GB.m, minimal)
