"""Bases carried along elementary minors, and the dumbbell contraction example.

Deleting an edge keeps the basis.  Deleting a vertex drops its coordinate,
and contracting an edge {i, j} merges coordinates i and j into one.  After
either of those, zero rows go first, then repeated rows (the lowest index
survives), then any row that depends on the rows before it.  For deletions
the new basis graph is always a minor of the old one.  Contraction can
break this, and the dumbbell graph shows it with an edge-count gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cohomology import cohomology_basis_graph
from .errors import InvariantViolation, SingularMatrixError
from .graphs import MinorOp, SimpleGraph, apply_minor_op, has_minor
from .linalg import PrimeFieldMatrix, is_invertible, rank

__all__ = [
    "MinorBasisResult",
    "elementary_minor_basis",
    "MinorRelationReport",
    "verify_minor_relation",
    "Dumbbell",
    "dumbbell",
    "dumbbell_basis_edges",
    "dumbbell_contracted_edges",
    "contraction_gap",
    "dumbbell_report",
]


@dataclass(frozen=True)
class MinorBasisResult:
    minor: SimpleGraph
    matrix: PrimeFieldMatrix
    op: MinorOp
    kept_rows: tuple[int, ...]  # original row index of each new row
    discards: tuple[tuple[int, str], ...]  # (original row, reason)

    def to_json(self) -> dict:
        return {
            "op": str(self.op),
            "minor": self.minor.to_json(),
            "matrix": self.matrix.tolist(),
            "p": self.matrix.p,
            "kept_rows": list(self.kept_rows),
            "discards": [{"row": r, "reason": why} for r, why in self.discards],
        }


def _cleanup(rows: Sequence[tuple[int, ...]], p: int) -> tuple[list[int], list[tuple[int, str]]]:
    kept: list[int] = []
    discards: list[tuple[int, str]] = []
    first_seen: dict[tuple[int, ...], int] = {}
    candidates = []
    for k, row in enumerate(rows, 1):
        if not any(row):
            discards.append((k, "zero"))
        elif row in first_seen:
            discards.append((k, f"repeat of row {first_seen[row]}"))
        else:
            first_seen[row] = k
            candidates.append(k)
    basis_rows: list[tuple[int, ...]] = []
    for k in candidates:
        trial = basis_rows + [rows[k - 1]]
        if rank(PrimeFieldMatrix(trial, p)) == len(trial):
            basis_rows = trial
            kept.append(k)
        else:
            discards.append((k, "dependent"))
    return kept, sorted(discards)


def elementary_minor_basis(graph: SimpleGraph, A: PrimeFieldMatrix, op: MinorOp) -> MinorBasisResult:
    """The minor of ``graph`` under ``op`` and the induced basis of its H^1."""
    n = graph.n
    if A.n_rows != n or A.n_cols != n:
        raise ValueError("matrix must be n x n for a graph on n vertices")
    if not is_invertible(A):
        raise SingularMatrixError("basis matrix is singular")
    minor = apply_minor_op(graph, op)
    if op.kind == "delete-edge":
        return MinorBasisResult(minor, A, op, tuple(range(1, n + 1)), ())
    p = A.p
    if op.kind == "delete-vertex":
        v = op.vertex
        rows = [tuple(x for c, x in enumerate(r, 1) if c != v) for r in A.rows]
    else:
        i, j = op.edge
        rows = [
            tuple((x + r[j - 1]) % p if c == i else x for c, x in enumerate(r, 1) if c != j)
            for r in A.rows
        ]
    kept, discards = _cleanup(rows, p)
    if len(kept) != minor.n:
        raise InvariantViolation(
            f"{op} left {len(kept)} independent rows for a minor on {minor.n} vertices"
        )
    B = PrimeFieldMatrix([rows[k - 1] for k in kept], p)
    return MinorBasisResult(minor, B, op, tuple(kept), tuple(discards))


@dataclass(frozen=True)
class MinorRelationReport:
    holds: bool
    basis_graph: SimpleGraph
    minor_basis_graph: SimpleGraph
    result: MinorBasisResult

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "basis_graph": self.basis_graph.to_json(),
            "minor_basis_graph": self.minor_basis_graph.to_json(),
            "minor_basis": self.result.to_json(),
        }


def verify_minor_relation(graph: SimpleGraph, A: PrimeFieldMatrix, op: MinorOp) -> MinorRelationReport:
    """Whether the minor's basis graph is a minor of the original basis graph.

    Deletions must always give True; a False there raises InvariantViolation.
    """
    GB = cohomology_basis_graph(graph, A)
    res = elementary_minor_basis(graph, A, op)
    LB = cohomology_basis_graph(res.minor, res.matrix)
    if LB.m > GB.m or LB.n > GB.n:
        holds = False
    else:
        holds = has_minor(GB, LB)
    if not holds and op.kind != "contract-edge":
        raise InvariantViolation(f"{op}: minor basis graph is not a minor of the basis graph")
    return MinorRelationReport(holds, GB, LB, res)


@dataclass(frozen=True)
class Dumbbell:
    """Two stars joined at their centres.

    Vertices: v1 = 1, v2 = 2, a_j = 2 + j, b_i = n + 2 + i.  Basis rows in
    order: b_1..b_m, a_1+b_1, v_1+a_1..v_1+a_n, v_2+a_1.
    """

    n: int
    m: int
    graph: SimpleGraph
    matrix: PrimeFieldMatrix
    row_labels: tuple[str, ...]
    vertex_labels: tuple[str, ...]


def dumbbell(n: int, m: int, p: int = 2) -> Dumbbell:
    if n < 1 or m < 1:
        raise ValueError("both stars need at least one leaf")
    N = n + m + 2
    a = lambda j: 2 + j  # noqa: E731
    b = lambda i: n + 2 + i  # noqa: E731
    edges = {(1, 2)} | {(1, a(j)) for j in range(1, n + 1)} | {(2, b(i)) for i in range(1, m + 1)}

    def vec(*verts: int) -> list[int]:
        return [int(c in verts) for c in range(1, N + 1)]

    rows = [vec(b(i)) for i in range(1, m + 1)]
    rows.append(vec(a(1), b(1)))
    rows += [vec(1, a(j)) for j in range(1, n + 1)]
    rows.append(vec(2, a(1)))
    labels = tuple(
        [f"b{i}" for i in range(1, m + 1)] + ["a1b1"] + [f"v1a{j}" for j in range(1, n + 1)] + ["v2a1"]
    )
    vlabels = tuple(["v1", "v2"] + [f"a{j}" for j in range(1, n + 1)] + [f"b{i}" for i in range(1, m + 1)])
    A = PrimeFieldMatrix(rows, p)
    if not is_invertible(A):
        raise InvariantViolation("dumbbell basis is not invertible")
    return Dumbbell(n, m, SimpleGraph(N, edges), A, labels, vlabels)


def dumbbell_basis_edges(n: int, m: int) -> set[tuple[int, int]]:
    """Expected basis-graph edges, in row indices, from the five listed families."""
    b = lambda i: i  # noqa: E731
    ab = m + 1
    va = lambda j: m + 1 + j  # noqa: E731
    v2a1 = m + n + 2
    edges = {(b(i), v2a1) for i in range(1, m + 1)}
    edges |= {(va(j), v2a1) for j in range(1, n + 1)}
    edges.add((ab, v2a1))
    edges |= {(va(i), va(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    edges |= {(ab, va(j)) for j in range(1, n + 1)}
    return edges


def dumbbell_contracted_edges(n: int, m: int) -> set[tuple[int, int]]:
    """Expected edges after contracting {v1, v2}: rows b_i, a1b1, za_1..za_n."""
    ab = m + 1
    za = lambda j: m + 1 + j  # noqa: E731
    edges = {(i, za(j)) for i in range(1, m + 1) for j in range(1, n + 1)}
    edges |= {(za(i), za(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    edges |= {(ab, za(j)) for j in range(1, n + 1)}
    return edges


def _contracted(n: int, m: int) -> tuple[Dumbbell, SimpleGraph, MinorBasisResult, SimpleGraph]:
    D = dumbbell(n, m)
    GB = cohomology_basis_graph(D.graph, D.matrix)
    res = elementary_minor_basis(D.graph, D.matrix, MinorOp.contract_edge(1, 2))
    LB = cohomology_basis_graph(res.minor, res.matrix)
    return D, GB, res, LB


def contraction_gap(n: int, m: int) -> int:
    """|E| after contracting the bar minus |E| before, from the actual graphs."""
    _, GB, _, LB = _contracted(n, m)
    gap = LB.m - GB.m
    if gap != (m - 1) * (n - 1) - 2:
        raise InvariantViolation(f"dumbbell({n},{m}) gap {gap} != (m-1)(n-1)-2")
    return gap


def dumbbell_report(n: int, m: int, check_minor: bool = True) -> dict:
    """Both graphs, both bases, edge counts and the gap, as JSON-ready data."""
    D, GB, res, LB = _contracted(n, m)
    gap = LB.m - GB.m
    report = {
        "n": n,
        "m": m,
        "construction": (
            "two stars joined by an edge between their centres, rebuilt from the basis "
            "and the edge count n+m+1; vertex order v1, v2, a1..an, b1..bm"
        ),
        "graph": D.graph.to_json(),
        "vertex_labels": list(D.vertex_labels),
        "basis": D.matrix.tolist(),
        "basis_labels": list(D.row_labels),
        "basis_graph": GB.to_json(),
        "basis_graph_edges": GB.m,
        "contracted_graph": res.minor.to_json(),
        "contracted_basis": res.matrix.tolist(),
        "contracted_discards": [{"row": r, "reason": why} for r, why in res.discards],
        "contracted_basis_graph": LB.to_json(),
        "contracted_basis_graph_edges": LB.m,
        "gap": gap,
        "formula_gap": (m - 1) * (n - 1) - 2,
    }
    if check_minor:
        report["is_minor"] = LB.m <= GB.m and has_minor(GB, LB)
    return report
