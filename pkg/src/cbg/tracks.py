"""Null-connectedness, 1-blocks, tracks and the determinant partition.

Rows ``r, s`` of ``A`` are *null-connected* (relative to a graph on the
column indices) when every 2x2 minor of those rows on an edge's columns is
singular.  A *1-block* is a maximal all-nonzero submatrix whose columns
induce a connected subgraph and whose rows are connected under
null-connectedness.  Blocks are pairwise disjoint and have rank one, so
every permutation string of nonzero entries is sorted into a unique track,
and tracks with a piece of dimension >= 2 contribute zero to det A.  That
forces a row order in which graph-adjacent positions hold rows that are
*not* null-connected, which is an embedding of the graph into the
cohomology basis graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import limits
from .cohomology import cohomology_basis_graph, null_connected
from .errors import InvariantViolation, SingularMatrixError
from .graphs import SimpleGraph, VertexMap
from .linalg import Permutation, PrimeFieldMatrix, det_gaussian, is_invertible, rank

__all__ = [
    "OneBlock",
    "Piece",
    "Track",
    "null_connectivity_graph",
    "find_one_blocks",
    "check_block_invariants",
    "nonzero_strings",
    "track_of_permutation",
    "track_determinants",
    "track_restricted_det",
    "find_good_reordering",
    "embedding_from_reordering",
    "tracks_report",
]


@dataclass(frozen=True, order=True)
class OneBlock:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def contains(self, r: int, c: int) -> bool:
        return r in self.rows and c in self.cols

    def entries(self) -> set[tuple[int, int]]:
        return {(r, c) for r in self.rows for c in self.cols}

    def submatrix(self, A: PrimeFieldMatrix) -> PrimeFieldMatrix:
        return A.submatrix(self.rows, self.cols)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True, order=True)
class Piece:
    """Square submatrix of a track: 1x1, or the string entries inside one block."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    block: int | None = field(default=None, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols), "block": self.block}


@dataclass(frozen=True)
class Track:
    pieces: tuple[Piece, ...]

    @property
    def max_dimension(self) -> int:
        return max((p.dimension for p in self.pieces), default=0)

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() for p in self.pieces]}


def null_connectivity_graph(graph: SimpleGraph, A: PrimeFieldMatrix) -> SimpleGraph:
    """Graph on row indices; edge {r, s} iff rows r and s are null-connected."""
    if A.n_cols != graph.n:
        raise ValueError("matrix columns must be indexed by the graph's vertices")
    return SimpleGraph(
        A.n_rows,
        {
            (r, s)
            for r in range(1, A.n_rows + 1)
            for s in range(r + 1, A.n_rows + 1)
            if null_connected(graph, A, r, s)
        },
    )


def _saturate(
    graph: SimpleGraph,
    A: PrimeFieldMatrix,
    nc: SimpleGraph,
    rows: set[int],
    cols: set[int],
    reverse: bool,
) -> OneBlock:
    n_rows, n_cols = A.n_rows, A.n_cols
    M = A.rows
    row_order = range(n_rows, 0, -1) if reverse else range(1, n_rows + 1)
    col_order = range(n_cols, 0, -1) if reverse else range(1, n_cols + 1)

    def grow_rows() -> bool:
        grew = False
        for r in row_order:
            if r in rows:
                continue
            if all(M[r - 1][c - 1] for c in cols) and nc.neighbors(r) & rows:
                rows.add(r)
                grew = True
        return grew

    def grow_cols() -> bool:
        grew = False
        for c in col_order:
            if c in cols:
                continue
            if graph.neighbors(c) & cols and all(M[r - 1][c - 1] for r in rows):
                cols.add(c)
                grew = True
        return grew

    steps = (grow_cols, grow_rows) if reverse else (grow_rows, grow_cols)
    while any([step() for step in steps]):
        pass
    return OneBlock(tuple(sorted(rows)), tuple(sorted(cols)))


def check_block_invariants(blocks: Iterable[OneBlock], A: PrimeFieldMatrix) -> None:
    """Raise unless blocks are pairwise disjoint and each has rank one."""
    seen: dict[tuple[int, int], OneBlock] = {}
    for B in blocks:
        if rank(B.submatrix(A)) != 1:
            raise InvariantViolation(f"block {B} does not have a one-dimensional row space")
        for e in B.entries():
            if e in seen:
                raise InvariantViolation(f"blocks {seen[e]} and {B} share entry {e}")
            seen[e] = B


def find_one_blocks(
    graph: SimpleGraph, A: PrimeFieldMatrix, reverse: bool = False
) -> list[OneBlock]:
    """All 1-blocks of ``A``, sorted by row set.

    Each block is grown from a seed (two null-connected rows on the two
    columns of an edge, all four entries nonzero) by adding single rows or
    columns while the defining conditions hold.  ``reverse`` flips the order
    in which additions are tried; the result must not depend on it.
    """
    if A.n_cols != graph.n:
        raise ValueError("matrix columns must be indexed by the graph's vertices")
    nc = null_connectivity_graph(graph, A)
    M = A.rows
    covered: set[tuple[int, int]] = set()
    blocks: set[OneBlock] = set()
    seeds = [
        (r, s, i, j)
        for i, j in graph.edge_list()
        for r in range(1, A.n_rows + 1)
        for s in range(r + 1, A.n_rows + 1)
        if M[r - 1][i - 1] and M[r - 1][j - 1] and M[s - 1][i - 1] and M[s - 1][j - 1]
        and nc.has_edge(r, s)
    ]
    if reverse:
        seeds.reverse()
    for r, s, i, j in seeds:
        if (r, i) in covered:
            continue
        B = _saturate(graph, A, nc, {r, s}, {i, j}, reverse)
        blocks.add(B)
        covered |= B.entries()
    out = sorted(blocks)
    check_block_invariants(out, A)
    return out


def nonzero_strings(A: PrimeFieldMatrix) -> Iterator[tuple[int, ...]]:
    """Permutations σ (0-based images, σ[i] = row of column i) with all a_{σ(i)}^i != 0."""
    n = A.n_rows
    M = A.rows
    cols_rows = [[r for r in range(n) if M[r][c]] for c in range(n)]
    chosen: list[int] = []

    def rec(c: int, used: int) -> Iterator[tuple[int, ...]]:
        if c == n:
            yield tuple(chosen)
            return
        for r in cols_rows[c]:
            if not used >> r & 1:
                chosen.append(r)
                yield from rec(c + 1, used | (1 << r))
                chosen.pop()

    yield from rec(0, 0)


def _sign(images: tuple[int, ...]) -> int:
    inv = sum(1 for a in range(len(images)) for b in range(a + 1, len(images)) if images[a] > images[b])
    return -1 if inv % 2 else 1


def _block_index(blocks: list[OneBlock]) -> dict[tuple[int, int], int]:
    return {e: k for k, B in enumerate(blocks) for e in B.entries()}


def _track_from_string(images: tuple[int, ...], where: dict[tuple[int, int], int]) -> Track:
    """``images`` is 1-based: column i uses row images[i-1]."""
    groups: dict[int, list[tuple[int, int]]] = {}
    singles = []
    for c, r in enumerate(images, 1):
        k = where.get((r, c))
        if k is None:
            singles.append(Piece((r,), (c,)))
        else:
            groups.setdefault(k, []).append((r, c))
    pieces = singles + [
        Piece(tuple(sorted(r for r, _ in g)), tuple(sorted(c for _, c in g)), k)
        for k, g in groups.items()
    ]
    return Track(tuple(sorted(pieces)))


def track_of_permutation(
    graph: SimpleGraph,
    A: PrimeFieldMatrix,
    sigma: Permutation,
    blocks: list[OneBlock] | None = None,
) -> Track:
    """The unique track containing the string (a_{σ(1)}^1, ..., a_{σ(n)}^n)."""
    if sigma.n != A.n_cols or not A.is_square:
        raise ValueError("permutation size does not match the matrix")
    for i in range(1, sigma.n + 1):
        if A[sigma(i), i] == 0:
            raise ValueError(f"string entry a_{sigma(i)}^{i} is zero")
    if blocks is None:
        blocks = find_one_blocks(graph, A)
    return _track_from_string(sigma.images, _block_index(blocks))


def track_determinants(
    graph: SimpleGraph, A: PrimeFieldMatrix, blocks: list[OneBlock] | None = None
) -> dict[Track, int]:
    """Restricted determinant of every track realised by some nonzero string."""
    limits.check("tracks", A.n_rows, "matrix dimension")
    if not A.is_square:
        raise ValueError("matrix must be square")
    if blocks is None:
        blocks = find_one_blocks(graph, A)
    where = _block_index(blocks)
    p, M = A.p, A.rows
    sums: dict[Track, int] = {}
    for s in nonzero_strings(A):
        images = tuple(r + 1 for r in s)
        prod = 1
        for c, r in enumerate(s):
            prod = prod * M[r][c] % p
        T = _track_from_string(images, where)
        sums[T] = (sums.get(T, 0) + _sign(images) * prod) % p
    for T, value in sums.items():
        if T.max_dimension >= 2 and value:
            raise InvariantViolation(f"track {T} has a piece of dimension >= 2 but det_T = {value}")
    return sums


def track_restricted_det(graph: SimpleGraph, A: PrimeFieldMatrix, track: Track) -> int:
    """Part of the Leibniz sum coming from strings in ``track`` (0 if unrealised)."""
    return track_determinants(graph, A).get(track, 0)


def find_good_reordering(graph: SimpleGraph, A: PrimeFieldMatrix) -> Permutation:
    """A row order σ with rows σ(i), σ(j) not null-connected for each edge {i, j}.

    Position i of the result holds row ``σ(i)``.  Backtracking assigns rows
    to positions (highest graph degree first), trying rows with the fewest
    null-connected partners first, with forward checking on neighbours.
    """
    n = graph.n
    if A.n_rows != n or A.n_cols != n:
        raise ValueError("matrix must be n x n for a graph on n vertices")
    if not is_invertible(A):
        raise SingularMatrixError("reordering requires an invertible matrix")
    nc = null_connectivity_graph(graph, A)
    # rows allowed next to row r: distinct and not null-connected
    compatible = [0] * (n + 1)
    for r in range(1, n + 1):
        compatible[r] = sum(1 << s for s in range(1, n + 1) if s != r and not nc.has_edge(r, s))
    pref = sorted(range(1, n + 1), key=lambda r: (nc.degree(r), r))

    order: list[int] = []
    placed: set[int] = set()
    remaining = set(graph.vertices)
    while remaining:
        v = max(remaining, key=lambda x: (len(graph.neighbors(x) & placed), graph.degree(x), -x))
        order.append(v)
        placed.add(v)
        remaining.discard(v)

    assign = [0] * (n + 1)
    all_rows = sum(1 << r for r in range(1, n + 1))

    def domain(pos: int, used: int) -> int:
        d = all_rows & ~used
        for q in graph.neighbors(pos):
            if assign[q]:
                d &= compatible[assign[q]]
        return d

    def rec(k: int, used: int) -> bool:
        if k == n:
            return True
        pos = order[k]
        d = domain(pos, used)
        for r in pref:
            if not d >> r & 1:
                continue
            assign[pos] = r
            nused = used | (1 << r)
            if all(assign[q] or domain(q, nused) for q in graph.neighbors(pos)) and rec(k + 1, nused):
                return True
            assign[pos] = 0
        return False

    if not rec(0, 0):
        raise InvariantViolation("no good row reordering exists for an invertible matrix")
    return Permutation(tuple(assign[1:]))


def embedding_from_reordering(graph: SimpleGraph, A: PrimeFieldMatrix) -> VertexMap:
    """The embedding v_i -> w_{σ(i)} of the graph into its cohomology basis graph."""
    sigma = find_good_reordering(graph, A)
    phi = VertexMap(sigma.images, graph.n)
    if not phi.is_embedding(graph, cohomology_basis_graph(graph, A)):
        raise InvariantViolation("reordering does not give an embedding into the basis graph")
    return phi


def tracks_report(graph: SimpleGraph, A: PrimeFieldMatrix) -> dict:
    """Blocks, realised tracks with restricted determinants, and the partition check."""
    blocks = find_one_blocks(graph, A)
    dets = track_determinants(graph, A, blocks)
    total = sum(dets.values()) % A.p
    det = det_gaussian(A)
    tracks = sorted(
        ({"track": T.to_json(), "max_dimension": T.max_dimension, "det": v} for T, v in dets.items()),
        key=lambda d: (d["max_dimension"], str(d["track"])),
    )
    return {
        "p": A.p,
        "blocks": [B.to_json() for B in blocks],
        "tracks": tracks,
        "sum_of_track_dets": total,
        "det": det,
        "partition_identity_holds": total == det,
    }
