"""Recovering a defining graph from cup-product data.

A :class:`PairingTensor` is the cup product on degree one with vertex
labels forgotten: for each pair r < s of basis indices, the product
``w_r ⌣ w_s`` as a vector in some fixed basis of H^2.  Re-basing by an
invertible C transports it bilinearly, and over F_2 an exhaustive sweep of
GL_n finds the basis graphs with fewest edges, all isomorphic to the
defining graph.

Also here: the degree-two edge-ideal adapter and the auxiliary-graph
formulation with its corrected and literal adjacency rules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import limits
from .cohomology import CohomologyBasis, cup_rows
from .errors import GuardError, InvariantViolation, ParseError, SingularMatrixError
from .graphs import SimpleGraph, VertexMap, canonical_form, find_subgraph_embedding
from .linalg import PrimeFieldMatrix, invertible_row_codes, is_invertible

__all__ = [
    "PairingTensor",
    "EdgeIdeal",
    "pairing_from",
    "nonvanishing_graph",
    "ReconstructionResult",
    "reconstruct_minimal_edges",
    "achievable_basis_graphs",
    "EdgeIdealGraphs",
    "graphs_from_edge_ideal",
    "parse_edge_ideal",
    "auxiliary_graph",
    "gamma_prime",
    "parse_pairing",
    "pairing_to_json",
]


@dataclass(frozen=True)
class PairingTensor:
    """``values[(r, s)]`` for r < s is w_r ⌣ w_s in H^2 coordinates; absent pairs are zero."""

    n: int
    m: int
    p: int = 2
    values: dict = field(default_factory=dict, compare=True, hash=False)

    def __post_init__(self):
        clean = {}
        for (r, s), vec in self.values.items():
            if not (1 <= r <= self.n and 1 <= s <= self.n) or r == s:
                raise ValueError(f"bad pair ({r}, {s}) for n = {self.n}")
            vec = tuple(int(x) % self.p for x in vec)
            if len(vec) != self.m:
                raise ValueError(f"pair ({r}, {s}) has a vector of length {len(vec)}, expected {self.m}")
            if r > s:
                r, s, vec = s, r, tuple(-x % self.p for x in vec)
            if any(vec):
                clean[(r, s)] = vec
        object.__setattr__(self, "values", clean)

    def value(self, r: int, s: int) -> tuple[int, ...]:
        """Antisymmetric lookup: value(s, r) = -value(r, s), value(r, r) = 0."""
        if r == s:
            return (0,) * self.m
        if r < s:
            return self.values.get((r, s), (0,) * self.m)
        return tuple(-x % self.p for x in self.values.get((s, r), (0,) * self.m))


@dataclass(frozen=True)
class EdgeIdeal:
    """Square-free quadratic monomial ideal; generator {i, j} stands for x_i x_j."""

    n: int
    generators: frozenset

    def __post_init__(self):
        gens = set()
        for pair in self.generators:
            i, j = pair
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"bad generator x{i}x{j} for n = {self.n}")
            gens.add((min(i, j), max(i, j)))
        object.__setattr__(self, "generators", frozenset(gens))

    def graph(self) -> SimpleGraph:
        return SimpleGraph(self.n, self.generators)


def pairing_from(graph: SimpleGraph, basis: CohomologyBasis | PrimeFieldMatrix) -> PairingTensor:
    """Cup products of a basis in edge-dual coordinates, with labels erased."""
    B = basis if isinstance(basis, CohomologyBasis) else CohomologyBasis(graph, basis)
    rows, n, p = B.matrix.rows, graph.n, B.p
    return PairingTensor(
        n,
        graph.m,
        p,
        {(r + 1, s + 1): cup_rows(graph, rows[r], rows[s], p) for r in range(n) for s in range(r + 1, n)},
    )


def _check_change(P: PairingTensor, C: PrimeFieldMatrix) -> None:
    if C.n_rows != P.n or C.n_cols != P.n:
        raise ValueError(f"change of basis must be {P.n}x{P.n}")
    if C.p != P.p:
        raise ValueError("change of basis is over a different field")
    if not is_invertible(C):
        raise SingularMatrixError("change of basis is singular")


def nonvanishing_graph(P: PairingTensor, C: PrimeFieldMatrix | None = None) -> SimpleGraph:
    """Graph on new basis indices; edge {r, s} iff Σ_{a,b} C_r^a C_s^b P[a][b] != 0."""
    if C is None:
        return SimpleGraph(P.n, P.values.keys())
    _check_change(P, C)
    p, M = P.p, C.rows
    edges = set()
    for r in range(P.n):
        for s in range(r + 1, P.n):
            acc = [0] * P.m
            for (a, b), vec in P.values.items():
                coeff = (M[r][a - 1] * M[s][b - 1] - M[r][b - 1] * M[s][a - 1]) % p
                if coeff:
                    for k, x in enumerate(vec):
                        acc[k] += coeff * x
            if any(x % p for x in acc):
                edges.add((r + 1, s + 1))
    return SimpleGraph(P.n, edges)


def _pair_table(P: PairingTensor) -> np.ndarray:
    """Q[u, v] = (product of row codes u, v is nonzero), F_2 only, column 1 as MSB."""
    n = P.n
    masks = {pair: sum(1 << k for k, x in enumerate(vec) if x) for pair, vec in P.values.items()}
    bit = [[(u >> (n - a)) & 1 for a in range(1, n + 1)] for u in range(1 << n)]
    Q = np.zeros((1 << n, 1 << n), dtype=bool)
    for u in range(1 << n):
        bu = bit[u]
        for v in range(1 << n):
            bv = bit[v]
            acc = 0
            for (a, b), mask in masks.items():
                if bu[a - 1] & bv[b - 1] ^ bu[b - 1] & bv[a - 1]:
                    acc ^= mask
            Q[u, v] = acc != 0
    return Q


def _sweep(P: PairingTensor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edge-bit key, edge count and row codes for every C in GL_n(F_2).

    Bit positions follow the pair order (1,2), (1,3), ..., (n-1,n) with the
    first pair as the most significant bit.
    """
    if P.p != 2:
        raise GuardError("exhaustive basis sweeps are only available over F_2")
    limits.check("enumerate_gl", P.n, "H^1 dimension")
    n = P.n
    codes = invertible_row_codes(n)
    Q = _pair_table(P)
    pairs = [(r, s) for r in range(n) for s in range(r + 1, n)]
    keys = np.zeros(len(codes), dtype=np.int64)
    counts = np.zeros(len(codes), dtype=np.int16)
    for k, (r, s) in enumerate(pairs):
        hit = Q[codes[:, r], codes[:, s]]
        keys |= hit.astype(np.int64) << (len(pairs) - 1 - k)
        counts += hit
    return keys, counts, codes


def _graph_from_key(key: int, n: int) -> SimpleGraph:
    pairs = [(r, s) for r in range(1, n + 1) for s in range(r + 1, n + 1)]
    L = len(pairs)
    return SimpleGraph(n, {pairs[k] for k in range(L) if key >> (L - 1 - k) & 1})


class ReconstructionResult(NamedTuple):
    graph: SimpleGraph
    witness: PrimeFieldMatrix
    matrices_checked: int


def reconstruct_minimal_edges(P: PairingTensor) -> ReconstructionResult:
    """Fewest-edge basis graph over all of GL_n(F_2), with a witness basis change.

    Ties go to the lexicographically least sorted edge list.  Among edge
    sets of equal size that is the largest key in our bit order.
    """
    keys, counts, codes = _sweep(P)
    fewest = counts.min()
    best = int(keys[counts == fewest].max())
    idx = int(np.argmax((keys == best) & (counts == fewest)))
    witness = PrimeFieldMatrix.from_codes([int(c) for c in codes[idx]], P.n)
    G = _graph_from_key(best, P.n)
    if nonvanishing_graph(P, witness) != G:
        raise InvariantViolation("vectorised sweep disagrees with direct transport on its witness")
    return ReconstructionResult(G, witness, len(codes))


def achievable_basis_graphs(graph: SimpleGraph) -> list[dict]:
    """Every basis graph over GL_n(F_2), grouped up to isomorphism.

    An experiment on which graphs between the defining graph and the
    complete graph arise; no structure is asserted.  Sorted by edge count.
    """
    P = pairing_from(graph, PrimeFieldMatrix.identity(graph.n, 2))
    keys, counts, _ = _sweep(P)
    uniq, freq = np.unique(keys, return_counts=True)
    classes: dict = {}
    for key, f in zip(uniq.tolist(), freq.tolist()):
        G = _graph_from_key(key, graph.n)
        cf = canonical_form(G)
        if cf in classes:
            classes[cf]["bases"] += f
            classes[cf]["labelled_graphs"] += 1
        else:
            classes[cf] = {"graph": G, "bases": f, "labelled_graphs": 1}
    return sorted(classes.values(), key=lambda d: (d["graph"].m, d["graph"].edge_list()))


class EdgeIdealGraphs(NamedTuple):
    gamma_i: SimpleGraph
    gamma_j: SimpleGraph
    embedding: VertexMap


def graphs_from_edge_ideal(ideal: EdgeIdeal, C: PrimeFieldMatrix) -> EdgeIdealGraphs:
    """Graphs of I and of the surviving products w_i w_j in R / I'.

    Only monomials x_k x_l with {k, l} in I survive the quotient, and the
    coefficient of x_k x_l in w_i w_j is C_i^k C_j^l + C_i^l C_j^k mod 2.
    """
    if C.p != 2:
        raise ValueError("the edge-ideal adapter works over F_2")
    if C.n_rows != ideal.n or C.n_cols != ideal.n:
        raise ValueError(f"change of variables must be {ideal.n}x{ideal.n}")
    if not is_invertible(C):
        raise SingularMatrixError("change of variables is singular")
    M = C.rows
    edges = set()
    for i in range(ideal.n):
        for j in range(i + 1, ideal.n):
            for k, l in ideal.generators:
                if (M[i][k - 1] & M[j][l - 1]) ^ (M[i][l - 1] & M[j][k - 1]):
                    edges.add((i + 1, j + 1))
                    break
    gi, gj = ideal.graph(), SimpleGraph(ideal.n, edges)
    phi = find_subgraph_embedding(gi, gj)
    if phi is None:
        raise InvariantViolation("graph of I does not embed in the graph of J")
    return EdgeIdealGraphs(gi, gj, phi)


def parse_edge_ideal(text: str) -> EdgeIdeal:
    """First line ``n``, then one ``i j`` generator per line; '#' starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty edge-ideal file")
    try:
        n = int(lines[0])
        gens = []
        for ln in lines[1:]:
            i, j = ln.split()
            gens.append((int(i), int(j)))
        return EdgeIdeal(n, frozenset(gens))
    except ValueError as exc:
        raise ParseError(f"malformed edge-ideal file: {exc}") from None


def auxiliary_graph(graph: SimpleGraph, A: PrimeFieldMatrix) -> SimpleGraph:
    """Graph on e_1..e_n (labels 1..n) and w_1..w_n (labels n+1..2n) before w-w edges.

    e_k ~ e_l copies the graph; w_i ~ e_k when the entry a_i^k is nonzero.
    """
    n = graph.n
    edges = set(graph.edges)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if A[i, k]:
                edges.add((k, n + i))
    return SimpleGraph(2 * n, edges)


def gamma_prime(graph: SimpleGraph, A: PrimeFieldMatrix, rule: str = "corrected") -> SimpleGraph:
    """The graph spanned by w_1..w_n after adding w-w edges by the chosen rule.

    ``corrected``: w_i ~ w_j when some edge {k, l} carries exactly one path
    w_i - e - e - w_j through it, i.e. the 2x2 minor on rows i, j and
    columns k, l is nonsingular.  ``literal``: some such path exists and
    neither e_k nor e_l is a common neighbour of w_i and w_j.
    """
    if rule not in ("corrected", "literal"):
        raise ValueError(f"unknown rule {rule!r}; expected 'corrected' or 'literal'")
    if A.p != 2:
        raise ValueError("the auxiliary-graph formulation works over F_2")
    if A.n_rows != graph.n or A.n_cols != graph.n:
        raise ValueError("matrix must be n x n for a graph on n vertices")
    if not is_invertible(A):
        raise SingularMatrixError("basis matrix is singular")
    n = graph.n
    aux = auxiliary_graph(graph, A)
    edges = set()
    for i in range(1, n + 1):
        wi = aux.neighbors(n + i)
        for j in range(i + 1, n + 1):
            wj = aux.neighbors(n + j)
            for k, l in graph.edges:
                forward = k in wi and l in wj  # w_i - e_k - e_l - w_j
                backward = l in wi and k in wj
                if rule == "corrected":
                    joined = forward != backward
                else:
                    short = (k in wi and k in wj) or (l in wi and l in wj)
                    joined = (forward or backward) and not short
                if joined:
                    edges.add((i, j))
                    break
    return SimpleGraph(n, edges)


def parse_pairing(text: str | dict) -> PairingTensor:
    """Pairing JSON: {"n", "m", "p", "pairs": [{"r", "s", "value"}]}."""
    try:
        data = json.loads(text) if isinstance(text, str) else text
        n, m, p = int(data["n"]), int(data["m"]), int(data.get("p", 2))
        values = {(int(e["r"]), int(e["s"])): tuple(e["value"]) for e in data.get("pairs", [])}
        return PairingTensor(n, m, p, values)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed pairing: {exc}") from None


def pairing_to_json(P: PairingTensor) -> dict:
    return {
        "n": P.n,
        "m": P.m,
        "p": P.p,
        "pairs": [{"r": r, "s": s, "value": list(v)} for (r, s), v in sorted(P.values.items())],
    }
