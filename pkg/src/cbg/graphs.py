"""Finite simple graphs on vertices 1..n, embeddings, isomorphism and minors.

Internally most searches run on adjacency bitmasks: ``adj[k]`` has bit ``t``
set when 0-based vertices ``k`` and ``t`` are adjacent.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import limits
from .errors import ParseError

__all__ = [
    "SimpleGraph",
    "VertexMap",
    "MinorOp",
    "apply_minor_op",
    "contract_edge",
    "delete_vertex",
    "has_minor",
    "find_subgraph_embedding",
    "canonical_form",
    "are_isomorphic",
    "complement",
    "has_twins",
    "twin_pairs",
    "connected_components",
    "empty_graph",
    "complete_graph",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "complete_bipartite",
    "complete_multipartite",
    "petersen_graph",
    "disjoint_union",
    "random_graph",
    "graph_from_json",
    "parse_edgelist",
    "parse_graph",
]


def _norm_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops or multi-edges on vertices ``1..n``."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {{{i},{j}}} has an endpoint outside 1..{self.n}")
            norm.add(_norm_edge(i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """0-based adjacency bitmasks."""
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i - 1] |= 1 << (j - 1)
            masks[j - 1] |= 1 << (i - 1)
        return tuple(masks)

    @cached_property
    def _nbrs(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(t + 1 for t in _bits(a)) for a in self.adj)

    def neighbors(self, v: int) -> frozenset:
        return self._nbrs[v - 1]

    def degree(self, v: int) -> int:
        return self.adj[v - 1].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges | {_norm_edge(*e) for e in edges})

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges - {_norm_edge(*e) for e in edges})

    def relabel(self, images: Sequence[int], n: int | None = None) -> "SimpleGraph":
        """Image of the graph under ``v -> images[v-1]`` (a graph on ``n`` vertices)."""
        n = self.n if n is None else n
        return SimpleGraph(n, {(images[i - 1], images[j - 1]) for i, j in self.edges})

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph, renumbered 1..k in increasing order of the kept vertices."""
        keep = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(keep, 1)}
        return SimpleGraph(
            len(keep), {(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos}
        )

    def is_subgraph_of(self, other: "SimpleGraph") -> bool:
        """Labeled containment: same vertex set, every edge present in ``other``."""
        return self.n == other.n and self.edges <= other.edges

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list()]}

    def to_edgelist(self) -> str:
        return "\n".join([str(self.n)] + [f"{i} {j}" for i, j in self.edge_list()]) + "\n"

    def to_dot(self, name: str = "G", labels: Sequence[str] | None = None) -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            label = labels[v - 1] if labels else str(v)
            lines.append(f'  {v} [label="{label}"];')
        lines += [f"  {i} -- {j};" for i, j in self.edge_list()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_masks(cls, adj: Sequence[int]) -> "SimpleGraph":
        return cls(
            len(adj), {(k + 1, t + 1) for k, a in enumerate(adj) for t in _bits(a) if k < t}
        )

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edge_list()})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------------------
# constructors


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def path_graph(n: int) -> SimpleGraph:
    """Path on ``n`` vertices 1-2-...-n."""
    return SimpleGraph(n, {(i, i + 1) for i in range(1, n)})


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph(n, {(i, i % n + 1) for i in range(1, n + 1)})


def star_graph(k: int) -> SimpleGraph:
    """K_{1,k} with center 1."""
    return SimpleGraph(k + 1, {(1, j) for j in range(2, k + 2)})


def complete_multipartite(*sizes: int) -> SimpleGraph:
    parts, start = [], 1
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = {
        (i, j) for a in range(len(parts)) for b in range(a + 1, len(parts))
        for i in parts[a] for j in parts[b]
    }
    return SimpleGraph(start - 1, edges)


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return complete_multipartite(a, b)


def petersen_graph() -> SimpleGraph:
    """Outer 5-cycle 1..5, spokes i - i+5, inner pentagram on 6..10."""
    outer = {(i, i % 5 + 1) for i in range(1, 6)}
    spokes = {(i, i + 5) for i in range(1, 6)}
    inner = {(5 + i, 5 + (i + 1) % 5 + 1) for i in range(1, 6)}
    return SimpleGraph(10, outer | spokes | inner)


def disjoint_union(G: SimpleGraph, H: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(G.n + H.n, G.edges | {(i + G.n, j + G.n) for i, j in H.edges})


def random_graph(n: int, p: float = 0.5, rng: random.Random | int | None = None) -> SimpleGraph:
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    return SimpleGraph(
        n, {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p}
    )


# ---------------------------------------------------------------------------
# basic queries


def complement(G: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(
        G.n,
        {(i, j) for i in G.vertices for j in range(i + 1, G.n + 1) if (i, j) not in G.edges},
    )


def twin_pairs(G: SimpleGraph) -> list[tuple[int, int]]:
    """Pairs of distinct vertices with identical neighbour sets."""
    adj = G.adj
    return [
        (i + 1, j + 1) for i in range(G.n) for j in range(i + 1, G.n) if adj[i] == adj[j]
    ]


def has_twins(G: SimpleGraph) -> bool:
    return len(set(G.adj)) < G.n


def connected_components(G: SimpleGraph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    adj, seen, out = G.adj, 0, []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for t in _bits(frontier):
                nxt |= adj[t]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append([t + 1 for t in _bits(comp)])
    return out


# ---------------------------------------------------------------------------
# elementary minors


@dataclass(frozen=True)
class MinorOp:
    """One elementary minor move: delete a vertex, delete an edge, or contract an edge."""

    kind: str
    vertex: int | None = None
    edge: tuple[int, int] | None = None

    KINDS = ("delete-vertex", "delete-edge", "contract-edge")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown minor operation {self.kind!r}")
        if self.kind == "delete-vertex":
            if self.vertex is None or self.edge is not None:
                raise ValueError("delete-vertex takes exactly one vertex")
        else:
            if self.edge is None or self.vertex is not None:
                raise ValueError(f"{self.kind} takes exactly one edge")
            object.__setattr__(self, "edge", _norm_edge(*self.edge))

    @classmethod
    def delete_vertex(cls, v: int) -> "MinorOp":
        return cls("delete-vertex", vertex=v)

    @classmethod
    def delete_edge(cls, i: int, j: int) -> "MinorOp":
        return cls("delete-edge", edge=(i, j))

    @classmethod
    def contract_edge(cls, i: int, j: int) -> "MinorOp":
        return cls("contract-edge", edge=(i, j))

    def __str__(self) -> str:
        if self.kind == "delete-vertex":
            return f"delete-vertex {self.vertex}"
        return f"{self.kind} {self.edge[0]}-{self.edge[1]}"


def delete_vertex(G: SimpleGraph, v: int) -> SimpleGraph:
    if not 1 <= v <= G.n:
        raise ValueError(f"vertex {v} not in graph")
    return G.induced(u for u in G.vertices if u != v)


def contract_edge(G: SimpleGraph, i: int, j: int) -> SimpleGraph:
    """Identify the endpoints of edge {i, j}; the merged vertex keeps the smaller label."""
    i, j = _norm_edge(i, j)
    if (i, j) not in G.edges:
        raise ValueError(f"edge {{{i},{j}}} not in graph")

    def image(v: int) -> int:
        if v == j:
            v = i
        return v - 1 if v > j else v

    edges = {_norm_edge(image(a), image(b)) for a, b in G.edges if {a, b} != {i, j}}
    return SimpleGraph(G.n - 1, {e for e in edges if e[0] != e[1]})


def apply_minor_op(G: SimpleGraph, op: MinorOp) -> SimpleGraph:
    if op.kind == "delete-vertex":
        return delete_vertex(G, op.vertex)
    if op.edge not in G.edges:
        raise ValueError(f"edge {op.edge} not in graph")
    if op.kind == "delete-edge":
        return SimpleGraph(G.n, G.edges - {op.edge})
    return contract_edge(G, *op.edge)


# ---------------------------------------------------------------------------
# bitmask kernels


def _drop_bit(x: int, v: int) -> int:
    return (x & ((1 << v) - 1)) | ((x >> (v + 1)) << v)


def _mask_delete(adj: Sequence[int], v: int) -> list[int]:
    return [_drop_bit(a, v) for k, a in enumerate(adj) if k != v]


def _mask_contract(adj: Sequence[int], u: int, v: int) -> list[int]:
    """Merge ``v`` into ``u`` (both 0-based, adjacent or not), then drop ``v``."""
    merged = list(adj)
    nb = (adj[u] | adj[v]) & ~((1 << u) | (1 << v))
    for t in _bits(adj[v]):
        if t != u:
            merged[t] |= 1 << u
    merged[u] = nb
    return _mask_delete(merged, v)


def _embed_masks(padj: Sequence[int], hadj: Sequence[int]) -> list[int] | None:
    """Injective edge-preserving map pattern -> host (0-based), or None."""
    pn, hn = len(padj), len(hadj)
    if pn > hn:
        return None
    if pn == 0:
        return []
    pdeg = [a.bit_count() for a in padj]
    hdeg = [a.bit_count() for a in hadj]
    if sum(pdeg) > sum(hdeg) or max(pdeg) > max(hdeg):
        return None
    deg_ok = {}
    for d in set(pdeg):
        deg_ok[d] = sum(1 << t for t in range(hn) if hdeg[t] >= d)

    # most-connected-first order so that each vertex is constrained by its predecessors
    order: list[int] = []
    placed = 0
    remaining = set(range(pn))
    while remaining:
        u = max(remaining, key=lambda x: ((padj[x] & placed).bit_count(), pdeg[x], -x))
        order.append(u)
        placed |= 1 << u
        remaining.discard(u)
    back = [[w for w in order[:k] if padj[order[k]] >> w & 1] for k in range(pn)]
    mapping = [-1] * pn

    def rec(k: int, used: int) -> bool:
        if k == pn:
            return True
        u = order[k]
        cand = deg_ok[pdeg[u]] & ~used
        for w in back[k]:
            cand &= hadj[mapping[w]]
        while cand:
            low = cand & -cand
            cand ^= low
            mapping[u] = low.bit_length() - 1
            if rec(k + 1, used | low):
                return True
        mapping[u] = -1
        return False

    return mapping if rec(0, 0) else None


# ---------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class VertexMap:
    """Injective map from pattern vertices ``1..len(images)`` into ``1..host_n``."""

    images: tuple[int, ...]
    host_n: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(set(self.images)) != len(self.images):
            raise ValueError("vertex map is not injective")
        if any(not 1 <= x <= self.host_n for x in self.images):
            raise ValueError("vertex map image outside host")

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def is_embedding(self, pattern: SimpleGraph, host: SimpleGraph) -> bool:
        if len(self.images) != pattern.n or self.host_n != host.n:
            return False
        return all(host.has_edge(self(i), self(j)) for i, j in pattern.edges)

    def to_json(self) -> dict:
        return {str(i): x for i, x in enumerate(self.images, 1)}


def find_subgraph_embedding(pattern: SimpleGraph, host: SimpleGraph) -> VertexMap | None:
    """Backtracking search for an injective edge-preserving map pattern -> host."""
    limits.check("embedding", host.n, "host vertex count")
    found = _embed_masks(pattern.adj, host.adj)
    if found is None:
        return None
    return VertexMap(tuple(x + 1 for x in found), host.n)


# ---------------------------------------------------------------------------
# canonical form


def _refine(cells: list[list[int]], adj: Sequence[int]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (colour refinement)."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                key = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) > 1:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
            else:
                out.append(c)
        cells = out
        if not changed:
            return cells


def _canon_masks(adj: Sequence[int]) -> tuple[int, ...]:
    n = len(adj)
    if n == 0:
        return ()
    degs = [a.bit_count() for a in adj]
    start = [[v for v in range(n) if degs[v] == d] for d in sorted(set(degs))]
    best: list[tuple[int, ...] | None] = [None]

    def leaf(order: list[int]) -> tuple[int, ...]:
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        return tuple(sum(1 << pos[t] for t in _bits(adj[v])) for v in order)

    def search(cells: list[list[int]]) -> None:
        cells = _refine(cells, adj)
        target = -1
        for k, c in enumerate(cells):
            if len(c) > 1 and (target < 0 or len(c) < len(cells[target])):
                target = k
        if target < 0:
            cert = leaf([c[0] for c in cells])
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        cell = cells[target]
        reps: list[int] = []
        for v in cell:
            # swapping twins is an automorphism fixing the current partition
            if any(
                (adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in reps
            ):
                continue
            reps.append(v)
            search(cells[:target] + [[v], [u for u in cell if u != v]] + cells[target + 1:])

    search(start)
    return best[0]


def canonical_form(G: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism-invariant key: equal keys iff the graphs are isomorphic."""
    return (G.n, _canon_masks(G.adj))


def are_isomorphic(G: SimpleGraph, H: SimpleGraph) -> bool:
    limits.check("isomorphism", max(G.n, H.n), "vertex count")
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# minor containment


def _reduce_for_pattern(adj: list[int], min_degree: int) -> list[int]:
    """Host simplifications that cannot destroy a model of a pattern with the
    given minimum degree: drop vertices of degree < min(2, δ) and, when
    δ >= 3, suppress degree-2 vertices by contracting them into a neighbour.
    """
    if min_degree <= 0:
        return adj
    changed = True
    while changed:
        changed = False
        for v, a in enumerate(adj):
            d = a.bit_count()
            if d == 0 or (d == 1 and min_degree >= 2):
                adj = _mask_delete(adj, v)
                changed = True
                break
            if d == 2 and min_degree >= 3:
                u = (a & -a).bit_length() - 1
                adj = _mask_contract(adj, min(u, v), max(u, v))
                changed = True
                break
    return adj


class _MinorSearch:
    """Depth-first search over edge contractions of the host.

    ``P`` is a minor of ``H`` iff ``P`` is a (not necessarily spanning)
    subgraph of some contraction ``H / F``; deletions are absorbed by the
    subgraph test.  States are memoized by canonical form.
    """

    def __init__(self, pattern: SimpleGraph):
        self.padj = pattern.adj
        self.pn, self.pm = pattern.n, pattern.m
        self.delta = min(pattern.degrees()) if pattern.n else 0
        self.seen: set[tuple[int, ...]] = set()
        self.states = 0

    def contains(self, host: SimpleGraph) -> bool:
        if self.pn > host.n or self.pm > host.m:
            return False
        return self._search(list(host.adj))

    def _search(self, adj: list[int]) -> bool:
        adj = _reduce_for_pattern(adj, self.delta)
        n = len(adj)
        m = sum(a.bit_count() for a in adj) // 2
        if n < self.pn or m < self.pm:
            return False
        key = (n, _canon_masks(adj))
        if key in self.seen:
            return False
        self.seen.add(key)
        self.states += 1
        if _embed_masks(self.padj, adj) is not None:
            return True
        if n == self.pn:
            return False
        for u in range(n):
            for v in _bits(adj[u] >> (u + 1)):
                if self._search(_mask_contract(adj, u, u + 1 + v)):
                    return True
        return False


def has_minor(host: SimpleGraph, pattern: SimpleGraph) -> bool:
    """Whether ``pattern`` is isomorphic to a minor of ``host``."""
    limits.check("minor_host", host.n, "host vertex count")
    return _MinorSearch(pattern).contains(host)


# ---------------------------------------------------------------------------
# text formats


def graph_from_json(data: dict | str) -> SimpleGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid graph JSON: {exc}") from None
    try:
        return SimpleGraph(int(data["n"]), {tuple(e) for e in data.get("edges", [])})
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid graph JSON: {exc}") from None


def parse_edgelist(text: str) -> SimpleGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty edge list")
    try:
        n = int(lines[0])
        edges = set()
        for ln in lines[1:]:
            i, j = ln.split()
            edges.add((int(i), int(j)))
        return SimpleGraph(n, edges)
    except ValueError as exc:
        raise ParseError(f"invalid edge list: {exc}") from None


def parse_graph(text: str) -> SimpleGraph:
    """Graph from either JSON or edge-list text."""
    return graph_from_json(text) if text.lstrip().startswith("{") else parse_edgelist(text)
