"""Left-right planarity test (Brandes' formulation of de Fraysseix-Rosenstiehl).

Decision only; no embedding is produced.  Phase one orients the graph by
DFS and computes lowpoints and nesting depths, phase two walks the DFS tree
in nesting order maintaining a stack of conflict pairs of return-edge
intervals that must lie on opposite sides.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager

from .graphs import SimpleGraph

__all__ = ["is_planar_lr"]


class _Interval:
    __slots__ = ("low", "high")

    def __init__(self, low=None, high=None):
        self.low = low
        self.high = high

    def empty(self) -> bool:
        return self.low is None and self.high is None

    def copy(self) -> "_Interval":
        return _Interval(self.low, self.high)


class _ConflictPair:
    __slots__ = ("left", "right")

    def __init__(self, left=None, right=None):
        self.left = left if left is not None else _Interval()
        self.right = right if right is not None else _Interval()

    def swap(self) -> None:
        self.left, self.right = self.right, self.left


@contextmanager
def _recursion_room(depth: int):
    old = sys.getrecursionlimit()
    need = depth * 3 + 200
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class _LRState:
    def __init__(self, G: SimpleGraph):
        self.adj = {v: sorted(G.neighbors(v)) for v in G.vertices}
        self.height: dict[int, int | None] = {v: None for v in G.vertices}
        self.parent_edge: dict[int, tuple | None] = {v: None for v in G.vertices}
        self.oriented: set[tuple[int, int]] = set()
        self.out: dict[int, list[int]] = {v: [] for v in G.vertices}
        self.lowpt: dict[tuple, int] = {}
        self.lowpt2: dict[tuple, int] = {}
        self.nesting_depth: dict[tuple, int] = {}
        self.ref: dict[tuple, tuple | None] = {}
        self.lowpt_edge: dict[tuple, tuple] = {}
        self.stack_bottom: dict[tuple, _ConflictPair | None] = {}
        self.S: list[_ConflictPair] = []
        self.roots: list[int] = []

    # -- phase 1 ------------------------------------------------------
    def orient(self, v: int) -> None:
        e = self.parent_edge[v]
        for w in self.adj[v]:
            if (v, w) in self.oriented or (w, v) in self.oriented:
                continue
            vw = (v, w)
            self.oriented.add(vw)
            self.out[v].append(w)
            self.lowpt[vw] = self.height[v]
            self.lowpt2[vw] = self.height[v]
            if self.height[w] is None:
                self.parent_edge[w] = vw
                self.height[w] = self.height[v] + 1
                self.orient(w)
            else:
                self.lowpt[vw] = self.height[w]
            self.nesting_depth[vw] = 2 * self.lowpt[vw]
            if self.lowpt2[vw] < self.height[v]:
                self.nesting_depth[vw] += 1
            if e is not None:
                if self.lowpt[vw] < self.lowpt[e]:
                    self.lowpt2[e] = min(self.lowpt[e], self.lowpt2[vw])
                    self.lowpt[e] = self.lowpt[vw]
                elif self.lowpt[vw] > self.lowpt[e]:
                    self.lowpt2[e] = min(self.lowpt2[e], self.lowpt[vw])
                else:
                    self.lowpt2[e] = min(self.lowpt2[e], self.lowpt2[vw])

    # -- phase 2 ------------------------------------------------------
    def _top(self):
        return self.S[-1] if self.S else None

    def _conflicting(self, interval: _Interval, b: tuple) -> bool:
        return not interval.empty() and self.lowpt[interval.high] > self.lowpt[b]

    def _lowest(self, P: _ConflictPair) -> int:
        if P.left.empty():
            return self.lowpt[P.right.low]
        if P.right.empty():
            return self.lowpt[P.left.low]
        return min(self.lowpt[P.left.low], self.lowpt[P.right.low])

    def test(self, v: int) -> bool:
        e = self.parent_edge[v]
        ordered = self.out[v]
        for w in ordered:
            ei = (v, w)
            self.stack_bottom[ei] = self._top()
            if ei == self.parent_edge[w]:
                if not self.test(w):
                    return False
            else:
                self.lowpt_edge[ei] = ei
                self.S.append(_ConflictPair(right=_Interval(ei, ei)))
            if self.lowpt[ei] < self.height[v]:
                if w == ordered[0]:
                    self.lowpt_edge[e] = self.lowpt_edge[ei]
                elif not self._add_constraints(ei, e):
                    return False
        if e is not None:
            u = e[0]
            self._trim_back_edges(u)
            if self.lowpt[e] < self.height[u] and self.S:
                hl = self.S[-1].left.high
                hr = self.S[-1].right.high
                if hl is not None and (hr is None or self.lowpt[hl] > self.lowpt[hr]):
                    self.ref[e] = hl
                else:
                    self.ref[e] = hr
        return True

    def _add_constraints(self, ei: tuple, e: tuple) -> bool:
        P = _ConflictPair()
        while True:
            Q = self.S.pop()
            if not Q.left.empty():
                Q.swap()
            if not Q.left.empty():
                return False
            if self.lowpt[Q.right.low] > self.lowpt[e]:
                if P.right.empty():
                    P.right = Q.right.copy()
                else:
                    self.ref[P.right.low] = Q.right.high
                P.right.low = Q.right.low
            else:
                self.ref[Q.right.low] = self.lowpt_edge[e]
            if self._top() is self.stack_bottom[ei]:
                break
        while self.S and (
            self._conflicting(self.S[-1].left, ei) or self._conflicting(self.S[-1].right, ei)
        ):
            Q = self.S.pop()
            if self._conflicting(Q.right, ei):
                Q.swap()
            if self._conflicting(Q.right, ei):
                return False
            self.ref[P.right.low] = Q.right.high
            if Q.right.low is not None:
                P.right.low = Q.right.low
            if P.left.empty():
                P.left = Q.left.copy()
            else:
                self.ref[P.left.low] = Q.left.high
            P.left.low = Q.left.low
        if not (P.left.empty() and P.right.empty()):
            self.S.append(P)
        return True

    def _trim_back_edges(self, u: int) -> None:
        while self.S and self._lowest(self.S[-1]) == self.height[u]:
            self.S.pop()
        if not self.S:
            return
        P = self.S.pop()
        while P.left.high is not None and P.left.high[1] == u:
            P.left.high = self.ref.get(P.left.high)
        if P.left.high is None and P.left.low is not None:
            self.ref[P.left.low] = P.right.low
            P.left.low = None
        while P.right.high is not None and P.right.high[1] == u:
            P.right.high = self.ref.get(P.right.high)
        if P.right.high is None and P.right.low is not None:
            self.ref[P.right.low] = P.left.low
            P.right.low = None
        self.S.append(P)


def is_planar_lr(G: SimpleGraph) -> bool:
    """Planarity decision by the left-right criterion."""
    if G.n >= 3 and G.m > 3 * G.n - 6:
        return False
    st = _LRState(G)
    with _recursion_room(G.n):
        for v in G.vertices:
            if st.height[v] is None:
                st.height[v] = 0
                st.roots.append(v)
                st.orient(v)
        for v in G.vertices:
            st.out[v].sort(key=lambda w, v=v: st.nesting_depth[(v, w)])
        for r in st.roots:
            if not st.test(r):
                return False
    return True
