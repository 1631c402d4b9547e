"""Minor-closed properties characterised by small Colin de Verdière bounds.

``mu_at_most(G, k)`` dispatches to the combinatorial property that is
equivalent to ``μ(G) <= k`` for k = 0..4: no edges, linear forest,
outerplanar, planar, linklessly embeddable.  μ itself is never computed.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass

from . import limits
from .errors import GuardError
from .graphs import (
    SimpleGraph,
    canonical_form,
    complement,
    complete_bipartite,
    complete_graph,
    connected_components,
    has_minor,
    has_twins,
)
from .planarity import is_planar_lr

__all__ = [
    "PROPERTY_LADDER",
    "property_index",
    "is_empty_graph",
    "is_linear_forest",
    "is_outerplanar",
    "is_planar",
    "is_planar_by_minors",
    "is_linkless",
    "petersen_family",
    "mu_at_most",
    "ComplementVerdict",
    "complement_is_planar",
    "complement_is_outerplanar",
    "property_report",
]


def is_empty_graph(G: SimpleGraph) -> bool:
    return G.m == 0


def is_linear_forest(G: SimpleGraph) -> bool:
    """Every component is a path: max degree <= 2 and no cycles."""
    if any(d > 2 for d in G.degrees()):
        return False
    # a forest has exactly n - c edges
    return G.m == G.n - len(connected_components(G))


def is_outerplanar(G: SimpleGraph) -> bool:
    """No K_4 minor and no K_{2,3} minor."""
    if G.n >= 2 and G.m > 2 * G.n - 3:
        return False
    return not has_minor(G, complete_graph(4)) and not has_minor(G, complete_bipartite(2, 3))


def is_planar(G: SimpleGraph) -> bool:
    return is_planar_lr(G)


def is_planar_by_minors(G: SimpleGraph) -> bool:
    """Wagner's criterion; the desk-scale oracle for :func:`is_planar`."""
    return not has_minor(G, complete_graph(5)) and not has_minor(G, complete_bipartite(3, 3))


def _delta_y(G: SimpleGraph, tri: tuple[int, int, int]) -> SimpleGraph:
    a, b, c = tri
    y = G.n + 1
    edges = (G.edges - {(a, b), (a, c), (b, c)}) | {(a, y), (b, y), (c, y)}
    return SimpleGraph(y, edges)


def _y_delta(G: SimpleGraph, y: int) -> SimpleGraph | None:
    a, b, c = sorted(G.neighbors(y))
    new = {(a, b), (a, c), (b, c)}
    if new & G.edges:
        return None  # would create a multi-edge
    kept = {e for e in G.edges if y not in e} | new
    return SimpleGraph(G.n, kept).induced(v for v in G.vertices if v != y)


@functools.lru_cache(maxsize=1)
def petersen_family() -> tuple[SimpleGraph, ...]:
    """The closure of K_6 under Δ-Y and Y-Δ exchanges (simple graphs only)."""
    start = complete_graph(6)
    seen = {canonical_form(start): start}
    queue = deque([start])
    while queue:
        G = queue.popleft()
        nxt = []
        for a, b in G.edges:
            for c in G.neighbors(a) & G.neighbors(b):
                if c > b:
                    nxt.append(_delta_y(G, (a, b, c)))
        for v in G.vertices:
            if G.degree(v) == 3:
                H = _y_delta(G, v)
                if H is not None:
                    nxt.append(H)
        for H in nxt:
            key = canonical_form(H)
            if key not in seen:
                seen[key] = H
                queue.append(H)
    return tuple(sorted(seen.values(), key=lambda H: (H.n, H.edge_list())))


def is_linkless(G: SimpleGraph) -> bool:
    """No Petersen-family minor (Robertson-Seymour-Thomas)."""
    limits.check("linkless", G.n, "vertex count")
    return not any(has_minor(G, F) for F in petersen_family())


PROPERTY_LADDER = (
    ("empty", is_empty_graph),
    ("linear-forest", is_linear_forest),
    ("outerplanar", is_outerplanar),
    ("planar", is_planar),
    ("linkless", is_linkless),
)

_ALIASES = {"linear_forest": "linear-forest", "linearforest": "linear-forest",
            "linklessly-embeddable": "linkless", "no-edges": "empty"}


def property_index(name: str) -> int:
    """Ladder position k of a property name (so the property is μ <= k)."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    for k, (prop, _) in enumerate(PROPERTY_LADDER):
        if prop == key:
            return k
    raise ValueError(
        f"unknown property {name!r}; expected one of {[p for p, _ in PROPERTY_LADDER]}"
    )


def mu_at_most(G: SimpleGraph, k: int) -> bool:
    """Decide ``μ(G) <= k`` for k in 0..4 via the equivalent graph property."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a non-negative integer")
    if k >= len(PROPERTY_LADDER):
        raise GuardError(f"μ <= {k} has no combinatorial characterisation here (k must be <= 4)")
    return PROPERTY_LADDER[k][1](G)


@dataclass(frozen=True)
class ComplementVerdict:
    holds: bool
    has_twins: bool

    @property
    def hypothesis_met(self) -> bool:
        """True when the twin-free hypothesis of the complement characterisation holds."""
        return not self.has_twins

    def __bool__(self) -> bool:
        return self.holds


def complement_is_planar(G: SimpleGraph) -> ComplementVerdict:
    return ComplementVerdict(is_planar(complement(G)), has_twins(G))


def complement_is_outerplanar(G: SimpleGraph) -> ComplementVerdict:
    return ComplementVerdict(is_outerplanar(complement(G)), has_twins(G))


def property_report(G: SimpleGraph) -> dict:
    """All ladder verdicts plus the complement tests, as a JSON-ready dict."""
    out = {}
    for name, test in PROPERTY_LADDER:
        try:
            out[name] = test(G)
        except GuardError as exc:
            out[name] = None
            out.setdefault("skipped", {})[name] = str(exc)
    cp, co = complement_is_planar(G), complement_is_outerplanar(G)
    out["complement"] = {"planar": cp.holds, "outerplanar": co.holds, "has_twins": cp.has_twins}
    return out
