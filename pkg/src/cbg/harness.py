"""Randomized verification suites with replayable failures.

Trial ``k`` of a suite run with seed ``s`` draws everything from
``random.Random(f"{suite}:{s}:{k}")``, so any single trial can be replayed
with ``--seed s --offset k --trials 1`` regardless of what ran before it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .cohomology import cohomology_basis_graph, verify_containment
from .errors import CBGError
from .graphs import MinorOp, SimpleGraph, are_isomorphic, random_graph
from .linalg import PrimeFieldMatrix, det_gaussian, random_invertible
from .minors import verify_minor_relation
from .reconstruction import (
    EdgeIdeal,
    gamma_prime,
    graphs_from_edge_ideal,
    pairing_from,
    reconstruct_minimal_edges,
)
from .tracks import find_good_reordering, find_one_blocks, null_connectivity_graph, track_determinants

__all__ = ["SUITES", "TrialFailure", "SuiteResult", "run_suite", "trial_rng"]


def trial_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def _instance(rng: random.Random, n: int | None, p: int | None, n_range=(1, 7), primes=(2, 3, 5)):
    n = rng.randint(*n_range) if n is None else n
    p = rng.choice(primes) if p is None else p
    G = random_graph(n, rng.random(), rng)
    A = random_invertible(n, p, rng)
    return G, A


def _describe(G: SimpleGraph, A: PrimeFieldMatrix) -> dict:
    return {"graph": G.to_json(), "matrix": A.tolist(), "p": A.p}


def _embedding_and_reordering(rng, n, p, record):
    G, A = _instance(rng, n, p)
    record["instance"] = _describe(G, A)
    phi = verify_containment(G, A)
    sigma = find_good_reordering(G, A)
    nc = null_connectivity_graph(G, A)
    for i, j in G.edges:
        if nc.has_edge(sigma(i), sigma(j)):
            raise AssertionError(f"reordering puts null-connected rows on edge {{{i},{j}}}")
    blocks = find_one_blocks(G, A)
    if blocks != find_one_blocks(G, A, reverse=True):
        raise AssertionError("block saturation depends on the order of additions")
    return {"blocks": len(blocks), "embedding": list(phi.images)}


def _track_partition(rng, n, p, record):
    G, A = _instance(rng, n, p)
    record["instance"] = _describe(G, A)
    dets = track_determinants(G, A)  # raises if a big-piece track is nonzero
    total = sum(dets.values()) % A.p
    if total != det_gaussian(A):
        raise AssertionError(f"track determinants sum to {total}, det is {det_gaussian(A)}")
    big = sum(1 for T in dets if T.max_dimension >= 2)
    return {"tracks": len(dets), "tracks_with_big_piece": big}


def _minor_deletion(rng, n, p, record):
    G, A = _instance(rng, n, p, n_range=(2, 6))
    if G.m and rng.random() < 0.5:
        op = MinorOp.delete_edge(*rng.choice(G.edge_list()))
    else:
        op = MinorOp.delete_vertex(rng.randint(1, G.n))
    record["instance"] = {**_describe(G, A), "op": str(op)}
    report = verify_minor_relation(G, A, op)  # raises on a deletion counterexample
    return {"holds": report.holds}


def _equivalences(rng, n, p, record):
    G, A = _instance(rng, n, 2, n_range=(1, 6))
    record["instance"] = _describe(G, A)
    GB = cohomology_basis_graph(G, A)
    if gamma_prime(G, A, "corrected") != GB:
        raise AssertionError("corrected auxiliary-graph rule disagrees with the basis graph")
    res = graphs_from_edge_ideal(EdgeIdeal(G.n, frozenset(G.edges)), A)
    if res.gamma_j != GB:
        raise AssertionError("edge-ideal graph disagrees with the basis graph")
    literal = gamma_prime(G, A, "literal")
    return {"literal_agrees": literal == GB}


def _reconstruction(rng, n, p, record):
    G, A = _instance(rng, 4 if n is None else n, 2)
    record["instance"] = _describe(G, A)
    res = reconstruct_minimal_edges(pairing_from(G, A))
    if not are_isomorphic(res.graph, G):
        raise AssertionError("fewest-edge basis graph is not isomorphic to the defining graph")
    return {"graph": res.graph.to_json()}


SUITES: dict[str, Callable] = {
    "theorem-main": _embedding_and_reordering,
    "track-partition": _track_partition,
    "minor-deletion": _minor_deletion,
    "equivalences": _equivalences,
    "reconstruction": _reconstruction,
}


@dataclass
class TrialFailure:
    index: int
    error: str
    instance: dict | None
    replay: str

    def to_json(self) -> dict:
        return {"index": self.index, "error": self.error, "instance": self.instance, "replay": self.replay}


@dataclass
class SuiteResult:
    suite: str
    seed: int
    offset: int
    trials: int
    n: int | None = None
    p: int | None = None
    failures: list[TrialFailure] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "offset": self.offset,
            "trials": self.trials,
            "n": self.n,
            "p": self.p,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
            "stats": dict(sorted(self.stats.items())),
        }


def run_suite(
    suite: str,
    trials: int,
    seed: int = 0,
    offset: int = 0,
    n: int | None = None,
    p: int | None = None,
) -> SuiteResult:
    """Run ``trials`` trials starting at index ``offset``; never raises on a failed trial."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}")
    fn = SUITES[suite]
    result = SuiteResult(suite, seed, offset, trials, n, p)
    extra = "".join(f" --{k} {v}" for k, v in (("n", n), ("p", p)) if v is not None)
    for k in range(offset, offset + trials):
        record: dict = {}
        try:
            info = fn(trial_rng(suite, seed, k), n, p, record)
        except (CBGError, AssertionError) as exc:
            result.failures.append(
                TrialFailure(
                    k,
                    f"{type(exc).__name__}: {exc}",
                    record.get("instance"),
                    f"cbg verify --suite {suite} --seed {seed} --offset {k} --trials 1{extra}",
                )
            )
            continue
        for key, val in info.items():
            if isinstance(val, bool):
                result.stats[key] = result.stats.get(key, 0) + int(val)
            elif isinstance(val, int):
                result.stats[key] = result.stats.get(key, 0) + val
    return result
