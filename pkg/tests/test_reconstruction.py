import json
import random
from pathlib import Path

import pytest
from hypothesis import given

from cbg.cohomology import cohomology_basis_graph
from cbg.errors import GuardError, ParseError, SingularMatrixError
from cbg.fixtures import claw, claw_basis, paw
from cbg.graphs import SimpleGraph, are_isomorphic, complete_graph, path_graph, random_graph
from cbg.linalg import PrimeFieldMatrix, enumerate_invertible, gl_order, inverse, random_invertible
from cbg.reconstruction import (
    EdgeIdeal,
    PairingTensor,
    achievable_basis_graphs,
    auxiliary_graph,
    gamma_prime,
    graphs_from_edge_ideal,
    nonvanishing_graph,
    pairing_from,
    pairing_to_json,
    parse_edge_ideal,
    parse_pairing,
    reconstruct_minimal_edges,
)

from conftest import graph_and_basis, graphs

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def scalar_sweep(P):
    """Fewest edges, then lexicographically least edge list, by direct transport."""
    best = None
    for C in enumerate_invertible(P.n):
        G = nonvanishing_graph(P, C)
        key = (G.m, G.edge_list())
        if best is None or key < best:
            best = key
    return best


# -- pairing tensors --------------------------------------------------------


def test_pairing_tensor_normalises():
    P = PairingTensor(3, 2, 3, {(2, 1): (1, 2), (1, 3): (0, 0)})
    assert P.values == {(1, 2): (2, 1)}
    assert P.value(2, 1) == (1, 2) and P.value(3, 3) == (0, 0)
    with pytest.raises(ValueError):
        PairingTensor(2, 1, 2, {(1, 1): (1,)})
    with pytest.raises(ValueError):
        PairingTensor(2, 2, 2, {(1, 2): (1,)})


def test_pairing_fixtures():
    P = pairing_from(complete_graph(2), PrimeFieldMatrix.identity(2))
    assert P.values == {(1, 2): (1,)}
    Q = pairing_from(claw(), PrimeFieldMatrix.identity(4))
    assert len(Q.values) == 3
    assert nonvanishing_graph(Q) == claw()


@given(graph_and_basis(1, 6))
def test_inverse_change_recovers_defining_graph(GA):
    G, A = GA
    P = pairing_from(G, A)
    assert nonvanishing_graph(P) == cohomology_basis_graph(G, A)
    assert nonvanishing_graph(P, inverse(A)) == G


@given(graph_and_basis(1, 5))
def test_rebasing_composes(GA):
    G, A = GA
    rng = random.Random(G.m * 31 + A.p)
    C = random_invertible(G.n, A.p, rng)
    assert nonvanishing_graph(pairing_from(G, A), C) == cohomology_basis_graph(G, C @ A)


def test_change_of_basis_validation():
    P = pairing_from(path_graph(3), PrimeFieldMatrix.identity(3))
    with pytest.raises(ValueError):
        nonvanishing_graph(P, PrimeFieldMatrix.identity(2))
    with pytest.raises(ValueError):
        nonvanishing_graph(P, PrimeFieldMatrix.identity(3, 3))
    with pytest.raises(SingularMatrixError):
        nonvanishing_graph(P, PrimeFieldMatrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]], 2))


# -- exhaustive sweep -------------------------------------------------------


def test_paw_is_recovered_from_disguised_pairing():
    P = parse_pairing((FIXTURES / "paw_pairing.json").read_text())
    res = reconstruct_minimal_edges(P)
    assert are_isomorphic(res.graph, paw())
    assert res.matrices_checked == gl_order(4)
    assert nonvanishing_graph(P, res.witness) == res.graph


def test_vectorised_sweep_matches_scalar_sweep():
    rng = random.Random(31)
    for _ in range(25):
        G = random_graph(3, rng.random(), rng)
        P = pairing_from(G, random_invertible(3, 2, rng))
        res = reconstruct_minimal_edges(P)
        assert (res.graph.m, res.graph.edge_list()) == scalar_sweep(P)


def test_vectorised_sweep_matches_scalar_sweep_n4():
    rng = random.Random(32)
    for _ in range(3):
        G = random_graph(4, 0.5, rng)
        P = pairing_from(G, random_invertible(4, 2, rng))
        res = reconstruct_minimal_edges(P)
        assert (res.graph.m, res.graph.edge_list()) == scalar_sweep(P)


@given(graphs(1, 4))
def test_reconstruction_is_basis_independent(G):
    rng = random.Random(G.n * 100 + G.m)
    A = random_invertible(G.n, 2, rng)
    res = reconstruct_minimal_edges(pairing_from(G, A))
    assert are_isomorphic(res.graph, G)
    assert res.graph == reconstruct_minimal_edges(pairing_from(G, PrimeFieldMatrix.identity(G.n))).graph


def test_sweep_guards():
    with pytest.raises(GuardError):
        reconstruct_minimal_edges(pairing_from(path_graph(2), PrimeFieldMatrix.identity(2, 3)))
    with pytest.raises(GuardError):
        reconstruct_minimal_edges(pairing_from(path_graph(6), PrimeFieldMatrix.identity(6)))


def test_achievable_on_path():
    classes = achievable_basis_graphs(path_graph(4))
    assert sum(c["bases"] for c in classes) == gl_order(4)
    assert are_isomorphic(classes[0]["graph"], path_graph(4))
    assert are_isomorphic(classes[-1]["graph"], complete_graph(4))
    assert [c["graph"].m for c in classes] == sorted(c["graph"].m for c in classes)


def test_achievable_on_edgeless_graph():
    classes = achievable_basis_graphs(SimpleGraph(3, set()))
    assert len(classes) == 1 and classes[0]["bases"] == gl_order(3)


# -- edge ideals ------------------------------------------------------------


def test_edge_ideal_fixture():
    ideal = parse_edge_ideal((FIXTURES / "single_edge.ideal").read_text())
    assert ideal.generators == frozenset({(1, 2)})
    shear = PrimeFieldMatrix([[1, 1], [0, 1]], 2)
    res = graphs_from_edge_ideal(ideal, shear)
    assert res.gamma_i == res.gamma_j == complete_graph(2)


def test_edge_ideal_on_claw_basis():
    G, A = claw(), claw_basis()
    res = graphs_from_edge_ideal(EdgeIdeal(4, frozenset(G.edges)), A)
    assert res.gamma_j == cohomology_basis_graph(G, A)
    assert res.embedding.is_embedding(G, res.gamma_j)


@given(graph_and_basis(1, 6, primes=(2,)))
def test_edge_ideal_graph_is_basis_graph(GA):
    G, A = GA
    assert graphs_from_edge_ideal(EdgeIdeal(G.n, frozenset(G.edges)), A).gamma_j == cohomology_basis_graph(G, A)


@pytest.mark.parametrize("text", ["", "x", "2\n1", "2\n1 2 3", "2\n1 3", "2\n1 1"])
def test_edge_ideal_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_edge_ideal(text)


def test_edge_ideal_validation():
    ideal = EdgeIdeal(2, frozenset({(2, 1)}))
    assert ideal.generators == frozenset({(1, 2)})
    with pytest.raises(ValueError):
        graphs_from_edge_ideal(ideal, PrimeFieldMatrix.identity(2, 3))
    with pytest.raises(SingularMatrixError):
        graphs_from_edge_ideal(ideal, PrimeFieldMatrix([[1, 1], [1, 1]], 2))


# -- auxiliary graph --------------------------------------------------------


def test_auxiliary_graph_layout():
    A = PrimeFieldMatrix([[1, 1], [0, 1]], 2)
    aux = auxiliary_graph(complete_graph(2), A)
    assert aux.edge_list() == [(1, 2), (1, 3), (2, 3), (2, 4)]


def test_literal_rule_misses_a_shear_edge():
    G = complete_graph(2)
    A = PrimeFieldMatrix([[1, 1], [0, 1]], 2)
    assert gamma_prime(G, A, "corrected").m == 1
    assert gamma_prime(G, A, "literal").m == 0
    assert cohomology_basis_graph(G, A).m == 1


@given(graph_and_basis(1, 6, primes=(2,)))
def test_corrected_rule_is_basis_graph(GA):
    G, A = GA
    assert gamma_prime(G, A) == cohomology_basis_graph(G, A)
    # a literal-rule edge never has paths in both directions, so it is also a corrected-rule edge
    assert gamma_prime(G, A, "literal").edges <= gamma_prime(G, A).edges


def test_gamma_prime_validation():
    G = complete_graph(2)
    with pytest.raises(ValueError):
        gamma_prime(G, PrimeFieldMatrix.identity(2), "other")
    with pytest.raises(ValueError):
        gamma_prime(G, PrimeFieldMatrix.identity(2, 3))
    with pytest.raises(SingularMatrixError):
        gamma_prime(G, PrimeFieldMatrix([[1, 1], [1, 1]], 2))


# -- serialisation ----------------------------------------------------------


@given(graph_and_basis(1, 5))
def test_pairing_json_round_trip(GA):
    P = pairing_from(*GA)
    text = json.dumps(pairing_to_json(P))
    assert parse_pairing(text) == P
    assert parse_pairing(json.loads(text)) == P


@pytest.mark.parametrize("text", ["{}", "[1]", '{"n": 2, "m": 1, "pairs": [{"r": 1}]}', "nope"])
def test_pairing_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pairing(text)
