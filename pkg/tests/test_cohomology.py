import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbg.cohomology import (
    CohomologyBasis,
    Degree1Vector,
    Degree2Vector,
    cohomology_basis_graph,
    cup_deg1,
    edge_count_report,
    null_connected,
    verify_containment,
)
from cbg.errors import SingularMatrixError
from cbg.fixtures import claw, claw_basis, paw, principal_minor_obstruction
from cbg.graphs import SimpleGraph, complete_graph, path_graph
from cbg.linalg import Permutation, PrimeFieldMatrix, det_gaussian

from conftest import graph_and_basis, graphs


def cup_graph_oracle(G, A):
    """Basis graph from full cup-product vectors (no minor shortcut)."""
    vecs = [Degree1Vector(G, A.row(i), A.p) for i in range(1, G.n + 1)]
    return SimpleGraph(
        G.n,
        {
            (r + 1, s + 1)
            for r, s in itertools.combinations(range(G.n), 2)
            if not cup_deg1(G, vecs[r], vecs[s]).is_zero()
        },
    )


def test_vertex_duals_multiply_along_edges():
    G = path_graph(3)
    for i, j in itertools.combinations(G.vertices, 2):
        prod = cup_deg1(G, Degree1Vector.dual(G, i), Degree1Vector.dual(G, j))
        assert prod.is_zero() == (not G.has_edge(i, j))
    prod = cup_deg1(G, Degree1Vector.dual(G, 2, 3), Degree1Vector.dual(G, 1, 3))
    assert prod.as_dict() == {(1, 2): 2, (2, 3): 0}  # v2* ⌣ v1* = -(v1* ⌣ v2*)


def scaled(x, c):
    return Degree2Vector(x.graph, tuple(c * a % x.p for a in x.values), x.p)


@given(graph_and_basis(2, 5), st.data())
def test_cup_is_bilinear_and_alternating(GA, data):
    G, A = GA
    p = A.p
    coeffs = st.lists(st.integers(0, p - 1), min_size=G.n, max_size=G.n)
    u, v, w = (Degree1Vector(G, data.draw(coeffs), p) for _ in range(3))
    c = data.draw(st.integers(0, p - 1))
    assert cup_deg1(G, u, u).is_zero()
    assert cup_deg1(G, u + w, v) == cup_deg1(G, u, v) + cup_deg1(G, w, v)
    assert cup_deg1(G, u.scale(c), v) == scaled(cup_deg1(G, u, v), c)
    lhs = cup_deg1(G, u, v) + cup_deg1(G, v, u)
    assert lhs.is_zero()


def test_identity_basis_gives_defining_graph():
    for G in (claw(), paw(), complete_graph(5), path_graph(6)):
        for p in (2, 3):
            assert cohomology_basis_graph(G, PrimeFieldMatrix.identity(G.n, p)) == G


def test_worked_claw_instance():
    A = claw_basis()
    assert cohomology_basis_graph(claw(), A).edge_list() == [(1, 2), (1, 3), (1, 4)]
    assert cohomology_basis_graph(paw(), A).edge_list() == [(1, 2), (1, 3), (1, 4), (2, 3)]


@given(graph_and_basis(1, 6))
def test_minor_criterion_matches_cup_vectors(GA):
    G, A = GA
    assert cohomology_basis_graph(G, A) == cup_graph_oracle(G, A)


@given(graph_and_basis(1, 7))
def test_defining_graph_embeds(GA):
    G, A = GA
    GB = cohomology_basis_graph(G, A)
    assert GB.m >= G.m
    phi = verify_containment(G, A)
    assert phi.is_embedding(G, GB)


def test_obstruction_matrix_has_no_principal_reordering():
    A = principal_minor_obstruction()
    assert det_gaussian(A) == 1
    good = 0
    for order in itertools.permutations(range(1, 5)):
        B = A.permute_rows(order)
        if all((B[i, i] * B[j, j] - B[i, j] * B[j, i]) % 2 for i, j in itertools.combinations(range(1, 5), 2)):
            good += 1
    assert good == 0


def test_null_connected_fixture():
    G, A = claw(), claw_basis()
    pairs = [(r, s) for r, s in itertools.combinations(range(1, 5), 2) if null_connected(G, A, r, s)]
    assert pairs == [(2, 3), (2, 4), (3, 4)]
    with pytest.raises(ValueError):
        null_connected(G, A, 2, 2)


def test_singular_basis_rejected():
    with pytest.raises(SingularMatrixError):
        CohomologyBasis(complete_graph(2), PrimeFieldMatrix([[1, 1], [1, 1]], 2))
    with pytest.raises(ValueError):
        CohomologyBasis(complete_graph(3), PrimeFieldMatrix.identity(2))


@given(graphs(1, 7), st.randoms(use_true_random=False))
def test_permutation_basis_is_edge_minimal(G, r):
    images = list(range(1, G.n + 1))
    r.shuffle(images)
    P = PrimeFieldMatrix([[int(c == images[i]) for c in range(1, G.n + 1)] for i in range(G.n)], 2)
    rep = edge_count_report(G, P)
    assert rep.minimal and rep.basis_graph_edges == G.m
    assert cohomology_basis_graph(G, P) == G.relabel(Permutation(tuple(images)).inverse().images)
