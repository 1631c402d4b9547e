import itertools
import logging
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbg.cohomology import Degree1Vector, cohomology_basis_graph, cup_deg1
from cbg.errors import InvariantViolation, ParseError
from cbg.fixtures import (
    TWISTED_BASIS_GRAPH_EDGES,
    TWISTED_PRESENTATION,
    twisted_basis,
    twisted_raag,
)
from cbg.graphs import SimpleGraph, complete_graph, cycle_graph, find_subgraph_embedding, random_graph
from cbg.linalg import nullspace
from cbg.presentation import (
    Cocycle,
    Presentation,
    certify_property,
    cup_eval,
    cup_vanishes,
    dual_cocycle,
    exponent_sum_matrix,
    format_presentation,
    h1_basis,
    parse_presentation,
    presentation_basis_graph,
    standard_raag_presentation,
)


def is_coboundary_dual(P, c, p):
    """c is in the column span of E iff it is orthogonal to every y with yE = 0."""
    E = exponent_sum_matrix(P, p)
    Et = [list(col) for col in zip(*E)] if E else []
    left_null = nullspace(Et, len(P.relators), p)
    return all(sum(a * b for a, b in zip(y, c)) % p == 0 for y in left_null)


@st.composite
def words(draw, n_gens, max_len=6):
    return draw(
        st.lists(
            st.tuples(st.integers(0, n_gens - 1), st.sampled_from([1, -1])), min_size=1, max_size=max_len
        )
    )


@st.composite
def presentations(draw, max_gens=4, max_rels=3):
    k = draw(st.integers(1, max_gens))
    rels = draw(st.lists(words(k), max_size=max_rels))
    return Presentation(tuple(f"x{i + 1}" for i in range(k)), tuple(tuple(r) for r in rels))


# -- parsing ----------------------------------------------------------------


def test_parse_twisted_fixture():
    P = parse_presentation(TWISTED_PRESENTATION)
    assert P.generators == ("x1", "x2", "x3", "x4", "x5")
    assert [len(r) for r in P.relators] == [8, 8, 4]
    assert parse_presentation(format_presentation(P)) == P


def test_parse_syntax_variants():
    P = parse_presentation("generators: a, b, ab; relators: ab^{-2} a^ 3, b = 1")
    assert P.generators == ("a", "b", "ab")
    # longest names match first, so "ab" is one generator
    assert P.relators == (((2, -1), (2, -1), (0, 1), (0, 1), (0, 1)), ((1, 1),))
    Q = parse_presentation("gens: x y\nrel: x*y*x^-1*y^-1")
    assert Q.relators == (((0, 1), (1, 1), (0, -1), (1, -1)),)


def test_trivial_relators_are_dropped(caplog):
    with caplog.at_level(logging.WARNING):
        P = parse_presentation("gens: a b\nrel: a a^-1, b")
    assert P.relators == (((1, 1),),)
    assert "trivial" in caplog.text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "rel: a",
        "gens: a\nrel: b",
        "gens: a a",
        "gens: a\nrel: a^0",
        "gens: a\nrel: a^",
        "gens: a\nrel: a = a = a",
        "gens: 1a",
        "groups: a",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_invalid_letters_rejected():
    with pytest.raises(ValueError):
        Presentation(("a",), (((1, 1),),))
    with pytest.raises(ValueError):
        Presentation(("a",), (((0, 2),),))


# -- degree one -------------------------------------------------------------


@pytest.mark.parametrize(
    "text, p, dim",
    [
        ("gens: a b\nrel: a b a^-1 b^-1", 2, 2),
        (TWISTED_PRESENTATION, 2, 5),
        ("gens: a\nrel: a", 2, 0),
        ("gens: a\nrel: a^2", 2, 1),
        ("gens: a\nrel: a^2", 3, 0),
        ("gens: a b\nrel: a^3 b^-3", 3, 2),
    ],
)
def test_h1_dimension(text, p, dim):
    assert len(h1_basis(parse_presentation(text), p)) == dim


def test_dual_cocycle():
    P = parse_presentation("gens: a b\nrel: a^2")
    assert dual_cocycle(P, "b").values == (0, 1)
    assert dual_cocycle(P, 0, 2).values == (1, 0)
    with pytest.raises(InvariantViolation):
        dual_cocycle(P, "a", 3)


def test_cup_eval_rejects_non_cocycles():
    P = parse_presentation("gens: a b\nrel: a b")
    with pytest.raises(InvariantViolation):
        cup_eval(P, Cocycle((1, 0)), Cocycle((1, 1)))
    with pytest.raises(ValueError):
        cup_eval(P, Cocycle((1, 1), 2), Cocycle((1, 2), 3))


# -- cup products -----------------------------------------------------------


@given(st.integers(2, 4).flatmap(lambda k: st.tuples(st.just(k), words(k), words(k))), st.sampled_from([2, 3, 5]), st.data())
def test_commutator_relator_identity(kuv, p, data):
    k, u, v = kuv
    rel = tuple(u) + tuple(v) + tuple((g, -e) for g, e in reversed(u)) + tuple((g, -e) for g, e in reversed(v))
    P = Presentation(tuple(f"x{i}" for i in range(k)), (rel,))
    if not P.relators:
        return
    vals = st.lists(st.integers(0, p - 1), min_size=k, max_size=k)
    f, g = Cocycle(data.draw(vals), p), Cocycle(data.draw(vals), p)
    (value,) = cup_eval(P, f, g)
    assert value == (f.evaluate(u) * g.evaluate(v) - f.evaluate(v) * g.evaluate(u)) % p
    assert cup_eval(P, f, f) == (0,)


def test_projective_plane_square_is_nonzero_mod_two():
    P = parse_presentation("gens: a\nrel: a^2")
    f = Cocycle((1,), 2)
    assert cup_eval(P, f, f) == (1,)
    assert not cup_vanishes(P, f, f)


def random_cocycle(basis, p, rng):
    k = len(basis[0].values)
    vals = [0] * k
    for b in basis:
        c = rng.randrange(p)
        vals = [(x + c * y) % p for x, y in zip(vals, b.values)]
    return Cocycle(vals, p)


@given(presentations(), st.sampled_from([2, 3]), st.randoms(use_true_random=False))
def test_cup_is_bilinear_and_graded_commutative(P, p, rng):
    basis = h1_basis(P, p)
    if not basis:
        return
    f, g, h = (random_cocycle(basis, p, rng) for _ in range(3))
    fh = Cocycle([(a + b) % p for a, b in zip(f.values, h.values)], p)
    lhs = cup_eval(P, fh, g)
    rhs = [(a + b) % p for a, b in zip(cup_eval(P, f, g), cup_eval(P, h, g))]
    assert list(lhs) == rhs
    swap = [(a + b) % p for a, b in zip(cup_eval(P, f, g), cup_eval(P, g, f))]
    assert is_coboundary_dual(P, swap, p)


@given(presentations(), st.sampled_from([2, 3, 5]), st.randoms(use_true_random=False))
def test_vanishing_matches_left_nullspace_route(P, p, rng):
    basis = h1_basis(P, p)
    if not basis:
        return
    for _ in range(3):
        f, g = random_cocycle(basis, p, rng), random_cocycle(basis, p, rng)
        assert cup_vanishes(P, f, g) == is_coboundary_dual(P, cup_eval(P, f, g), p)


def test_standard_presentation_recovers_every_small_graph():
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for mask in range(1 << len(pairs)):
            G = SimpleGraph(n, {e for k, e in enumerate(pairs) if mask >> k & 1})
            assert presentation_basis_graph(standard_raag_presentation(G)).graph == G


def test_standard_presentation_matches_vertex_cup_product():
    rng = random.Random(41)
    for _ in range(40):
        G = random_graph(6, rng.random(), rng)
        P = standard_raag_presentation(G)
        p = rng.choice([2, 3, 5])
        for _ in range(5):
            f = Cocycle([rng.randrange(p) for _ in range(6)], p)
            g = Cocycle([rng.randrange(p) for _ in range(6)], p)
            direct = cup_deg1(G, Degree1Vector(G, f.values, p), Degree1Vector(G, g.values, p))
            assert cup_vanishes(P, f, g) == direct.is_zero()


def test_twisted_presentation_against_change_of_variables():
    P = parse_presentation(TWISTED_PRESENTATION)
    G, T = twisted_raag(), twisted_basis()
    bg = presentation_basis_graph(P)
    assert bg.labels == ["x1*", "x2*", "x3*", "x4*", "x5*"]
    assert bg.graph == cohomology_basis_graph(G, T)
    assert bg.graph.edges == TWISTED_BASIS_GRAPH_EDGES
    assert find_subgraph_embedding(G, bg.graph) is not None
    # any pair of classes: pull back through the substitution and cup in the vertex duals
    rng = random.Random(42)
    for _ in range(100):
        f = Cocycle([rng.randrange(2) for _ in range(5)])
        g = Cocycle([rng.randrange(2) for _ in range(5)])
        fv = [sum(f.values[i] * T[i + 1, k] for i in range(5)) % 2 for k in range(1, 6)]
        gv = [sum(g.values[i] * T[i + 1, k] for i in range(5)) % 2 for k in range(1, 6)]
        direct = cup_deg1(G, Degree1Vector(G, fv, 2), Degree1Vector(G, gv, 2))
        assert cup_vanishes(P, f, g) == direct.is_zero()


def test_twisted_pairs():
    P = parse_presentation(TWISTED_PRESENTATION)
    d = [dual_cocycle(P, i) for i in range(5)]
    assert cup_eval(P, d[0], d[1]) == (1, 0, 0)
    assert not cup_vanishes(P, d[3], d[4])
    assert cup_vanishes(P, d[0], d[2])


# -- certificates -----------------------------------------------------------


def test_certificate_positive_on_planar_basis_graph():
    cert = certify_property(parse_presentation(TWISTED_PRESENTATION), "planar")
    assert cert.verdict and cert.conclusive
    assert cert.statement == "defining graph is planar"


def test_certificate_negative_is_inconclusive():
    cert = certify_property(standard_raag_presentation(complete_graph(5)), "planar")
    assert not cert.verdict and not cert.conclusive
    assert cert.statement == "inconclusive for upper bound; this basis graph is non-planar"
    assert cert.to_json()["basis_graph"] == complete_graph(5).to_json()


def test_free_group_is_edgeless():
    cert = certify_property(parse_presentation("gens: a b c"), "empty")
    assert cert.verdict and cert.level == 0


def test_certificate_levels():
    P = standard_raag_presentation(cycle_graph(5))
    assert certify_property(P, "outerplanar").verdict
    assert not certify_property(P, "linear-forest").verdict
    with pytest.raises(ValueError):
        certify_property(P, "toroidal")


def test_matrix_form_of_basis():
    bg = presentation_basis_graph(parse_presentation("gens: a b c\nrel: a b^-1"), 3)
    assert [f.values for f in bg.basis] == [(1, 1, 0), (0, 0, 1)]
    assert bg.labels == ["a*+b*", "c*"]
