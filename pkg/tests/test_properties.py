import random

import pytest

from cbg.errors import GuardError
from cbg.graphs import (
    SimpleGraph,
    are_isomorphic,
    complete_bipartite,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    path_graph,
    petersen_graph,
    random_graph,
    star_graph,
)
from cbg.planarity import is_planar_lr
from cbg.properties import (
    PROPERTY_LADDER,
    complement_is_outerplanar,
    complement_is_planar,
    is_linear_forest,
    is_linkless,
    is_outerplanar,
    mu_at_most,
    petersen_family,
    property_index,
    property_report,
)


def with_apex(G):
    a = G.n + 1
    return SimpleGraph(a, G.edges | {(v, a) for v in G.vertices})


def linear_forest_oracle(G):
    # each component is a path: |E| = |V| - 1 and degrees at most 2
    for comp in connected_components(G):
        H = G.induced(comp)
        if H.m != H.n - 1 or any(d > 2 for d in H.degrees()):
            return False
    return True


@pytest.mark.parametrize(
    "G, verdicts",
    [
        (complete_graph(4), {"planar": True, "outerplanar": False}),
        (complete_graph(5), {"planar": False, "linkless": True}),
        (complete_graph(6), {"linkless": False}),
        (petersen_graph(), {"linkless": False, "planar": False}),
        (cycle_graph(5), {"outerplanar": True, "linear-forest": False}),
        (path_graph(4), {"linear-forest": True, "empty": False}),
        (empty_graph(3), {"empty": True}),
        (complete_bipartite(3, 3), {"planar": False, "linkless": True}),
        (complete_bipartite(2, 3), {"outerplanar": False, "planar": True}),
    ],
)
def test_ladder_fixtures(G, verdicts):
    for name, expected in verdicts.items():
        assert mu_at_most(G, property_index(name)) == expected, name


def test_ladder_is_monotone():
    rng = random.Random(9)
    for _ in range(150):
        G = random_graph(rng.randint(1, 8), rng.random(), rng)
        flags = [test(G) for _, test in PROPERTY_LADDER]
        for k in range(len(flags) - 1):
            assert not flags[k] or flags[k + 1], (G, flags)


def test_outerplanar_matches_apex_planarity():
    rng = random.Random(10)
    for _ in range(200):
        G = random_graph(rng.randint(1, 8), rng.uniform(0.2, 0.6), rng)
        assert is_outerplanar(G) == is_planar_lr(with_apex(G))


def test_linear_forest_matches_oracle():
    rng = random.Random(12)
    for _ in range(200):
        G = random_graph(rng.randint(1, 9), rng.uniform(0.05, 0.4), rng)
        assert is_linear_forest(G) == linear_forest_oracle(G)


def test_petersen_family():
    fam = petersen_family()
    assert len(fam) == 7
    assert all(F.m == 15 for F in fam)
    assert sorted(F.n for F in fam) == [6, 7, 7, 8, 8, 9, 10]
    assert any(are_isomorphic(F, petersen_graph()) for F in fam)
    assert all(not is_linkless(F) for F in fam)


def test_linkless_guard():
    with pytest.raises(GuardError):
        is_linkless(empty_graph(13))


def test_mu_bounds():
    with pytest.raises(GuardError):
        mu_at_most(complete_graph(3), 5)
    with pytest.raises(ValueError):
        mu_at_most(complete_graph(3), -1)
    with pytest.raises(ValueError):
        property_index("toroidal")
    assert property_index("Linear_Forest") == 1


def test_complement_verdicts_flag_twins():
    v = complement_is_planar(star_graph(3))
    assert v.has_twins and not v.hypothesis_met
    assert bool(v) == v.holds
    w = complement_is_outerplanar(path_graph(4))
    assert w.holds and w.hypothesis_met


def test_property_report_shape():
    rep = property_report(complete_graph(5))
    assert rep["planar"] is False and rep["linkless"] is True
    assert set(rep["complement"]) == {"planar", "outerplanar", "has_twins"}
