import random
from collections import Counter

from hypothesis import given, settings, strategies as st

from plane_cremona.cremona import SIGMA, TAU, resolve_base_points
from plane_cremona.catalog import NORMAL_FORMS, normal_form_at
from plane_cremona.lengths import sample_values
from plane_cremona.map_language import parse_map
from plane_cremona.proximity import (
    EnrichedGraph,
    ProximityGraph,
    canonical_key,
    enriched_graph_of,
    enumerate_enriched,
    enumerate_graphs,
    find_unexpected_line,
    graph_of,
    is_admissible,
    isomorphic,
    to_dot,
    violations,
)
from plane_cremona.tables import catalog_graph, plain_graph

CUBIC = (2, 1, 1, 1, 1)


def test_graph_of_sigma():
    g = graph_of(resolve_base_points(SIGMA))
    assert g.weights == (1, 1, 1) and not g.arcs


def test_graph_of_tau_is_chain():
    g = graph_of(resolve_base_points(TAU))
    assert g.weights == (1, 1, 1) and len(g.arcs) == 2
    assert g.components() == 1 and not g.satellite_pairs()


def test_graph_of_first_normal_form():
    g = graph_of(resolve_base_points(parse_map("[x*z^2 + y^3 : y*z^2 : z^3]")))
    assert sorted(g.weights) == [1, 1, 1, 1, 2] and len(g.arcs) == 5
    assert isomorphic(g, plain_graph(1))
    assert len(g.satellite_pairs()) == 1


def test_two_weight_one_arrows_into_a_simple_point():
    g = ProximityGraph.of((1, 1, 1), [(1, 0), (2, 0)])
    assert not is_admissible(g)
    assert any("proximity inequality" in v for v in violations(g))


def test_admissibility_basics():
    assert is_admissible(ProximityGraph.of(CUBIC, ()))
    assert is_admissible(ProximityGraph.of((1,), ()))
    assert not is_admissible(ProximityGraph.of((1, 1), [(0, 1), (1, 0)]))
    assert not is_admissible(ProximityGraph.of((1, 1), [(0, 0)]))
    # two targets that are not joined
    assert not is_admissible(ProximityGraph.of((2, 1, 1), [(1, 0), (2, 0), (2, 1), (1, 2)]))
    assert not is_admissible(ProximityGraph.of((3, 1, 1, 1), [(1, 0), (3, 0), (3, 2)]))


def test_isomorphism_examples():
    g = plain_graph(7)
    assert isomorphic(g, g)
    assert not isomorphic(plain_graph(19), plain_graph(20))
    assert not isomorphic(catalog_graph(28), catalog_graph(29))
    assert isomorphic(g, g.relabel([4, 3, 2, 1, 0]))


def test_enumeration_counts():
    graphs = enumerate_graphs()
    assert len(graphs) == 21
    assert Counter(len(g.arcs) for g in graphs) == {0: 1, 1: 2, 2: 5, 3: 7, 4: 5, 5: 1}
    assert all(is_admissible(g) for g in graphs)
    for k in range(1, 22):
        assert sum(isomorphic(g, plain_graph(k)) for g in graphs) == 1


def test_enriched_enumeration():
    found = enumerate_enriched()
    assert len(found) == 31
    assert sum(1 for e in found if e.line is not None) == 10
    for n in NORMAL_FORMS:
        assert sum(isomorphic(e, catalog_graph(n)) for e in found) == 1


def test_enumeration_does_not_depend_on_arc_order():
    keys = {canonical_key(g) for g in enumerate_graphs()}
    rng = random.Random(3)
    for _ in range(2):
        order = list(range(20))
        rng.shuffle(order)
        assert {canonical_key(g) for g in enumerate_graphs(order=order)} == keys


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(5)), st.integers(1, 21))
def test_canonical_key_is_label_free(perm, k):
    g = plain_graph(k)
    assert canonical_key(g.relabel(perm)) == canonical_key(g)
    e = catalog_graph(k)
    assert canonical_key(e.relabel(perm)) == canonical_key(e)


def test_unexpected_line():
    tree = resolve_base_points(normal_form_at(28, {"γ": 3}))
    L = find_unexpected_line(tree)
    assert str(L.line) == "z"
    assert sorted(str(tree.points[i]) for i in L.members) == ["[0:1:0]", "[1:0:0]", "[1:1:0]"]
    assert find_unexpected_line(resolve_base_points(normal_form_at(31, {"a": 2, "b": 3}))) is None
    tree17 = resolve_base_points(normal_form_at(17, {}))
    L = find_unexpected_line(tree17)
    assert L is not None and any(tree17.points[i].order > 0 for i in L.members)


def test_catalog_enriched_graphs_match_rows():
    for n in NORMAL_FORMS:
        tree = resolve_base_points(normal_form_at(n, sample_values(n)))
        assert isomorphic(enriched_graph_of(tree), catalog_graph(n)), n


def test_dot_output():
    dot = to_dot(EnrichedGraph(ProximityGraph.of((1, 1, 1), [(1, 0)]), frozenset({0, 1, 2})))
    assert dot.startswith("digraph G {") and dot.endswith("}")
    assert "v1 -> v0;" in dot and "style=dashed" in dot
    assert 'v0 [label="1", shape=doublecircle]' in dot
    assert 'v1 [label="1", shape=circle]' in dot


def test_to_json_is_sorted():
    g = ProximityGraph.of(CUBIC, [(4, 3), (1, 0)])
    assert g.to_json() == {"weights": [2, 1, 1, 1, 1], "arcs": [[1, 0], [4, 3]]}
