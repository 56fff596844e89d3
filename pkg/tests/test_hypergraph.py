import random
from itertools import permutations, product

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_node_match

from intervalos.core.errors import SizeLimitExceeded
from intervalos.core.model import Hypergraph, hypergraph_of
from intervalos.hypergraph import (
    build_join_tree,
    canonical_form,
    drop_singleton_vertices,
    find_berge_cycle,
    gyo_reduce,
    incidence_graph,
    induced_set,
    is_alpha_acyclic,
    is_berge_acyclic,
    is_conformal,
    is_cycle_free,
    is_gamma_acyclic,
    is_iota_acyclic,
    is_iota_acyclic_semantic,
    isomorphism_classes,
    minimisation,
)
from intervalos.reduction.tau import tau_size


def H(**edges) -> Hypergraph:
    return Hypergraph.from_edges({lbl: set(vs) for lbl, vs in edges.items()}, interval="ABCDEF")


def test_gyo_path_and_join_tree():
    h = H(R="AB", S="BC", T="CD")
    residual, trace = gyo_reduce(h)
    assert not residual.edges
    assert {step.rule for step in trace} == {1, 2}
    jt = build_join_tree(h)
    assert nx.is_tree(jt.tree)
    assert jt.satisfies_connectivity(h)


def test_gyo_keeps_triangle():
    h = H(R="AB", S="BC", T="AC")
    residual, _ = gyo_reduce(h)
    assert set(residual.labels) == {"R", "S", "T"}
    assert build_join_tree(h) is None


def test_join_tree_links_disconnected_components():
    h = H(R="AB", S="B", T="CD")
    jt = build_join_tree(h)
    assert nx.is_tree(jt.tree)
    assert set(jt.tree.nodes) == {"R", "S", "T"}


def test_alpha_but_not_gamma():
    h = H(R="ABC", S="BC", T="AB")
    assert is_alpha_acyclic(h)
    assert not is_gamma_acyclic(h)
    assert not is_iota_acyclic(h)


@pytest.mark.parametrize(
    "edges, alpha, gamma, iota, berge",
    [
        ({"R": "AB", "S": "BC", "T": "AC"}, False, False, False, False),
        ({"R": "ABC", "S": "ABC", "T": "ABC"}, True, True, False, False),
        ({"R": "ABC", "S": "ABC", "T": "A"}, True, True, True, False),
        ({"R": "AB", "S": "BC", "T": "CD"}, True, True, True, True),
        ({"R": "AB", "S": "AC", "T": "AD"}, True, True, True, True),
    ],
)
def test_acyclicity_classes(edges, alpha, gamma, iota, berge):
    h = H(**edges)
    assert is_alpha_acyclic(h) is alpha
    assert is_gamma_acyclic(h) is gamma
    assert is_iota_acyclic(h) is iota
    assert is_berge_acyclic(h) is berge


def test_berge_cycle_of_triangle_is_valid():
    h = H(R="AB", S="BC", T="AC")
    cycle = find_berge_cycle(h)
    cycle.validate(h)
    assert cycle.length == 3
    assert set(cycle.edges) == {"R", "S", "T"}
    assert set(cycle.vertices) == {"A", "B", "C"}


def test_double_edge_has_only_short_cycle():
    h = H(R="AB", S="AB")
    assert find_berge_cycle(h, 3) is None
    assert find_berge_cycle(h, 2).length == 2


def test_literal_definitions():
    h = H(R="AB", S="BC", T="AC")
    assert induced_set(h, "AB") == frozenset({frozenset("AB"), frozenset("B"), frozenset("A")})
    assert minimisation([{"A"}, {"A", "B"}, {"B"}]) == frozenset({frozenset("AB")})
    assert not is_conformal(h)
    assert not is_cycle_free(h)
    assert is_conformal(H(R="ABC", S="AB"))


def test_vertex_cap_applies():
    h = H(R="AB", S="BC")
    with pytest.raises(SizeLimitExceeded):
        is_gamma_acyclic(h, cap=2)


def test_acyclicity_implication_chain(make_hypergraph):
    rng = random.Random(99)
    for _ in range(300):
        h = make_hypergraph(rng)
        berge, iota = is_berge_acyclic(h), is_iota_acyclic(h)
        gamma, alpha = is_gamma_acyclic(h), is_alpha_acyclic(h)
        assert not berge or iota
        assert not iota or gamma
        assert not gamma or alpha


@pytest.mark.slow
def test_iota_matches_tau_members(make_hypergraph):
    rng = random.Random(123)
    checked = 0
    while checked < 200:
        h = make_hypergraph(rng, max_vertices=5, max_edges=5)
        if tau_size(h) > 5000:
            continue
        assert is_iota_acyclic(h) == is_iota_acyclic_semantic(h), str(h)
        checked += 1


def test_canonical_form_agrees_with_graph_isomorphism(make_hypergraph):
    rng = random.Random(31)
    match = categorical_node_match("kind", None)
    hs = [make_hypergraph(rng, max_vertices=4, max_edges=3) for _ in range(40)]
    for a in hs:
        for b in hs:
            same_form = canonical_form(a) == canonical_form(b)
            iso = len(a.vertices) == len(b.vertices) and nx.is_isomorphic(
                incidence_graph(a), incidence_graph(b), node_match=match
            )
            assert same_form == iso


def test_isomorphism_ignores_labels_and_names():
    a = H(R="AB", S="BC")
    b = Hypergraph.from_edges({"X": {"C", "D"}, "Y": {"D", "E"}})
    c = H(R="AB", S="AB")
    assert isomorphism_classes([a, b, c]) == [[0, 1], [2]]


def test_drop_singleton_vertices():
    h = H(R="ABC", S="BC", T="AD")
    out = drop_singleton_vertices(h)
    assert out.edge("R") == frozenset("ABC")
    assert out.edge("T") == frozenset("A")
    assert "D" not in out.vertices
    assert drop_singleton_vertices(H(R="A", S="B")).edges == ()


def test_hypergraph_of_query_marks_intervals(triangle):
    h = hypergraph_of(triangle)
    assert not is_alpha_acyclic(h)
    assert h.interval_vertices == frozenset("ABC")


def _has_berge_cycle(h: Hypergraph, min_len: int) -> bool:
    """Enumeración directa: secuencias de aristas distintas con representantes distintos."""
    for k in range(min_len, len(h.edges) + 1):
        for seq in permutations(h.labels, k):
            shared = [h.edge(seq[i]) & h.edge(seq[(i + 1) % k]) for i in range(k)]
            if any(len(set(vs)) == k for vs in product(*shared)):
                return True
    return False


def test_berge_search_matches_enumeration(make_hypergraph):
    rng = random.Random(77)
    for _ in range(300):
        h = make_hypergraph(rng, max_vertices=5, max_edges=5)
        for min_len in (2, 3):
            cycle = find_berge_cycle(h, min_len)
            assert (cycle is None) == (not _has_berge_cycle(h, min_len)), (str(h), min_len)
            if cycle is not None:
                assert cycle.length >= min_len


def test_dropping_singletons_keeps_acyclicity_classes(make_hypergraph):
    rng = random.Random(55)
    for _ in range(300):
        h = make_hypergraph(rng, max_vertices=6, max_edges=5)
        g = drop_singleton_vertices(h)
        assert is_alpha_acyclic(g) == is_alpha_acyclic(h), str(h)
        assert is_iota_acyclic(g) == is_iota_acyclic(h), str(h)
        assert is_berge_acyclic(g) == is_berge_acyclic(h), str(h)
