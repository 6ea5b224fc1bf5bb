import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from quandlekit.homology import NotAQuandleError, homology
from quandlekit.quandle import (inner_orbits, is_connected, make_alexander, make_alexander_poly,
                                make_cyclic_rack, make_dihedral, make_trivial)
from quandlekit.spaces import (action_quandle_census, build_extended_rack_space_cells,
                               build_rack_space_cells, component_count, dot_export,
                               extended_quandle_census, quandle_graph, rack_graph, space_homology)

R3, R4, T3 = make_dihedral(3), make_dihedral(4), make_trivial(3)
S4 = make_alexander_poly(2, [1, 1, 1])


def test_rack_space_cell_counts_and_degree_one_faces():
    P = build_rack_space_cells(R3, 3)
    assert [len(P.cells[n]) for n in range(4)] == [1, 3, 9, 27]
    # d_1^0 = d_1^1 both drop the first coordinate
    assert P.face(2, 1, 0, (0, 1)) == P.face(2, 1, 1, (0, 1)) == (1,)
    assert P.face(2, 2, 1, (0, 1)) == (2,) and P.face(2, 2, 0, (0, 1)) == (0,)
    assert P.check_relations()
    with pytest.raises(ValueError):
        build_rack_space_cells(R3, 5)


def test_extended_rack_space_cells():
    P = build_extended_rack_space_cells(R3, 2)
    assert [len(P.cells[n]) for n in range(3)] == [3, 9, 27]
    assert (P.face(1, 1, 0, (0, 1)), P.face(1, 1, 1, (0, 1))) == ((0,), (2,))
    Q = build_extended_rack_space_cells(T3, 1)
    assert all(Q.face(1, 1, 0, x) == Q.face(1, 1, 1, x) for x in Q.cells[1])


@pytest.mark.parametrize("X", [R3, R4, T3, S4, make_cyclic_rack(3), make_alexander(5, 2)])
def test_precubic_relations(X):
    deg = 3 if X.size <= 4 else 2
    assert build_rack_space_cells(X, deg + 1).check_relations()
    assert build_extended_rack_space_cells(X, deg).check_relations()


def test_broken_faces_are_detected():
    P = build_rack_space_cells(R3, 3)
    # a fake "rack" that is not right distributive breaks the relations
    P.rack = type(R3).__new__(type(R3))
    object.__setattr__(P.rack, "table", ((1, 0, 0), (0, 1, 1), (2, 2, 2)))
    object.__setattr__(P.rack, "name", "broken")
    assert P.relation_failures()


def test_graph_examples():
    Gq = quandle_graph(R3)
    assert len(Gq.vertices) == 3 and len(Gq.edges) == 6
    assert nx.is_strongly_connected(nx.MultiDiGraph([(s, t) for s, _, t in Gq.edges]))
    G = rack_graph(T3)
    assert len(G.loops) == 9 and component_count(G) == 3
    assert component_count(rack_graph(R4)) == 2 and component_count(rack_graph(R3)) == 1
    assert all(t == R3.op(*lab) for _, lab, t in rack_graph(R3).edges)
    assert not any(a == b for _, (a, b), _ in Gq.edges)
    with pytest.raises(NotAQuandleError):
        quandle_graph(make_cyclic_rack(2))


def test_dot_export():
    one = dot_export(rack_graph(make_trivial(1)))
    assert one.count("->") == 1 and '0 -> 0 [label="(0,0)"]' in one
    text = dot_export(quandle_graph(R3))
    assert text.count("->") == 6
    assert dot_export(quandle_graph(R3)) == text


FAMILY = st.one_of(st.integers(1, 7).map(make_dihedral), st.integers(1, 5).map(make_trivial),
                   st.integers(1, 6).map(make_cyclic_rack),
                   st.sampled_from([(5, 2), (5, 3), (7, 2), (8, 3)]).map(lambda p: make_alexander(*p)))


@given(FAMILY)
@settings(max_examples=40, deadline=None)
def test_weak_equals_strong_connectivity(X):
    G = nx.MultiDiGraph()
    G.add_nodes_from(range(X.size))
    G.add_edges_from((s, t) for s, _, t in rack_graph(X).edges)
    assert nx.number_weakly_connected_components(G) == nx.number_strongly_connected_components(G)
    assert component_count(rack_graph(X)) == nx.number_weakly_connected_components(G)
    assert component_count(rack_graph(X)) == len(inner_orbits(X).blocks)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_census_formulas(n):
    X = make_dihedral(n) if n != 4 else S4
    c = extended_quandle_census(X)
    assert c.totals() == (n, n * n, n ** 3 + n, n ** 4 + 2 * n * n - n)
    assert c.counts[3]["cone"] == 2 * n * n - n
    assert sum(1 for _, case, _ in c.cones if case == 1) == n * n
    a = action_quandle_census(X)
    assert a.totals() == (n, n * n, n ** 3, n ** 4 + n * n)


def test_census_examples_and_case_two_attachments():
    assert extended_quandle_census(R3).totals() == (3, 9, 30, 96)
    assert extended_quandle_census(make_trivial(2)).totals() == (2, 4, 10, 22)
    cones = {lab: (case, att) for lab, case, att in extended_quandle_census(R3).cones}
    assert cones[(0, 0, 0)][0] == 1
    case, att = cones[(0, 0, 1)]
    assert case == 2 and att == ["e[0, 0, 1]", "D[0, 0]", "D[2, 2]"]
    data = json.loads(extended_quandle_census(R3).to_json())
    assert data["totals"] == [3, 9, 30, 96] and data["cells"]["2"]["capping"] == 3
    with pytest.raises(NotAQuandleError):
        extended_quandle_census(make_cyclic_rack(3))


def test_space_homology_examples():
    assert str(space_homology(R4, "extended_rack", 0)) == "Z^2"
    assert str(space_homology(R3, "extended_quandle", 0)) == "Z"
    assert str(space_homology(R3, "extended_quandle", 1)) == "0"
    with pytest.raises(ValueError):
        space_homology(R3, "torus", 0)
    with pytest.raises(NotAQuandleError):
        space_homology(make_cyclic_rack(3), "extended_quandle", 0)


@pytest.mark.parametrize("X", [R3, R4, T3, S4, make_alexander(5, 2), make_cyclic_rack(3)])
def test_space_homology_equals_algebra(X):
    for i in (1, 2):
        assert space_homology(X, "extended_rack", i - 1) == homology(X, "R", i)
        if X.is_quandle:
            assert space_homology(X, "extended_quandle", i - 1) == homology(X, "Q", i)
    # the rack space carries the rack complex in the same degree
    assert space_homology(X, "rack", 1) == homology(X, "R", 1)


@pytest.mark.parametrize("X", [R3, R4, T3, S4, make_dihedral(5), make_dihedral(6), make_trivial(2)])
def test_connectivity_four_ways(X):
    k = len(inner_orbits(X).blocks)
    assert component_count(rack_graph(X)) == component_count(quandle_graph(X)) == k
    assert space_homology(X, "extended_rack", 0).free_rank == k
    assert homology(X, "R", 1).free_rank == homology(X, "Q", 1).free_rank == k
    assert is_connected(X) == (k == 1)
