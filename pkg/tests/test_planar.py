from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclepack.errors import (
    DegenerateFamily,
    MalformedRotation,
    MultiComponentFamily,
    NotACycle,
    NotConnected,
    NotLaminar,
    CycleNotInFamily,
)
from cyclepack.harness.figures import figure1
from cyclepack.harness.generators import k4, wheel
from cyclepack.harness.grid import Grid
from cyclepack.lp import is_redundant
from cyclepack.planar import (
    Cycle,
    EmbeddedGraph,
    classify_family,
    compute_faces,
    cycle_sides,
    is_laminar,
    neighbours,
    side_contains_cycle,
    sides_disjoint_pair,
)

from strategies import nested_instances, random_planar_instances


def triangle() -> EmbeddedGraph:
    return EmbeddedGraph.from_straight_line({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [(0, 1), (1, 2), (2, 0)])


# ----------------------------------------------------------------------
# faces


def test_theta_has_three_faces(theta_graph):
    assert len(compute_faces(theta_graph)) == 3


def test_triangle_has_two_faces():
    assert len(compute_faces(triangle())) == 2


def test_k4_has_four_faces():
    assert len(compute_faces(k4())) == 4


def test_every_dart_on_exactly_one_face(theta_graph):
    darts = sorted(d for f in compute_faces(theta_graph) for d in f)
    assert darts == list(range(2 * len(theta_graph.edges)))


@given(random_planar_instances())
def test_euler_formula_on_generated_graphs(inst):
    g = inst.graph
    assert len(g.vertices) - len(g.edges) + g.num_faces == 2


def test_loop_rejected():
    with pytest.raises(MalformedRotation):
        EmbeddedGraph((0,), ((0, 0),), {0: (0, 0)})


def test_rotation_must_list_incident_edges():
    with pytest.raises(MalformedRotation):
        EmbeddedGraph((0, 1), ((0, 1),), {0: (0,), 1: ()})


def test_non_planar_rotation_rejected():
    g = k4()
    rot = dict(g.rotation)
    a, b, c = rot[3]
    rot[3] = (a, c, b)
    with pytest.raises(MalformedRotation):
        EmbeddedGraph(g.vertices, g.edges, rot)


def test_disconnected_graph_rejected_unless_allowed():
    verts = (0, 1, 2, 3)
    edges = ((0, 1), (0, 1), (2, 3), (2, 3))
    rot = {0: (0, 1), 1: (1, 0), 2: (2, 3), 3: (3, 2)}
    with pytest.raises(NotConnected):
        EmbeddedGraph(verts, edges, rot)
    g = EmbeddedGraph(verts, edges, rot, allow_disconnected=True)
    assert g.num_faces == 4
    with pytest.raises(MultiComponentFamily):
        classify_family(g, [Cycle.from_edges(g, [0, 1]), Cycle.from_edges(g, [2, 3])])


# ----------------------------------------------------------------------
# cycles and sides


def test_theta_cycle_side_sizes(theta_graph, theta_cycles):
    sizes = sorted(len(s) for s in cycle_sides(theta_graph, theta_cycles["C12"]))
    assert sizes == [1, 2]


def test_triangle_sides_one_face_each():
    g = triangle()
    c = Cycle.from_edges(g, [0, 1, 2])
    assert sorted(len(s) for s in cycle_sides(g, c)) == [1, 1]


@pytest.mark.parametrize("tri", [[0, 1, 2], [0, 3, 4], [1, 4, 5], [2, 3, 5]])
def test_k4_triangle_sides(tri):
    g = k4()
    assert sorted(len(s) for s in cycle_sides(g, Cycle.from_edges(g, tri))) == [1, 3]


def test_not_a_cycle():
    g = k4()
    with pytest.raises(NotACycle):
        Cycle.from_edges(g, [0, 1])
    with pytest.raises(NotACycle):
        Cycle.from_edges(g, [0, 1, 3])


def test_parallel_pair_is_a_cycle(theta_graph):
    c = Cycle.from_edges(theta_graph, [2, 0])
    assert len(c) == 2 and c.vertex_set == {1, 2}


def _boundary(g: EmbeddedGraph, faces: frozenset[int]) -> set[int]:
    return {e for e in range(len(g.edges)) if len({f in faces for f in g.edge_faces(e)}) == 2}


@given(random_planar_instances(kinds=("all",)))
def test_sides_partition_faces_with_cycle_as_boundary(inst):
    g = inst.graph
    for c in list(inst.cycles().values())[:25]:
        a, b = cycle_sides(g, c)
        assert a and b and not (a & b)
        assert a | b == frozenset(range(g.num_faces))
        assert _boundary(g, a) == set(c.edges)


@given(
    st.integers(0, 4), st.integers(0, 3), st.integers(1, 5), st.integers(1, 4),
)
def test_rectangle_inner_side_matches_area(x0, y0, w, h):
    grid = Grid(6, 5)
    x1, y1 = min(6, x0 + w), min(5, y0 + h)
    c = grid.rect(x0, y0, x1, y1)
    sizes = sorted(len(s) for s in cycle_sides(grid.graph, c))
    area = (x1 - x0) * (y1 - y0)
    assert sizes == sorted([area, grid.graph.num_faces - area])


# ----------------------------------------------------------------------
# containment and laminarity


def test_side_containment_examples(theta_graph, theta_cycles):
    g = theta_graph
    s12 = cycle_sides(g, theta_cycles["C12"])
    s23 = cycle_sides(g, theta_cycles["C23"])
    small = min(s12, key=len)
    assert not side_contains_cycle(small, s23)
    assert side_contains_cycle(small, s12)
    grid = Grid(4, 4)
    outer, inner = grid.rect(0, 0, 4, 4), grid.rect(1, 1, 2, 2)
    inside = min(cycle_sides(grid.graph, outer), key=lambda s: 0 in s)
    assert side_contains_cycle(inside, cycle_sides(grid.graph, inner))


def test_theta_pair_laminar(theta_graph, theta_cycles):
    ok, pair = is_laminar(theta_graph, [theta_cycles["C12"], theta_cycles["C23"]])
    assert ok and pair is None


def test_singleton_laminar(theta_graph, theta_cycles):
    assert is_laminar(theta_graph, [theta_cycles["C13"]])[0]


def _brute_laminar(g, c1, c2) -> bool:
    s1, s2 = cycle_sides(g, c1), cycle_sides(g, c2)
    return any(not (a & b) for a in s1 for b in s2)


def test_k4_triangles_sharing_an_edge_against_exhaustive_sides():
    g = k4()
    tris = [[0, 1, 2], [0, 3, 4], [1, 4, 5], [2, 3, 5]]
    for i in range(4):
        for j in range(i + 1, 4):
            c1, c2 = Cycle.from_edges(g, tris[i]), Cycle.from_edges(g, tris[j])
            assert is_laminar(g, [c1, c2])[0] == _brute_laminar(g, c1, c2)


def _open_overlap(r1, r2) -> bool:
    return min(r1[2], r2[2]) > max(r1[0], r2[0]) and min(r1[3], r2[3]) > max(r1[1], r2[1])


def _nested(r1, r2) -> bool:
    return r1[0] >= r2[0] and r1[1] >= r2[1] and r1[2] <= r2[2] and r1[3] <= r2[3]


rects = st.tuples(st.integers(0, 4), st.integers(0, 3), st.integers(1, 3), st.integers(1, 3)).map(
    lambda t: (t[0], t[1], min(6, t[0] + t[2]), min(5, t[1] + t[3]))
)


@given(rects, rects)
def test_rectangle_laminarity_matches_geometry(r1, r2):
    grid = Grid(6, 5)
    c1, c2 = grid.rect(*r1), grid.rect(*r2)
    expected = not _open_overlap(r1, r2) or _nested(r1, r2) or _nested(r2, r1)
    assert is_laminar(grid.graph, [c1, c2])[0] == expected


def test_crossing_rectangles_raise_not_laminar():
    grid = Grid(3, 3)
    with pytest.raises(NotLaminar) as info:
        classify_family(grid.graph, [grid.rect(0, 0, 2, 2), grid.rect(1, 1, 3, 3)])
    assert info.value.pair == (0, 1)


def test_duplicate_cycle_is_degenerate():
    grid = Grid(2, 2)
    with pytest.raises(DegenerateFamily):
        classify_family(grid.graph, [grid.rect(0, 0, 1, 1), grid.rect(0, 0, 1, 1)])


# ----------------------------------------------------------------------
# classification


def test_theta_pair_classification(theta_graph, theta_cycles):
    fam = classify_family(theta_graph, [theta_cycles["C12"], theta_cycles["C23"]])
    assert fam.L1 == (0, 1)
    # exactly two one-sided sides: a chain, hence a single homotopy class
    assert fam.homotopic(0, 1)
    assert fam.components() == {0: [0, 1]}


def test_figure1_classification():
    g, named = figure1()
    names = list(named)
    fam = classify_family(g, list(named.values()))
    one_sided = {names[i] for i in fam.L1}
    assert one_sided == {"c", "d", "f"}
    assert {names[i] for i in fam.two_sided} == {"a", "b", "e"}
    assert {names[i] for i in fam.ids if is_redundant(fam, i)} == {"a", "b", "e"}


def test_neighbour_examples(theta_graph, theta_cycles):
    fam = classify_family(theta_graph, [theta_cycles["C12"], theta_cycles["C23"]])
    assert neighbours(fam, 0)[0] == {0, 1}
    g, named = figure1()
    names = list(named)
    fam1 = classify_family(g, list(named.values()))
    d, b = names.index("d"), names.index("b")
    assert {b, d} <= neighbours(fam1, d)[0]
    grid = Grid(5, 2)
    fam2 = classify_family(grid.graph, [grid.rect(0, 0, 1, 1), grid.rect(3, 0, 4, 1)])
    assert neighbours(fam2, 0) == (frozenset({0}), frozenset({0}))
    with pytest.raises(CycleNotInFamily):
        neighbours(fam2, 7)


def test_two_nested_cycles_sharing_a_vertex_form_a_chain():
    grid = Grid(3, 3)
    fam = classify_family(grid.graph, [grid.rect(0, 0, 3, 3), grid.rect(0, 0, 1, 1)])
    assert fam.L1 == (0, 1)
    assert fam.homotopic(0, 1)


@given(nested_instances())
def test_nested_generator_families_are_laminar_and_well_classified(inst):
    cycles = inst.cycles()
    ids = sorted(cycles)
    fam = classify_family(inst.graph, [cycles[i] for i in ids], ids)
    for c, sides in fam.os_sides.items():
        for s in sides:
            assert [i for i in ids if fam.inside(s, i)] == [c]
    for a in ids:
        assert fam.homotopic(a, a)
        for b in ids:
            assert fam.homotopic(a, b) == fam.homotopic(b, a)
            for c in ids:
                if fam.homotopic(a, b) and fam.homotopic(b, c):
                    assert fam.homotopic(a, c)


@given(nested_instances())
def test_is_laminar_agrees_with_pairwise_side_check(inst):
    cycles = list(inst.cycles().values())
    g = inst.graph
    brute = all(_brute_laminar(g, a, b) for i, a in enumerate(cycles) for b in cycles[i + 1 :])
    assert is_laminar(g, cycles)[0] == brute


def test_wheel_rim_and_spoke_triangles_laminar():
    g = wheel(5)
    rim = Cycle.from_edges(g, [5, 6, 7, 8, 9])
    tri = Cycle.from_edges(g, [0, 1, 5])
    assert sides_disjoint_pair(cycle_sides(g, rim), cycle_sides(g, tri)) is not None
