from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given

from cyclepack.errors import NotLaminar, UnknownCycle
from cyclepack.harness.figures import figure1, figure3, polygon_family
from cyclepack.harness.grid import Grid
from cyclepack.lp import EDGE, VERTEX, solve_packing_lp
from cyclepack.planar import Cycle, EmbeddedGraph, is_laminar
from cyclepack.reduction import disjointness_equivalent, edge_to_vertex, lift_solution

from strategies import nested_instances

F = Fraction


def _pt(angle: float, r: float) -> tuple[float, float]:
    return (round(r * math.cos(math.radians(angle)), 6), round(r * math.sin(math.radians(angle)), 6))


def hub_with_six_spokes():
    """Four cycles through a hub of degree six; two pairs share a spoke, one cycle nests in another."""
    hub = (0.0, 0.0)
    a, b, c, d, e, f = (_pt(t, 4) for t in (130, 80, 25, -20, -115, -140))
    return polygon_family(
        {
            "red": [hub, a, b],
            "sky": [hub, b, c],
            "blue": [hub, f, _pt(-80, 8), d],
            "green": [hub, e, d],
        }
    )


def test_triangle_maps_to_triangle():
    g = EmbeddedGraph.from_straight_line({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [(0, 1), (1, 2), (2, 0)])
    red = edge_to_vertex(g, {0: Cycle.from_edges(g, [0, 1, 2])})
    assert red.target_graph.vertices == (0, 1, 2)
    assert len(red.target_graph.edges) == 3
    img = red.image(0)
    assert img.vertex_set == {0, 1, 2} and len(img) == 3


def test_vertex_touching_cycles_become_disjoint():
    grid = Grid(2, 2)
    cycles = {0: grid.rect(0, 0, 1, 1), 1: grid.rect(1, 1, 2, 2)}
    assert cycles[0].vertex_set & cycles[1].vertex_set
    red = edge_to_vertex(grid.graph, cycles)
    assert red.image(0).vertex_set.isdisjoint(red.image(1).vertex_set)
    assert disjointness_equivalent(red)


def test_edge_sharing_cycles_keep_a_common_node():
    grid = Grid(2, 1)
    cycles = {0: grid.rect(0, 0, 1, 1), 1: grid.rect(1, 0, 2, 1)}
    red = edge_to_vertex(grid.graph, cycles)
    shared = cycles[0].edge_set & cycles[1].edge_set
    assert red.image(0).vertex_set & red.image(1).vertex_set == shared


def test_hub_realization():
    g, named = hub_with_six_spokes()
    names = list(named)
    cycles = dict(enumerate(named.values()))
    hub = 0
    assert g.degree(hub) == 6
    red = edge_to_vertex(g, cycles)
    at_hub = [ch for ch in red.chords if ch.vertex == hub]
    assert sorted(names[ch.cycle] for ch in at_hub) == ["blue", "green", "red", "sky"]
    tg = red.target_graph
    # the two spoke-sharing pairs give two components; faces are traced per component
    assert len(tg.vertices) - len(tg.edges) + tg.num_faces == 2 * 2
    assert is_laminar(tg, list(red.target_cycles.values()))[0]
    meets = {
        (names[i], names[j])
        for i in cycles
        for j in cycles
        if i < j and red.image(i).vertex_set & red.image(j).vertex_set
    }
    assert meets == {("red", "sky"), ("blue", "green")}
    assert disjointness_equivalent(red)


@pytest.mark.parametrize("builder", [figure1, figure3])
def test_figures_reduce_with_equivalent_disjointness(builder):
    g, named = builder()
    red = edge_to_vertex(g, dict(enumerate(named.values())))
    assert disjointness_equivalent(red)


def test_crossing_family_rejected():
    grid = Grid(3, 3)
    with pytest.raises(NotLaminar):
        edge_to_vertex(grid.graph, {0: grid.rect(0, 0, 2, 2), 1: grid.rect(1, 1, 3, 3)})


def test_lift_solution():
    grid = Grid(2, 1)
    red = edge_to_vertex(grid.graph, {0: grid.rect(0, 0, 1, 1), 4: grid.rect(1, 0, 2, 1)})
    assert lift_solution(red, {}) == {}
    assert lift_solution(red, []) == []
    assert lift_solution(red, {0: F(1, 2), 4: F(1, 2)}) == {0: F(1, 2), 4: F(1, 2)}
    assert lift_solution(red, [4]) == [4]
    with pytest.raises(UnknownCycle):
        lift_solution(red, [1])
    with pytest.raises(UnknownCycle):
        lift_solution(red, {7: F(1)})
    with pytest.raises(UnknownCycle):
        red.image(3)


@given(nested_instances())
def test_reduction_sizes_and_equivalence(inst):
    cycles = inst.cycles()
    g = inst.graph
    red = edge_to_vertex(g, cycles)
    tg = red.target_graph
    assert len(tg.vertices) == len(g.edges)
    assert len(tg.edges) == sum(len(c) for c in cycles.values())
    for cid, c in cycles.items():
        assert red.image(cid).vertex_set == c.edge_set
        assert len(red.image(cid)) == len(c)
    assert disjointness_equivalent(red)


@given(nested_instances())
def test_reduction_preserves_lp_value(inst):
    cycles = inst.cycles()
    red = edge_to_vertex(inst.graph, cycles)
    edge_lp = solve_packing_lp(inst.graph, cycles, EDGE).value
    assert solve_packing_lp(red.target_graph, red.target_cycles, VERTEX).value == edge_lp
