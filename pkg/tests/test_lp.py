from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclepack.errors import FeasibilityViolation, UncrossingStalled
from cyclepack.harness.enumerate import simple_cycles
from cyclepack.harness.figures import FIGURE1_WEIGHTS, figure1
from cyclepack.harness.grid import Grid
from cyclepack.harness.oracles import brute_max_packing
from cyclepack.lp import (
    EDGE,
    VERTEX,
    FractionalSolution,
    constraint_rows,
    is_redundant,
    is_structured,
    lp_dual_bound,
    make_structured,
    solve_packing_lp,
    support_components,
    uncross_support,
)
from cyclepack.planar import Cycle, classify_family, is_laminar

from lp_oracle import vertex_enumeration_max
from strategies import nested_instances, random_planar_instances

F = Fraction


# ----------------------------------------------------------------------
# exact LP


def test_theta_vertex_lp_value(theta_graph, theta_cycles):
    x = solve_packing_lp(theta_graph, list(theta_cycles.values()), VERTEX)
    assert x.value == 1


def test_theta_edge_lp_value_and_dual(theta_graph, theta_cycles):
    cycles = list(theta_cycles.values())
    x = solve_packing_lp(theta_graph, cycles, EDGE)
    assert x.value == F(3, 2)
    value, duals = lp_dual_bound(theta_graph, cycles, EDGE)
    assert value == F(3, 2)
    for c in cycles:
        assert sum(duals.get(e, 0) for e in c.edges) >= 1


def test_trivial_lps():
    grid = Grid(3, 1)
    one = grid.rect(0, 0, 1, 1)
    far = grid.rect(2, 0, 3, 1)
    x = solve_packing_lp(grid.graph, [one], VERTEX)
    assert x.value == 1 and x[0] == 1
    assert solve_packing_lp(grid.graph, [one, far], VERTEX).value == 2
    assert solve_packing_lp(grid.graph, [], VERTEX).value == 0


def test_weights_outside_unit_interval_rejected(theta_graph, theta_cycles):
    with pytest.raises(FeasibilityViolation):
        FractionalSolution(VERTEX, theta_graph, {0: theta_cycles["C12"]}, {0: F(3, 2)})


def _small_families(inst, limit=6):
    cycles = list(inst.cycles().values())[:limit]
    return cycles


@settings(max_examples=15)
@given(random_planar_instances(), st.sampled_from([VERTEX, EDGE]))
def test_simplex_matches_basis_enumeration(inst, mode):
    cycles = _small_families(inst, limit=5)
    x = solve_packing_lp(inst.graph, cycles, mode)
    _, rows = constraint_rows(cycles, mode)
    assert x.value == vertex_enumeration_max(rows, len(cycles))


@given(random_planar_instances(), st.sampled_from([VERTEX, EDGE]))
def test_strong_duality_and_relaxation_dominance(inst, mode):
    cycles = list(inst.cycles().values())[:20]
    x = solve_packing_lp(inst.graph, cycles, mode)
    x.check_feasible()
    value, duals = lp_dual_bound(inst.graph, cycles, mode)
    assert value == x.value
    assert all(y >= 0 for y in duals.values())
    for c in cycles:
        elems = c.vertex_set if mode == VERTEX else c.edge_set
        assert sum(duals.get(a, 0) for a in elems) >= 1
    nu = brute_max_packing(dict(enumerate(cycles)), mode).value
    assert x.value >= nu


# ----------------------------------------------------------------------
# uncrossing


def _grid22_all():
    grid = Grid(2, 2)
    cycles = dict(enumerate(simple_cycles(grid.graph)))
    return grid, cycles


def _crossing_pair(grid, cycles):
    a = grid.rect(0, 0, 2, 1).edge_set
    b = grid.rect(0, 0, 1, 2).edge_set
    ia = next(i for i, c in cycles.items() if c.edge_set == a)
    ib = next(i for i, c in cycles.items() if c.edge_set == b)
    return ia, ib


@pytest.mark.parametrize("mode", [VERTEX, EDGE])
def test_uncross_two_crossing_halves(mode):
    grid, cycles = _grid22_all()
    ia, ib = _crossing_pair(grid, cycles)
    assert not is_laminar(grid.graph, [cycles[ia], cycles[ib]])[0]
    x = FractionalSolution(mode, grid.graph, cycles, {ia: F(1, 2), ib: F(1, 2)})
    y = uncross_support(x, cycles)
    assert y.value == 1
    assert y.is_feasible()
    assert is_laminar(grid.graph, [cycles[i] for i in y.support])[0]


def test_uncross_laminar_and_empty_unchanged():
    grid, cycles = _grid22_all()
    sq = next(i for i, c in cycles.items() if len(c) == 4)
    x = FractionalSolution(VERTEX, grid.graph, cycles, {sq: F(1)})
    assert dict(uncross_support(x, cycles).weights) == {sq: 1}
    empty = FractionalSolution(VERTEX, grid.graph, cycles, {})
    assert uncross_support(empty, cycles).support == ()


def test_uncross_stalls_without_replacement_cycles():
    grid, cycles = _grid22_all()
    ia, ib = _crossing_pair(grid, cycles)
    only = {ia: cycles[ia], ib: cycles[ib]}
    x = FractionalSolution(VERTEX, grid.graph, only, {ia: F(1, 2), ib: F(1, 2)})
    with pytest.raises(UncrossingStalled):
        uncross_support(x, only)


@given(random_planar_instances(kinds=("all",)), st.sampled_from([VERTEX, EDGE]))
def test_uncrossing_preserves_value_or_reports_stall(inst, mode):
    cycles = inst.cycles()
    x = solve_packing_lp(inst.graph, cycles, mode)
    try:
        y = uncross_support(x, cycles)
    except UncrossingStalled:
        return
    assert y.value == x.value
    assert y.is_feasible()
    assert is_laminar(inst.graph, [cycles[i] for i in y.support])[0]


# ----------------------------------------------------------------------
# structured transform


def _figure1_solution():
    g, named = figure1()
    names = list(named)
    cycles = dict(enumerate(named.values()))
    weights = {names.index(k): w for k, w in FIGURE1_WEIGHTS.items()}
    return names, FractionalSolution(VERTEX, g, cycles, weights)


def test_figure1_structured_weights():
    names, x = _figure1_solution()
    assert x.is_feasible()
    log: list = []
    y = make_structured(x, log)
    got = {names[i]: w for i, w in y.weights.items()}
    assert got == {"a": F(2, 3), "c": F(1, 3), "d": F(2, 3), "f": F(1)}
    # b shifts onto d first, then e onto f
    assert [(names[a], names[b]) for a, b in log] == [("b", "d"), ("e", "f")]
    assert is_structured(y)


def test_figure1_redundancy_before_and_after():
    names, x = _figure1_solution()
    fam = classify_family(x.graph, list(x.cycles.values()))
    assert {names[i] for i in fam.ids if is_redundant(fam, i)} == {"a", "b", "e"}
    y = make_structured(x)
    comp_a = next(c for c in support_components(y) if names.index("a") in c)
    sub = classify_family(y.graph, [y.cycles[i] for i in comp_a], comp_a)
    assert sub.one_sided[names.index("a")]
    assert not is_redundant(sub, names.index("a"))


def test_structured_input_is_a_fixed_point():
    names, x = _figure1_solution()
    y = make_structured(x)
    assert dict(make_structured(y).weights) == dict(y.weights)


def test_two_cycle_chain_unchanged():
    grid = Grid(3, 3)
    cycles = {0: grid.rect(0, 0, 3, 3), 1: grid.rect(0, 0, 1, 1)}
    x = FractionalSolution(VERTEX, grid.graph, cycles, {0: F(1, 4), 1: F(1, 2)})
    assert dict(make_structured(x).weights) == {0: F(1, 4), 1: F(1, 2)}


@given(nested_instances())
def test_make_structured_preserves_value_and_feasibility(inst):
    cycles = inst.cycles()
    x = solve_packing_lp(inst.graph, cycles, VERTEX)
    y = make_structured(x)
    assert y.value == x.value
    for v, load in y.loads().items():
        assert load <= 1
    for comp in support_components(y):
        fam = classify_family(y.graph, [y.cycles[i] for i in comp], comp)
        assert not any(is_redundant(fam, c) for c in comp)


@given(nested_instances())
def test_structured_transform_on_uniform_thirds(inst):
    # a dense fractional point: every cycle at 1/k where k bounds the vertex load
    cycles = inst.cycles()
    load: dict[int, int] = {}
    for c in cycles.values():
        for v in c.vertices:
            load[v] = load.get(v, 0) + 1
    k = max(load.values())
    x = FractionalSolution(VERTEX, inst.graph, cycles, {i: F(1, k) for i in cycles})
    y = make_structured(x)
    assert y.value == x.value and y.is_feasible() and is_structured(y)
