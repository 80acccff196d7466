from __future__ import annotations

from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings

from cyclepack.errors import PreconditionViolated, RedundantCyclePresent
from cyclepack.harness.figures import figure2, figure3, figure5, petals
from cyclepack.harness.grid import Grid
from cyclepack.lp import VERTEX, make_structured, solve_packing_lp, support_components
from cyclepack.planar import classify_family
from cyclepack.structure import (
    Incidence,
    audit_cover,
    brute_min_mstar,
    build_good_structured,
    certify,
    check_certificate,
    check_cover,
    check_good,
    check_structured,
    compute_incidences,
    cover_for_set,
    is_crossing,
    pair_homotopic_bruteforce,
)

from strategies import nested_instances

# vertex ids of the two shared points in the third figure's realization
V, W = 3, 1


def _named_family(builder):
    g, named = builder()
    names = list(named)
    return names, classify_family(g, list(named.values()))


def _pairs(names, incs):
    return {(tuple(names[i] for i in inc.pair), inc.vertices) for inc in incs}


# ----------------------------------------------------------------------
# incidences


def test_figure3_incidences_of_cstar():
    names, fam = _named_family(figure3)
    star = names.index("C*")
    mine = [i for i in compute_incidences(fam) if star in i.pair]
    per_cycle = Counter(names[i.other(star)] for i in mine)
    assert {f"C{k}": per_cycle[f"C{k}"] for k in range(1, 6)} == {f"C{k}": 1 for k in range(1, 6)}
    assert per_cycle["C6"] == 2
    c6 = {i.vertices: is_crossing(fam, i) for i in mine if names[i.other(star)] == "C6"}
    assert c6 == {(W,): False, (V,): True}


def test_figure3_classification():
    names, fam = _named_family(figure3)
    assert [names[i] for i in fam.L1] == ["C1", "C2", "C3", "C4", "C5", "C7"]


def test_figure3_replacement_steps():
    names, fam = _named_family(figure3)
    trace: list = []
    build_good_structured(fam, trace)
    steps = {(idx, tuple(names[i] for i in inc.pair), inc.vertices): (tuple(names[i] for i in rep.pair), rep.vertices) for idx, inc, rep in trace}
    # a one-sided neighbour of C* at {v, w} is re-attached to a neighbour across C*
    assert steps[(1, ("C*", "C4"), (W, V))] == (("C3", "C4"), (W,))
    assert steps[(2, ("C*", "C2"), (W, V))] == (("C2", "C4"), (W, V))


def test_theta_pair_has_no_incidences(theta_graph, theta_cycles):
    fam = classify_family(theta_graph, [theta_cycles["C12"], theta_cycles["C23"]])
    assert compute_incidences(fam) == []


def test_incidence_helpers():
    inc = Incidence.make(5, 2, [7, 3, 7])
    assert inc.pair == (2, 5) and inc.vertices == (3, 7)
    assert inc.other(2) == 5 and inc.other(5) == 2
    with pytest.raises(KeyError):
        inc.other(4)


def _check_incidences_against_bruteforce(fam):
    incs = compute_incidences(fam)
    group = {}
    for inc in incs:
        for v in inc.vertices:
            group[(inc.pair, v)] = inc
    for a, b in combinations(fam.ids, 2):
        shared = sorted(fam.cycles[a].vertex_set & fam.cycles[b].vertex_set)
        if fam.homotopic(a, b) or not shared:
            assert not any(i.pair == (a, b) for i in incs)
            continue
        for v, w in combinations(shared, 2):
            same = group[((a, b), v)] is group[((a, b), w)]
            assert same == pair_homotopic_bruteforce(fam, a, b, v, w), (a, b, v, w)


@pytest.mark.parametrize("builder", [figure2, figure3, lambda: petals(4)])
def test_incidences_match_bruteforce_homotopy_on_figures(builder):
    _, fam = _named_family(builder)
    _check_incidences_against_bruteforce(fam)


@settings(max_examples=25)
@given(nested_instances())
def test_incidences_match_bruteforce_homotopy(inst):
    cycles = inst.cycles()
    ids = sorted(cycles)
    fam = classify_family(inst.graph, [cycles[i] for i in ids], ids)
    _check_incidences_against_bruteforce(fam)


# ----------------------------------------------------------------------
# certificates


def test_figure3_certificate():
    _, fam = _named_family(figure3)
    cert = certify(fam)
    assert cert.structured[0] and cert.good[0] and cert.certificate[0]
    assert sorted(cert.Mstar.items()) == [(W, 7), (V, 3), (28, 1)]
    assert cert.size_bound == 3 * 6 - 6 and cert.size_ok
    assert sum(brute_min_mstar(fam).values()) <= sum(cert.Mstar.values())


def test_figure2_certificate_stacks_the_hub():
    names, fam = _named_family(figure2)
    assert len(fam.L1) == 5
    cert = certify(fam)
    assert cert.Mstar == Counter({0: 7})
    assert cert.certificate[0] and cert.size_ok
    assert brute_min_mstar(fam) == Counter({0: 4})


def test_lone_cycle_needs_no_certificate():
    grid = Grid(2, 2)
    fam = classify_family(grid.graph, [grid.rect(0, 0, 1, 1)])
    cert = certify(fam)
    assert not cert.Mstar and cert.certificate[0]
    assert cert.size_bound == 3 and cert.size_ok


def test_touching_two_chain_has_no_empty_certificate():
    _, fam = _named_family(lambda: petals(2))
    assert compute_incidences(fam) == []
    cert = certify(fam)
    # homotopic touching cycles still need one shared vertex each
    assert not cert.certificate[0]
    assert brute_min_mstar(fam) == Counter({0: 1})
    assert cert.repaired == Counter({0: 1}) and cert.repaired_ok[0]
    assert cert.size_bound == 0 and cert.size_ok


def test_redundant_family_is_refused():
    _, fam = _named_family(figure5)
    with pytest.raises(RedundantCyclePresent):
        certify(fam)


def test_checkers_reject_bad_sets():
    _, fam = _named_family(figure3)
    cert = certify(fam)
    assert not check_structured(fam, Counter())[0]
    assert not check_certificate(fam, Counter())[0]
    bloated = Counter(cert.M)
    bloated[next(iter(bloated))] += 20
    assert not check_good(fam, bloated)[0]
    stranger = Counter({Incidence.make(0, 1, [999]): 1})
    assert not check_structured(fam, stranger)[0]


def test_build_needs_two_cycles():
    grid = Grid(2, 2)
    fam = classify_family(grid.graph, [grid.rect(0, 0, 1, 1)])
    with pytest.raises(PreconditionViolated):
        build_good_structured(fam)


def _structured_components(inst):
    x = make_structured(solve_packing_lp(inst.graph, inst.cycles(), VERTEX))
    for comp in support_components(x):
        yield classify_family(x.graph, [x.cycles[i] for i in comp], comp)


@given(nested_instances())
def test_certificates_on_structured_components(inst):
    for fam in _structured_components(inst):
        cert = certify(fam)
        assert cert.structured[0], cert.structured[1]
        assert cert.good[0], cert.good[1]
        assert cert.repaired_ok[0], cert.repaired_ok[1]
        if len(fam) <= 8:
            assert sum(brute_min_mstar(fam).values()) <= sum(cert.repaired.values())


@given(nested_instances())
def test_certificates_on_whole_nested_families(inst):
    cycles = inst.cycles()
    ids = sorted(cycles)
    fam = classify_family(inst.graph, [cycles[i] for i in ids], ids)
    from cyclepack.lp import is_redundant

    if any(is_redundant(fam, c) for c in ids):
        with pytest.raises(RedundantCyclePresent):
            certify(fam)
        return
    cert = certify(fam)
    assert cert.structured[0] and cert.repaired_ok[0]


# ----------------------------------------------------------------------
# covers


def test_figure5_cover_uses_the_common_touch_point():
    names, fam = _named_family(figure5)
    c2 = names.index("C2")
    cover = cover_for_set(fam, [c2])
    assert 16 in cover.vertices
    assert check_cover(fam, [c2], cover)[0]
    assert cover_for_set(fam, []).vertices == frozenset()


def test_cover_rejects_two_sided_members():
    names, fam = _named_family(figure3)
    with pytest.raises(PreconditionViolated):
        cover_for_set(fam, [names.index("C*")])


def test_check_cover_detects_misses():
    names, fam = _named_family(figure3)
    F = [names.index("C1")]
    cover = cover_for_set(fam, F)
    assert check_cover(fam, F, cover)[0]
    empty = type(cover)(frozenset(), (), (), None, None)
    assert not check_cover(fam, F, empty)[0]


@given(nested_instances())
def test_cover_for_every_threshold_level(inst):
    x = make_structured(solve_packing_lp(inst.graph, inst.cycles(), VERTEX))
    for comp in support_components(x):
        fam = classify_family(x.graph, [x.cycles[i] for i in comp], comp)
        weights = sorted({x[c] for c in fam.L1})
        for alpha in [0] + weights:
            F = [c for c in fam.L1 if x[c] > alpha]
            if F:
                audit_cover(fam, F)
