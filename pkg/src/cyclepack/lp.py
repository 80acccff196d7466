"""Exact packing LPs, best-effort uncrossing and the structured transform.

Everything is computed over :class:`fractions.Fraction`; there is no
floating point on any decision path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import FeasibilityViolation, StructureInvariantViolated, UncrossingStalled
from .planar import (
    Cycle,
    EmbeddedGraph,
    LaminarFamily,
    classify_family,
    cycle_sides,
    sides_disjoint_pair,
    vertex_components,
)

VERTEX = "vertex"
EDGE = "edge"


def elements(c: Cycle, mode: str) -> frozenset[int]:
    """Ground elements a cycle uses: vertices or edges depending on ``mode``."""
    if mode == VERTEX:
        return c.vertex_set
    if mode == EDGE:
        return c.edge_set
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True, eq=False)
class FractionalSolution:
    """Exact cycle weights for the vertex or edge packing LP.

    ``cycles`` holds every cycle the weights may refer to; ids absent from
    ``weights`` carry weight zero.
    """

    mode: str
    graph: EmbeddedGraph
    cycles: Mapping[int, Cycle]
    weights: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        clean = {i: Fraction(w) for i, w in sorted(self.weights.items()) if w != 0}
        object.__setattr__(self, "weights", clean)
        for i, w in clean.items():
            if i not in self.cycles:
                raise KeyError(f"weight for unknown cycle {i}")
            if w < 0 or w > 1:
                raise FeasibilityViolation(f"weight {w} of cycle {i} outside [0, 1]")

    def __getitem__(self, cid: int) -> Fraction:
        return self.weights.get(cid, Fraction(0))

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.weights)

    def loads(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, w in self.weights.items():
            for a in elements(self.cycles[i], self.mode):
                out[a] = out.get(a, Fraction(0)) + w
        return out

    def is_feasible(self) -> bool:
        return all(v <= 1 for v in self.loads().values())

    def check_feasible(self) -> None:
        for a, v in self.loads().items():
            if v > 1:
                raise FeasibilityViolation(f"load {v} > 1 at {self.mode} {a}")

    def with_weights(self, weights: Mapping[int, Fraction]) -> "FractionalSolution":
        return FractionalSolution(self.mode, self.graph, self.cycles, dict(weights))

    def mass(self, ids: Iterable[int]) -> Fraction:
        return sum((self[i] for i in set(ids)), Fraction(0))


# ----------------------------------------------------------------------
# simplex


@dataclass
class SimplexResult:
    x: list[Fraction]
    value: Fraction
    pivots: int
    dual: list[Fraction] = field(default_factory=list)


def simplex_max_packing(rows: Sequence[Sequence[int]], ncols: int) -> SimplexResult:
    """Maximise ``sum x`` subject to ``sum_{j in row} x_j <= 1`` and ``x >= 0``.

    ``rows`` lists, per constraint, the column indices with coefficient 1.
    The slack basis is feasible, so a single phase of the tableau simplex
    with Bland's rule suffices.
    """
    m = len(rows)
    n = ncols + m
    # tableau rows stored sparsely as dicts col -> Fraction, plus rhs
    tab: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for r, cols in enumerate(rows):
        row = {j: Fraction(1) for j in cols}
        row[ncols + r] = Fraction(1)
        tab.append(row)
        rhs.append(Fraction(1))
    basis = [ncols + r for r in range(m)]
    # reduced costs for maximisation: obj row z - c x = 0
    obj: dict[int, Fraction] = {j: Fraction(-1) for j in range(ncols)}
    value = Fraction(0)
    pivots = 0
    while True:
        entering = None
        for j in range(n):
            if obj.get(j, 0) < 0:
                entering = j
                break
        if entering is None:
            break
        best = None
        for r in range(m):
            a = tab[r].get(entering, 0)
            if a > 0:
                ratio = rhs[r] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise ArithmeticError("packing LP cannot be unbounded")
        r = best[1]
        pivot = tab[r][entering]
        prow = {j: v / pivot for j, v in tab[r].items()}
        prhs = rhs[r] / pivot
        tab[r] = prow
        rhs[r] = prhs
        for i in range(m):
            if i == r:
                continue
            f = tab[i].get(entering)
            if f:
                row = tab[i]
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                rhs[i] -= f * prhs
        f = obj.get(entering)
        if f:
            for j, v in prow.items():
                nv = obj.get(j, 0) - f * v
                if nv:
                    obj[j] = nv
                else:
                    obj.pop(j, None)
            value -= f * prhs
        basis[r] = entering
        pivots += 1
    x = [Fraction(0)] * ncols
    for r, b in enumerate(basis):
        if b < ncols:
            x[b] = rhs[r]
    dual = [obj.get(ncols + r, Fraction(0)) for r in range(m)]
    return SimplexResult(x, value, pivots, dual)


def constraint_rows(cycles: Sequence[Cycle], mode: str) -> tuple[list[int], list[list[int]]]:
    """Ground elements in increasing id order and the cycle columns through each."""
    through: dict[int, list[int]] = {}
    for j, c in enumerate(cycles):
        for a in elements(c, mode):
            through.setdefault(a, []).append(j)
    keys = sorted(through)
    return keys, [through[a] for a in keys]


def solve_packing_lp(
    g: EmbeddedGraph,
    cycles: Mapping[int, Cycle] | Sequence[Cycle],
    mode: str = VERTEX,
) -> FractionalSolution:
    """Optimal solution of the packing LP restricted to the given cycles."""
    if not isinstance(cycles, Mapping):
        cycles = dict(enumerate(cycles))
    ids = sorted(cycles)
    if not ids:
        return FractionalSolution(mode, g, {}, {})
    _, rows = constraint_rows([cycles[i] for i in ids], mode)
    res = simplex_max_packing(rows, len(ids))
    sol = FractionalSolution(mode, g, dict(cycles), {ids[j]: res.x[j] for j in range(len(ids))})
    sol.check_feasible()
    if sol.value != res.value:
        raise ArithmeticError("objective bookkeeping mismatch")
    return sol


def lp_dual_bound(g: EmbeddedGraph, cycles: Sequence[Cycle], mode: str) -> tuple[Fraction, dict[int, Fraction]]:
    """Optimal dual (fractional transversal) read off the final tableau."""
    keys, rows = constraint_rows(list(cycles), mode)
    res = simplex_max_packing(rows, len(cycles))
    return sum(res.dual, Fraction(0)), {a: y for a, y in zip(keys, res.dual) if y}


# ----------------------------------------------------------------------
# uncrossing


def _crossing_pairs(sides: Mapping[int, tuple[frozenset[int], frozenset[int]]], ids: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for a, b in combinations(ids, 2) if sides_disjoint_pair(sides[a], sides[b]) is None]


def _segments_avoiding(c2: Cycle, others: frozenset[int]) -> list[tuple[list[int], int, int]]:
    """Subpaths of ``c2`` whose ends lie in ``others`` and whose interior avoids it."""
    k = len(c2.vertices)
    hits = [i for i in range(k) if c2.vertices[i] in others]
    out = []
    if len(hits) < 2:
        return out
    for t, i in enumerate(hits):
        j = hits[(t + 1) % len(hits)]
        length = (j - i) % k or k
        edges = [c2.edges[(i + s) % k] for s in range(length)]
        out.append((edges, c2.vertices[i], c2.vertices[j]))
    return out


def _paths_between(c1: Cycle, a: int, b: int) -> list[list[int]]:
    k = len(c1.vertices)
    i, j = c1.vertices.index(a), c1.vertices.index(b)
    fwd = [c1.edges[(i + s) % k] for s in range((j - i) % k)]
    bwd = [c1.edges[(j + s) % k] for s in range((i - j) % k)]
    return [fwd, bwd]


def uncross_support(
    x: FractionalSolution,
    family: Mapping[int, Cycle],
    max_steps: int | None = None,
) -> FractionalSolution:
    """Shift weight between crossing support cycles until the support is laminar.

    Every accepted step strictly reduces the number of crossing support
    pairs; ``UncrossingStalled`` is raised when no such step exists in the
    explicit family or the step cap is reached.
    """
    g = x.graph
    by_edges = {c.edge_set: i for i, c in family.items()}
    if max_steps is None:
        max_steps = 10 * max(1, len(family)) ** 2
    weights = dict(x.weights)
    sides: dict[int, tuple[frozenset[int], frozenset[int]]] = {}

    def side(i: int):
        if i not in sides:
            sides[i] = cycle_sides(g, family[i])
        return sides[i]

    def crossing_count(ws: Mapping[int, Fraction]) -> int:
        ids = sorted(i for i, w in ws.items() if w > 0)
        for i in ids:
            side(i)
        return len(_crossing_pairs(sides, ids))

    steps = 0
    current = crossing_count(weights)
    while current:
        if steps >= max_steps:
            raise UncrossingStalled(f"step cap {max_steps} reached with {current} crossing pairs")
        ids = sorted(i for i, w in weights.items() if w > 0)
        accepted = None
        for c1_id, c2_id in _crossing_pairs(sides, ids):
            for first, second in ((c1_id, c2_id), (c2_id, c1_id)):
                accepted = _try_exchange(x, family, by_edges, weights, first, second, current, crossing_count)
                if accepted is not None:
                    break
            if accepted is not None:
                break
        if accepted is None:
            raise UncrossingStalled(f"no improving exchange for {current} crossing pairs")
        weights, current = accepted
        steps += 1
    out = x.with_weights(weights)
    out.check_feasible()
    if out.value != x.value:
        raise StructureInvariantViolated("uncrossing changed the objective")
    return out


def _try_exchange(x, family, by_edges, weights, c1_id, c2_id, current, crossing_count):
    c1, c2 = family[c1_id], family[c2_id]
    eps = min(weights[c1_id], weights[c2_id])
    for p2, a, b in _segments_avoiding(c2, c1.vertex_set):
        if set(p2) <= c1.edge_set:
            continue
        for p1 in _paths_between(c1, a, b):
            d1 = by_edges.get(frozenset(p1) | frozenset(p2))
            if d1 is None or len(set(p1) | set(p2)) != len(p1) + len(p2):
                continue
            rest = (c1.edge_set - set(p1)) | (c2.edge_set - set(p2))
            for d2_edges, d2 in sorted(by_edges.items(), key=lambda kv: kv[1]):
                if d2 == d1 or not d2_edges <= rest:
                    continue
                trial = dict(weights)
                trial[c1_id] -= eps
                trial[c2_id] -= eps
                trial[d1] = trial.get(d1, Fraction(0)) + eps
                trial[d2] = trial.get(d2, Fraction(0)) + eps
                trial = {i: w for i, w in trial.items() if w}
                if not x.with_weights(trial).is_feasible():
                    continue
                count = crossing_count(trial)
                if count < current:
                    return trial, count
    return None


# ----------------------------------------------------------------------
# structured transform


def is_redundant(component: LaminarFamily, cid: int) -> bool:
    """Two-sided and homotopic to a one-sided cycle of the same family."""
    if component.one_sided[cid]:
        return False
    return any(component.homotopic(cid, o) for o in component.L1)


def support_components(x: FractionalSolution) -> list[list[int]]:
    return vertex_components({i: x.cycles[i] for i in x.support})


def _structure_step(fam: LaminarFamily, weights: dict[int, Fraction]) -> tuple[int, int] | None:
    redundant = [c for c in fam.ids if is_redundant(fam, c)]
    if not redundant:
        return None
    os_list = fam.one_sided_side_list()
    candidates: list[tuple[int, int, frozenset[int]]] = []
    for c in redundant:
        for si, s in enumerate(fam.sides[c]):
            key = frozenset(k for k, (_, t) in enumerate(os_list) if t <= s)
            if len(key) != 1:
                continue
            (k,) = key
            if not fam.homotopic(c, os_list[k][0]):
                continue
            if any(r != c and fam.inside(s, r) for r in redundant):
                continue
            candidates.append((c, si, s))
    if not candidates:
        raise StructureInvariantViolated("redundant cycles present but no admissible side found")
    minimal = [t for t in candidates if not any(u[2] < t[2] for u in candidates)]
    c, _, s = min(minimal, key=lambda t: (t[0], t[1]))
    others = [o for o in fam.cycles_inside(s) if o != c]
    if len(others) != 1:
        raise StructureInvariantViolated(f"side of redundant cycle {c} contains {len(others)} other cycles")
    (target,) = others
    if weights[c] + weights[target] > 1:
        raise StructureInvariantViolated(f"shifting {c} onto {target} would exceed 1")
    return c, target


def make_structured(x: FractionalSolution, log: list | None = None) -> FractionalSolution:
    """Shift weight off redundant cycles until no support component has one.

    ``log`` collects the ``(source, target)`` shifts in order.
    """
    weights = dict(x.weights)
    limit = len(weights)
    for _ in range(limit + 1):
        moved = None
        for comp in vertex_components({i: x.cycles[i] for i in weights}):
            fam = classify_family(x.graph, [x.cycles[i] for i in comp], comp)
            moved = _structure_step(fam, weights)
            if moved is not None:
                break
        if moved is None:
            out = x.with_weights(weights)
            out.check_feasible()
            if out.value != x.value:
                raise StructureInvariantViolated("value changed")
            return out
        c, target = moved
        weights[target] += weights.pop(c)
        if log is not None:
            log.append(moved)
    raise StructureInvariantViolated("structured transform exceeded |support| steps")


def is_structured(x: FractionalSolution) -> bool:
    for comp in support_components(x):
        fam = classify_family(x.graph, [x.cycles[i] for i in comp], comp)
        if any(is_redundant(fam, c) for c in comp):
            return False
    return True
