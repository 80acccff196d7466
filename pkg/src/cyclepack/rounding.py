"""Greedy LP rounding with three candidate rules and exact guarantee checks.

Each iteration re-structures the fractional solution, splits its support
into connected components and, per component, picks a set of pairwise
vertex-disjoint one-sided cycles whose combined neighbourhood carries the
least LP mass per chosen cycle.  The ratio is compared with
``beta = (20 + sqrt(130)) / 9`` in exact arithmetic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    EmptyLevel,
    EmptySupport,
    FeasibilityViolation,
    GuaranteeViolated,
    SearchExhausted,
)
from .lp import (
    EDGE,
    VERTEX,
    FractionalSolution,
    make_structured,
    solve_packing_lp,
    support_components,
    uncross_support,
)
from .planar import Cycle, EmbeddedGraph, LaminarFamily, classify_family, is_laminar, neighbours
from .reduction import ReductionMap, edge_to_vertex, lift_solution

RADICAND = 130


def _sign_of(a: Fraction, b: Fraction) -> int:
    """Sign of ``a + b * sqrt(130)``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with 130 b^2
    lhs, rhs = a * a, RADICAND * b * b
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@dataclass(frozen=True)
class AlgebraicBound:
    """The number ``(a + b * sqrt(130)) / c`` with integers and ``c > 0``.

    Arithmetic stays inside the field Q(sqrt(130)) and all comparisons are
    exact.
    """

    a: int
    b: int
    c: int = 1

    def __post_init__(self) -> None:
        a, b, c = int(self.a), int(self.b), int(self.c)
        if c == 0:
            raise ZeroDivisionError("denominator zero")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(abs(a), abs(b)), c) or 1
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)

    @classmethod
    def from_parts(cls, p: Fraction, q: Fraction) -> "AlgebraicBound":
        """Build ``p + q * sqrt(130)`` from rationals."""
        p, q = Fraction(p), Fraction(q)
        den = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
        return cls(int(p * den), int(q * den), den)

    @classmethod
    def coerce(cls, v: "AlgebraicBound | Fraction | int") -> "AlgebraicBound":
        if isinstance(v, AlgebraicBound):
            return v
        v = Fraction(v)
        return cls(v.numerator, 0, v.denominator)

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def surd_part(self) -> Fraction:
        return Fraction(self.b, self.c)

    def __add__(self, other):
        o = AlgebraicBound.coerce(other)
        return AlgebraicBound.from_parts(self.rational_part + o.rational_part, self.surd_part + o.surd_part)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicBound(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-AlgebraicBound.coerce(other))

    def __rsub__(self, other):
        return AlgebraicBound.coerce(other) - self

    def __mul__(self, other):
        o = AlgebraicBound.coerce(other)
        p1, q1, p2, q2 = self.rational_part, self.surd_part, o.rational_part, o.surd_part
        return AlgebraicBound.from_parts(p1 * p2 + RADICAND * q1 * q2, p1 * q2 + p2 * q1)

    __rmul__ = __mul__

    def conjugate(self) -> "AlgebraicBound":
        return AlgebraicBound(self.a, -self.b, self.c)

    def __truediv__(self, other):
        o = AlgebraicBound.coerce(other)
        norm = (o * o.conjugate()).rational_part
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 130)")
        num = self * o.conjugate()
        return AlgebraicBound.from_parts(num.rational_part / norm, num.surd_part / norm)

    def __rtruediv__(self, other):
        return AlgebraicBound.coerce(other) / self

    def sign(self) -> int:
        return _sign_of(Fraction(self.a), Fraction(self.b))

    def _cmp(self, other) -> int:
        return (self - AlgebraicBound.coerce(other)).sign()

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return (self.a + self.b * RADICAND**0.5) / self.c

    def __str__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({RADICAND}))/{self.c}"


BETA = AlgebraicBound(20, 1, 9)


def compare_with_beta(n: int, X: Fraction) -> bool:
    """Exact test of ``n * (20 + sqrt(130)) >= 9 * X`` for ``n, X >= 0``."""
    X = Fraction(X)
    lhs = 9 * X - 20 * n
    if lhs <= 0:
        return True
    return RADICAND * n * n >= lhs * lhs


def ratio_within_beta(q: Fraction) -> bool:
    """Exact test of ``q <= (20 + sqrt(130)) / 9``."""
    t = 9 * Fraction(q) - 20
    return t <= 0 or t * t <= RADICAND


# ----------------------------------------------------------------------
# threshold profile


@dataclass(frozen=True)
class ThresholdProfile:
    """Level structure ``r_alpha = |L1^{>alpha}| / |L1|`` of the one-sided weights."""

    weights: Mapping[int, Fraction]

    @classmethod
    def of(cls, fam: LaminarFamily, x: FractionalSolution) -> "ThresholdProfile":
        return cls({c: x[c] for c in fam.L1})

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.weights.values())))

    def level(self, alpha: Fraction) -> tuple[int, ...]:
        return tuple(sorted(c for c, w in self.weights.items() if w > alpha))

    def r(self, alpha: Fraction) -> Fraction:
        return Fraction(len(self.level(alpha)), self.size)

    def integral(self) -> Fraction:
        """Exact integral of ``r_alpha`` over ``[0, 1]`` as a piecewise-constant sum."""
        pts = sorted({Fraction(0), Fraction(1)} | {v for v in self.values if 0 < v < 1})
        return sum((b - a) * self.r(a) for a, b in zip(pts, pts[1:]))

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


# ----------------------------------------------------------------------
# candidates


@dataclass(frozen=True)
class CandidateSet:
    rule: str
    alpha: Fraction | None
    cycles: tuple[int, ...]
    removed: tuple[int, ...]
    removed_mass: Fraction
    bound: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.removed_mass / len(self.cycles)

    def label(self) -> str:
        return self.rule if self.alpha is None else f"{self.rule}({self.alpha})"


def neighbourhood(fam: LaminarFamily, cycles: Iterable[int]) -> tuple[int, ...]:
    out: set[int] = set()
    for c in cycles:
        out |= neighbours(fam, c)[0]
    return tuple(sorted(out))


def _make(fam, x, rule, alpha, cycles, bound) -> CandidateSet:
    removed = neighbourhood(fam, cycles)
    return CandidateSet(rule, alpha, tuple(sorted(cycles)), removed, x.mass(removed), bound)


def _assert_disjoint(fam: LaminarFamily, cycles: Sequence[int]) -> None:
    seen: dict[int, int] = {}
    for c in cycles:
        for v in fam.cycles[c].vertices:
            if v in seen:
                raise FeasibilityViolation(f"candidate cycles {seen[v]} and {c} share vertex {v}")
            seen[v] = c


def candidate_single(fam: LaminarFamily, x: FractionalSolution) -> CandidateSet:
    """The one-sided cycle with the lightest neighbourhood."""
    L1 = fam.L1
    if not L1:
        raise EmptySupport("no one-sided cycles")
    best = min(L1, key=lambda c: (x.mass(neighbours(fam, c)[0]), c))
    bound = 3 + sum((x[c] for c in L1), Fraction(0)) / len(L1)
    cand = _make(fam, x, "single", None, (best,), bound)
    if cand.ratio > bound:
        raise GuaranteeViolated(f"single-cycle ratio {cand.ratio} exceeds {bound}")
    return cand


def candidate_threshold(fam: LaminarFamily, x: FractionalSolution, alpha: Fraction) -> CandidateSet:
    """All one-sided cycles heavier than ``alpha >= 1/2``."""
    alpha = Fraction(alpha)
    if alpha < Fraction(1, 2):
        raise ValueError("threshold rule needs alpha >= 1/2")
    prof = ThresholdProfile.of(fam, x)
    level = prof.level(alpha)
    if not level:
        raise EmptyLevel(f"no one-sided weight above {alpha}")
    _assert_disjoint(fam, level)
    bound = 1 + (1 - alpha) / prof.r(alpha)
    cand = _make(fam, x, "threshold", alpha, level, bound)
    if cand.ratio > bound:
        raise GuaranteeViolated(f"threshold ratio {cand.ratio} exceeds {bound} at alpha={alpha}")
    return cand


@dataclass(frozen=True)
class ConflictGraph:
    nodes: tuple[int, ...]
    adj: Mapping[int, frozenset[int]]

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.nodes for b in sorted(self.adj[a]) if a < b]


def conflict_graph(fam: LaminarFamily, x: FractionalSolution, alpha: Fraction) -> ConflictGraph:
    """Vertex-sharing graph on the one-sided cycles heavier than ``alpha >= 1/4``."""
    alpha = Fraction(alpha)
    if alpha < Fraction(1, 4):
        raise ValueError("conflict graph needs alpha >= 1/4")
    level = ThresholdProfile.of(fam, x).level(alpha)
    if not level:
        raise EmptyLevel(f"no one-sided weight above {alpha}")
    at: dict[int, list[int]] = {}
    for c in level:
        for v in fam.cycles[c].vertices:
            at.setdefault(v, []).append(c)
    adj: dict[int, set[int]] = {c: set() for c in level}
    for v, cs in at.items():
        if len(cs) >= 4:
            raise FeasibilityViolation(f"vertex {v} lies on {len(cs)} cycles heavier than {alpha}")
        for a in cs:
            for b in cs:
                if a != b:
                    adj[a].add(b)
    return ConflictGraph(level, {c: frozenset(n) for c, n in adj.items()})


def four_color(g: ConflictGraph, max_colors: int = 4) -> dict[int, int]:
    """Proper colouring with at most four colours by exact backtracking.

    Vertices are coloured in the given order, each trying colours from 0
    upwards, so the result is deterministic.
    """
    order = list(g.nodes)
    colour: dict[int, int] = {}

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        used = {colour[u] for u in g.adj[v] if u in colour}
        for c in range(max_colors):
            if c not in used:
                colour[v] = c
                if extend(k + 1):
                    return True
                del colour[v]
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(order) + 100))
    try:
        ok = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        raise SearchExhausted("graph is not 4-colourable")
    return colour


def candidate_fourcolor(fam: LaminarFamily, x: FractionalSolution, alpha: Fraction) -> CandidateSet:
    """Heavy isolated cycles plus the largest colour class of the rest, ``1/4 <= alpha < 1/2``."""
    alpha = Fraction(alpha)
    if not Fraction(1, 4) <= alpha < Fraction(1, 2):
        raise ValueError("four-colour rule needs 1/4 <= alpha < 1/2")
    prof = ThresholdProfile.of(fam, x)
    cg = conflict_graph(fam, x, alpha)
    heavy = set(prof.level(1 - alpha))
    for c in heavy:
        if cg.adj[c]:
            raise FeasibilityViolation(f"cycle {c} above 1-alpha has conflicts")
    rest = [c for c in cg.nodes if c not in heavy]
    sub = ConflictGraph(tuple(rest), {c: cg.adj[c] - heavy for c in rest})
    colouring = four_color(sub)
    classes: dict[int, list[int]] = {}
    for c in rest:
        classes.setdefault(colouring[c], []).append(c)
    chosen: list[int] = []
    if classes:
        best = max(sorted(classes), key=lambda k: (len(classes[k]), -k))
        chosen = classes[best]
    cycles = sorted(heavy | set(chosen))
    for a in cycles:
        if cg.adj[a] & set(cycles):
            raise FeasibilityViolation("four-colour candidate is not a stable set")
    need = len(heavy) + Fraction(len(cg.nodes) - len(heavy), 4)
    if len(cycles) < need:
        raise GuaranteeViolated(f"colour class too small: {len(cycles)} < {need}")
    bound = 1 + 4 * (1 - alpha) / (prof.r(alpha) + 3 * prof.r(1 - alpha))
    cand = _make(fam, x, "fourcolor", alpha, cycles, bound)
    if cand.ratio > bound:
        raise GuaranteeViolated(f"four-colour ratio {cand.ratio} exceeds {bound} at alpha={alpha}")
    return cand


def threshold_levels(prof: ThresholdProfile) -> list[Fraction]:
    """Representative alphas in ``[1/2, 1)`` covering every distinct level set."""
    half = Fraction(1, 2)
    return sorted({half} | {v for v in prof.values if half <= v < 1})


def fourcolor_levels(prof: ThresholdProfile) -> list[Fraction]:
    """Representative alphas in ``[1/4, 1/2)`` covering every distinct pair of level sets.

    Both ``L1^{>alpha}`` and ``L1^{>1-alpha}`` are piecewise constant; the
    breakpoints are the weights and their complements, and every open gap
    between breakpoints is represented by its midpoint.
    """
    lo, hi = Fraction(1, 4), Fraction(1, 2)
    cuts = {lo}
    for v in prof.values:
        if lo <= v < hi:
            cuts.add(v)
        if lo <= 1 - v < hi:
            cuts.add(1 - v)
    pts = sorted(cuts)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:] + [hi])]
    return sorted(set(pts) | set(mids))


CoverAudit = Callable[[LaminarFamily, Sequence[int]], None]


def all_candidates(
    fam: LaminarFamily, x: FractionalSolution, cover_audit: CoverAudit | None = None
) -> list[CandidateSet]:
    prof = ThresholdProfile.of(fam, x)
    if prof.integral() * prof.size != prof.total():
        raise GuaranteeViolated("threshold profile integral identity fails")
    out = [candidate_single(fam, x)]
    for alpha in threshold_levels(prof):
        if prof.level(alpha):
            if cover_audit is not None:
                cover_audit(fam, prof.level(alpha))
            out.append(candidate_threshold(fam, x, alpha))
    for alpha in fourcolor_levels(prof):
        if prof.level(alpha):
            if cover_audit is not None:
                cover_audit(fam, prof.level(alpha))
            out.append(candidate_fourcolor(fam, x, alpha))
    return out


def choose_fstar(
    fam: LaminarFamily, x: FractionalSolution, cover_audit: CoverAudit | None = None
) -> CandidateSet:
    """Minimum-ratio candidate over all rules; its ratio is checked against beta."""
    cands = all_candidates(fam, x, cover_audit)
    best = min(enumerate(cands), key=lambda t: (t[1].ratio, t[0]))[1]
    if not ratio_within_beta(best.ratio):
        raise GuaranteeViolated(f"best ratio {best.ratio} exceeds beta")
    return best


# ----------------------------------------------------------------------
# component-level audits


def neighbourhood_mass_sum(fam: LaminarFamily, x: FractionalSolution) -> Fraction:
    """Sum over one-sided C of the mass of N(C) without C itself."""
    total = Fraction(0)
    for c in fam.L1:
        total += x.mass(neighbours(fam, c)[0] - {c})
    return total


def min_neighbourhood_mass(fam: LaminarFamily, x: FractionalSolution) -> Fraction:
    return min(x.mass(neighbours(fam, c)[0]) for c in fam.L1)


# ----------------------------------------------------------------------
# greedy loop


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    component: tuple[int, ...]
    candidate: CandidateSet
    mass_before: Fraction
    mass_after: Fraction
    within_beta: bool


@dataclass
class RoundingTrace:
    lp_value: Fraction
    iterations: list[IterationRecord] = field(default_factory=list)
    packing: list[int] = field(default_factory=list)
    guarantee: bool = False
    mode: str = VERTEX
    uncrossed: bool = False
    reduction: ReductionMap | None = None


ComponentHook = Callable[[LaminarFamily, FractionalSolution], None]


def round_structured(
    x: FractionalSolution,
    cover_audit: CoverAudit | None = None,
    component_hook: ComponentHook | None = None,
) -> RoundingTrace:
    """The greedy loop on a feasible laminar-support solution (vertex packing)."""
    trace = RoundingTrace(lp_value=x.value)
    it = 0
    while x.support:
        x = make_structured(x)
        weights = dict(x.weights)
        for comp in support_components(x):
            fam = classify_family(x.graph, [x.cycles[i] for i in comp], comp)
            if component_hook is not None:
                component_hook(fam, x)
            cand = choose_fstar(fam, x, cover_audit)
            before = sum(weights.values(), Fraction(0))
            for c in cand.removed:
                weights.pop(c, None)
            after = sum(weights.values(), Fraction(0))
            trace.iterations.append(
                IterationRecord(it, tuple(comp), cand, before, after, ratio_within_beta(cand.ratio))
            )
            trace.packing.extend(cand.cycles)
        x = x.with_weights(weights)
        it += 1
    _assert_packing_disjoint(x, trace.packing)
    trace.guarantee = compare_with_beta(len(trace.packing), trace.lp_value)
    if not trace.guarantee:
        raise GuaranteeViolated(f"packing of size {len(trace.packing)} below guarantee for LP {trace.lp_value}")
    return trace


def _assert_packing_disjoint(x: FractionalSolution, packing: Sequence[int]) -> None:
    seen: dict[int, int] = {}
    for c in packing:
        for v in x.cycles[c].vertices:
            if v in seen:
                raise FeasibilityViolation(f"packed cycles {seen[v]} and {c} share vertex {v}")
            seen[v] = c


def greedy_round(
    g: EmbeddedGraph,
    family: Mapping[int, Cycle] | Sequence[Cycle],
    mode: str = VERTEX,
    x: FractionalSolution | None = None,
    cover_audit: CoverAudit | None = None,
    component_hook: ComponentHook | None = None,
) -> tuple[list[int], RoundingTrace]:
    """Solve the packing LP, make its support laminar and round it greedily.

    In edge mode the laminar support is re-optimised, mapped through
    :func:`edge_to_vertex` and rounded as a vertex instance on ``G'``; the
    resulting packing is pulled back and re-checked for edge-disjointness.
    """
    if not isinstance(family, Mapping):
        family = dict(enumerate(family))
    if x is None:
        x = solve_packing_lp(g, family, mode)
    lp_value = x.value
    uncrossed = False
    if not is_laminar(g, [family[i] for i in x.support])[0]:
        x = uncross_support(x, family)
        uncrossed = True
    if mode == VERTEX:
        trace = round_structured(x, cover_audit, component_hook)
        trace.uncrossed = uncrossed
        return list(trace.packing), trace
    if mode != EDGE:
        raise ValueError(f"unknown mode {mode!r}")
    laminar = {i: family[i] for i in x.support}
    red = edge_to_vertex(g, laminar)
    y = solve_packing_lp(red.target_graph, red.target_cycles, VERTEX)
    if y.value != lp_value:
        raise GuaranteeViolated(f"reduced LP value {y.value} differs from edge LP value {lp_value}")
    trace = round_structured(y, cover_audit, component_hook)
    packing = lift_solution(red, trace.packing)
    used: dict[int, int] = {}
    for c in packing:
        for e in family[c].edges:
            if e in used:
                raise FeasibilityViolation(f"lifted cycles {used[e]} and {c} share edge {e}")
            used[e] = c
    trace.mode = EDGE
    trace.uncrossed = uncrossed
    trace.reduction = red
    trace.packing = packing
    return packing, trace
