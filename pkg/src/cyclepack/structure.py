"""Incidences between touching cycles and the certificates built from them.

An incidence groups the shared vertices of two non-homotopic cycles that
cannot be separated by a one-sided side.  From the incidences of a
laminar family we build a multiset ``M`` (recursively, splitting at a
two-sided cycle), check it independently, extract a vertex multiset
``M*`` and verify the counting inequality it certifies.  The module also
constructs the small hitting set used for multi-cycle rounding steps.
"""

from __future__ import annotations

import weakref
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    BudgetExceeded,
    CheckerFailed,
    PreconditionViolated,
    RedundantCyclePresent,
)
from .lp import is_redundant
from .planar import Cycle, EmbeddedGraph, LaminarFamily, _UnionFind, neighbours


@dataclass(frozen=True, order=True)
class Incidence:
    """Shared vertices of a cycle pair forming one equivalence class."""

    pair: tuple[int, int]
    vertices: tuple[int, ...]

    @classmethod
    def make(cls, a: int, b: int, vertices: Iterable[int]) -> "Incidence":
        return cls(tuple(sorted((a, b))), tuple(sorted(set(vertices))))

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def other(self, c: int) -> int:
        a, b = self.pair
        if c == a:
            return b
        if c == b:
            return a
        raise KeyError(c)

    def hits(self, cycle: Cycle) -> bool:
        return self.vertex_set <= cycle.vertex_set


IncidenceMultiset = Counter  # Counter[Incidence]
VertexMultiset = Counter  # Counter[int]


# ----------------------------------------------------------------------
# caches keyed by family / graph identity

_fam_cache: "weakref.WeakKeyDictionary[LaminarFamily, dict]" = weakref.WeakKeyDictionary()
_dual_cache: "weakref.WeakKeyDictionary[EmbeddedGraph, dict]" = weakref.WeakKeyDictionary()


def _cache(fam: LaminarFamily) -> dict:
    d = _fam_cache.get(fam)
    if d is None:
        d = {}
        _fam_cache[fam] = d
    return d


def _dual(g: EmbeddedGraph) -> dict[int, list[tuple[int, int]]]:
    d = _dual_cache.get(g)
    if d is None:
        d = {f: [] for f in range(g.num_faces)}
        for e in range(len(g.edges)):
            f1, f2 = g.edge_faces(e)
            d[f1].append((e, f2))
            d[f2].append((e, f1))
        _dual_cache[g] = d
    return d


def _os_faces(fam: LaminarFamily) -> frozenset[int]:
    c = _cache(fam)
    if "os_faces" not in c:
        out: set[int] = set()
        for _, s in fam.one_sided_side_list():
            out |= s
        c["os_faces"] = frozenset(out)
    return c["os_faces"]


def _flood(g: EmbeddedGraph, start: int, blocked: frozenset[int]) -> set[int]:
    dual = _dual(g)
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for e, h in dual[f]:
            if e not in blocked and h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


# ----------------------------------------------------------------------
# incidences


def _pocket_empty(fam: LaminarFamily, c: Cycle, s_c: frozenset[int], n: Cycle, i: int, j: int) -> bool:
    """Whether the region cut off between shared positions ``i`` and ``j`` of ``c`` holds no one-sided side."""
    g = fam.graph
    k = len(c.edges)
    length = (j - i) % k or k
    if length == 1 and c.edges[i] in n.edge_set:
        return True
    e = c.edges[i]
    f1, f2 = g.edge_faces(e)
    f = f2 if f1 in s_c else f1
    pocket = _flood(g, f, c.edge_set | n.edge_set)
    return pocket.isdisjoint(_os_faces(fam))


def pair_incidences(fam: LaminarFamily, a: int, b: int) -> list[Incidence]:
    """Incidences between cycles ``a`` and ``b`` (empty for homotopic or disjoint pairs)."""
    if a == b or fam.homotopic(a, b):
        return []
    ca, cb = fam.cycles[a], fam.cycles[b]
    shared = ca.vertex_set & cb.vertex_set
    if not shared:
        return []
    s_a, _ = fam.disjoint_sides(a, b)
    positions = [p for p, v in enumerate(ca.vertices) if v in shared]
    m = len(positions)
    uf = _UnionFind(range(m))
    if m > 1:
        for t in range(m):
            if _pocket_empty(fam, ca, s_a, cb, positions[t], positions[(t + 1) % m]):
                uf.union(t, (t + 1) % m)
    groups: dict[int, list[int]] = {}
    for t in range(m):
        groups.setdefault(uf.find(t), []).append(ca.vertices[positions[t]])
    return sorted(Incidence.make(a, b, vs) for vs in groups.values())


def compute_incidences(fam: LaminarFamily) -> list[Incidence]:
    """All incidences of the family, sorted."""
    c = _cache(fam)
    if "incidences" not in c:
        out: list[Incidence] = []
        for a, b in combinations(fam.ids, 2):
            out.extend(pair_incidences(fam, a, b))
        c["incidences"] = sorted(out)
    return c["incidences"]


def pair_homotopic_bruteforce(fam: LaminarFamily, a: int, b: int, v: int, w: int) -> bool:
    """Direct test whether neighbour pairs at ``v`` and ``w`` of cycles ``a, b`` are homotopic.

    Tries every choice of a ``v``-``w`` path in each cycle, 2-colours the
    faces by parity of crossings of the symmetric difference of the two
    paths, and accepts when one colour class holds no one-sided side.
    """
    if v == w:
        return True
    g = fam.graph
    ca, cb = fam.cycles[a], fam.cycles[b]
    os_sides = [s for _, s in fam.one_sided_side_list()]
    faces = sorted(fam.all_faces)
    for pa in _two_paths(ca, v, w):
        for pb in _two_paths(cb, v, w):
            z = frozenset(pa) ^ frozenset(pb)
            parity = _face_parity(g, faces, z)
            classes = [{f for f in faces if parity[f] == p} for p in (0, 1)]
            for cls in classes:
                if all(s.isdisjoint(cls) for s in os_sides):
                    return True
    return False


def _two_paths(c: Cycle, v: int, w: int) -> list[list[int]]:
    k = len(c.vertices)
    i, j = c.vertices.index(v), c.vertices.index(w)
    return [[c.edges[(i + s) % k] for s in range((j - i) % k)], [c.edges[(j + s) % k] for s in range((i - j) % k)]]


def _face_parity(g: EmbeddedGraph, faces: Sequence[int], z: frozenset[int]) -> dict[int, int]:
    dual = _dual(g)
    parity = {faces[0]: 0}
    stack = [faces[0]]
    while stack:
        f = stack.pop()
        for e, h in dual[f]:
            p = parity[f] ^ (1 if e in z else 0)
            if h not in parity:
                parity[h] = p
                stack.append(h)
            elif parity[h] != p:
                raise CheckerFailed("path union is not an even subgraph")
    return parity


def _arc(g: EmbeddedGraph, v: int, side: frozenset[int]) -> list[int]:
    return [i for i, f in enumerate(g.corner_faces(v)) if f in side]


def is_crossing(fam: LaminarFamily, inc: Incidence) -> bool:
    """Single-vertex incidence whose pair is interleaved at that vertex by two further cycles."""
    if len(inc.vertices) != 1:
        return False
    cache = _cache(fam).setdefault("crossing", {})
    if inc in cache:
        return cache[inc]
    (v,) = inc.vertices
    a, b = inc.pair
    g = fam.graph
    s_a, s_b = fam.disjoint_sides(a, b)
    corners = g.corner_faces(v)
    k = len(corners)
    label: list[str | None] = [None] * k
    for i, f in enumerate(corners):
        if f in s_a:
            label[i] = "A"
        elif f in s_b:
            label[i] = "B"
    ends = [i for i in range(k) if label[i] == "A" and label[(i + 1) % k] != "A"]
    if len(ends) != 1:
        raise CheckerFailed(f"side of cycle {a} is not contiguous at vertex {v}")
    gap_of: dict[int, int] = {}
    gap = 0
    i = (ends[0] + 1) % k
    seen_b = False
    for _ in range(k - 1):
        if label[i] == "B":
            seen_b = True
        elif label[i] is None:
            gap_of[i] = 1 if seen_b else 0
        elif label[i] == "A":
            break
        i = (i + 1) % k
    buckets: dict[int, list[frozenset[int]]] = {0: [], 1: []}
    for d in fam.ids:
        if d in inc.pair or v not in fam.cycles[d].vertex_set:
            continue
        for t in fam.sides[d]:
            if t & s_a or t & s_b:
                continue
            arc = _arc(g, v, t)
            which = {gap_of.get(c) for c in arc}
            if len(which) == 1 and None not in which:
                buckets[which.pop()].append(t)
    result = any(t1.isdisjoint(t2) for t1 in buckets[0] for t2 in buckets[1])
    cache[inc] = result
    return result


def sub_incidences(fam: LaminarFamily, inc: Incidence) -> list[Incidence]:
    """Incidences of ``fam`` nested in the disjoint sides of ``inc``'s pair with vertices inside ``V(inc)``."""
    a, b = inc.pair
    s_a, s_b = fam.disjoint_sides(a, b)
    out = []
    for j in compute_incidences(fam):
        if not j.vertex_set <= inc.vertex_set:
            continue
        x, y = j.pair
        if (fam.inside(s_a, x) and fam.inside(s_b, y)) or (fam.inside(s_a, y) and fam.inside(s_b, x)):
            out.append(j)
    return out


def is_minimal(fam: LaminarFamily, inc: Incidence) -> bool:
    cache = _cache(fam).setdefault("minimal", {})
    if inc not in cache:
        cache[inc] = sub_incidences(fam, inc) == [inc]
    return cache[inc]


def minimal_sub_incidences(fam: LaminarFamily, inc: Incidence) -> list[Incidence]:
    return [j for j in sub_incidences(fam, inc) if is_minimal(fam, j)]


def one_sided_incidences(fam: LaminarFamily, c: int) -> list[Incidence]:
    """Incidences between ``c`` and one-sided cycles other than ``c``."""
    return [i for i in compute_incidences(fam) if c in i.pair and fam.one_sided[i.other(c)]]


def v_incidences(fam: LaminarFamily) -> list[Incidence]:
    return [i for i in compute_incidences(fam) if is_crossing(fam, i)]


# ----------------------------------------------------------------------
# base construction (all cycles one-sided)


@dataclass(frozen=True)
class BaseConstruction:
    """Contact graph of one-sided cycles, its triangulating chords and the sets derived from them."""

    contact_edges: tuple[Incidence, ...]
    chords: tuple[Incidence, ...]
    M: Counter
    Mstar: Counter

    @property
    def triangulated_edges(self) -> tuple[Incidence, ...]:
        return self.contact_edges + self.chords


def cyclic_order_at(fam: LaminarFamily, v: int) -> list[int]:
    """One-sided cycles through ``v`` in rotation order of their minimal sides."""
    g = fam.graph
    k = g.degree(v)
    keyed = []
    for c in fam.L1:
        if v not in fam.cycles[c].vertex_set:
            continue
        arc = set(_arc(g, v, fam.os_sides[c][0]))
        start = min(i for i in arc if (i - 1) % k not in arc) if len(arc) < k else 0
        keyed.append((start, c))
    return [c for _, c in sorted(keyed)]


def build_base_mstar(fam: LaminarFamily) -> BaseConstruction:
    """Certificate for a family in which every cycle is one-sided."""
    if len(fam.L1) != len(fam) or len(fam) < 3:
        raise PreconditionViolated("base construction needs at least three cycles, all one-sided")
    incs = compute_incidences(fam)
    lookup = {}
    for inc in incs:
        for v in inc.vertices:
            lookup[(inc.pair, v)] = inc
    contact: set[Incidence] = set()
    chords: list[Incidence] = []
    for v, cs in sorted(fam.vertex_cycles().items()):
        order = cyclic_order_at(fam, v)
        k = len(order)
        if k < 2:
            continue
        pairs = [(order[t], order[(t + 1) % k]) for t in range(k if k > 2 else 1)]
        for x, y in pairs:
            contact.add(lookup[(tuple(sorted((x, y))), v)])
        if k >= 4:
            at_v = sorted(i for i in incs if i.vertices == (v,) and is_crossing(fam, i))
            if at_v:
                for t in range(k - 3):
                    chords.append(at_v[t % len(at_v)])
    noncrossing = {i for i in incs if not is_crossing(fam, i)}
    if contact != noncrossing:
        raise CheckerFailed("contact graph edges differ from the non-crossing incidences")
    contact_edges = tuple(sorted(contact))
    M = Counter(contact_edges) + Counter(chords)
    size = sum(M.values())
    if size > 3 * len(fam.L1) - 6:
        raise CheckerFailed(f"base construction has {size} > 3*|L1|-6 incidences")
    return BaseConstruction(contact_edges, tuple(chords), M, extract_mstar(fam, M))


# ----------------------------------------------------------------------
# recursive construction


def _choose_split(fam: LaminarFamily) -> tuple[int, frozenset[int], frozenset[int]]:
    options = []
    for c in fam.two_sided:
        for si, s in enumerate(fam.sides[c]):
            if not any(d != c and not fam.one_sided[d] and fam.inside(s, d) for d in fam.ids):
                options.append((c, si, s))
    if not options:
        raise CheckerFailed("no two-sided cycle with a side free of two-sided cycles")
    minimal = [o for o in options if not any(p[2] < o[2] for p in options)]
    c, si, s1 = min(minimal, key=lambda o: (o[0], o[1]))
    return c, s1, fam.sides[c][1 - si]


def _run_start(c: Cycle, shared: frozenset[int], block: frozenset[int], other_edges: frozenset[int] = frozenset()) -> int:
    """Position on ``c`` where the cyclic run of ``block`` among ``shared`` vertices begins.

    When ``block`` holds every shared vertex the run closes up around ``c``;
    it then begins after the widest gap, where a step along an edge that the
    partner cycle does not use counts as wider than a step along a common edge.
    """
    positions = [p for p, v in enumerate(c.vertices) if v in shared]
    if all(c.vertices[p] in block for p in positions):
        k = len(c.vertices)

        def gap(t: int) -> tuple[int, int, int]:
            dist = (positions[t] - positions[t - 1]) % k or k
            off_partner = dist == 1 and c.edges[positions[t] - 1] not in other_edges
            return dist, int(off_partner), -t

        return positions[-max(gap(t) for t in range(len(positions)))[2]]
    for t, p in enumerate(positions):
        if c.vertices[p] in block and c.vertices[positions[t - 1]] not in block:
            return p
    raise CheckerFailed("incidence vertices are not a run along the cycle")


def _replacement_order(
    fam: LaminarFamily,
    cstar: int,
    inc: Incidence,
    s_other: frozenset[int],
    candidates: Sequence[Incidence],
) -> list[Incidence]:
    g = fam.graph
    c = fam.cycles[cstar]
    n = inc.other(cstar)
    k = len(c.vertices)
    partner = fam.cycles[n]
    start = _run_start(c, c.vertex_set & partner.vertex_set, inc.vertex_set, partner.edge_set)

    def offset(v: int) -> int:
        return (c.vertices.index(v) - start) % k

    def angular(v: int, other: int) -> int:
        p = c.vertices.index(v)
        e_in = c.edges[p - 1]
        deg = g.degree(v)
        pin = g.position(v, e_in)
        arc = set(_arc(g, v, s_other))
        if pin in arc:
            rank = {i: (i - pin) % deg for i in arc}
        else:
            rank = {i: (pin - 1 - i) % deg for i in arc}
        side = next(t for t in fam.sides[other] if t <= s_other)
        ranks = [rank[i] for i in _arc(g, v, side) if i in rank]
        return min(ranks) if ranks else deg

    def key(j: Incidence):
        other = j.other(n)
        u = min(j.vertices, key=offset)
        return (offset(u), angular(u, other), other, j.vertices)

    return sorted(candidates, key=key)


def replacement_candidates(fam: LaminarFamily, cstar: int, inc: Incidence, s_other: frozenset[int]) -> list[Incidence]:
    """Minimal sub-incidences of ``inc`` between its partner and cycles inside ``s_other``, in order."""
    n = inc.other(cstar)
    cands = []
    for j in compute_incidences(fam):
        if n not in j.pair or not j.vertex_set <= inc.vertex_set:
            continue
        if not fam.inside(s_other, j.other(n)):
            continue
        if is_minimal(fam, j):
            cands.append(j)
    return _replacement_order(fam, cstar, inc, s_other, cands)


def build_good_structured(fam: LaminarFamily, trace: list | None = None) -> Counter:
    """Good and structured incidence multiset by recursive splitting at a two-sided cycle."""
    if len(fam) < 2:
        raise PreconditionViolated("need at least two cycles")
    L1 = fam.L1
    if len(L1) <= 2:
        return Counter()
    if len(fam) == 3 and len(L1) == 3:
        return Counter(compute_incidences(fam))
    if len(L1) == len(fam):
        return build_base_mstar(fam).M
    cstar, s1, s2 = _choose_split(fam)
    out: Counter = Counter()
    for idx, (side, other_side) in enumerate(((s1, s2), (s2, s1)), start=1):
        sub = fam.subfamily(fam.cycles_inside(side))
        m_i = build_good_structured(sub, trace)
        for inc, mult in sorted(m_i.items()):
            if cstar in inc.pair:
                n = inc.other(cstar)
                if fam.one_sided[n] and not is_crossing(sub, inc):
                    cands = replacement_candidates(fam, cstar, inc, other_side)
                    if not cands:
                        raise CheckerFailed(f"no replacement for {inc}")
                    if idx == 1:
                        rep = cands[0]
                    else:
                        rep = next((j for j in cands if not is_crossing(fam, j)), cands[0])
                    if trace is not None:
                        trace.append((idx, inc, rep))
                    out[rep] += mult
                    continue
            out[inc] += mult
    return out


# ----------------------------------------------------------------------
# independent checkers


def check_structured(fam: LaminarFamily, M: Counter) -> tuple[bool, list[str]]:
    """Both structure properties, checked literally against the family's incidences."""
    incs = compute_incidences(fam)
    known = set(incs)
    bad = [f"not an incidence of the family: {i}" for i in M if i not in known]
    for i in incs:
        a, b = i.pair
        if fam.one_sided[a] and fam.one_sided[b] and not is_crossing(fam, i) and M[i] == 0:
            bad.append(f"missing non-crossing incidence {i}")
    vinc = v_incidences(fam)
    in_m: Counter = Counter()
    for i, mult in M.items():
        if i in known and len(i.vertices) == 1 and is_crossing(fam, i):
            in_m[i.vertices[0]] += mult
    for c in fam.L1:
        for v in fam.cycles[c].vertices:
            need = sum(1 for i in vinc if i.vertices == (v,) and c in i.pair and fam.one_sided[i.other(c)])
            if in_m[v] < need:
                bad.append(f"vertex {v} on cycle {c}: {in_m[v]} v-incidences in M, need {need}")
    return not bad, bad


def check_good(fam: LaminarFamily, M: Counter) -> tuple[bool, list[str]]:
    """Size bound and per-cycle hit counts."""
    bad = []
    size = sum(M.values())
    if size > 3 * len(fam.L1) - 6:
        bad.append(f"|M| = {size} exceeds 3*{len(fam.L1)}-6")
    for c in fam.ids:
        cyc = fam.cycles[c]
        hits = sum(mult for i, mult in M.items() if i.hits(cyc))
        need = len(one_sided_incidences(fam, c))
        if hits < need:
            bad.append(f"cycle {c} hit {hits} times, needs {need}")
    return not bad, bad


def is_m_good(fam: LaminarFamily, M: Counter, c: int) -> bool:
    cyc = fam.cycles[c]
    return sum(mult for i, mult in M.items() if i.hits(cyc)) >= len(one_sided_incidences(fam, c))


def extract_mstar(fam: LaminarFamily, M: Counter) -> Counter:
    """One vertex (the lowest) per incidence of ``M``, with multiplicity."""
    if any(is_redundant(fam, c) for c in fam.ids):
        raise RedundantCyclePresent("family contains redundant cycles")
    out: Counter = Counter()
    for inc, mult in M.items():
        out[min(inc.vertices)] += mult
    return out


def certificate_need(fam: LaminarFamily, c: int) -> int:
    return len(neighbours(fam, c)[1] - {c})


def check_certificate(fam: LaminarFamily, mstar: Counter) -> tuple[bool, list[str]]:
    """``|M*| <= 3|L1|`` and every cycle meets ``M*`` at least once per one-sided neighbour."""
    bad = []
    size = sum(mstar.values())
    if size > 3 * len(fam.L1):
        bad.append(f"|M*| = {size} exceeds 3*{len(fam.L1)}")
    for c in fam.ids:
        have = sum(mstar[v] for v in fam.cycles[c].vertex_set)
        need = certificate_need(fam, c)
        if have < need:
            bad.append(f"cycle {c}: |M* on C| = {have} < {need}")
    return not bad, bad


def chain_repair(fam: LaminarFamily, mstar: Counter) -> Counter:
    """Add one shared vertex when exactly two one-sided cycles touch.

    Such pairs are homotopic, so they have no incidences, yet each still
    needs one certificate vertex.
    """
    L1 = fam.L1
    out = Counter(mstar)
    if len(L1) == 2:
        a, b = L1
        shared = fam.cycles[a].vertex_set & fam.cycles[b].vertex_set
        if shared:
            out[min(shared)] += 1
    return out


@dataclass
class Certificate:
    M: Counter
    Mstar: Counter
    structured: tuple[bool, list[str]]
    good: tuple[bool, list[str]]
    certificate: tuple[bool, list[str]]
    repaired: Counter
    repaired_ok: tuple[bool, list[str]]
    L1: int

    family_size: int = 2

    @property
    def size_bound(self) -> int:
        """``3|L1| - 6`` once the family has two cycles; a lone cycle needs nothing."""
        return 3 * self.L1 - 6 if self.family_size >= 2 else 3 * self.L1

    @property
    def size_ok(self) -> bool:
        return sum(self.Mstar.values()) <= self.size_bound


def certify(fam: LaminarFamily) -> Certificate:
    """Build ``M`` and ``M*`` for a redundancy-free family and run every checker."""
    if len(fam) < 2:
        M: Counter = Counter()
    else:
        M = build_good_structured(fam)
    mstar = extract_mstar(fam, M)
    repaired = chain_repair(fam, mstar)
    return Certificate(
        M=M,
        Mstar=mstar,
        structured=check_structured(fam, M),
        good=check_good(fam, M) if len(fam) >= 2 else (True, []),
        certificate=check_certificate(fam, mstar),
        repaired=repaired,
        repaired_ok=check_certificate(fam, repaired),
        L1=len(fam.L1),
        family_size=len(fam),
    )


def brute_min_mstar(fam: LaminarFamily, node_budget: int = 2_000_000) -> Counter:
    """Smallest vertex multiset meeting every cycle's certificate demand, by exhaustive search."""
    needs = {c: certificate_need(fam, c) for c in fam.ids}
    every = sorted({v for c in fam.ids for v in fam.cycles[c].vertices})
    on_set = {v: frozenset(c for c in fam.ids if v in fam.cycles[c].vertex_set) for v in every}
    # a vertex whose cycle set is contained in another vertex's can always be swapped out
    verts = []
    for v in every:
        dominated = any(
            on_set[v] < on_set[u] or (on_set[v] == on_set[u] and u < v) for u in every if u != v
        )
        if not dominated:
            verts.append(v)
    on = {v: sorted(on_set[v]) for v in verts}
    verts_of = {c: [v for v in verts if c in on_set[v]] for c in fam.ids}
    nodes = 0

    def search(budget: int, deficit: dict[int, int], chosen: Counter, seen: set) -> Counter | None:
        # some vertex of the neediest cycle must be chosen next
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("certificate search budget exhausted")
        open_cycles = [c for c, d in deficit.items() if d > 0]
        if not open_cycles:
            return Counter(chosen)
        if max(deficit[c] for c in open_cycles) > budget:
            return None
        key = tuple(sorted(chosen.items()))
        if key in seen:
            return None
        seen.add(key)
        target = min(open_cycles, key=lambda c: (len(verts_of[c]), -deficit[c], c))
        for v in verts_of[target]:
            for c in on[v]:
                deficit[c] -= 1
            chosen[v] += 1
            res = search(budget - 1, deficit, chosen, seen)
            chosen[v] -= 1
            if not chosen[v]:
                del chosen[v]
            for c in on[v]:
                deficit[c] += 1
            if res is not None:
                return res
        return None

    for size in range(0, 3 * len(fam.L1) + 1):
        res = search(size, dict(needs), Counter(), set())
        if res is not None:
            return res
    raise CheckerFailed("no certificate within 3|L1|")


# ----------------------------------------------------------------------
# cover for a set of one-sided cycles


@dataclass(frozen=True)
class Cover:
    vertices: frozenset[int]
    internal: tuple[int, ...]
    external: tuple[int, ...]
    reference_face: int | None
    virtual_owner: int | None


def _interiors(fam: LaminarFamily) -> tuple[dict[int, frozenset[int]], int | None, int | None]:
    os_faces = _os_faces(fam)
    free = sorted(fam.all_faces - os_faces)
    if free:
        p = free[0]
        return {c: next(s for s in fam.sides[c] if p not in s) for c in fam.ids}, p, None
    owner = fam.L1[0]
    s0 = fam.os_sides[owner][0]
    p = min(s0)
    inter = {c: next(s for s in fam.sides[c] if p not in s) for c in fam.ids}
    inter[owner] = s0
    return inter, None, owner


def cover_for_set(fam: LaminarFamily, F: Sequence[int]) -> Cover:
    """At most ``|F| + |L1|`` vertices of ``F``-cycles hitting every cycle that meets ``F``."""
    F = sorted(set(F))
    if not F:
        return Cover(frozenset(), (), (), None, None)
    for c in F:
        if not fam.one_sided[c]:
            raise PreconditionViolated(f"cycle {c} is not one-sided")
    inter, p_face, owner = _interiors(fam)
    V = {c: fam.cycles[c].vertex_set for c in fam.ids}

    def contains(outer: int, inner: int) -> bool:
        return inter[inner] <= inter[outer]

    f_of: dict[int, int] = {}
    for c in fam.ids:
        for cf in F:
            if contains(c, cf) and V[c] & V[cf]:
                f_of[c] = cf
                break
    internal = []
    for cf in F:
        pre = [c for c, t in f_of.items() if t == cf]
        common = set(V[cf])
        for c in pre:
            common &= V[c]
        if not common:
            raise CheckerFailed(f"cycles assigned to {cf} share no vertex")
        internal.append(min(common))
    fverts = set().union(*(V[c] for c in F))
    ext_left = {c for c in fam.ids if c not in f_of and V[c] & fverts}
    alive = set(fam.ids)
    external = []
    fset = set(F)
    while ext_left:
        minimal = [c for c in ext_left if not any(d != c and contains(c, d) for d in ext_left)]
        c1 = min(minimal)
        c2 = next((c for c in F if c in alive and V[c1] & V[c]), None)
        if c2 is None:
            raise CheckerFailed(f"external cycle {c1} meets no remaining F-cycle")
        v = min(V[c1] & V[c2])
        external.append(v)
        for d in list(alive):
            if contains(c1, d) or (d not in fset and v in V[d]):
                alive.discard(d)
        ext_left = {c for c in ext_left if c in alive}
    cover = Cover(frozenset(internal) | frozenset(external), tuple(internal), tuple(external), p_face, owner)
    return cover


def check_cover(fam: LaminarFamily, F: Sequence[int], cover: Cover) -> tuple[bool, list[str]]:
    bad = []
    F = sorted(set(F))
    if len(cover.vertices) > len(F) + len(fam.L1):
        bad.append(f"cover has {len(cover.vertices)} > |F| + |L1| = {len(F) + len(fam.L1)} vertices")
    fverts = set().union(*(fam.cycles[c].vertex_set for c in F)) if F else set()
    if not cover.vertices <= fverts:
        bad.append("cover uses vertices outside the F-cycles")
    for c in fam.ids:
        vs = fam.cycles[c].vertex_set
        if vs & fverts and not vs & cover.vertices:
            bad.append(f"cycle {c} meets F but misses the cover")
    return not bad, bad


def audit_cover(fam: LaminarFamily, F: Sequence[int]) -> None:
    """Raise when the cover construction violates its size or hitting guarantee."""
    ok, bad = check_cover(fam, F, cover_for_set(fam, F))
    if not ok:
        raise CheckerFailed("; ".join(bad))
