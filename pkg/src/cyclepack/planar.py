"""Combinatorial sphere embeddings and laminar cycle families.

A graph is embedded by a rotation system: for every vertex the cyclic
(counter-clockwise) order of its incident edges.  Faces, cycle sides and
every containment question are answered purely combinatorially on face
sets, so no coordinates are ever needed after construction.

Half-edges ("darts") are encoded as ``2 * edge + d`` where ``d = 0`` runs
from the first endpoint of the edge to the second and ``d = 1`` back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleNotInFamily,
    DegenerateFamily,
    MalformedRotation,
    MultiComponentFamily,
    NotACycle,
    NotConnected,
    NotLaminar,
)


class _UnionFind:
    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {i: i for i in items}

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    """A planar multigraph together with a rotation system.

    Edge ids are indices into ``edges``.  The rotation of a vertex lists
    its incident edge ids in counter-clockwise order.  Disconnected graphs
    are only accepted with ``allow_disconnected=True``; each component is
    then embedded in its own sphere and checked separately.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    rotation: Mapping[int, tuple[int, ...]]
    allow_disconnected: bool = False
    faces: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    dart_face: tuple[int, ...] = field(init=False, repr=False)
    face_component: tuple[int, ...] = field(init=False, repr=False)
    vertex_component: Mapping[int, int] = field(init=False, repr=False)
    _pos: Mapping[int, Mapping[int, int]] = field(init=False, repr=False)
    _corner_faces: Mapping[int, tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        rotation = {v: tuple(self.rotation.get(v, ())) for v in vertices}
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "rotation", rotation)
        self._validate()
        self._trace_faces()

    # ------------------------------------------------------------------
    # construction helpers
    @classmethod
    def from_straight_line(
        cls,
        coords: Mapping[int, tuple[float, float]],
        edges: Sequence[tuple[int, int]],
        allow_disconnected: bool = False,
    ) -> "EmbeddedGraph":
        """Embed a straight-line drawing by sorting edges by angle."""
        rot: dict[int, list[tuple[float, int]]] = {v: [] for v in coords}
        for eid, (u, v) in enumerate(edges):
            (x1, y1), (x2, y2) = coords[u], coords[v]
            rot[u].append((math.atan2(y2 - y1, x2 - x1), eid))
            rot[v].append((math.atan2(y1 - y2, x1 - x2), eid))
        rotation = {v: tuple(e for _, e in sorted(lst)) for v, lst in rot.items()}
        return cls(tuple(sorted(coords)), tuple(edges), rotation, allow_disconnected)

    def _validate(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise MalformedRotation("duplicate vertex ids")
        incident: dict[int, list[int]] = {v: [] for v in self.vertices}
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                raise MalformedRotation(f"edge {eid} is a loop")
            if u not in vset or v not in vset:
                raise MalformedRotation(f"edge {eid} has an unknown endpoint")
            incident[u].append(eid)
            incident[v].append(eid)
        for v in self.vertices:
            rot = self.rotation[v]
            if sorted(rot) != sorted(incident[v]):
                raise MalformedRotation(f"rotation at {v} does not list its incident edges exactly once")
        pos = {v: {e: i for i, e in enumerate(self.rotation[v])} for v in self.vertices}
        object.__setattr__(self, "_pos", pos)

    def _trace_faces(self) -> None:
        ndarts = 2 * len(self.edges)
        dart_face = [-1] * ndarts
        faces: list[tuple[int, ...]] = []
        for start in range(ndarts):
            if dart_face[start] != -1:
                continue
            walk = []
            d = start
            while dart_face[d] == -1:
                dart_face[d] = len(faces)
                walk.append(d)
                d = self.next_dart(d)
            if d != start:
                raise MalformedRotation("face traversal is not a permutation")
            faces.append(tuple(walk))
        isolated = [v for v in self.vertices if not self.rotation[v]]
        iso_face = {}
        for v in isolated:
            iso_face[v] = len(faces)
            faces.append(())
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "dart_face", tuple(dart_face))

        uf = _UnionFind(self.vertices)
        for u, v in self.edges:
            uf.union(u, v)
        roots = sorted({uf.find(v) for v in self.vertices}, key=lambda r: r)
        comp_of_root = {r: i for i, r in enumerate(roots)}
        vcomp = {v: comp_of_root[uf.find(v)] for v in self.vertices}
        if len(roots) > 1 and not self.allow_disconnected:
            raise NotConnected(f"graph has {len(roots)} components")
        fcomp = [0] * len(faces)
        for fid, walk in enumerate(faces):
            if walk:
                fcomp[fid] = vcomp[self.dart_tail(walk[0])]
        for v, fid in iso_face.items():
            fcomp[fid] = vcomp[v]
        object.__setattr__(self, "face_component", tuple(fcomp))
        object.__setattr__(self, "vertex_component", vcomp)

        nv = [0] * len(roots)
        ne = [0] * len(roots)
        nf = [0] * len(roots)
        for v in self.vertices:
            nv[vcomp[v]] += 1
        for u, _ in self.edges:
            ne[vcomp[u]] += 1
        for c in fcomp:
            nf[c] += 1
        for c in range(len(roots)):
            if nv[c] - ne[c] + nf[c] != 2:
                raise MalformedRotation(
                    f"component {c} violates Euler: V={nv[c]} E={ne[c]} F={nf[c]}"
                )

        corner_faces = {}
        for v in self.vertices:
            rot = self.rotation[v]
            if rot:
                k = len(rot)
                corner_faces[v] = tuple(
                    dart_face[self.out_dart(v, rot[(i + 1) % k])] for i in range(k)
                )
            else:
                corner_faces[v] = (iso_face[v],)
        object.__setattr__(self, "_corner_faces", corner_faces)

    # ------------------------------------------------------------------
    # darts
    def dart_tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def dart_head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def out_dart(self, v: int, e: int) -> int:
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    def next_dart(self, d: int) -> int:
        """Successor of ``d`` along its face: rotate past the reverse dart."""
        h = self.dart_head(d)
        rot = self.rotation[h]
        e2 = rot[(self._pos[h][d >> 1] + 1) % len(rot)]
        return self.out_dart(h, e2)

    def position(self, v: int, e: int) -> int:
        return self._pos[v][e]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def corner_faces(self, v: int) -> tuple[int, ...]:
        """Face of each corner at ``v``; corner ``i`` lies between rotation slots ``i`` and ``i+1``."""
        return self._corner_faces[v]

    def edge_faces(self, e: int) -> tuple[int, int]:
        return self.dart_face[2 * e], self.dart_face[2 * e + 1]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def component_faces(self, comp: int) -> frozenset[int]:
        return frozenset(f for f, c in enumerate(self.face_component) if c == comp)


def compute_faces(g: EmbeddedGraph) -> tuple[tuple[int, ...], ...]:
    """Face walks of ``g`` as dart tuples (isolated vertices give empty walks)."""
    return g.faces


@dataclass(frozen=True)
class Cycle:
    """A simple cycle given by its edges in traversal order.

    ``vertices[i]`` is the vertex where ``edges[i]`` starts, so the
    traversal is ``vertices[0] -edges[0]-> vertices[1] -> ...``.
    """

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def from_edges(cls, g: EmbeddedGraph, edge_ids: Sequence[int]) -> "Cycle":
        """Order the given edge ids into a closed simple walk.

        The input order is kept when it already is a traversal.
        """
        ids = [int(e) for e in edge_ids]
        if len(ids) < 2 or len(set(ids)) != len(ids):
            raise NotACycle("a cycle needs at least two distinct edges")
        for e in ids:
            if not 0 <= e < len(g.edges):
                raise NotACycle(f"unknown edge {e}")
        at: dict[int, list[int]] = {}
        for e in ids:
            for x in g.edges[e]:
                at.setdefault(x, []).append(e)
        if any(len(lst) != 2 for lst in at.values()):
            raise NotACycle("edge set is not 2-regular")
        first = ids[0]
        u, v = g.edges[first]
        start = u
        if len(ids) > 2 and v not in g.edges[ids[1]] and u in g.edges[ids[1]]:
            start = v
        order = [first]
        verts = [start]
        cur = g.other_end(first, start)
        prev = first
        while cur != start:
            verts.append(cur)
            a, b = at[cur]
            nxt = b if a == prev else a
            order.append(nxt)
            prev = nxt
            cur = g.other_end(nxt, cur)
        if len(order) != len(ids):
            raise NotACycle("edge set is not connected")
        return cls(tuple(order), tuple(verts))

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.edges)

    def darts(self, g: EmbeddedGraph) -> list[int]:
        return [g.out_dart(v, e) for v, e in zip(self.vertices, self.edges)]


@dataclass(frozen=True)
class SideRegion:
    """One of the two face sets bounded by a cycle."""

    cycle: int
    faces: frozenset[int]


def cycle_sides(g: EmbeddedGraph, c: Cycle) -> tuple[frozenset[int], frozenset[int]]:
    """Left and right face sets of ``c`` (relative to its stored orientation).

    Faces along the cycle are split by the direction of their dart, then
    the rest of the cycle's graph component is flooded across non-cycle
    edges.
    """
    darts = c.darts(g)
    cedges = c.edge_set
    comp = g.vertex_component[c.vertices[0]]
    comp_faces = g.component_faces(comp)
    uf = _UnionFind(comp_faces)
    for e, (a, _) in enumerate(g.edges):
        if e not in cedges and g.vertex_component[a] == comp:
            f1, f2 = g.edge_faces(e)
            uf.union(f1, f2)
    left_roots = {uf.find(g.dart_face[d]) for d in darts}
    right_roots = {uf.find(g.dart_face[d ^ 1]) for d in darts}
    if left_roots & right_roots:
        raise NotACycle("cycle does not separate the sphere")
    left = frozenset(f for f in comp_faces if uf.find(f) in left_roots)
    right = frozenset(f for f in comp_faces if uf.find(f) in right_roots)
    if left | right != comp_faces:
        raise NotACycle("cycle sides do not cover the faces")
    return left, right


def sides_disjoint_pair(
    a: tuple[frozenset[int], frozenset[int]], b: tuple[frozenset[int], frozenset[int]]
) -> tuple[int, int] | None:
    """Indices ``(i, j)`` with ``a[i]`` and ``b[j]`` disjoint, or ``None``."""
    for i in (0, 1):
        for j in (0, 1):
            if not (a[i] & b[j]):
                return i, j
    return None


def side_contains_cycle(s: frozenset[int], sides_of_c2: tuple[frozenset[int], frozenset[int]]) -> bool:
    """True iff some side of the second cycle lies inside the face set ``s``."""
    return sides_of_c2[0] <= s or sides_of_c2[1] <= s


def is_laminar(g: EmbeddedGraph, cycles: Sequence[Cycle]) -> tuple[bool, tuple[int, int] | None]:
    """Check pairwise laminarity; on failure return the first crossing pair."""
    sides = [cycle_sides(g, c) for c in cycles]
    for i, j in combinations(range(len(cycles)), 2):
        if sides_disjoint_pair(sides[i], sides[j]) is None:
            return False, (i, j)
    return True, None


@dataclass(frozen=True, eq=False)
class LaminarFamily:
    """A classified laminar family.

    Cycles are addressed by caller-chosen integer ids which survive when
    sub-families are formed.  ``os_sides`` maps each one-sided cycle to
    its minimal side(s); a family with a single cycle has two.
    """

    graph: EmbeddedGraph
    ids: tuple[int, ...]
    cycles: Mapping[int, Cycle]
    sides: Mapping[int, tuple[frozenset[int], frozenset[int]]]
    one_sided: Mapping[int, bool]
    os_sides: Mapping[int, tuple[frozenset[int], ...]]
    homotopy: Mapping[int, int]
    homotopy_key: Mapping[int, frozenset[frozenset[int]]]
    component: Mapping[int, int]
    graph_component: int

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, cid: int) -> bool:
        return cid in self.cycles

    @property
    def L1(self) -> tuple[int, ...]:
        return tuple(i for i in self.ids if self.one_sided[i])

    @property
    def two_sided(self) -> tuple[int, ...]:
        return tuple(i for i in self.ids if not self.one_sided[i])

    @property
    def all_faces(self) -> frozenset[int]:
        return self.graph.component_faces(self.graph_component)

    def inside(self, s: frozenset[int], cid: int) -> bool:
        """Cycle ``cid`` is inside ``s`` when one of its sides is a subset of ``s``."""
        return side_contains_cycle(s, self.sides[cid])

    def cycles_inside(self, s: frozenset[int]) -> list[int]:
        return [i for i in self.ids if self.inside(s, i)]

    def one_sided_side_list(self) -> list[tuple[int, frozenset[int]]]:
        return [(i, s) for i in self.ids for s in self.os_sides.get(i, ())]

    def side_key(self, s: frozenset[int]) -> frozenset[int]:
        """Indices (into ``one_sided_side_list``) of one-sided sides inside ``s``."""
        return frozenset(k for k, (_, t) in enumerate(self.one_sided_side_list()) if t <= s)

    def homotopic(self, a: int, b: int) -> bool:
        return self.homotopy[a] == self.homotopy[b]

    def disjoint_sides(self, a: int, b: int) -> tuple[frozenset[int], frozenset[int]]:
        """Sides ``(S_a, S_b)`` of the two cycles that are disjoint."""
        ij = sides_disjoint_pair(self.sides[a], self.sides[b])
        if ij is None:
            raise NotLaminar(f"cycles {a} and {b} cross", (a, b))
        return self.sides[a][ij[0]], self.sides[b][ij[1]]

    def components(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in self.ids:
            out.setdefault(self.component[i], []).append(i)
        return out

    def subfamily(self, ids: Iterable[int]) -> "LaminarFamily":
        keep = [i for i in self.ids if i in set(ids)]
        return classify_family(self.graph, [self.cycles[i] for i in keep], keep)

    def vertex_cycles(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in self.ids:
            for v in self.cycles[i].vertices:
                out.setdefault(v, []).append(i)
        return out


def classify_family(
    g: EmbeddedGraph, cycles: Sequence[Cycle], ids: Sequence[int] | None = None
) -> LaminarFamily:
    """Classify a laminar family into one-sided cycles, homotopy classes and components."""
    if ids is None:
        ids = list(range(len(cycles)))
    ids = tuple(ids)
    if len(ids) != len(cycles) or len(set(ids)) != len(ids):
        raise ValueError("ids must be distinct and match the cycles")
    if not cycles:
        raise ValueError("empty family")
    gcomps = {g.vertex_component[c.vertices[0]] for c in cycles}
    if len(gcomps) != 1:
        raise MultiComponentFamily("family spans several graph components")
    (gcomp,) = gcomps
    cyc = dict(zip(ids, cycles))
    if len({c.edge_set for c in cycles}) != len(cycles):
        raise DegenerateFamily("family contains the same cycle twice")
    sides = {i: cycle_sides(g, cyc[i]) for i in ids}
    for a, b in combinations(ids, 2):
        if sides_disjoint_pair(sides[a], sides[b]) is None:
            raise NotLaminar(f"cycles {a} and {b} cross", (a, b))

    all_sides = [(i, s) for i in ids for s in sides[i]]
    os_sides: dict[int, tuple[frozenset[int], ...]] = {}
    for i in ids:
        mins = []
        for s in sides[i]:
            if not any(t < s for _, t in all_sides):
                mins.append(s)
        if mins:
            os_sides[i] = tuple(mins)
    one_sided = {i: i in os_sides for i in ids}

    os_list = [(i, s) for i in ids for s in os_sides.get(i, ())]
    hkey: dict[int, frozenset[frozenset[int]]] = {}
    for i in ids:
        parts = []
        for s in sides[i]:
            parts.append(frozenset(k for k, (_, t) in enumerate(os_list) if t <= s))
        hkey[i] = frozenset(parts)
    class_ids: dict[frozenset[frozenset[int]], int] = {}
    homotopy = {}
    for i in ids:
        homotopy[i] = class_ids.setdefault(hkey[i], len(class_ids))

    uf = _UnionFind(ids)
    owner: dict[int, int] = {}
    for i in ids:
        for v in cyc[i].vertices:
            if v in owner:
                uf.union(owner[v], i)
            else:
                owner[v] = i
    comp_ids: dict[int, int] = {}
    component = {}
    for i in ids:
        component[i] = comp_ids.setdefault(uf.find(i), len(comp_ids))

    return LaminarFamily(
        graph=g,
        ids=ids,
        cycles=cyc,
        sides=sides,
        one_sided=one_sided,
        os_sides=os_sides,
        homotopy=homotopy,
        homotopy_key=hkey,
        component=component,
        graph_component=gcomp,
    )


def neighbours(fam: LaminarFamily, cid: int) -> tuple[frozenset[int], frozenset[int]]:
    """Cycles sharing a vertex with ``cid`` (including itself), and the one-sided ones among them."""
    if cid not in fam.cycles:
        raise CycleNotInFamily(str(cid))
    vs = fam.cycles[cid].vertex_set
    n = frozenset(i for i in fam.ids if i == cid or not vs.isdisjoint(fam.cycles[i].vertex_set))
    return n, frozenset(i for i in n if fam.one_sided[i])


def vertex_components(cycles: Mapping[int, Cycle] | Sequence[tuple[int, Cycle]]) -> list[list[int]]:
    """Group cycle ids into components of their union (shared vertices connect)."""
    items = list(cycles.items()) if isinstance(cycles, Mapping) else list(cycles)
    ids = [i for i, _ in items]
    uf = _UnionFind(ids)
    owner: dict[int, int] = {}
    for i, c in items:
        for v in c.vertices:
            if v in owner:
                uf.union(owner[v], i)
            else:
                owner[v] = i
    groups: dict[int, list[int]] = {}
    for i in ids:
        groups.setdefault(uf.find(i), []).append(i)
    return sorted((sorted(gr) for gr in groups.values()), key=lambda gr: gr[0])
