"""Reduce edge-disjoint packing over a laminar family to vertex-disjoint packing.

Every edge of ``G`` becomes a node of ``G'``; every pair of consecutive
edges ``e1 x e2`` on a family cycle becomes an edge of ``G'``.  The image
of a cycle therefore visits exactly the nodes that were its edges, so two
cycles share an edge in ``G`` exactly when their images share a node.

The rotation system of ``G'`` is derived from the rotations of ``G``:
around the node of edge ``e = (a, b)`` the chords through ``b`` come
first, then those through ``a``; chords through the same endpoint are
ordered by how far counter-clockwise their partner edge sits, and
parallel chords by the size of the region they wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotLaminar, UnknownCycle
from .planar import Cycle, EmbeddedGraph, cycle_sides, is_laminar


@dataclass(frozen=True)
class Chord:
    """Edge of ``G'`` standing for the subpath ``tail_edge -> vertex -> head_edge`` of a cycle."""

    cycle: int
    vertex: int
    tail_edge: int
    head_edge: int


@dataclass(frozen=True, eq=False)
class ReductionMap:
    source_graph: EmbeddedGraph
    source_cycles: Mapping[int, Cycle]
    target_graph: EmbeddedGraph
    target_cycles: Mapping[int, Cycle]
    chords: tuple[Chord, ...]

    def image(self, cid: int) -> Cycle:
        if cid not in self.target_cycles:
            raise UnknownCycle(str(cid))
        return self.target_cycles[cid]


def edge_to_vertex(g: EmbeddedGraph, cycles: Mapping[int, Cycle]) -> ReductionMap:
    """Build ``G'`` and the image family; validates Euler's formula and laminarity."""
    ids = sorted(cycles)
    ok, pair = is_laminar(g, [cycles[i] for i in ids])
    if not ok:
        raise NotLaminar("source family is not laminar", (ids[pair[0]], ids[pair[1]]))
    sides = {i: cycle_sides(g, cycles[i]) for i in ids}

    chords: list[Chord] = []
    image_edges: dict[int, list[int]] = {}
    for cid in ids:
        c = cycles[cid]
        k = len(c.edges)
        own = []
        for i in range(k):
            chords.append(Chord(cid, c.vertices[i], c.edges[i - 1], c.edges[i]))
            own.append(len(chords) - 1)
        # chord at position i joins edges[i-1] -> edges[i]; start the image at edges[0]
        image_edges[cid] = own[1:] + own[:1]

    incident: dict[int, list[tuple[int, int, int]]] = {e: [] for e in range(len(g.edges))}
    for idx, ch in enumerate(chords):
        incident[ch.tail_edge].append((idx, ch.vertex, ch.head_edge))
        incident[ch.head_edge].append((idx, ch.vertex, ch.tail_edge))

    def hug(cid: int, x: int, e: int) -> int:
        corner_face = g.corner_faces(x)[g.position(x, e)]
        return len(next(s for s in sides[cid] if corner_face in s))

    rotation: dict[int, tuple[int, ...]] = {}
    for e, (a, b) in enumerate(g.edges):
        order: list[int] = []
        for x in (b, a):
            deg = g.degree(x)
            pe = g.position(x, e)
            block = [
                ((g.position(x, p) - pe) % deg, hug(chords[idx].cycle, x, e), chords[idx].cycle, idx)
                for idx, vx, p in incident[e]
                if vx == x
            ]
            order.extend(t[-1] for t in sorted(block))
        rotation[e] = tuple(order)

    target = EmbeddedGraph(
        vertices=tuple(range(len(g.edges))),
        edges=tuple((ch.tail_edge, ch.head_edge) for ch in chords),
        rotation=rotation,
        allow_disconnected=True,
    )
    images = {
        cid: Cycle(tuple(image_edges[cid]), tuple(cycles[cid].edges)) for cid in ids
    }
    ok, pair = is_laminar(target, [images[i] for i in ids])
    if not ok:
        raise NotLaminar("image family is not laminar", (ids[pair[0]], ids[pair[1]]))
    return ReductionMap(g, dict(cycles), target, images, tuple(chords))


def disjointness_equivalent(red: ReductionMap) -> bool:
    """Edge-disjointness in ``G`` matches vertex-disjointness in ``G'`` for every pair."""
    ids = sorted(red.source_cycles)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            e_disjoint = red.source_cycles[a].edge_set.isdisjoint(red.source_cycles[b].edge_set)
            v_disjoint = red.target_cycles[a].vertex_set.isdisjoint(red.target_cycles[b].vertex_set)
            if e_disjoint != v_disjoint:
                return False
    return True


def lift_solution(red: ReductionMap, values: Mapping[int, Fraction] | Sequence[int]):
    """Pull a packing (id list) or fractional weights on images back to source cycles."""
    if isinstance(values, Mapping):
        for cid in values:
            if cid not in red.target_cycles:
                raise UnknownCycle(str(cid))
        return {cid: Fraction(v) for cid, v in values.items()}
    out = list(values)
    for cid in out:
        if cid not in red.target_cycles:
            raise UnknownCycle(str(cid))
    return out
