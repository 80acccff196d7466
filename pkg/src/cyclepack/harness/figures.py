"""Hand-built realizations of small named configurations used as fixtures.

Each builder returns an :class:`EmbeddedGraph` and a mapping from a short
name to a :class:`Cycle`.  Coordinates only serve to derive rotations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..planar import Cycle, EmbeddedGraph
from .grid import Grid

Point = tuple[float, float]


def polygon_family(polys: dict[str, Sequence[Point]]) -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    """Graph formed by the union of polygon boundaries; shared points and segments merge."""
    ids: dict[Point, int] = {}
    for pts in polys.values():
        for p in pts:
            ids.setdefault(p, len(ids))
    edge_id: dict[frozenset[int], int] = {}
    edges: list[tuple[int, int]] = []
    cyc_edges: dict[str, list[int]] = {}
    for name, pts in polys.items():
        lst = []
        for p, q in zip(pts, list(pts[1:]) + [pts[0]]):
            key = frozenset((ids[p], ids[q]))
            if key not in edge_id:
                edge_id[key] = len(edges)
                edges.append((ids[p], ids[q]))
            lst.append(edge_id[key])
        cyc_edges[name] = lst
    coords = {i: p for p, i in ids.items()}
    g = EmbeddedGraph.from_straight_line(coords, edges)
    return g, {name: Cycle.from_edges(g, lst) for name, lst in cyc_edges.items()}


# nested rectangles: a contains b, c; b contains d; e contains f; a and e touch at a corner
FIGURE1_RECTS = {
    "a": (0, 0, 4, 4),
    "b": (2, 2, 4, 3),
    "c": (0, 0, 2, 2),
    "d": (2, 2, 3, 3),
    "e": (4, 4, 6, 6),
    "f": (5, 5, 6, 6),
}
FIGURE1_WEIGHTS = {
    "a": Fraction(2, 3),
    "b": Fraction(1, 3),
    "c": Fraction(1, 3),
    "d": Fraction(1, 3),
    "e": Fraction(1, 3),
    "f": Fraction(2, 3),
}


def figure1() -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    grid = Grid(6, 6)
    return grid.graph, {k: grid.rect(*r) for k, r in FIGURE1_RECTS.items()}


V, W = (0, 0), (4, 0)


def figure3(with_c7: bool = True) -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    """A two-sided cycle ``C*`` touched by five one-sided cycles at ``v`` and ``w``.

    ``C6`` is two-sided and passes through both ``v`` and ``w``; ``C7`` sits
    inside ``C6`` so that ``C6`` is not homotopic to ``C3``.
    """
    polys: dict[str, list[Point]] = {
        "C*": [(9, 0), W, (2, 0), V, (-5, 0), (-5, 8), (9, 8)],
        "C1": [V, (-1, 2), (-3, 2), (-3, 1)],
        "C2": [V, (1, 1), (3, 1), W, (3, 2), (1, 2)],
        "C3": [W, (5, 1), (6, 2), (5, 2)],
        "C4": [V, (1, -1), (3, -1), W, (3, -2), (1, -2)],
        "C5": [W, (6, -1), (6, -2), (5, -2)],
        "C6": [V, (1, 4), (3, 4), W, (8, 1), (8, 6), (-1, 6), (-1, 3)],
    }
    if with_c7:
        polys["C7"] = [(3, 6), (2, 5), (4, 5)]
    # C7 touches C6 at (3, 6), which is not a corner of C6; insert it
    polys["C6"] = [V, (1, 4), (3, 4), W, (8, 1), (8, 6), (3, 6), (-1, 6), (-1, 3)]
    return polygon_family(polys)


def figure2() -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    """Five one-sided petals meeting at one vertex, with contacts between consecutive petals."""
    polys: dict[str, list[Point]] = {}
    hub = (0.0, 0.0)
    k = 5
    tips = []
    for t in range(k):
        ang = 2 * math.pi * t / k
        tips.append((round(4 * math.cos(ang), 6), round(4 * math.sin(ang), 6)))
    # each petal: hub -> left shoulder -> tip -> right shoulder; neighbouring petals share a shoulder point
    shoulders = []
    for t in range(k):
        ang = 2 * math.pi * (t + 0.5) / k
        shoulders.append((round(2 * math.cos(ang), 6), round(2 * math.sin(ang), 6)))
    for t in range(k):
        right = shoulders[t - 1]
        left = shoulders[t]
        polys[f"P{t}"] = [hub, right, tips[t], left]
    return polygon_family(polys)


def petals(k: int, touching: bool = False) -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    """``k`` triangles sharing only a hub vertex (optionally touching neighbours at tips)."""
    hub = (0.0, 0.0)
    polys: dict[str, list[Point]] = {}
    outer = []
    for t in range(k):
        a1 = 2 * math.pi * t / k + 0.3
        a2 = 2 * math.pi * (t + 1) / k - 0.3
        outer.append(
            (
                (round(3 * math.cos(a1), 6), round(3 * math.sin(a1), 6)),
                (round(3 * math.cos(a2), 6), round(3 * math.sin(a2), 6)),
            )
        )
    for t in range(k):
        p1, p2 = outer[t]
        polys[f"P{t}"] = [hub, p1, p2]
    return polygon_family(polys)


def figure5() -> tuple[EmbeddedGraph, dict[str, Cycle]]:
    """A cycle ``C2`` touched from outside at ``v`` by ``C1`` and by a large cycle around ``C1``."""
    grid = Grid(6, 4)
    cycles = {
        "C2": grid.rect(0, 0, 2, 2),
        "C1": grid.rect(2, 2, 4, 3),
        "B": grid.path_cycle([(2, 2), (5, 2), (5, 4), (2, 4)]),
    }
    return grid.graph, cycles
