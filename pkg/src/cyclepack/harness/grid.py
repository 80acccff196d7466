"""Rectangular grid graphs and rectangle cycles, the backbone of most fixtures."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..planar import Cycle, EmbeddedGraph


@dataclass(frozen=True, eq=False)
class Grid:
    """The ``(w+1) x (h+1)`` grid graph with its straight-line embedding."""

    w: int
    h: int
    graph: EmbeddedGraph = field(init=False)
    edge_id: dict[tuple[int, int], int] = field(init=False)

    def __post_init__(self) -> None:
        coords = {self.vid(x, y): (float(x), float(y)) for x in range(self.w + 1) for y in range(self.h + 1)}
        edges: list[tuple[int, int]] = []
        for y in range(self.h + 1):
            for x in range(self.w + 1):
                if x < self.w:
                    edges.append((self.vid(x, y), self.vid(x + 1, y)))
                if y < self.h:
                    edges.append((self.vid(x, y), self.vid(x, y + 1)))
        lookup = {}
        for i, (u, v) in enumerate(edges):
            lookup[(u, v)] = i
            lookup[(v, u)] = i
        object.__setattr__(self, "graph", EmbeddedGraph.from_straight_line(coords, edges))
        object.__setattr__(self, "edge_id", lookup)

    def vid(self, x: int, y: int) -> int:
        return y * (self.w + 1) + x

    def coords(self, v: int) -> tuple[int, int]:
        return v % (self.w + 1), v // (self.w + 1)

    def path_cycle(self, points: list[tuple[int, int]]) -> Cycle:
        """Cycle through the given lattice corners joined by axis-parallel segments."""
        edges = []
        pts = list(points) + [points[0]]
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 != x2 and y1 != y2:
                raise ValueError("segments must be axis parallel")
            steps = max(abs(x2 - x1), abs(y2 - y1))
            dx = (x2 > x1) - (x2 < x1)
            dy = (y2 > y1) - (y2 < y1)
            for s in range(steps):
                a = self.vid(x1 + s * dx, y1 + s * dy)
                b = self.vid(x1 + (s + 1) * dx, y1 + (s + 1) * dy)
                edges.append(self.edge_id[(a, b)])
        return Cycle.from_edges(self.graph, edges)

    def rect(self, x0: int, y0: int, x1: int, y1: int) -> Cycle:
        """Boundary of the rectangle ``[x0, x1] x [y0, y1]``."""
        return self.path_cycle([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
