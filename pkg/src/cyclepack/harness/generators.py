"""Seeded instance generators and the fixed acceptance corpus."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from ..errors import BudgetExceeded
from ..planar import Cycle, EmbeddedGraph
from .enumerate import enumerate_family, simple_cycles
from .figures import figure1, figure2, figure3, figure5, petals
from .grid import Grid
from .instance import FamilySpec, Instance

MAX_FAMILY = 200
MAX_VERTICES = 60
TOUCH_PATTERNS = ("none", "side", "mixed")


@dataclass(frozen=True)
class NestedProfile:
    """Shape of a random nest of grid rectangles.

    ``touch`` decides whether a child rectangle keeps the boundary it
    shares with its parent and siblings (``side``), is shrunk away from it
    (``none``), or flips a coin per side (``mixed``).
    """

    depth: int = 2
    branching: int = 3
    touch: str = "mixed"
    width: int = 8
    height: int = 6
    outer: bool = True

    def __post_init__(self) -> None:
        if self.depth < 1 or self.branching < 1:
            raise ValueError("depth and branching must be positive")
        if self.touch not in TOUCH_PATTERNS:
            raise ValueError(f"unknown touch pattern {self.touch!r}")
        if (self.width + 1) * (self.height + 1) > MAX_VERTICES:
            raise ValueError("grid exceeds the vertex budget")


Rect = tuple[int, int, int, int]


def _explicit(g: EmbeddedGraph, cycles: list[Cycle], seed: int, generator: str, **meta) -> Instance:
    spec = FamilySpec("explicit", cycles=tuple(tuple(c.edges) for c in cycles))
    return Instance(g, spec, "vertex", seed, {"generator": generator, **meta})


def nested_rectangles(profile: NestedProfile, seed: int) -> list[Rect]:
    rng = random.Random(seed)
    root: Rect = (0, 0, profile.width, profile.height)
    out: list[Rect] = []

    def shrink(child: Rect, parent: Rect) -> Rect | None:
        x0, y0, x1, y1 = child
        flags = {
            "none": (True, True, True, True),
            "side": (False, False, False, False),
            "mixed": tuple(rng.random() < 0.5 for _ in range(4)),
        }[profile.touch]
        x0, y0 = x0 + flags[0], y0 + flags[1]
        x1, y1 = x1 - flags[2], y1 - flags[3]
        if x1 - x0 < 1 or y1 - y0 < 1:
            return None
        r = (x0, y0, x1, y1)
        return None if r == parent else r

    def grow(rect: Rect, depth: int) -> None:
        out.append(rect)
        if depth == profile.depth:
            return
        x0, y0, x1, y1 = rect
        along_x = (x1 - x0) >= (y1 - y0)
        lo, hi = (x0, x1) if along_x else (y0, y1)
        k = rng.randint(1, profile.branching)
        interior = list(range(lo + 1, hi))
        cuts = sorted(rng.sample(interior, min(k - 1, len(interior))))
        bounds = [lo] + cuts + [hi]
        for a, b in zip(bounds, bounds[1:]):
            child = (a, y0, b, y1) if along_x else (x0, a, x1, b)
            child = shrink(child, rect)
            if child is not None and child not in out:
                grow(child, depth + 1)

    if profile.outer:
        grow(root, 0)
    else:
        # several top-level rectangles side by side, none enclosing the rest
        grow(root, 0)
        out.remove(root)
    return out


def gen_nested(profile: NestedProfile, seed: int) -> Instance:
    """Laminar family of grid rectangles nested according to ``profile``."""
    grid = Grid(profile.width, profile.height)
    rects = nested_rectangles(profile, seed)
    cycles = [grid.rect(*r) for r in rects]
    return _explicit(
        grid.graph,
        cycles,
        seed,
        "nested",
        depth=profile.depth,
        branching=profile.branching,
        touch=profile.touch,
    )


def triangulated_grid(w: int, h: int, seed: int, p_diag: float = 0.5, p_delete: float = 0.15) -> EmbeddedGraph:
    """Grid with random square diagonals and random edge deletions; stays connected."""
    rng = random.Random(seed)
    coords = {y * (w + 1) + x: (float(x), float(y)) for x in range(w + 1) for y in range(h + 1)}
    edges: list[tuple[int, int]] = []
    for y in range(h + 1):
        for x in range(w + 1):
            v = y * (w + 1) + x
            if x < w:
                edges.append((v, v + 1))
            if y < h:
                edges.append((v, v + w + 1))
            if x < w and y < h and rng.random() < p_diag:
                if rng.random() < 0.5:
                    edges.append((v, v + w + 2))
                else:
                    edges.append((v + 1, v + w + 1))
    kept = list(edges)
    for e in list(edges):
        if rng.random() < p_delete:
            trial = [f for f in kept if f != e]
            if _connected(coords, trial) and all(any(v in f for f in trial) for v in coords):
                kept = trial
    return EmbeddedGraph.from_straight_line(coords, kept)


def _connected(coords, edges) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in coords}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(coords))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(coords)


def capped_family(g: EmbeddedGraph, kind: str, demand: tuple[int, ...] = (), max_cap: int = 12) -> FamilySpec:
    """The largest length cap (at most ``max_cap``) keeping the family within the size budget."""
    best = FamilySpec(kind, demand=demand, length_cap=3)
    for cap in range(3, max_cap + 1):
        spec = FamilySpec(kind, demand=demand, length_cap=cap)
        try:
            cycles = simple_cycles(g, cap, budget=400_000)
        except BudgetExceeded:
            break
        if kind == "odd":
            cycles = [c for c in cycles if len(c) % 2]
        elif kind == "dcycles":
            cycles = [c for c in cycles if len(c.edge_set & set(demand)) == 1]
        if len(cycles) > MAX_FAMILY:
            break
        best = spec
    return best


def gen_random_planar(w: int, h: int, seed: int, kind: str = "all") -> Instance:
    g = triangulated_grid(w, h, seed)
    demand: tuple[int, ...] = ()
    if kind == "dcycles":
        rng = random.Random(seed + 7919)
        demand = tuple(sorted(rng.sample(range(len(g.edges)), max(1, len(g.edges) // 6))))
    spec = capped_family(g, kind, demand)
    return Instance(g, spec, "vertex", seed, {"generator": "random_planar", "w": w, "h": h})


def k4() -> EmbeddedGraph:
    return EmbeddedGraph.from_straight_line(
        {0: (0.0, 0.0), 1: (4.0, 0.0), 2: (2.0, 3.0), 3: (2.0, 1.0)},
        [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
    )


def wheel(n: int) -> EmbeddedGraph:
    coords = {0: (0.0, 0.0)}
    for i in range(n):
        ang = 2 * math.pi * i / n
        coords[i + 1] = (round(math.cos(ang), 9), round(math.sin(ang), 9))
    edges = [(0, i + 1) for i in range(n)] + [(i + 1, (i + 1) % n + 1) for i in range(n)]
    return EmbeddedGraph.from_straight_line(coords, edges)


def theta() -> EmbeddedGraph:
    """Two vertices joined by three parallel edges ``e1, e2, e3`` (ids 0, 1, 2)."""
    return EmbeddedGraph((1, 2), ((1, 2), (1, 2), (1, 2)), {1: (0, 1, 2), 2: (2, 1, 0)})


def prism() -> EmbeddedGraph:
    coords = {0: (0.0, 0.0), 1: (6.0, 0.0), 2: (3.0, 5.0), 3: (2.0, 1.0), 4: (4.0, 1.0), 5: (3.0, 3.0)}
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return EmbeddedGraph.from_straight_line(coords, edges)


def small_graphs() -> Iterator[tuple[str, EmbeddedGraph]]:
    yield "theta", theta()
    yield "k4", k4()
    yield "prism", prism()
    for n in range(3, 7):
        yield f"wheel{n}", wheel(n)
    for w, h in ((1, 1), (2, 1), (3, 1), (2, 2)):
        yield f"grid{w}x{h}", Grid(w, h).graph


def figure_instances() -> Iterator[tuple[str, Instance]]:
    for name, builder in (("figure1", figure1), ("figure2", figure2), ("figure3", figure3), ("figure5", figure5)):
        g, cycles = builder()
        yield name, _explicit(g, list(cycles.values()), 0, name, names=list(cycles))
    for k in range(2, 7):
        g, cycles = petals(k)
        yield f"petals{k}", _explicit(g, list(cycles.values()), 0, "petals", names=list(cycles))


CORPUS_SEED = 20240611


def corpus(size: int = 200, seed: int = CORPUS_SEED) -> list[tuple[str, Instance]]:
    """Deterministic acceptance corpus: fixtures, small named graphs, nests and random graphs.

    The fixtures and small named graphs are always included, so the result
    has at least ``size`` instances and never fewer than those fixed ones.
    """
    out: list[tuple[str, Instance]] = list(figure_instances())
    for name, g in small_graphs():
        for kind in ("all", "odd"):
            spec = capped_family(g, kind)
            if not enumerate_family(g, spec):
                continue
            out.append((f"{name}-{kind}", Instance(g, spec, "vertex", 0, {"generator": "small", "graph": name})))
        demand = (0,)
        spec = capped_family(g, "dcycles", demand)
        out.append((f"{name}-dcycles", Instance(g, spec, "vertex", 0, {"generator": "small", "graph": name})))
    rng = random.Random(seed)
    n_random = (size - len(out)) // 3
    for i in range(n_random):
        s = rng.randrange(10**9)
        kind = ("all", "odd", "dcycles")[i % 3]
        w, h = rng.choice([(2, 2), (3, 2), (3, 3), (4, 2)])
        inst = gen_random_planar(w, h, s, kind)
        if enumerate_family(inst.graph, inst.family):
            out.append((f"random{i:03d}-{kind}", inst))
    i = 0
    while len(out) < size:
        s = rng.randrange(10**9)
        width, height = rng.choice([(5, 4), (6, 5), (7, 5), (8, 5), (7, 6), (9, 4)])
        prof = NestedProfile(
            depth=rng.randint(1, 3),
            branching=rng.randint(1, 4),
            touch=TOUCH_PATTERNS[i % 3],
            width=width,
            height=height,
            outer=rng.random() < 0.7,
        )
        inst = gen_nested(prof, s)
        # a lone rectangle says nothing about nesting
        if len(inst.family.cycles) >= 2:
            out.append((f"nested{i:03d}", inst))
        i += 1
    return out
