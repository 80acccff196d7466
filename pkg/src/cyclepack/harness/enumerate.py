"""Exhaustive enumeration of the simple cycles of a small multigraph."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..errors import BudgetExceeded
from ..planar import Cycle, EmbeddedGraph

if TYPE_CHECKING:
    from .instance import FamilySpec


def simple_cycles(g: EmbeddedGraph, length_cap: int | None = None, budget: int = 2_000_000) -> list[Cycle]:
    """Every simple cycle (as an edge set), each reported once.

    A cycle is discovered from its smallest vertex ``s``; the walk only
    visits vertices larger than ``s``.  Each cycle is met once per
    direction, and the direction whose first edge id is smaller is kept.
    ``budget`` bounds the number of search steps.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, (a, b) in enumerate(g.edges):
        adj[a].append((b, e))
        adj[b].append((a, e))
    cap = length_cap if length_cap is not None else len(g.edges)
    found: list[Cycle] = []
    steps = 0
    for s in sorted(g.vertices):
        path_v = [s]
        path_e: list[int] = []
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"cycle enumeration exceeded {budget} steps")
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                if path_e:
                    path_e.pop()
                    on_path.discard(path_v.pop())
                continue
            w, e = nxt
            if path_e and e == path_e[-1]:
                continue
            if w == s:
                if path_e and path_e[0] < e:
                    edges = path_e + [e]
                    found.append(Cycle(tuple(edges), tuple(path_v)))
                continue
            if w < s or w in on_path or len(path_e) + 1 >= cap:
                continue
            path_v.append(w)
            path_e.append(e)
            on_path.add(w)
            stack.append(iter(adj[w]))
    found.sort(key=lambda c: (len(c), sorted(c.edges)))
    return found


def enumerate_family(g: EmbeddedGraph, spec: "FamilySpec", budget: int = 2_000_000) -> list[Cycle]:
    """Cycles selected by an implicit family spec (all, odd or demand cycles)."""
    cycles = simple_cycles(g, spec.length_cap, budget)
    if spec.kind == "all":
        return cycles
    if spec.kind == "odd":
        return [c for c in cycles if len(c) % 2 == 1]
    if spec.kind == "dcycles":
        demand = frozenset(spec.demand)
        return [c for c in cycles if len(c.edge_set & demand) == 1]
    raise ValueError(f"family kind {spec.kind!r} is not enumerable")
