"""Exhaustive packing and transversal oracles for micro-instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import BudgetExceeded
from ..lp import elements
from ..planar import Cycle

MAX_ORACLE_CYCLES = 20


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: tuple[int, ...]
    nodes: int


def _check_size(cycles: Mapping[int, Cycle]) -> None:
    if len(cycles) > MAX_ORACLE_CYCLES:
        raise BudgetExceeded(f"oracle limited to {MAX_ORACLE_CYCLES} cycles, got {len(cycles)}")


def brute_max_packing(cycles: Mapping[int, Cycle], mode: str, budget: int = 5_000_000) -> OracleResult:
    """Maximum set of pairwise disjoint cycles (exact branch and bound)."""
    _check_size(cycles)
    ids = sorted(cycles)
    elem = {i: elements(cycles[i], mode) for i in ids}
    conflict = {i: frozenset(j for j in ids if j != i and not elem[i].isdisjoint(elem[j])) for i in ids}
    best: list[int] = []
    nodes = 0

    def search(cands: list[int], chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"packing oracle exceeded {budget} nodes")
        if len(chosen) + len(cands) <= len(best):
            return
        if not cands:
            best = list(chosen)
            return
        first, rest = cands[0], cands[1:]
        search([c for c in rest if c not in conflict[first]], chosen + [first])
        search(rest, chosen)

    search(ids, [])
    return OracleResult(len(best), tuple(best), nodes)


def brute_min_transversal(cycles: Mapping[int, Cycle], mode: str, budget: int = 5_000_000) -> OracleResult:
    """Minimum set of vertices (or edges) meeting every cycle.

    Iterative deepening: some element of the shortest unhit cycle must be
    chosen, which bounds the branching factor by the cycle length.
    """
    _check_size(cycles)
    elem = [elements(cycles[i], mode) for i in sorted(cycles)]
    if not elem:
        return OracleResult(0, (), 0)
    nodes = 0

    def search(k: int, chosen: frozenset[int]) -> frozenset[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"transversal oracle exceeded {budget} nodes")
        unhit = [s for s in elem if s.isdisjoint(chosen)]
        if not unhit:
            return chosen
        if k == 0:
            return None
        target = min(unhit, key=lambda s: (len(s), sorted(s)))
        for a in sorted(target):
            got = search(k - 1, chosen | {a})
            if got is not None:
                return got
        return None

    for k in range(len(elem) + 1):
        got = search(k, frozenset())
        if got is not None:
            return OracleResult(len(got), tuple(sorted(got)), nodes)
    raise AssertionError("every cycle can be hit by one element each")
