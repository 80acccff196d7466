"""Instance and report JSON interchange.

Rationals are written as ``"p/q"`` strings so every number in a report
round-trips bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..errors import InputError, MalformedRotation
from ..planar import Cycle, EmbeddedGraph

FAMILY_KINDS = ("explicit", "all", "odd", "dcycles")
MODES = ("vertex", "edge")
DEFAULT_LENGTH_CAP = 12


def frac_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def str_to_frac(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {s!r}") from exc


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    cycles: tuple[tuple[int, ...], ...] = ()
    demand: tuple[int, ...] = ()
    length_cap: int | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == "explicit":
            out["cycles"] = [list(c) for c in self.cycles]
        if self.kind == "dcycles":
            out["demand"] = list(self.demand)
        if self.length_cap is not None:
            out["length_cap"] = self.length_cap
        return out

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "FamilySpec":
        kind = d.get("kind")
        if kind not in FAMILY_KINDS:
            raise InputError(f"unknown family kind {kind!r}")
        cap = d.get("length_cap")
        if kind == "dcycles" and cap is None:
            cap = DEFAULT_LENGTH_CAP
        return cls(
            kind=kind,
            cycles=tuple(tuple(int(e) for e in c) for c in d.get("cycles", [])),
            demand=tuple(int(e) for e in d.get("demand", [])),
            length_cap=None if cap is None else int(cap),
        )


@dataclass(frozen=True, eq=False)
class Instance:
    graph: EmbeddedGraph
    family: FamilySpec
    mode: str = "vertex"
    seed: int = 0
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}")
        m = len(self.graph.edges)
        for e in self.family.demand:
            if not 0 <= e < m:
                raise InputError(f"demand edge {e} does not exist")
        for c in self.family.cycles:
            for e in c:
                if not 0 <= e < m:
                    raise InputError(f"cycle references missing edge {e}")

    def cycles(self, budget: int = 2_000_000) -> dict[int, Cycle]:
        """The family as an id-indexed cycle mapping (enumerated for implicit kinds)."""
        from .enumerate import enumerate_family

        if self.family.kind == "explicit":
            return {i: Cycle.from_edges(self.graph, list(c)) for i, c in enumerate(self.family.cycles)}
        return dict(enumerate(enumerate_family(self.graph, self.family, budget)))

    def with_mode(self, mode: str) -> "Instance":
        return Instance(self.graph, self.family, mode, self.seed, dict(self.meta))

    def to_json(self) -> dict[str, Any]:
        g = self.graph
        out: dict[str, Any] = {
            "graph": {
                "vertices": list(g.vertices),
                "edges": [list(e) for e in g.edges],
                "rotations": {str(v): list(g.rotation[v]) for v in g.vertices},
            },
            "family": self.family.to_json(),
            "mode": self.mode,
            "seed": self.seed,
        }
        if g.allow_disconnected:
            out["allow_disconnected"] = True
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "Instance":
        try:
            gd = d["graph"]
            vertices = tuple(int(v) for v in gd["vertices"])
            edges = tuple((int(a), int(b)) for a, b in gd["edges"])
            rotation = {int(v): tuple(int(e) for e in r) for v, r in gd["rotations"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph block: {exc}") from exc
        if set(rotation) != set(vertices):
            raise MalformedRotation("rotation keys differ from the vertex list")
        g = EmbeddedGraph(vertices, edges, rotation, allow_disconnected=bool(d.get("allow_disconnected", False)))
        return cls(
            graph=g,
            family=FamilySpec.from_json(d.get("family", {"kind": "all"})),
            mode=d.get("mode", "vertex"),
            seed=int(d.get("seed", 0)),
            meta=dict(d.get("meta", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Instance":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc


@dataclass
class Report:
    """Outcome of one pipeline run; every field is plain JSON data."""

    instance_id: str
    mode: str
    lp_value: Fraction | None = None
    packing: list[list[int]] = field(default_factory=list)
    trace: list[dict[str, Any]] = field(default_factory=list)
    certificate: dict[str, Any] | None = None
    oracle: dict[str, Any] | None = None
    verdicts: dict[str, bool] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "mode": self.mode,
            "lp_value": None if self.lp_value is None else frac_to_str(self.lp_value),
            "packing": self.packing,
            "trace": self.trace,
            "certificate": self.certificate,
            "oracle": self.oracle,
            "verdicts": self.verdicts,
            "extra": self.extra,
        }

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "Report":
        lp = d.get("lp_value")
        return cls(
            instance_id=d["instance_id"],
            mode=d["mode"],
            lp_value=None if lp is None else str_to_frac(lp),
            packing=[list(c) for c in d.get("packing", [])],
            trace=list(d.get("trace", [])),
            certificate=d.get("certificate"),
            oracle=d.get("oracle"),
            verdicts=dict(d.get("verdicts", {})),
            extra=dict(d.get("extra", {})),
        )

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))
