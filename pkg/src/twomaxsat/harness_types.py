"""Record types for the refutation harness (kept import-light for the exporters)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CounterexampleSpec:
    name: str
    dimacs: str
    ordering: str  # "lexical" or an explicit "a>b>c" spec
    expected_pipeline: int
    expected_oracle: int
    algorithms: tuple[int, ...]


@dataclass(frozen=True)
class SkipOverEdge:
    """A span edge the witness used on behalf of conjunctions that do not own it."""

    child_node: int
    parent_node: int
    owners: tuple[str, ...]
    violating: tuple[str, ...]


@dataclass(frozen=True)
class Mismatch:
    dimacs: str
    ordering: tuple[str, ...]
    algorithm: int
    pipeline_answer: int
    oracle_answer: int
    witness_labels: tuple[str, ...]
    diagnosis: tuple[SkipOverEdge, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimacs": self.dimacs,
            "ordering": list(self.ordering),
            "algorithm": self.algorithm,
            "pipeline_answer": self.pipeline_answer,
            "oracle_answer": self.oracle_answer,
            "witness_labels": list(self.witness_labels),
            "diagnosis": [
                {
                    "span_edge": [d.child_node, d.parent_node],
                    "owners": list(d.owners),
                    "violating": list(d.violating),
                }
                for d in self.diagnosis
            ],
        }


@dataclass
class BoundCheck:
    name: str
    measured: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.measured <= self.bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "ok": self.ok,
        }


@dataclass
class AuditReport:
    """Measured stage sizes against the proved worst-case size bounds."""

    n0: int
    m0: int
    n: int
    m: int
    algorithm: int
    bounds: list[BoundCheck] = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=dict)
    frame_value_n0_6: int = 0

    @property
    def all_pass(self) -> bool:
        return all(b.ok for b in self.bounds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n0": self.n0,
            "m0": self.m0,
            "n": self.n,
            "m": self.m,
            "relations": {"n=2*n0": self.n == 2 * self.n0, "m=n0+m0": self.m == self.n0 + self.m0},
            "algorithm": self.algorithm,
            "bounds": [b.to_dict() for b in self.bounds],
            "all_pass": self.all_pass,
            "counters": dict(sorted(self.counters.items())),
            "worst_case_frame_216_n0^6": self.frame_value_n0_6,
        }
