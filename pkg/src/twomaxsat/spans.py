"""Per-sequence path graphs with spans and their transitive closure (steps 5-6).

A p-graph is the sequence's path plus one base span per starred interior
position: the edge that jumps over it.  Closing merges overlapping spans --
whenever the two-node suffix of one span equals the two-node prefix of
another, their union is added (originals kept) -- until a fixpoint.  Spans are
stored positionally because endpoints may themselves be starred items.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sequences import ItemTag, VarSequence


@dataclass(frozen=True, order=True)
class Span:
    from_pos: int
    to_pos: int

    def __post_init__(self) -> None:
        if self.to_pos - self.from_pos < 2:
            raise ValueError("a span must jump over at least one position")

    @property
    def covered(self) -> tuple[int, ...]:
        return tuple(range(self.from_pos + 1, self.to_pos))


@dataclass(frozen=True)
class PGraph:
    """Nodes mirror the sequence items in order; main edges are consecutive pairs."""

    label: str
    items: tuple
    spans: tuple[Span, ...]


@dataclass(frozen=True)
class PStarGraph:
    base: PGraph
    closed_spans: tuple[Span, ...]


def build_pgraph(seq: VarSequence) -> PGraph:
    spans = [
        Span(pos - 1, pos + 1)
        for pos in range(1, len(seq.items) - 1)
        if seq.items[pos].tag is ItemTag.STARRED
    ]
    return PGraph(seq.label, seq.items, tuple(spans))


def close_spans(p: PGraph) -> PStarGraph:
    """Fixpoint of the overlap-merge rule, keeping the original spans."""
    closed: set[tuple[int, int]] = {(s.from_pos, s.to_pos) for s in p.spans}
    changed = True
    while changed:
        changed = False
        current = sorted(closed)
        for i, j in current:
            for k, l in current:
                # suffix (j-1, j) of the first equals prefix (k, k+1) of the second
                if k == j - 1 and l > j and (i, l) not in closed:
                    closed.add((i, l))
                    changed = True
    spans = tuple(Span(i, j) for i, j in sorted(closed))
    return PStarGraph(p, spans)
