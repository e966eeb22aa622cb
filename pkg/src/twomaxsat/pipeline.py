"""End-to-end composition of the conversion chain and the layered search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .formula import CnfFormula, DnfFormula, PaddedConjunction, cnf_to_dnf, pad_missing
from .layered import LayeredGraph, build_layered_alg1, build_layered_alg3
from .sequences import (
    GlobalOrdering,
    TieBreak,
    VarSequence,
    build_sequences,
    explicit_ordering,
    frequency_ordering,
    lexical_ordering,
    parse_ordering,
)
from .spans import PGraph, PStarGraph, build_pgraph, close_spans
from .subsets import PipelineAnswer, find_subset_alg2
from .trie import NodeMap, Trie, TrieLikeGraph, merge_main_paths, overlay_spans


@dataclass
class PipelineRun:
    """Every intermediate stage of one run, for export and auditing."""

    formula: CnfFormula
    dnf: DnfFormula
    padded: list[PaddedConjunction]
    ordering: GlobalOrdering
    sequences: list[VarSequence]
    pgraphs: list[PGraph]
    pstars: list[PStarGraph]
    trie: Trie
    node_map: NodeMap
    trielike: TrieLikeGraph
    layered: LayeredGraph
    answer: PipelineAnswer


def resolve_ordering(
    dnf: DnfFormula,
    padded: Sequence[PaddedConjunction],
    ordering: str | Sequence[str] | GlobalOrdering = "frequency",
    tie_break: TieBreak = TieBreak.FIRST_APPEARANCE,
) -> GlobalOrdering:
    """Accept 'frequency', 'lexical', an explicit name list, or a "a>b>c" spec."""
    if isinstance(ordering, GlobalOrdering):
        return ordering
    if isinstance(ordering, str):
        if ordering == "frequency":
            return frequency_ordering(list(padded), tie_break)
        if ordering == "lexical":
            return lexical_ordering(dnf)
        return explicit_ordering(dnf, parse_ordering(ordering))
    return explicit_ordering(dnf, list(ordering))


def run_pipeline(
    f: CnfFormula,
    ordering: str | Sequence[str] | GlobalOrdering = "frequency",
    algorithm: int = 1,
    tie_break: TieBreak = TieBreak.FIRST_APPEARANCE,
) -> PipelineRun:
    """Execute steps 1-10 and return the claimed 2-MAXSAT answer with all stages."""
    if algorithm not in (1, 3):
        raise ValueError(f"algorithm must be 1 or 3, got {algorithm}")
    dnf = cnf_to_dnf(f)
    padded = pad_missing(dnf)
    ordering_used = resolve_ordering(dnf, padded, ordering, tie_break)
    sequences = build_sequences(padded, ordering_used)
    pgraphs = [build_pgraph(seq) for seq in sequences]
    pstars = [close_spans(pg) for pg in pgraphs]
    trie, node_map = merge_main_paths(pgraphs)
    trielike = overlay_spans(trie, node_map, pstars)
    build = build_layered_alg1 if algorithm == 1 else build_layered_alg3
    layered = build(trielike)
    answer = find_subset_alg2(layered, ordering_used)
    return PipelineRun(
        formula=f,
        dnf=dnf,
        padded=padded,
        ordering=ordering_used,
        sequences=sequences,
        pgraphs=pgraphs,
        pstars=pstars,
        trie=trie,
        node_map=node_map,
        trielike=trielike,
        layered=layered,
        answer=answer,
    )
