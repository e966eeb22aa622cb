"""Refutation harness: builtin counterexamples, differential fuzzing with
shrinking, and structure-size bound audits.

The builtin specs carry the recorded expectations; ``run_counterexample``
replays one and raises ExpectationFailedError when the recorded numbers stop
reproducing.  The fuzzer streams seeded random 2-CNF formulas (duplicated-
literal clauses drawn with elevated probability, since every known
counterexample relies on them), enumerates tie-consistent orderings for each,
and records each pipeline-vs-oracle disagreement together with a skip-over
diagnosis built from the attributed span-edge view.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ExpectationFailedError, TwoMaxSatError
from .formula import (
    CnfFormula,
    cnf_to_dnf,
    formula_from_ints,
    pad_missing,
    parse_cnf,
    render_cnf,
)
from .harness_types import (
    AuditReport,
    BoundCheck,
    CounterexampleSpec,
    Mismatch,
    SkipOverEdge,
)
from .oracle import oracle_max_sat
from .pipeline import PipelineRun, run_pipeline
from .sequences import sequence_frequencies

FAMILY_CAP = 12


def family(n: int) -> CnfFormula:
    """n copies of the duplicated-literal clause (~v1 v ~v1); n=2 is counterexample 1."""
    if not 2 <= n <= FAMILY_CAP:
        raise ValueError(f"family size must be in 2..{FAMILY_CAP}, got {n}")
    return formula_from_ints([[-1, -1]] * n, 1)


def family_ordering(n: int) -> str:
    return ">".join([f"y{i}" for i in range(1, n + 1)] + ["v1"])


RUNNING_DIMACS = "p cnf 3 2\n1 -2 0\n-1 3 0\n"
CE1_DIMACS = "p cnf 1 2\n-1 -1 0\n-1 -1 0\n"
CE2_DIMACS = "p cnf 1 2\n1 1 0\n1 1 0\n"
CE3_DIMACS = "p cnf 1 2\n-1 -1 0\n1 1 0\n"


def builtin_counterexamples(family_n: int = 4) -> list[CounterexampleSpec]:
    """The recorded cases: the running example, CE1..CE3, and family(n)."""
    return [
        CounterexampleSpec("running", RUNNING_DIMACS, "lexical", 2, 2, (1, 3)),
        CounterexampleSpec("ce1", CE1_DIMACS, "y1>y2>v1", 3, 2, (1, 3)),
        CounterexampleSpec("ce2", CE2_DIMACS, "v1>y1>y2", 3, 2, (1, 3)),
        CounterexampleSpec("ce3", CE3_DIMACS, "y2>y1>v1", 2, 1, (1, 3)),
        CounterexampleSpec(
            f"family({family_n})",
            render_cnf(family(family_n)),
            family_ordering(family_n),
            family_n + 1,
            family_n,
            (1,),
        ),
    ]


def builtin_by_name(name: str) -> CounterexampleSpec:
    if name.startswith("family(") and name.endswith(")"):
        n = int(name[len("family(") : -1])
        return builtin_counterexamples(n)[-1]
    for spec in builtin_counterexamples():
        if spec.name == name:
            return spec
    raise KeyError(f"unknown builtin counterexample {name!r}")


def diagnose_skip_over(run: PipelineRun) -> tuple[SkipOverEdge, ...]:
    """Span edges the witness closure uses for conjunctions that do not own them.

    For each span-kind edge inside the witness, the leaf labels reachable
    below its child are compared against the edge's owner labels; any label
    that climbed through a span it does not own is a skip-over.
    """
    lg = run.layered
    witness = run.answer.witness
    children: dict[int, list] = {}
    for edge in lg.edges:
        if edge.parent in witness.instances and edge.child in witness.instances:
            children.setdefault(edge.parent, []).append(edge)
    leaf_layer = set(lg.layers[0])

    def labels_below(iid: int) -> frozenset[str]:
        seen = set()
        labels: set[str] = set()
        stack = [iid]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            if cur in leaf_layer:
                labels.update(
                    lg.source.trie.node(lg.instances[cur].trie_node).conjunction_labels
                )
            stack.extend(e.child for e in children.get(cur, ()))
        return frozenset(labels)

    findings = []
    for edges in children.values():
        for edge in edges:
            if edge.kind != "span":
                continue
            child_node = lg.instances[edge.child].trie_node
            parent_node = lg.instances[edge.parent].trie_node
            owners = lg.source.span_owners(child_node, parent_node)
            violating = labels_below(edge.child) - owners
            if violating:
                findings.append(
                    SkipOverEdge(
                        child_node,
                        parent_node,
                        tuple(sorted(owners)),
                        tuple(sorted(violating)),
                    )
                )
    findings.sort(key=lambda d: (d.child_node, d.parent_node))
    return tuple(findings)


def run_counterexample(spec: CounterexampleSpec, strict: bool = True) -> dict:
    """Replay one builtin spec under each of its algorithms; compare with the oracle."""
    f = parse_cnf(spec.dimacs)
    oracle = oracle_max_sat(f)
    report: dict = {
        "name": spec.name,
        "ordering": spec.ordering,
        "expected_pipeline": spec.expected_pipeline,
        "expected_oracle": spec.expected_oracle,
        "oracle": oracle.max_count,
        "oracle_ok": oracle.max_count == spec.expected_oracle,
        "runs": [],
    }
    ok = report["oracle_ok"]
    for algorithm in spec.algorithms:
        run = run_pipeline(f, ordering=spec.ordering, algorithm=algorithm)
        got = run.answer.max_count
        entry = {
            "algorithm": algorithm,
            "pipeline": got,
            "pipeline_ok": got == spec.expected_pipeline,
            "mismatch_vs_oracle": got != oracle.max_count,
            "layers": run.layered.layer_count,
            "witness_labels": sorted(run.answer.witness.leaf_labels),
            "degenerate_merges": sum(1 for e in run.layered.merge_events if e.degenerate),
            "merge_events": len(run.layered.merge_events),
        }
        report["runs"].append(entry)
        ok = ok and entry["pipeline_ok"]
    report["ok"] = ok
    if strict and not ok:
        raise ExpectationFailedError(f"{spec.name}: recorded expectations not reproduced")
    return report


@dataclass(frozen=True)
class FuzzParams:
    max_n0: int = 4
    max_m0: int = 3
    orderings_per_formula: int = 6
    algorithms: tuple[int, ...] = (1, 3)
    duplicate_literal_bias: float = 0.4
    variable_cap: int = 24


def tie_consistent_orderings(f: CnfFormula, cap: int) -> list[tuple[str, ...]]:
    """All orderings compatible with the sequence frequencies, up to `cap`.

    Ties are the adversarial degree of freedom, so the fuzzer enumerates every
    way of breaking them instead of sampling one.
    """
    padded = pad_missing(cnf_to_dnf(f))
    freq = sequence_frequencies(padded)
    by_count: dict[int, list[str]] = {}
    for var, count in freq.items():
        by_count.setdefault(count, []).append(var.name)
    tiers = [sorted(by_count[count]) for count in sorted(by_count, reverse=True)]
    out: list[tuple[str, ...]] = []
    for combo in itertools.product(*(itertools.permutations(tier) for tier in tiers)):
        out.append(tuple(itertools.chain.from_iterable(combo)))
        if len(out) >= cap:
            break
    return out


def random_formula(rng: random.Random, params: FuzzParams) -> CnfFormula:
    n0 = rng.randint(1, params.max_n0)
    m0 = rng.randint(1, params.max_m0)
    clauses = []
    for _ in range(n0):
        lit1 = rng.randint(1, m0) * rng.choice((1, -1))
        if rng.random() < params.duplicate_literal_bias:
            lit2 = lit1
        else:
            lit2 = rng.randint(1, m0) * rng.choice((1, -1))
        clauses.append([lit1, lit2])
    return formula_from_ints(clauses, m0)


def check_one(
    f: CnfFormula,
    ordering: Sequence[str],
    algorithm: int,
    variable_cap: int = 24,
) -> Mismatch | None:
    """Compare one pipeline run against the oracle; None when they agree."""
    oracle = oracle_max_sat(f, variable_cap)
    run = run_pipeline(f, ordering=list(ordering), algorithm=algorithm)
    if run.answer.max_count == oracle.max_count:
        return None
    return Mismatch(
        dimacs=render_cnf(f),
        ordering=tuple(ordering),
        algorithm=algorithm,
        pipeline_answer=run.answer.max_count,
        oracle_answer=oracle.max_count,
        witness_labels=tuple(sorted(run.answer.witness.leaf_labels)),
        diagnosis=diagnose_skip_over(run),
    )


def fuzz(seed: int, iterations: int, params: FuzzParams = FuzzParams()) -> list[Mismatch]:
    """Deterministic differential stream; identical seed implies identical output."""
    rng = random.Random(seed)
    mismatches: list[Mismatch] = []
    for _ in range(iterations):
        f = random_formula(rng, params)
        truth = oracle_max_sat(f, params.variable_cap).max_count
        for ordering in tie_consistent_orderings(f, params.orderings_per_formula):
            for algorithm in params.algorithms:
                run = run_pipeline(f, ordering=list(ordering), algorithm=algorithm)
                if run.answer.max_count == truth:
                    continue
                mismatches.append(
                    Mismatch(
                        dimacs=render_cnf(f),
                        ordering=tuple(ordering),
                        algorithm=algorithm,
                        pipeline_answer=run.answer.max_count,
                        oracle_answer=truth,
                        witness_labels=tuple(sorted(run.answer.witness.leaf_labels)),
                        diagnosis=diagnose_skip_over(run),
                    )
                )
    return mismatches


def _clause_ints(f: CnfFormula) -> list[list[int]]:
    return [[lit.dimacs for lit in clause.literals] for clause in f.clauses]


def _drop_clause(
    clauses: list[list[int]], ordering: Sequence[str], index: int
) -> tuple[list[list[int]], list[str]]:
    """Remove clause `index`; auxiliaries above it shift down one name."""
    kept = [list(c) for i, c in enumerate(clauses) if i != index]
    names = []
    for name in ordering:
        if name.startswith("y"):
            num = int(name[1:])
            if num == index + 1:
                continue
            names.append(f"y{num - 1}" if num > index + 1 else name)
        else:
            names.append(name)
    return kept, names


def _drop_variable(
    clauses: list[list[int]], ordering: Sequence[str], m0: int, var: int
) -> tuple[list[list[int]], list[str]]:
    """Remove unused original variable `var` (1-based); higher ones renumber down."""
    def shift(lit: int) -> int:
        mag, sign = abs(lit), 1 if lit > 0 else -1
        return sign * (mag - 1 if mag > var else mag)

    kept = [[shift(l) for l in clause] for clause in clauses]
    names = []
    for name in ordering:
        if name.startswith("v"):
            num = int(name[1:])
            if num == var:
                continue
            names.append(f"v{num - 1}" if num > var else name)
        else:
            names.append(name)
    return kept, names


def shrink(m: Mismatch, variable_cap: int = 24) -> Mismatch:
    """Greedy local minimization; the result still disagrees with the oracle.

    Tries clause removal, unused-variable removal, and swapping the rigged
    ordering for the default frequency ordering; stops when no single step
    preserves the disagreement.  Never increases the clause count.
    """

    def replay(clauses: list[list[int]], m0: int, ordering: Sequence[str]) -> Mismatch | None:
        if not clauses:
            return None
        try:
            f = formula_from_ints(clauses, m0)
            return check_one(f, ordering, m.algorithm, variable_cap)
        except (TwoMaxSatError, ValueError):
            return None

    current = m
    improved = True
    while improved:
        improved = False
        f = parse_cnf(current.dimacs)
        clauses = _clause_ints(f)
        for i in range(len(clauses)):
            cand_clauses, cand_names = _drop_clause(clauses, current.ordering, i)
            found = replay(cand_clauses, f.m0, cand_names)
            if found is not None:
                current = found
                improved = True
                break
        if improved:
            continue
        mentioned = {abs(l) for c in clauses for l in c}
        for var in range(f.m0, 0, -1):
            if var in mentioned:
                continue
            cand_clauses, cand_names = _drop_variable(clauses, current.ordering, f.m0, var)
            found = replay(cand_clauses, f.m0 - 1, cand_names)
            if found is not None:
                current = found
                improved = True
                break
        if improved:
            continue
        by_frequency = run_pipeline(f, ordering="frequency", algorithm=current.algorithm)
        default_names = tuple(v.name for v in by_frequency.ordering.variables)
        if default_names != current.ordering:
            found = replay(clauses, f.m0, default_names)
            if found is not None:
                current = found
                improved = True
    return current


TRIE_VERTEX_BOUND = "trie_like_vertices<=n(m+2)-1"
TRIE_EDGE_BOUND = "trie_like_edges<=(m+2)(m+1)n/2"
LAYERED_VERTEX_BOUND = "layered_vertices<=(n(m+2)-1)(m+2)"
LAYERED_EDGE_BOUND = "layered_edges<=(m+2)(m+1)^2n/2"
SPAN_BOUND = "max_pstar_spans<=(m+2)(m+1)/2"


def audit_bounds(
    f: CnfFormula,
    ordering: str | Sequence[str] = "frequency",
    algorithm: int = 1,
) -> AuditReport:
    """Run the pipeline and measure every stage against the proved bounds."""
    run = run_pipeline(f, ordering=ordering, algorithm=algorithm)
    n, m = run.dnf.n, run.dnf.m
    report = AuditReport(
        n0=f.n0,
        m0=f.m0,
        n=n,
        m=m,
        algorithm=algorithm,
        frame_value_n0_6=216 * f.n0**6,
    )
    max_spans = max(len(ps.closed_spans) for ps in run.pstars)
    report.bounds = [
        BoundCheck(SPAN_BOUND, max_spans, (m + 2) * (m + 1) // 2),
        BoundCheck(TRIE_VERTEX_BOUND, run.trielike.vertex_count, n * (m + 2) - 1),
        BoundCheck(TRIE_EDGE_BOUND, run.trielike.edge_count, (m + 2) * (m + 1) * n // 2),
        BoundCheck(
            LAYERED_VERTEX_BOUND, run.layered.vertex_count, (n * (m + 2) - 1) * (m + 2)
        ),
        BoundCheck(
            LAYERED_EDGE_BOUND, run.layered.edge_count, (m + 2) * (m + 1) ** 2 * n // 2
        ),
    ]
    report.counters = {
        "conjunctions": run.dnf.n,
        "sequence_items": sum(len(s.items) for s in run.sequences),
        "base_spans": sum(len(p.spans) for p in run.pgraphs),
        "closed_spans": sum(len(ps.closed_spans) for ps in run.pstars),
        "trie_vertices": run.trie.vertex_count,
        "trie_edges": run.trie.edge_count,
        "span_edges": len(run.trielike.span_edges),
        "layered_instances": run.layered.vertex_count,
        "layered_edges": run.layered.edge_count,
        "layered_layers": run.layered.layer_count,
        "groups": len(run.layered.groups),
        "groups_expanded": sum(1 for g in run.layered.groups if g.pushed),
        "merge_events": len(run.layered.merge_events),
        "rooted_subgraphs": len(run.answer.per_subgraph),
    }
    return report
