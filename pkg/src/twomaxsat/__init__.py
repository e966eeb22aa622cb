"""2-MAXSAT trie-like-graph search pipeline, exact oracle, and refutation harness.

The pipeline converts a 2-CNF formula into a 2-DNF, pads it, sorts variable
sequences under a global ordering, builds p-graphs and their span closures,
merges them into a trie-like graph, runs the bottom-up layered search
(original or "improved" variant), and reports the maximum claimed satisfied
count over rooted subgraphs.  The exact oracle gives ground truth; the
harness reproduces the recorded counterexamples, fuzzes for new mismatches,
and audits the worst-case structure-size bounds.
"""

from .errors import TwoMaxSatError
from .formula import (
    Assignment,
    CnfFormula,
    DnfFormula,
    cnf_to_dnf,
    eval_cnf,
    eval_dnf,
    formula_from_ints,
    pad_missing,
    parse_cnf,
    render_cnf,
)
from .harness import (
    audit_bounds,
    builtin_counterexamples,
    family,
    fuzz,
    run_counterexample,
    shrink,
)
from .layered import (
    anchor_candidates,
    build_layered_alg1,
    build_layered_alg3,
    classify_duplicate_case,
    reachable_subset,
    upper_boundary,
)
from .oracle import decide_2maxsat, oracle_max_dnf, oracle_max_sat
from .pipeline import PipelineRun, run_pipeline
from .sequences import (
    GlobalOrdering,
    TieBreak,
    build_sequences,
    frequency_ordering,
    lexical_ordering,
    parse_ordering,
)
from .spans import build_pgraph, close_spans
from .subsets import enumerate_rooted_subgraphs, find_subset_alg2, satisfied_conjunctions
from .trie import merge_main_paths, overlay_spans

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "CnfFormula",
    "DnfFormula",
    "GlobalOrdering",
    "PipelineRun",
    "TieBreak",
    "TwoMaxSatError",
    "anchor_candidates",
    "audit_bounds",
    "build_layered_alg1",
    "build_layered_alg3",
    "classify_duplicate_case",
    "reachable_subset",
    "upper_boundary",
    "build_pgraph",
    "build_sequences",
    "builtin_counterexamples",
    "close_spans",
    "cnf_to_dnf",
    "decide_2maxsat",
    "enumerate_rooted_subgraphs",
    "eval_cnf",
    "eval_dnf",
    "family",
    "find_subset_alg2",
    "formula_from_ints",
    "frequency_ordering",
    "fuzz",
    "lexical_ordering",
    "merge_main_paths",
    "oracle_max_dnf",
    "oracle_max_sat",
    "overlay_spans",
    "pad_missing",
    "parse_cnf",
    "parse_ordering",
    "render_cnf",
    "run_counterexample",
    "run_pipeline",
    "satisfied_conjunctions",
    "shrink",
]
