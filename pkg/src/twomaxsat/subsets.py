"""Rooted subgraph enumeration and the findSubset answer (step 10).

A rooted subgraph is the full downward closure of a parentless instance along
the recorded generation edges; its claimed satisfied set is the union of the
conjunction labels on the layer-1 leaves it reaches.  The count is the size
of that union (conjunctions, not leaves).  The reported assignment sets every
variable labeling a closure node true and everything else false, with no
consistency check across branches -- reporting that inconsistency is the
harness' job, not the pipeline's.

findSubset itself propagates leaf-label bitmasks bottom-up along the
generation edges (one pass, since every edge climbs exactly one layer) and
only materializes the closure of the winning root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyGraphError
from .layered import LayeredGraph, NodeInstance
from .sequences import GlobalOrdering


@dataclass(frozen=True)
class RootedSubgraph:
    root: NodeInstance
    instances: frozenset[int]
    leaf_labels: frozenset[str]
    true_variables: frozenset[str]

    def implied_assignment(self, variable_names: Sequence[str]) -> dict[str, bool]:
        return {name: name in self.true_variables for name in variable_names}


@dataclass(frozen=True)
class PipelineAnswer:
    max_count: int
    witness: RootedSubgraph
    per_subgraph: tuple[tuple[int, int], ...]  # (root instance id, count)
    mode: str
    ordering: GlobalOrdering | None


def _children_map(lg: LayeredGraph) -> dict[int, list[int]]:
    children: dict[int, list[int]] = {}
    for edge in lg.edges:
        children.setdefault(edge.parent, []).append(edge.child)
    return children


def _closure_subgraph(
    lg: LayeredGraph, root: NodeInstance, children: dict[int, list[int]]
) -> RootedSubgraph:
    trie = lg.source.trie
    leaf_layer = set(lg.layers[0])
    closure = set()
    stack = [root.instance_id]
    while stack:
        iid = stack.pop()
        if iid in closure:
            continue
        closure.add(iid)
        stack.extend(children.get(iid, ()))
    labels: set[str] = set()
    true_vars: set[str] = set()
    for iid in closure:
        node = trie.node(lg.instances[iid].trie_node)
        if iid in leaf_layer:
            labels.update(node.conjunction_labels)
        if node.variable is not None:
            true_vars.add(node.variable.name)
    return RootedSubgraph(root, frozenset(closure), frozenset(labels), frozenset(true_vars))


def enumerate_rooted_subgraphs(lg: LayeredGraph) -> list[RootedSubgraph]:
    """One subgraph per parentless instance, closure following edges downward."""
    if not lg.instances:
        raise EmptyGraphError("layered graph has no instances")
    children = _children_map(lg)
    return [_closure_subgraph(lg, root, children) for root in lg.roots()]


def satisfied_conjunctions(sg: RootedSubgraph) -> frozenset[str]:
    """The subgraph's claimed satisfied set: union of its leaf label sets."""
    return sg.leaf_labels


def _label_bits(lg: LayeredGraph) -> dict[int, int]:
    """Leaf-label bitmask per instance, swept upward one layer at a time."""
    trie = lg.source.trie
    index: dict[str, int] = {}
    bits = {iid: 0 for iid in lg.instances}
    for iid in lg.layers[0]:
        mask = 0
        for label in sorted(trie.node(lg.instances[iid].trie_node).conjunction_labels):
            if label not in index:
                index[label] = len(index)
            mask |= 1 << index[label]
        bits[iid] = mask
    # every edge climbs exactly one layer, so child masks are final in layer order
    for edge in sorted(lg.edges, key=lambda e: lg.instances[e.child].layer):
        bits[edge.parent] |= bits[edge.child]
    return bits


def find_subset_alg2(
    lg: LayeredGraph, ordering: GlobalOrdering | None = None
) -> PipelineAnswer:
    """Maximum claimed count over all rooted subgraphs, smallest root id winning ties."""
    if not lg.instances:
        raise EmptyGraphError("layered graph has no instances")
    bits = _label_bits(lg)
    roots = lg.roots()
    per = tuple((root.instance_id, bits[root.instance_id].bit_count()) for root in roots)
    best_root = max(roots, key=lambda r: (bits[r.instance_id].bit_count(), -r.instance_id))
    witness = _closure_subgraph(lg, best_root, _children_map(lg))
    return PipelineAnswer(
        max_count=len(witness.leaf_labels),
        witness=witness,
        per_subgraph=per,
        mode=lg.mode,
        ordering=ordering,
    )
