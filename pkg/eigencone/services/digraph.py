"""
Weighted digraphs of nonnegative matrices.

Node i has an edge to node j iff a_ij > 0. Node sets are frozensets of
0-based indices; component lists are ordered by their smallest node.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple
import logging

import numpy as np

from .exceptions import NotStronglyConnected, PreconditionViolated
from .tropical_core import as_matrix

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    nodes: FrozenSet[int]
    edges: Dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        succ = {v: set() for v in self.nodes}
        pred = {v: set() for v in self.nodes}
        for (i, j) in self.edges:
            if i not in succ or j not in succ:
                raise PreconditionViolated(f"Edge ({i}, {j}) leaves the node set")
            succ[i].add(j)
            pred[j].add(i)
        object.__setattr__(self, '_succ', {v: frozenset(s) for v, s in succ.items()})
        object.__setattr__(self, '_pred', {v: frozenset(p) for v, p in pred.items()})

    def successors(self, v: int) -> FrozenSet[int]:
        return self._succ[v]

    def predecessors(self, v: int) -> FrozenSet[int]:
        return self._pred[v]

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class SccDecomposition:
    components: Tuple[FrozenSet[int], ...]
    component_of: Dict[int, int]

    def __len__(self) -> int:
        return len(self.components)


def from_matrix(A) -> Digraph:
    """digr(A): nodes 0..n-1, edge (i, j) with weight a_ij iff a_ij > 0."""
    A = as_matrix(A, square=True)
    rows, cols = np.nonzero(A > 0)
    edges = {(int(i), int(j)): float(A[i, j]) for i, j in zip(rows, cols)}
    return Digraph(frozenset(range(A.shape[0])), edges)


def to_matrix(D: Digraph, n: Optional[int] = None) -> np.ndarray:
    size = n if n is not None else (max(D.nodes) + 1 if D.nodes else 0)
    M = np.zeros((size, size))
    for (i, j), w in D.edges.items():
        M[i, j] = w
    return M


def restrict(D: Digraph, K: Iterable[int]) -> Digraph:
    """Induced subgraph on K."""
    K = frozenset(K)
    if not K <= D.nodes:
        raise PreconditionViolated(f"Nodes {sorted(K - D.nodes)} are not in the digraph")
    edges = {(i, j): w for (i, j), w in D.edges.items() if i in K and j in K}
    return Digraph(K, edges)


def scc(D: Digraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack = set()
    stack = []
    components = []
    counter = 0

    ordered_succ = {v: sorted(D.successors(v)) for v in D.nodes}

    for root in sorted(D.nodes):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(ordered_succ[root]))]

        while work:
            v, children = work[-1]
            descended = False
            for w in children:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(ordered_succ[w])))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

            if low[v] == index[v]:
                component = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.add(w)
                    if w == v:
                        break
                components.append(frozenset(component))

    components.sort(key=min)
    component_of = {v: k for k, comp in enumerate(components) for v in comp}
    return SccDecomposition(tuple(components), component_of)


def is_strongly_connected(D: Digraph) -> bool:
    """One component covering every node; a lone node needs its loop."""
    if not D.nodes:
        return False
    if len(D.nodes) == 1:
        (v,) = D.nodes
        return D.has_edge(v, v)
    return len(scc(D)) == 1


def is_single_cycle(D: Digraph) -> bool:
    """D is one elementary cycle through all of its nodes."""
    if not is_strongly_connected(D):
        return False
    return all(len(D.successors(v)) == 1 and len(D.predecessors(v)) == 1 for v in D.nodes)


def ingoing_sets(D: Digraph) -> Dict[int, FrozenSet[int]]:
    """M_j(D): the predecessors of each node j."""
    return {j: D.predecessors(j) for j in sorted(D.nodes)}


def cover_without_node(D: Digraph) -> Optional[int]:
    """
    Smallest node i such that the ingoing sets of all other nodes cover N.

    Such a node exists iff D is not a single elementary cycle.

    Raises:
        NotStronglyConnected
    """
    if not is_strongly_connected(D):
        raise NotStronglyConnected(f"Digraph on {len(D.nodes)} node(s) is not strongly connected")

    ingoing = ingoing_sets(D)
    for i in sorted(D.nodes):
        covered = set()
        for j, preds in ingoing.items():
            if j != i:
                covered |= preds
        if covered == D.nodes:
            return i
    return None


def reachable_from(D: Digraph, sources: Iterable[int]) -> FrozenSet[int]:
    """Nodes reachable from ``sources`` by paths of length >= 0."""
    seen = set(sources)
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in D.successors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def reaching(D: Digraph, targets: Iterable[int]) -> FrozenSet[int]:
    """Nodes with a path of length >= 0 into ``targets``."""
    seen = set(targets)
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in D.predecessors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)
