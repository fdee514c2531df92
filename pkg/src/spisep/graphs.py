"""Labeled graphs, couplings, and the graph families used throughout.

Vertices of a :class:`LabeledGraph` are always 1..n.  A :class:`Coupling`
partitions 1..2p into p unordered pairs; a :class:`CoupledGraph` is a graph
on vertex *names* 1..2p together with a coupling of those names.  The names
are turned into matrix labels only by an explicit representative labeling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import as_symmetric, pattern_tol


def _norm_edge(e) -> tuple[int, int]:
    i, j = int(e[0]), int(e[1])
    if i == j:
        raise ValueError(f"loops are not allowed: ({i}, {j})")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph with vertex set {1, ..., order}."""

    order: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("graph order must be positive")
        for i, j in self.edges:
            if not (1 <= i < j <= self.order):
                raise ValueError(f"edge ({i}, {j}) out of range 1..{self.order}")

    @classmethod
    def from_edges(cls, order: int, edges=()) -> "LabeledGraph":
        return cls(order=int(order), edges=frozenset(_norm_edge(e) for e in edges))

    @property
    def size(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge((i, j)) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(j if i == v else i for i, j in self.edges if v in (i, j))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def min_degree(self) -> int:
        return min(self.degree(v) for v in range(1, self.order + 1))

    def with_edges(self, extra) -> "LabeledGraph":
        return LabeledGraph.from_edges(self.order, set(self.edges) | {_norm_edge(e) for e in extra})

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.order, self.order))
        for i, j in self.edges:
            A[i - 1, j - 1] = A[j - 1, i - 1] = 1.0
        return A

    def relabeled(self, sigma) -> "LabeledGraph":
        """Apply a permutation of 1..n to the vertices (edge {i,j} -> {s(i),s(j)})."""
        sigma = tuple(int(s) for s in sigma)
        if sorted(sigma) != list(range(1, self.order + 1)):
            raise ValueError("sigma must be a permutation of 1..order")
        return LabeledGraph.from_edges(
            self.order, ((sigma[i - 1], sigma[j - 1]) for i, j in self.edges)
        )

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(1, self.order + 1):
            if s in seen:
                continue
            stack, comp = [s], {s}
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.size == self.order - 1


def graph_of_matrix(N, zero_tol: float | None = None) -> LabeledGraph:
    """The labeled graph of a symmetric matrix: edge {i, j} iff |N[i,j]| > zero_tol.

    The default tolerance is relative to the largest entry; constructions
    produce exact zeros but congruences introduce noise.
    """
    N = as_symmetric(N)
    if zero_tol is None:
        zero_tol = pattern_tol(N)
    n = N.shape[0]
    edges = [
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(N[i, j]) > zero_tol
    ]
    return LabeledGraph.from_edges(n, edges)


def complement(G: LabeledGraph) -> LabeledGraph:
    edges = [
        (i, j)
        for i in range(1, G.order + 1)
        for j in range(i + 1, G.order + 1)
        if (i, j) not in G.edges
    ]
    return LabeledGraph.from_edges(G.order, edges)


@dataclass(frozen=True)
class Coupling:
    """A partition of {1, ..., 2p} into p unordered pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for a, b in self.pairs:
            if a >= b:
                raise ValueError("coupling pairs must be stored as (low, high)")
            seen.update((a, b))
        n = 2 * len(self.pairs)
        if seen != set(range(1, n + 1)):
            raise ValueError("coupling must cover each vertex exactly once")

    @classmethod
    def from_pairs(cls, pairs) -> "Coupling":
        norm = sorted(tuple(sorted((int(a), int(b)))) for a, b in pairs)
        return cls(pairs=tuple((a, b) for a, b in norm))

    @property
    def p(self) -> int:
        return len(self.pairs)

    def partner(self, v: int) -> int:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        raise KeyError(v)


def matching_coupling(n: int) -> Coupling:
    """The coupling pairing consecutive vertices (1,2), (3,4), ..."""
    if n % 2 != 0:
        raise ValueError("n must be even")
    return Coupling.from_pairs((2 * k + 1, 2 * k + 2) for k in range(n // 2))


def split_coupling(n: int) -> Coupling:
    """The coupling pairing i with i + p, the index pairing of the symplectic form."""
    if n % 2 != 0:
        raise ValueError("n must be even")
    p = n // 2
    return Coupling.from_pairs((i, i + p) for i in range(1, p + 1))


@dataclass(frozen=True)
class CoupledGraph:
    """A graph on vertex names 1..2p together with a coupling of the names."""

    graph: LabeledGraph
    coupling: Coupling

    def __post_init__(self):
        if self.graph.order != 2 * self.coupling.p:
            raise ValueError("coupling must cover the vertex set of the graph")

    @property
    def p(self) -> int:
        return self.coupling.p


def coupling_closure_graph(CG: CoupledGraph) -> LabeledGraph:
    """The graph plus an edge between v and its coupled partner, if not present."""
    return CG.graph.with_edges(CG.coupling.pairs)


def enumerate_couplings(n: int, max_n: int = 12) -> list[Coupling]:
    """All (n-1)!! perfect pairings of {1..n}.  Guarded against blowup."""
    if n % 2 != 0:
        raise ValueError("n must be even")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the enumeration guard {max_n}; raise max_n to override")

    def rec(rest: tuple[int, ...]):
        if not rest:
            yield ()
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            tail = rest[1:k] + rest[k + 1 :]
            for more in rec(tail):
                yield ((a, b),) + more

    return [Coupling.from_pairs(ps) for ps in rec(tuple(range(1, n + 1)))]


def representative_labelings(CG: CoupledGraph, max_p: int = 5) -> list[tuple[int, ...]]:
    """All 2^p * p! labelings that assign the label pair {k, k+p} to each coupled pair.

    Each labeling L is returned as a tuple with L[name - 1] = label.
    """
    p = CG.p
    if p > max_p:
        raise ValueError(f"p={p} exceeds the enumeration guard {max_p}; raise max_p to override")
    pairs = CG.coupling.pairs
    out = []
    for sigma in itertools.permutations(range(1, p + 1)):
        for flips in itertools.product((False, True), repeat=p):
            lab = [0] * (2 * p)
            for k, ((a, b), flip) in enumerate(zip(pairs, flips)):
                lo, hi = sigma[k], sigma[k] + p
                if flip:
                    lo, hi = hi, lo
                lab[a - 1] = lo
                lab[b - 1] = hi
            out.append(tuple(lab))
    return out


def apply_labeling(CG: CoupledGraph, labeling) -> LabeledGraph:
    """The labeled graph obtained by sending vertex name v to label labeling[v-1]."""
    return CG.graph.relabeled(labeling)


# ---------------------------------------------------------------------------
# graph families
# ---------------------------------------------------------------------------

def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, ())


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def path_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> LabeledGraph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return path_graph(n).with_edges([(1, n)])


def star_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, ((1, j) for j in range(2, n + 1)))


def path_with_matching(n: int) -> CoupledGraph:
    """P_n in path order with the coupling defined by its perfect matching."""
    return CoupledGraph(path_graph(n), matching_coupling(n))


def cycle_with_matching(n: int) -> CoupledGraph:
    return CoupledGraph(cycle_graph(n), matching_coupling(n))


def complete_bipartite_matching(p: int) -> CoupledGraph:
    """K_{p,p} with partite sets {1..p}, {p+1..2p} and coupling (i, p+i)."""
    edges = [(i, p + j) for i in range(1, p + 1) for j in range(1, p + 1)]
    return CoupledGraph(LabeledGraph.from_edges(2 * p, edges), split_coupling(2 * p))


def join_empty_complete_matching(p: int) -> CoupledGraph:
    """The join of p isolated vertices {1..p} with K_p on {p+1..2p}, coupled (i, p+i)."""
    edges = [(i, p + j) for i in range(1, p + 1) for j in range(1, p + 1)]
    edges += [(p + i, p + j) for i in range(1, p + 1) for j in range(i + 1, p + 1)]
    return CoupledGraph(LabeledGraph.from_edges(2 * p, edges), split_coupling(2 * p))


def path_shear_block(p: int) -> np.ndarray:
    """The p x p path adjacency matrix with its (1,1) entry set to one.

    Shearing by this block produces the triangular-path pattern below.
    """
    B = np.zeros((p, p))
    for i in range(p - 1):
        B[i, i + 1] = B[i + 1, i] = 1.0
    B[0, 0] = 1.0
    return B


def triangular_path(n: int) -> CoupledGraph:
    """The standard labeled triangular path on n = 2p >= 4 vertices.

    A chain of p-1 triangles plus a leaf, with 3p-2 edges: the sparsest
    connected pattern carrying a symplectic positive definite matrix.  Edges
    follow the pattern of [[I, B], [B, I + B^2]] for the path shear block B:
    {i, p+j} iff B[i,j] != 0, and {p+i, p+j} iff columns i, j of B share a
    nonzero row.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError("triangular paths need even order n >= 4")
    p = n // 2
    B = path_shear_block(p)
    edges = [(i + 1, p + j + 1) for i in range(p) for j in range(p) if B[i, j] != 0]
    B2 = B @ B
    edges += [
        (p + i + 1, p + j + 1) for i in range(p) for j in range(i + 1, p) if B2[i, j] != 0
    ]
    return CoupledGraph(LabeledGraph.from_edges(n, edges), split_coupling(n))


def corona(H: LabeledGraph) -> CoupledGraph:
    """H with a pendant leaf on every vertex, coupled leaf-to-neighbor.

    Leaves take labels 1..p and the copy of H lives on p+1..2p, so matrices
    with this pattern have the block form [[D, E], [E, A]] with D, E diagonal.
    """
    p = H.order
    edges = [(i, p + i) for i in range(1, p + 1)]
    edges += [(p + u, p + v) for u, v in H.edges]
    return CoupledGraph(LabeledGraph.from_edges(2 * p, edges), split_coupling(2 * p))


FAMILIES = {
    "empty": lambda n: empty_graph(n),
    "complete": lambda n: complete_graph(n),
    "path": lambda n: path_with_matching(n),
    "cycle": lambda n: cycle_with_matching(n),
    "complete-bipartite": lambda p: complete_bipartite_matching(p),
    "join": lambda p: join_empty_complete_matching(p),
    "tripath": lambda n: triangular_path(n),
    "comb": lambda p: corona(path_graph(p)),
    "sun": lambda p: corona(cycle_graph(p)),
    "corona-complete": lambda p: corona(complete_graph(p)),
}


def family(name: str, size: int):
    """Dispatch table for the named families (CLI front end)."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None
    return builder(size)


# ---------------------------------------------------------------------------
# caterpillars and tree matchings
# ---------------------------------------------------------------------------

def is_caterpillar(G: LabeledGraph) -> bool:
    """True iff G is a tree whose non-leaf vertices induce a path (possibly empty)."""
    if not G.is_tree():
        return False
    spine = [v for v in range(1, G.order + 1) if G.degree(v) >= 2]
    if len(spine) <= 1:
        return True
    spine_set = set(spine)
    degs = [len(G.neighbors(v) & spine_set) for v in spine]
    if max(degs) > 2:
        return False
    # induced subgraph of a tree is a forest; a connected forest with max
    # degree 2 is a path
    ends = [v for v, d in zip(spine, degs) if d <= 1]
    seen = {spine[0]}
    stack = [spine[0]]
    while stack:
        v = stack.pop()
        for u in G.neighbors(v):
            if u in spine_set and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(spine) and len(ends) == 2


def tree_perfect_matching(G: LabeledGraph) -> Coupling | None:
    """The unique perfect matching of a tree, or None if there is none.

    Strips leaves: a leaf must be matched with its only neighbor; remove both
    and continue.  Raises on non-tree input.
    """
    if not G.is_tree():
        raise ValueError("input graph is not a tree")
    if G.order % 2 != 0:
        return None
    alive = set(range(1, G.order + 1))
    adj = {v: set(G.neighbors(v)) for v in alive}
    pairs = []
    leaves = [v for v in alive if len(adj[v]) == 1]
    while leaves:
        v = leaves.pop()
        if v not in alive:
            continue
        if not adj[v]:
            return None
        u = next(iter(adj[v]))
        pairs.append((v, u))
        for w in (v, u):
            alive.discard(w)
        for w in adj[u] - {v}:
            adj[w].discard(u)
            if len(adj[w]) == 1 and w in alive:
                leaves.append(w)
        adj[v].clear()
        adj[u].clear()
    if alive:
        return None
    return Coupling.from_pairs(pairs)
