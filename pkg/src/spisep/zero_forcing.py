"""Coupled, loop, and standard zero forcing numbers by exhaustive search.

The color change processes run on bitmask adjacency internally; minimum
forcing sets are found by cardinality-increasing subset search, which is
exact and fast enough at desk scale (orders <= 20).  Vertices that no rule
can ever force (isolated vertices, for the loop and standard rules) are
pinned into every candidate set instead of being searched over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import symplectic_spectrum
from .graphs import (
    CoupledGraph,
    LabeledGraph,
    apply_labeling,
    coupling_closure_graph,
    graph_of_matrix,
    is_caterpillar,
    representative_labelings,
)

DEFAULT_MAX_N = 20


def _adjacency_masks(G: LabeledGraph) -> list[int]:
    masks = [0] * G.order
    for i, j in G.edges:
        masks[i - 1] |= 1 << (j - 1)
        masks[j - 1] |= 1 << (i - 1)
    return masks


def _coupled_masks(CG: CoupledGraph) -> list[int]:
    masks = _adjacency_masks(CG.graph)
    for a, b in CG.coupling.pairs:
        masks[a - 1] |= 1 << (b - 1)
        masks[b - 1] |= 1 << (a - 1)
    return masks


def _closure(masks: list[int], n: int, blue: int, self_ok: int) -> int:
    """Fixed point of the color change rules on bitmasks.

    Rule 1: a blue v forces the unique white vertex of its relevant set.
    Rule 2: a white v with fully blue relevant set forces itself, where
    allowed by ``self_ok``.
    """
    full = (1 << n) - 1
    changed = True
    while changed and blue != full:
        changed = False
        for v in range(n):
            bit = 1 << v
            white = masks[v] & ~blue
            if blue & bit:
                if white and white & (white - 1) == 0:
                    blue |= white
                    changed = True
            elif white == 0 and self_ok & bit:
                blue |= bit
                changed = True
    return blue


def _to_set(mask: int) -> frozenset[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (int(v) - 1)
    return m


def _min_forcing_set(
    masks: list[int], n: int, self_ok: int, pinned: int
) -> tuple[int, int]:
    full = (1 << n) - 1
    free = [v for v in range(n) if not (pinned >> v) & 1]
    base_k = pinned.bit_count()
    for extra in range(0, len(free) + 1):
        for combo in itertools.combinations(free, extra):
            blue = pinned | _to_mask(v + 1 for v in combo)
            if _closure(masks, n, blue, self_ok) == full:
                return base_k + extra, blue
    return n, full  # unreachable: B = V always forces


def _guard(n: int, max_n: int):
    if n > max_n:
        raise ValueError(
            f"order {n} exceeds the exhaustive-search guard {max_n}; raise max_n to override"
        )


def coupled_closure(CG: CoupledGraph, blue) -> frozenset[int]:
    """Fixed point of the coupled color change rules from an initial blue set.

    The relevant set of v is N(v) together with its coupled partner; the
    final coloring does not depend on the order of forces.
    """
    n = CG.graph.order
    return _to_set(_closure(_coupled_masks(CG), n, _to_mask(blue), (1 << n) - 1))


def loop_closure(G: LabeledGraph, blue) -> frozenset[int]:
    """Loop zero forcing closure: white vertices with all-blue neighborhoods
    self-force, except isolated ones."""
    n = G.order
    masks = _adjacency_masks(G)
    self_ok = _to_mask(v for v in range(1, n + 1) if masks[v - 1])
    return _to_set(_closure(masks, n, _to_mask(blue), self_ok))


def standard_closure(G: LabeledGraph, blue) -> frozenset[int]:
    """Standard zero forcing closure (no self-forcing rule)."""
    n = G.order
    return _to_set(_closure(_adjacency_masks(G), n, _to_mask(blue), 0))


def zc_minimum_set(CG: CoupledGraph, max_n: int = DEFAULT_MAX_N) -> frozenset[int]:
    """A minimum coupled zero forcing set of the coupled graph."""
    n = CG.graph.order
    _guard(n, max_n)
    _, blue = _min_forcing_set(_coupled_masks(CG), n, (1 << n) - 1, 0)
    return _to_set(blue)


def zc_number(CG: CoupledGraph, max_n: int = DEFAULT_MAX_N) -> int:
    """Minimum size of a coupled zero forcing set.

    Equals the loop zero forcing number of the graph closed up by the
    coupling edges.
    """
    n = CG.graph.order
    _guard(n, max_n)
    k, _ = _min_forcing_set(_coupled_masks(CG), n, (1 << n) - 1, 0)
    return k


def loop_zf_number(G: LabeledGraph, max_n: int = DEFAULT_MAX_N) -> int:
    """Minimum size of a loop zero forcing set of G."""
    n = G.order
    _guard(n, max_n)
    masks = _adjacency_masks(G)
    self_ok = _to_mask(v for v in range(1, n + 1) if masks[v - 1])
    pinned = _to_mask(v for v in range(1, n + 1) if not masks[v - 1])
    k, _ = _min_forcing_set(masks, n, self_ok, pinned)
    return k


def standard_zf_number(G: LabeledGraph, max_n: int = DEFAULT_MAX_N) -> int:
    """Minimum size of a standard zero forcing set of G."""
    n = G.order
    _guard(n, max_n)
    masks = _adjacency_masks(G)
    pinned = _to_mask(v for v in range(1, n + 1) if not masks[v - 1])
    k, _ = _min_forcing_set(masks, n, 0, pinned)
    return k


def zc_equals_one(CG: CoupledGraph) -> bool:
    """Structural test for coupled zero forcing number one.

    Holds iff the coupling closure graph is a caterpillar (it always contains
    a perfect matching, namely the coupling).  For connected G this says G is
    a caterpillar with a perfect matching whose coupling is defined by it.
    """
    return is_caterpillar(coupling_closure_graph(CG))


@dataclass(frozen=True)
class MultiplicityBoundReport:
    """Comparison of the attained symplectic multiplicity against the forcing bound."""

    spectrum: tuple[float, ...]
    max_multiplicity: int
    zc: int

    @property
    def holds(self) -> bool:
        return self.max_multiplicity <= self.zc


def msp_upper_bound(
    N,
    CG: CoupledGraph,
    cluster_tol: float = 1e-6,
    max_n: int = DEFAULT_MAX_N,
    max_p: int = 5,
) -> MultiplicityBoundReport:
    """Check max symplectic multiplicity of N against the coupled forcing number.

    N's labeled graph must be one of the representative labelings of the
    coupled graph; the maximum multiplicity of any symplectic eigenvalue of a
    matrix in the class is at most the coupled zero forcing number.
    """
    GN = graph_of_matrix(N)
    if GN.order != CG.graph.order:
        raise ValueError("matrix order does not match the coupled graph")
    if not any(
        apply_labeling(CG, L) == GN for L in representative_labelings(CG, max_p=max_p)
    ):
        raise ValueError("the pattern of N is not a representative labeling of CG")
    spec = symplectic_spectrum(N, cluster_tol=cluster_tol)
    return MultiplicityBoundReport(
        spectrum=spec.values,
        max_multiplicity=spec.max_multiplicity,
        zc=zc_number(CG, max_n=max_n),
    )
