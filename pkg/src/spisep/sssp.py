"""The strong symplectic spectral property (SSSP) and its verification machinery.

A positive definite N of order 2p has the SSSP when the tangent space
{N M + M.T N : M Hamiltonian} together with the span of all symmetric
matrices supported on the pattern of N fills the whole symmetric space.
Two independent tests are provided: full row rank of the verification
matrix restricted to non-edges, and triviality of the nullspace of the
constrained commutation system Omega N Y = Y N Omega, N o Y = 0.  They must
always agree; keeping both is the central cross-check of this library.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.optimize

from .core import (
    NotPositiveDefiniteError,
    as_symmetric,
    is_hamiltonian,
    is_positive_definite,
    omega,
    pattern_tol,
)
from .graphs import LabeledGraph, graph_of_matrix

DEFAULT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class SpBasisElement:
    """One element of the standard ordered basis of the 2p x 2p Hamiltonian matrices."""

    matrix: np.ndarray
    index: int
    label: str


def _upper_pairs(p: int) -> list[tuple[int, int]]:
    # diagonal first, then each superdiagonal in order (1-based pairs)
    pairs = [(i, i) for i in range(1, p + 1)]
    for d in range(1, p):
        pairs.extend((i, i + d) for i in range(1, p - d + 1))
    return pairs


def _full_pairs(p: int) -> list[tuple[int, int]]:
    # diagonal, then superdiagonal d followed by subdiagonal d
    pairs = [(i, i) for i in range(1, p + 1)]
    for d in range(1, p):
        pairs.extend((i, i + d) for i in range(1, p - d + 1))
        pairs.extend((i + d, i) for i in range(1, p - d + 1))
    return pairs


@lru_cache(maxsize=None)
def _sp_basis_cached(p: int) -> tuple[SpBasisElement, ...]:
    n = 2 * p
    elems: list[SpBasisElement] = []

    def E(i: int, j: int) -> np.ndarray:
        M = np.zeros((n, n))
        M[i - 1, j - 1] = 1.0
        return M

    for i, j in _upper_pairs(p):
        elems.append(
            SpBasisElement(E(i, j + p) + E(j, i + p), len(elems), f"E{i},{j + p}+E{j},{i + p}")
        )
    for i, j in _upper_pairs(p):
        elems.append(
            SpBasisElement(E(i + p, j) + E(j + p, i), len(elems), f"E{i + p},{j}+E{j + p},{i}")
        )
    for i, j in _full_pairs(p):
        elems.append(
            SpBasisElement(E(i, j) - E(j + p, i + p), len(elems), f"E{i},{j}-E{j + p},{i + p}")
        )
    for e in elems:
        e.matrix.setflags(write=False)
    return tuple(elems)


def sp_basis(p: int) -> list[SpBasisElement]:
    """Standard ordered basis of the Lie algebra of 2p x 2p Hamiltonian matrices.

    2p^2 + p elements: first {E_{i,j+p} + E_{j,i+p} : i <= j}, then
    {E_{i+p,j} + E_{j+p,i} : i <= j} (each ordered diagonal-first, then by
    superdiagonal), then {E_{i,j} - E_{j+p,i+p}} with each superdiagonal
    followed by the matching subdiagonal.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    return list(_sp_basis_cached(int(p)))


def triangle_pairs(n: int) -> list[tuple[int, int]]:
    """Row positions (i, j), i <= j, in the order used by :func:`vec_triangle`."""
    return [(i, j) for j in range(1, n + 1) for i in range(1, j + 1)]


def vec_triangle(M) -> np.ndarray:
    """Stack the upper triangular parts of the columns of a symmetric matrix.

    For a 4x4 matrix the order is m11, m12, m22, m13, m23, m33, m14, m24,
    m34, m44.  Bijective onto R^(n(n+1)/2); inverted by :func:`unvec_triangle`.
    """
    M = as_symmetric(M)
    n = M.shape[0]
    return np.concatenate([M[: j + 1, j] for j in range(n)])


def unvec_triangle(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.size != n * (n + 1) // 2:
        raise ValueError("vector length does not match a symmetric matrix of this order")
    M = np.zeros((n, n))
    k = 0
    for j in range(n):
        M[: j + 1, j] = v[k : k + j + 1]
        k += j + 1
    return M + M.T - np.diag(np.diag(M))


@dataclass(frozen=True)
class VerificationMatrix:
    """Full and reduced SSSP verification matrices of a symmetric N.

    ``full`` has one column per standard basis element M, holding
    vec_triangle(M.T N + N M); rows follow :func:`triangle_pairs`.
    ``reduced`` keeps the rows at strictly off-diagonal non-edge positions of
    the pattern of N (listed in ``row_index``); its row rank decides the SSSP.
    """

    full: np.ndarray
    reduced: np.ndarray | None = None
    row_index: tuple[tuple[int, int], ...] | None = None

    @property
    def n_rows_reduced(self) -> int:
        return 0 if self.reduced is None else self.reduced.shape[0]


def verification_matrix_full(N) -> VerificationMatrix:
    """The (2p^2+p) x (2p^2+p) matrix whose columns are vec_triangle(M.T N + N M)."""
    N = as_symmetric(N, even=True)
    p = N.shape[0] // 2
    cols = [vec_triangle(e.matrix.T @ N + N @ e.matrix) for e in sp_basis(p)]
    return VerificationMatrix(full=np.column_stack(cols))


def verification_matrix(N, zero_tol: float | None = None) -> VerificationMatrix:
    """Full verification matrix plus the submatrix of rows at non-edges of the pattern.

    The reduced part has 2p^2 - p - |E| rows, one per non-adjacent pair
    (i < j) of the labeled graph of N.
    """
    N = as_symmetric(N, even=True)
    if zero_tol is None:
        zero_tol = pattern_tol(N)
    full = verification_matrix_full(N).full
    pairs = triangle_pairs(N.shape[0])
    keep = [
        k for k, (i, j) in enumerate(pairs) if i != j and abs(N[i - 1, j - 1]) <= zero_tol
    ]
    return VerificationMatrix(
        full=full,
        reduced=full[keep, :],
        row_index=tuple(pairs[k] for k in keep),
    )


def _numeric_rank(A: np.ndarray, rank_tol: float) -> int:
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def has_sssp_rank(N, rank_tol: float = DEFAULT_RANK_TOL, zero_tol: float | None = None) -> bool:
    """SSSP test via row rank of the reduced verification matrix.

    True iff the rows indexed by non-edges are linearly independent
    (singular values above ``rank_tol`` times the largest).
    """
    N = as_symmetric(N, even=True)
    if not is_positive_definite(N):
        raise NotPositiveDefiniteError("SSSP is defined for positive definite matrices")
    vm = verification_matrix(N, zero_tol=zero_tol)
    k = vm.n_rows_reduced
    return k == 0 or _numeric_rank(vm.reduced, rank_tol) == k


def _free_pairs(N: np.ndarray, zero_tol: float) -> list[tuple[int, int]]:
    n = N.shape[0]
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if abs(N[i - 1, j - 1]) <= zero_tol
    ]


def _commutation_system(N: np.ndarray, pairs: list[tuple[int, int]]) -> np.ndarray:
    """Columns are vec(Omega N Y_ij - Y_ij N Omega) for Y_ij = E_ij + E_ji."""
    n = N.shape[0]
    om = omega(n // 2)
    ON = om @ N
    NO = N @ om
    cols = []
    for i, j in pairs:
        C = np.zeros((n, n))
        C[:, j - 1] += ON[:, i - 1]
        C[:, i - 1] += ON[:, j - 1]
        C[i - 1, :] -= NO[j - 1, :]
        C[j - 1, :] -= NO[i - 1, :]
        cols.append(C.reshape(-1))
    return np.column_stack(cols) if cols else np.zeros((n * n, 0))


def _witness_from_vector(pairs, v, n: int) -> np.ndarray:
    Y = np.zeros((n, n))
    for (i, j), y in zip(pairs, v):
        Y[i - 1, j - 1] = Y[j - 1, i - 1] = y
    m = np.max(np.abs(Y))
    return Y / m if m > 0 else Y


def has_sssp_nullspace(
    N, rank_tol: float = DEFAULT_RANK_TOL, zero_tol: float | None = None
) -> tuple[bool, np.ndarray | None]:
    """SSSP test via the nullspace of the constrained commutation system.

    Parameterizes a symmetric Y by its entries on the non-edges of the
    pattern (so that N o Y = 0 holds structurally) and asks whether
    Omega N Y = Y N Omega forces Y = 0.  Returns (flag, witness); on failure
    the witness is a nonzero Y, scaled to unit max entry.
    """
    N = as_symmetric(N, even=True)
    if zero_tol is None:
        zero_tol = pattern_tol(N)
    pairs = _free_pairs(N, zero_tol)
    if not pairs:
        return True, None
    A = _commutation_system(N, pairs)
    _, s, Vt = np.linalg.svd(A)
    k = len(pairs)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return False, _witness_from_vector(pairs, Vt[-1], N.shape[0])
    if s.size < k:  # more unknowns than equations: certainly rank deficient
        return False, _witness_from_vector(pairs, Vt[-1], N.shape[0])
    if s[k - 1] > rank_tol * smax:
        return True, None
    return False, _witness_from_vector(pairs, Vt[-1], N.shape[0])


def tangent_element(N, M) -> np.ndarray:
    """M.T @ N + N @ M for Hamiltonian M: a direction tangent to the congruence orbit of N."""
    N = as_symmetric(N, even=True)
    M = np.asarray(M, dtype=float)
    if not is_hamiltonian(M):
        raise ValueError("M is not Hamiltonian (Omega @ M must be symmetric)")
    R = M.T @ N + N @ M
    return 0.5 * (R + R.T)


def in_tangent_space(N, R, tol: float = 1e-8) -> bool:
    """Whether R lies in {N M + M.T N : M Hamiltonian}, via least squares."""
    N = as_symmetric(N, even=True)
    R = as_symmetric(R)
    b = vec_triangle(R)
    if not np.any(b):
        return True
    A = verification_matrix_full(N).full
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    return float(np.linalg.norm(A @ x - b)) <= tol * max(1.0, float(np.linalg.norm(b)))


def has_sssp_in_direction(
    N, R, rank_tol: float = DEFAULT_RANK_TOL, zero_tol: float | None = None
) -> bool:
    """SSSP of N relative to its pattern enlarged in the direction of R.

    R must lie in the tangent space of N.  True iff Y = 0 is the only
    symmetric matrix with N o Y = 0, R o Y = 0 and Omega N Y = Y N Omega.
    """
    N = as_symmetric(N, even=True)
    R = as_symmetric(R)
    if not in_tangent_space(N, R):
        raise ValueError("R is not in the tangent space of N")
    if zero_tol is None:
        zero_tol = pattern_tol(N)
    r_tol = pattern_tol(R)
    pairs = [
        (i, j) for i, j in _free_pairs(N, zero_tol) if abs(R[i - 1, j - 1]) <= r_tol
    ]
    if not pairs:
        return True
    A = _commutation_system(N, pairs)
    return _numeric_rank(A, rank_tol) == len(pairs)


def direction_graph(G: LabeledGraph, R, zero_tol: float | None = None) -> LabeledGraph:
    """G with an edge {i, j} inserted wherever R has a nonzero off-diagonal entry."""
    R = as_symmetric(R)
    if R.shape[0] != G.order:
        raise ValueError("R must match the order of G")
    return G.with_edges(graph_of_matrix(R, zero_tol=zero_tol).edges)


def direct_sum_interleave(P, Q) -> np.ndarray:
    """Order-compatible direct sum of matrices of orders 2m and 2r.

    Embeds P on indices {1..m, p+1..p+m} and Q on {m+1..p, p+m+1..2p}
    (p = m + r), so the result is permutation-similar to P + Q as a matrix
    but respects the block convention of the symplectic form.  Its symplectic
    spectrum is the union of the two spectra.
    """
    P = as_symmetric(P, even=True)
    Q = as_symmetric(Q, even=True)
    if not (is_positive_definite(P) and is_positive_definite(Q)):
        raise NotPositiveDefiniteError("both blocks must be positive definite")
    m, r = P.shape[0] // 2, Q.shape[0] // 2
    p = m + r
    idx_p = list(range(m)) + list(range(p, p + m))
    idx_q = list(range(m, p)) + list(range(p + m, 2 * p))
    N = np.zeros((2 * p, 2 * p))
    N[np.ix_(idx_p, idx_p)] = P
    N[np.ix_(idx_q, idx_q)] = Q
    return N


# ---------------------------------------------------------------------------
# numerical continuation onto a pattern
# ---------------------------------------------------------------------------

def _moduli_spectrum(N: np.ndarray) -> np.ndarray:
    p = N.shape[0] // 2
    w = np.linalg.eigvals(omega(p) @ N)
    mods = np.sort(np.abs(w))
    return 0.5 * (mods[0::2] + mods[1::2])


def continuation_realize(
    G: LabeledGraph,
    target,
    rng: np.random.Generator | None = None,
    seed_matrix=None,
    edge_scale: float = 1e-2,
    spectrum_tol: float = 1e-6,
    max_attempts: int = 8,
) -> np.ndarray:
    """Realize a target symplectic spectrum on a pattern by local optimization.

    Starts from diag(target, target) (an exact realization on the empty
    subgraph) with small random values on the edges of G, then moves the free
    entries (diagonal plus edges) by least squares until the spectrum matches
    the target.  Existence near the seed holds whenever the seed has the
    SSSP, e.g. for distinct targets; this routine supplies the witness.

    Returns a positive definite matrix with labeled graph exactly G and
    spectrum within ``spectrum_tol`` of the target; raises ArithmeticError
    if no attempt converges.
    """
    if G.order % 2 != 0:
        raise ValueError("pattern must have even order")
    p = G.order // 2
    target = np.sort(np.asarray(target, dtype=float))
    if target.size != p or np.any(target <= 0):
        raise ValueError("target must consist of p positive values")
    if rng is None:
        rng = np.random.default_rng(0)

    free = [(i, i) for i in range(1, G.order + 1)] + sorted(G.edges)
    n_diag = G.order

    def build(x: np.ndarray) -> np.ndarray:
        N = np.zeros((G.order, G.order))
        for (i, j), v in zip(free, x):
            N[i - 1, j - 1] = v
            N[j - 1, i - 1] = v
        return N

    def residual(x: np.ndarray) -> np.ndarray:
        return _moduli_spectrum(build(x)) - target

    base_diag = np.concatenate([target, target])
    scale = edge_scale * float(np.min(target))
    if seed_matrix is not None:
        seed_matrix = np.asarray(seed_matrix, dtype=float)
        if seed_matrix.shape != (G.order, G.order):
            raise ValueError("seed matrix must match the pattern order")
        seed_x = np.array([seed_matrix[i - 1, j - 1] for i, j in free])
    last_err = np.inf
    for attempt in range(max_attempts):
        if seed_matrix is not None:
            jitter = 0.0 if attempt == 0 else scale * rng.uniform(-1.0, 1.0, len(free))
            x0 = seed_x + jitter
        else:
            x0 = np.concatenate(
                [
                    base_diag,
                    scale * rng.choice([-1.0, 1.0], size=len(free) - n_diag)
                    * rng.uniform(0.5, 1.0, size=len(free) - n_diag),
                ]
            )
        sol = scipy.optimize.least_squares(
            residual, x0, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15,
            max_nfev=400 * (len(free) + 1),
        )
        N = build(sol.x)
        err = float(np.max(np.abs(residual(sol.x))))
        last_err = min(last_err, err)
        if err <= spectrum_tol and is_positive_definite(N) and graph_of_matrix(N) == G:
            return N
    raise ArithmeticError(
        f"continuation did not converge on this pattern (best residual {last_err:.3e})"
    )
