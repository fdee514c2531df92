"""Symplectic linear algebra on dense symmetric matrices.

Everything here works with plain numpy arrays.  A "symmetric matrix" is any
square array-like; :func:`as_symmetric` is the canonical constructor and
symmetrizes exactly.  Orders are small (a few dozen at most), so all
algorithms are dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg


class NotPositiveDefiniteError(ValueError):
    """Raised when an operation requires a positive definite input."""


def as_symmetric(N, even: bool = False) -> np.ndarray:
    """Validate a square array-like and return its exact symmetrization.

    With ``even=True`` the order must also be even (the ambient dimension of
    the symplectic form).
    """
    N = np.asarray(N, dtype=float)
    if N.ndim != 2 or N.shape[0] != N.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {N.shape}")
    if even and N.shape[0] % 2 != 0:
        raise ValueError(f"matrix order must be even, got {N.shape[0]}")
    return 0.5 * (N + N.T)


def as_square(S) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {S.shape}")
    return S


@lru_cache(maxsize=None)
def _omega_cached(p: int) -> np.ndarray:
    om = np.zeros((2 * p, 2 * p))
    om[:p, p:] = np.eye(p)
    om[p:, :p] = -np.eye(p)
    om.setflags(write=False)
    return om


def omega(p: int) -> np.ndarray:
    """The 2p x 2p matrix [[0, I], [-I, 0]] defining the symplectic form."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    return _omega_cached(int(p))


def is_symplectic(S, tol: float = 1e-8) -> bool:
    """True iff ``S.T @ Omega @ S`` equals Omega to within ``tol`` (max norm)."""
    S = as_square(S)
    n = S.shape[0]
    if n % 2 != 0:
        raise ValueError("symplectic matrices have even order")
    om = omega(n // 2)
    return float(np.max(np.abs(S.T @ om @ S - om))) <= tol


def is_hamiltonian(M, tol: float = 1e-10) -> bool:
    """True iff Omega @ M is symmetric, i.e. M = [[R, E], [F, -R.T]] with E, F symmetric."""
    M = as_square(M)
    if M.shape[0] % 2 != 0:
        return False
    om = omega(M.shape[0] // 2)
    W = om @ M
    return float(np.max(np.abs(W - W.T))) <= tol * max(1.0, float(np.max(np.abs(M))))


def pattern_tol(N) -> float:
    """Default threshold below which an entry counts as a structural zero."""
    N = np.asarray(N, dtype=float)
    m = float(np.max(np.abs(N))) if N.size else 0.0
    return 1e-10 * m


def is_positive_definite(N, tol: float | None = None) -> bool:
    """Positive definiteness via a pivoted symmetric (Bunch-Kaufman) factorization.

    All pivot eigenvalues must exceed ``tol``; the default is scale-invariant,
    ``1e-10 * max(diagonal)``.
    """
    N = as_symmetric(N)
    d = np.diag(N)
    if tol is None:
        tol = 1e-10 * float(np.max(d)) if d.size and np.max(d) > 0 else 0.0
    if d.size == 0:
        return False
    if np.min(d) <= tol:
        return False
    _, D, _ = scipy.linalg.ldl(N)
    i, n = 0, N.shape[0]
    while i < n:
        if i + 1 < n and D[i + 1, i] != 0.0:
            block = D[i : i + 2, i : i + 2]
            if np.min(np.linalg.eigvalsh(block)) <= tol:
                return False
            i += 2
        else:
            if D[i, i] <= tol:
                return False
            i += 1
    return True


def _require_pd(N) -> np.ndarray:
    N = as_symmetric(N, even=True)
    if not is_positive_definite(N):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    return N


def sqrtm_pd(N) -> np.ndarray:
    """Symmetric square root of a positive definite matrix via spectral decomposition."""
    N = as_symmetric(N)
    w, V = np.linalg.eigh(N)
    if np.min(w) <= 0:
        raise NotPositiveDefiniteError("matrix is not positive definite")
    return (V * np.sqrt(w)) @ V.T


def invsqrtm_pd(N) -> np.ndarray:
    """Symmetric inverse square root of a positive definite matrix."""
    N = as_symmetric(N)
    w, V = np.linalg.eigh(N)
    if np.min(w) <= 0:
        raise NotPositiveDefiniteError("matrix is not positive definite")
    return (V / np.sqrt(w)) @ V.T


@dataclass(frozen=True)
class SymplecticSpectrum:
    """The p symplectic eigenvalues of a 2p x 2p positive definite matrix.

    ``values`` is sorted ascending.  ``clusters`` groups numerically equal
    values into (representative, multiplicity) pairs using single-linkage on
    the relative gap ``cluster_tol``; floating point forces some such
    convention, and the one used is recorded on the result.
    """

    values: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]
    cluster_tol: float

    @property
    def p(self) -> int:
        return len(self.values)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.clusters)

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicities)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values)


def cluster_values(values, cluster_tol: float) -> tuple[tuple[float, int], ...]:
    """Group sorted positive values into multiplicity clusters by relative gap."""
    vals = np.sort(np.asarray(values, dtype=float))
    clusters: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or (vals[i] - vals[i - 1]) > cluster_tol * max(vals[i], 1e-300):
            chunk = vals[start:i]
            clusters.append((float(np.mean(chunk)), len(chunk)))
            start = i
    return tuple(clusters)


def symplectic_spectrum(N, cluster_tol: float = 1e-6) -> SymplecticSpectrum:
    """Symplectic eigenvalues of a positive definite matrix of order 2p.

    These are the moduli of the (purely imaginary) eigenvalues of Omega @ N.
    Computed from the skew-symmetric K = sqrt(N) @ Omega @ sqrt(N), which is
    similar to Omega @ N: the singular values of K come in pairs, one pair per
    symplectic eigenvalue.  This keeps the pairing exact by construction
    instead of trusting a nonsymmetric eigensolver.
    """
    N = _require_pd(N)
    p = N.shape[0] // 2
    R = sqrtm_pd(N)
    K = R @ omega(p) @ R
    s = np.linalg.svd(K, compute_uv=False)  # descending, in pairs
    vals = 0.5 * (s[0::2] + s[1::2])
    vals = np.sort(vals)
    return SymplecticSpectrum(
        values=tuple(float(v) for v in vals),
        clusters=cluster_values(vals, cluster_tol),
        cluster_tol=cluster_tol,
    )


@dataclass(frozen=True)
class WilliamsonPair:
    """A symplectic S and positive diagonal d with S.T @ N @ S = diag(d, d).

    S is not unique; only the reconstruction residuals are contractual.
    """

    S: np.ndarray
    d: tuple[float, ...]

    def diagonal(self) -> np.ndarray:
        dd = np.concatenate([self.d, self.d])
        return np.diag(dd)


def williamson(N) -> WilliamsonPair:
    """Williamson normal form of a positive definite matrix.

    Uses the real Schur form of the skew-symmetric invsqrt(N) @ Omega @
    invsqrt(N), whose 2x2 blocks carry the reciprocals of the symplectic
    eigenvalues; reassembling the orthogonal factor block-wise and scaling
    gives the symplectic congruence.
    """
    N = _require_pd(N)
    n = N.shape[0]
    p = n // 2
    A = invsqrtm_pd(N)
    K = A @ omega(p) @ A
    T, Z = scipy.linalg.schur(K, output="real")
    pairs = []  # (d, u, v) with K u = -mu v, K v = mu u, d = 1/mu
    for i in range(0, n, 2):
        mu = float(T[i, i + 1])
        if mu == 0.0:
            raise np.linalg.LinAlgError("degenerate Schur block in Williamson form")
        u, v = Z[:, i].copy(), Z[:, i + 1].copy()
        if mu < 0:
            u, v, mu = v, u, -mu
        pairs.append((1.0 / mu, u, v))
    pairs.sort(key=lambda t: t[0])
    d = np.array([t[0] for t in pairs])
    Q = np.column_stack([t[1] for t in pairs] + [t[2] for t in pairs])
    scale = np.concatenate([np.sqrt(d), np.sqrt(d)])
    S = A @ Q * scale
    scale_n = float(np.max(np.abs(N)))
    if np.max(np.abs(S.T @ N @ S - np.diag(np.concatenate([d, d])))) > 1e-8 * scale_n:
        raise np.linalg.LinAlgError("Williamson reconstruction residual too large")
    if not is_symplectic(S, tol=1e-8 * max(1.0, scale_n)):
        raise np.linalg.LinAlgError("Williamson factor is not symplectic")
    return WilliamsonPair(S=S, d=tuple(float(x) for x in d))


def is_symplectic_pd(N, tol: float = 1e-8) -> bool:
    """True iff N is both symplectic and positive definite.

    Equivalent to all symplectic eigenvalues of N being one, and checked via
    (Omega @ N)^2 = -I.
    """
    N = as_symmetric(N, even=True)
    if not is_positive_definite(N):
        return False
    om = omega(N.shape[0] // 2)
    W = om @ N
    return float(np.max(np.abs(W @ W + np.eye(N.shape[0])))) <= tol


def symplectic_pd_inverse_identity(N, tol: float = 1e-8) -> bool:
    """Independent characterization of symplectic PD matrices via the inverse.

    N (positive definite, order 2p) is symplectic iff its inverse equals
    [[N22, -N12.T], [-N12, N11]] in the p x p block partition.  Must agree
    with :func:`is_symplectic_pd` on every input.
    """
    N = as_symmetric(N, even=True)
    p = N.shape[0] // 2
    try:
        Ninv = np.linalg.inv(N)
    except np.linalg.LinAlgError as exc:
        raise ValueError("matrix is singular") from exc
    if not is_positive_definite(N):
        return False
    blocked = np.block(
        [[N[p:, p:], -N[:p, p:].T], [-N[:p, p:], N[:p, :p]]]
    )
    scale = max(1.0, float(np.max(np.abs(Ninv))))
    return float(np.max(np.abs(Ninv - blocked))) <= tol * scale


def basic_symplectic(kind: str, arg=None, p: int | None = None) -> np.ndarray:
    """One of the three basic symplectic matrices.

    kind="omega" with order parameter p; kind="block_diag" builds
    diag(A, inv(A).T) from an invertible A; kind="shear" builds
    [[I, B], [O, I]] from a symmetric B.
    """
    if kind == "omega":
        if p is None:
            raise ValueError("kind='omega' requires p")
        return omega(p).copy()
    if kind == "block_diag":
        A = as_square(arg)
        if abs(np.linalg.det(A)) < 1e-300:
            raise ValueError("block_diag factor must be invertible")
        Ainv_t = np.linalg.inv(A).T
        m = A.shape[0]
        out = np.zeros((2 * m, 2 * m))
        out[:m, :m] = A
        out[m:, m:] = Ainv_t
        return out
    if kind == "shear":
        B = as_square(arg)
        if np.max(np.abs(B - B.T)) > 1e-12 * max(1.0, float(np.max(np.abs(B)))):
            raise ValueError("shear block must be symmetric")
        m = B.shape[0]
        out = np.eye(2 * m)
        out[:m, m:] = 0.5 * (B + B.T)
        return out
    raise ValueError(f"unknown basic symplectic kind {kind!r}")


def _check_permutation(sigma) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    return sigma


def is_valid_symplectic_relabeling(sigma) -> bool:
    """Whether a relabeling keeps symplectic spectra invariant for every matrix.

    sigma (a permutation of 1..2p, as a sequence with sigma[i-1] = sigma(i))
    qualifies iff it maps the index pairing {{1, 1+p}, ..., {p, 2p}} onto
    itself; exactly the permutations whose monomial lift preserves Omega.
    There are p! * 2^p of them.
    """
    sigma = _check_permutation(sigma)
    n = len(sigma)
    if n % 2 != 0:
        raise ValueError("sigma must permute an even range 1..2p")
    p = n // 2
    base = {frozenset((i, i + p)) for i in range(1, p + 1)}
    image = {frozenset((sigma[i - 1], sigma[i + p - 1])) for i in range(1, p + 1)}
    return image == base


def permutation_matrix(sigma) -> np.ndarray:
    """P with column i equal to e_{sigma(i)}, so (P N P.T)[sigma(i), sigma(j)] = N[i, j]."""
    sigma = _check_permutation(sigma)
    n = len(sigma)
    P = np.zeros((n, n))
    for i, s in enumerate(sigma):
        P[s - 1, i] = 1.0
    return P


def relabel(N, sigma) -> np.ndarray:
    """Conjugate N by the permutation matrix of sigma: P_sigma @ N @ P_sigma.T.

    This moves the labeled graph of N by sigma.  It preserves the symplectic
    spectrum when the monomial lift of sigma reduces to P_sigma itself (no
    coupled pair is internally flipped); in general only the sign-corrected
    conjugation :func:`monomial_relabel` preserves the spectrum.
    """
    N = as_symmetric(N)
    sigma = _check_permutation(sigma)
    if len(sigma) != N.shape[0]:
        raise ValueError("sigma length must match matrix order")
    P = permutation_matrix(sigma)
    return P @ N @ P.T


def symplectic_monomial_lift(sigma) -> np.ndarray:
    """The signed permutation matrix R = E @ P_sigma with R.T @ Omega @ R = Omega.

    Exists exactly for valid relabelings: a pair mapped with its internal
    order flipped needs a -1 on the flipped slot.  Conjugation by R moves
    the pattern by sigma while preserving symplectic spectra.
    """
    sigma = _check_permutation(sigma)
    if not is_valid_symplectic_relabeling(sigma):
        raise ValueError("sigma does not preserve the index pairing; no symplectic lift exists")
    p = len(sigma) // 2
    P = permutation_matrix(sigma)
    om = omega(p)
    form = P @ om @ P.T
    eps = np.ones(2 * p)
    for k in range(p):
        if form[k, k + p] < 0:
            eps[k + p] = -1.0
    R = eps[:, None] * P
    if not is_symplectic(R, tol=0.0):
        raise AssertionError("monomial lift failed to preserve the form")
    return R


def monomial_relabel(N, sigma) -> np.ndarray:
    """Relabel by a valid sigma through its monomial lift: same pattern move as
    :func:`relabel`, with the symplectic spectrum exactly preserved."""
    N = as_symmetric(N, even=True)
    R = symplectic_monomial_lift(sigma)
    if R.shape[0] != N.shape[0]:
        raise ValueError("sigma length must match matrix order")
    return R @ N @ R.T
