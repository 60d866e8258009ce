"""Dense numerical kernels: SVD, spectral norms, solves, polynomial roots.

Thin, stateless wrappers over numpy/scipy LAPACK routines.  Condition numbers
follow the full-row-rank convention kappa(A) = sigma_1 / sigma_l with l the
row count; a smallest singular value that is exactly zero in floating point
is reported as rank deficiency, which callers treat as a degeneracy signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .polyrat import Polynomial, coeff_array

__all__ = [
    "RankDeficientError",
    "SvdResult",
    "svd",
    "singular_values",
    "spectral_norm",
    "pinv_norm",
    "cond",
    "poly_roots",
    "solve_lower_triangular",
    "solve_square",
]


class RankDeficientError(RuntimeError):
    """A matrix required to have full row rank is singular to working precision."""


@dataclass(frozen=True)
class SvdResult:
    """Full SVD with singular values sorted descending."""

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray

    def right_vector(self, k: int) -> np.ndarray:
        """The k-th right singular vector (unit norm)."""
        return self.vh[k].conj()


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return m


def svd(a) -> SvdResult:
    """Full SVD of a nonempty matrix; LAPACK non-convergence propagates."""
    m = _as_matrix(a)
    if m.size == 0:
        raise ValueError("svd of an empty matrix")
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    return SvdResult(u=u, s=s, vh=vh)


def singular_values(a) -> np.ndarray:
    m = _as_matrix(a)
    if m.size == 0:
        return np.empty(0)
    return np.linalg.svd(m, compute_uv=False)


def spectral_norm(a) -> float:
    m = _as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def pinv_norm(a) -> float:
    """||A^dagger|| = 1 / sigma_l with l = number of rows.

    Raises RankDeficientError when sigma_l is exactly zero (which includes
    any matrix with more rows than columns).
    """
    m = _as_matrix(a)
    rows, cols = m.shape
    if rows == 0:
        return 0.0
    if rows > cols:
        raise RankDeficientError("more rows than columns: no full row rank")
    s = np.linalg.svd(m, compute_uv=False)
    smin = float(s[rows - 1])
    if smin == 0.0:
        raise RankDeficientError("rank deficient: smallest singular value is zero")
    return 1.0 / smin


def cond(a) -> float:
    """kappa(A) = sigma_1 / sigma_l, l = row count; 1.0 for an empty matrix."""
    m = _as_matrix(a)
    if m.shape[0] == 0:
        return 1.0
    return spectral_norm(m) * pinv_norm(m)


def poly_roots(p) -> np.ndarray:
    """Roots of the exact-degree polynomial (trailing zero coefficients stripped).

    Computed as eigenvalues of the balanced companion matrix (numpy.roots);
    the returned count equals the exact degree.
    """
    c = coeff_array(p)
    if isinstance(p, Polynomial):
        deg = p.exact_degree
    else:
        nz = np.nonzero(c)[0]
        deg = int(nz[-1]) if nz.size else -1
    if deg < 0:
        raise ValueError("zero polynomial has no well-defined roots")
    if deg == 0:
        return np.empty(0, dtype=np.complex128)
    return np.roots(c[deg::-1]).astype(np.complex128)


def solve_lower_triangular(l, b) -> np.ndarray:
    """Solve L x = b with L lower triangular and nonzero diagonal."""
    lm = _as_matrix(l)
    if np.any(np.diagonal(lm) == 0):
        raise RankDeficientError("triangular matrix has a zero diagonal entry")
    return scipy.linalg.solve_triangular(lm, np.asarray(b, dtype=np.complex128), lower=True)


def solve_square(a, b) -> np.ndarray:
    """Solve A x = b for square nonsingular A."""
    try:
        return np.linalg.solve(_as_matrix(a), np.asarray(b, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise RankDeficientError("singular to working precision") from exc
