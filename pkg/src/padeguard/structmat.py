"""Dense builders for the structured matrices C, T, Q, S and the classical
square Sylvester matrix.

Index conventions (fixed so results are bit-reproducible):

    C    n x (n+1),        C[i-1, k] = c_{m+i-k},  i = 1..n, k = 0..n, c_j = 0 for j < 0
    T    (m+n+1) x (m+n+2) = [[I_{m+1}, -L], [0, -C]], column m+1+k holds -c_{j-k}
    Q    (m+n+1) x (m+n+1) lower-triangular banded Toeplitz, first column q_0..q_n
    S    (m+n+1) x (m+n+2) = S(q, -p): m+1 shifted copies of q, then n+1 of -p
    Ssq  (m+n) x (m+n)     = S minus its last row and the last column of each block

They satisfy S = Q T whenever c is the Taylor sequence of p/q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyrat import coeff_array

__all__ = [
    "StructuredMatrices",
    "build_C",
    "build_T",
    "build_Q",
    "build_S",
    "build_square_sylvester",
    "structured_matrices",
]


def _window(c, m: int, n: int) -> np.ndarray:
    cc = coeff_array(c)
    if m < 0 or n < 0:
        raise ValueError("formal degrees must be nonnegative")
    if cc.size < m + n + 1:
        raise ValueError(f"insufficient coefficients: need {m + n + 1}, got {cc.size}")
    return cc


def build_C(c, m: int, n: int) -> np.ndarray:
    """The n x (n+1) Toeplitz matrix of the homogeneous denominator system."""
    if n == 0:
        return np.zeros((0, 1), dtype=np.complex128)
    cc = _window(c, m, n)
    out = np.zeros((n, n + 1), dtype=np.complex128)
    for i in range(1, n + 1):
        for k in range(n + 1):
            j = m + i - k
            if j >= 0:
                out[i - 1, k] = cc[j]
    return out


def build_T(c, m: int, n: int) -> np.ndarray:
    """The (m+n+1) x (m+n+2) block upper triangular matrix [[I, -L], [0, -C]]."""
    cc = _window(c, m, n)
    rows = m + n + 1
    out = np.zeros((rows, rows + 1), dtype=np.complex128)
    out[: m + 1, : m + 1] = np.eye(m + 1)
    for k in range(n + 1):
        out[k:, m + 1 + k] = -cc[: rows - k]
    return out


def build_Q(q, m: int, n: int) -> np.ndarray:
    """Lower-triangular banded Toeplitz matrix of order m+n+1 built from q."""
    qq = coeff_array(q)
    if qq.size != n + 1:
        raise ValueError(f"q must have formal degree {n}, got {qq.size - 1}")
    order = m + n + 1
    out = np.zeros((order, order), dtype=np.complex128)
    for k in range(order):
        end = min(order, k + n + 1)
        out[k:end, k] = qq[: end - k]
    return out


def build_S(p, q) -> np.ndarray:
    """The (m+n+1) x (m+n+2) Sylvester-like matrix S(q, -p)."""
    pp = coeff_array(p)
    qq = coeff_array(q)
    m = pp.size - 1
    n = qq.size - 1
    out = np.zeros((m + n + 1, m + n + 2), dtype=np.complex128)
    for k in range(m + 1):
        out[k : k + n + 1, k] = qq
    for k in range(n + 1):
        out[k : k + m + 1, m + 1 + k] = -pp
    return out


def build_square_sylvester(p, q) -> np.ndarray:
    """The classical (m+n) x (m+n) Sylvester matrix: drop the last row of S
    and the last column in each of its two column blocks."""
    pp = coeff_array(p)
    qq = coeff_array(q)
    m = pp.size - 1
    n = qq.size - 1
    if m + n == 0:
        raise ValueError("square Sylvester matrix needs m + n >= 1")
    s = build_S(pp, qq)
    keep = [j for j in range(m + n + 2) if j not in (m, m + n + 1)]
    return s[: m + n, keep]


@dataclass(frozen=True)
class StructuredMatrices:
    """Dense realizations of C, T, Q, S for one (c, p, q, m, n)."""

    C: np.ndarray
    T: np.ndarray
    Q: np.ndarray
    S: np.ndarray
    m: int
    n: int


def structured_matrices(c, p, q) -> StructuredMatrices:
    """Build all four matrices and assert the shape contracts."""
    pp = coeff_array(p)
    qq = coeff_array(q)
    m = pp.size - 1
    n = qq.size - 1
    mats = StructuredMatrices(
        C=build_C(c, m, n),
        T=build_T(c, m, n),
        Q=build_Q(qq, m, n),
        S=build_S(pp, qq),
        m=m,
        n=n,
    )
    assert mats.C.shape == (n, n + 1)
    assert mats.T.shape == (m + n + 1, m + n + 2)
    assert mats.Q.shape == (m + n + 1, m + n + 1)
    assert mats.S.shape == (m + n + 1, m + n + 2)
    return mats
