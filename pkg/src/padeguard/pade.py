"""The Pade map: scaling, SVD denominator extraction, numerator recovery,
normalization, defect/degeneracy assessment, and the diagonal robust
degree-reduction loop.

Pipeline for one [m|n] approximant of a coefficient sequence:

    scale the first m+n+1 coefficients to unit norm
    -> build the n x (n+1) Toeplitz matrix C
    -> vec(q) = right singular vector of the smallest singular value
    -> p_j = sum_k c_{j-k} q_k for j = 0..m
    -> normalize [vec(p); vec(q)] to unit norm with q(0) real positive.

The returned coefficient vector belongs to the approximant of the *scaled*
sequence a f(bz); the scaling pair (a, b) is recorded so callers can undo it
(see PadeResult.unscaled_rational).  With the scaled vector, T x = 0 and
S = Q T hold to rounding accuracy, which is what the conditioning and
certification machinery needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .numerics import svd
from .polyrat import CoefficientVector, RationalFunction, TaylorCoefficients, coeff_array
from .spurious import is_numerically_degenerate
from .structmat import build_C, build_T

__all__ = [
    "PadeResult",
    "scale_input",
    "pade_denominator",
    "pade_numerator",
    "normalize",
    "pade",
    "robust_pade",
]

# Multiple singular values this close to zero (relative to sigma_1) span a
# joint numerical kernel; the q(0)-anchored tie-break below then applies.
_KERNEL_TIE_REL = 64.0 * np.finfo(float).eps
_ANCHOR_MIN_NORM = 1e-12


@dataclass(frozen=True)
class PadeResult:
    """One computed [m|n] approximant.

    sigma_1 and sigma_n are the extreme computed singular values of C
    (nan/inf markers for n = 0, where C is empty); sigma_n1 is the (n+1)st
    singular value, which is structurally zero for the n x (n+1) system and
    is reported rather than asserted.  t_residual is ||T x||, the realized
    order-condition residual.
    """

    r: RationalFunction
    x: CoefficientVector
    defect: int
    degenerate: bool
    sigma_n: float
    sigma_n1: float
    scaling: tuple
    sigma_1: float
    t_residual: float
    scaled_input: TaylorCoefficients
    fallback_truncation: bool = False

    @property
    def m(self) -> int:
        return self.x.m

    @property
    def n(self) -> int:
        return self.x.n

    def unscaled_rational(self) -> RationalFunction:
        """The approximant mapped back to the raw input series: with
        (a, b) = scaling, p_j -> p_j / (a b^j) and q_j -> q_j / b^j."""
        a, b = self.scaling
        jp = np.arange(self.m + 1)
        jq = np.arange(self.n + 1)
        return RationalFunction(
            self.x.p_vec / (a * b**jp),
            self.x.q_vec / (b**jq),
        )


def scale_input(c_raw, m: int, n: int, radius: complex = 1.0) -> TaylorCoefficients:
    """Scale a raw coefficient sequence so its first m+n+1 entries have unit
    Euclidean norm (the substitution a f(bz) with b = radius, a = 1/norm)."""
    c = coeff_array(c_raw).copy()
    if c.size < m + n + 1:
        raise ValueError(f"insufficient coefficients: need {m + n + 1}, got {c.size}")
    b = complex(radius)
    if b != 1.0:
        if b == 0:
            raise ValueError("radius must be nonzero")
        c *= b ** np.arange(c.size)
    nrm = np.linalg.norm(c[: m + n + 1])
    if nrm == 0.0:
        raise ValueError("all-zero coefficient window")
    a = 1.0 / nrm
    return TaylorCoefficients(c * a, scale_a=a, scale_b=b)


def pade_denominator(C: np.ndarray):
    """Denominator coefficients from the SVD of the n x (n+1) system.

    Returns ``(q, s)`` with q the unit-norm right singular vector of the
    smallest singular value and s the computed singular values (length n,
    descending).  For n = 0 the denominator is the scalar 1.

    When several singular values tie at numerical zero the kernel is
    multi-dimensional and plain LAPACK output is arbitrary there; in that
    case q is the normalized projection of e_1 onto the numerical kernel,
    the canonical representative with q(0) != 0 whenever one exists.
    """
    n = C.shape[0]
    if n == 0:
        return np.ones(1, dtype=np.complex128), np.empty(0)
    res = svd(C)
    s = res.s
    kernel_rows = [n]
    if s[0] == 0.0:
        kernel_rows = list(range(n + 1))
    else:
        tie = _KERNEL_TIE_REL * s[0]
        kernel_rows.extend(j for j in range(n) if s[j] <= tie)
    q = res.right_vector(n)
    if len(kernel_rows) > 1:
        anchor = np.zeros(n + 1, dtype=np.complex128)
        for j in kernel_rows:
            v = res.right_vector(j)
            anchor += np.conj(v[0]) * v
        norm = np.linalg.norm(anchor)
        if norm > _ANCHOR_MIN_NORM:
            q = anchor / norm
    return q, s


def pade_numerator(c, q, m: int, n: int) -> np.ndarray:
    """Numerator coefficients p_j = sum_{k<=min(j,n)} c_{j-k} q_k, j = 0..m
    (the convolution that zeroes rows 0..m of the T system)."""
    cc = coeff_array(c)
    qq = np.asarray(q, dtype=np.complex128)
    return np.convolve(cc[: m + 1], qq)[: m + 1]


def normalize(x_raw, m: int, n: int) -> CoefficientVector:
    """Scale a stacked vector to unit norm and rotate the phase so that q_0
    is real positive (falling back to the largest-modulus q entry when q_0
    vanishes exactly; the anchor index is recorded on the result)."""
    x = np.asarray(x_raw, dtype=np.complex128)
    if x.size != m + n + 2:
        raise ValueError(f"expected {m + n + 2} stacked entries, got {x.size}")
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    x = x / nrm
    qpart = x[m + 1 :]
    idx = 0
    pivot = qpart[0]
    if pivot == 0:
        if np.all(qpart == 0):
            raise ValueError("q part is identically zero")
        idx = int(np.argmax(np.abs(qpart)))
        pivot = qpart[idx]
    phase = np.conj(pivot) / abs(pivot)
    return CoefficientVector(x * phase, m, n, phase_index=idx)


def pade(c_raw, m: int, n: int, radius: complex = 1.0) -> PadeResult:
    """Compute the [m|n] approximant of a coefficient sequence.

    ``c_raw`` may be a raw sequence (scaled here) or a TaylorCoefficients
    already produced by scale_input, which is then used as-is; this matters
    when several approximants of the same series must share one scaling.
    """
    if isinstance(c_raw, TaylorCoefficients):
        c = c_raw
        if len(c) < m + n + 1:
            raise ValueError(f"insufficient coefficients: need {m + n + 1}, got {len(c)}")
    else:
        c = scale_input(c_raw, m, n, radius=radius)

    C = build_C(c, m, n)
    q, s = pade_denominator(C)
    p = pade_numerator(c, q, m, n)
    x = normalize(np.concatenate([p, q]), m, n)
    r = x.to_rational()
    degenerate, defect = is_numerically_degenerate(r)
    T = build_T(c, m, n)
    t_residual = float(np.linalg.norm(T @ x.entries))
    if n > 0:
        sigma_1 = float(s[0])
        sigma_n = float(s[-1])
    else:
        sigma_1 = math.nan
        sigma_n = math.inf
    return PadeResult(
        r=r,
        x=x,
        defect=defect,
        degenerate=degenerate,
        sigma_n=sigma_n,
        sigma_n1=0.0,
        scaling=(c.scale_a, c.scale_b),
        sigma_1=sigma_1,
        t_residual=t_residual,
        scaled_input=c,
    )


def robust_pade(c_raw, m_request: int, n_request: int, tol: float, radius: complex = 1.0) -> PadeResult:
    """Diagonal degree reduction until the result is robust and nondegenerate.

    Starting from (m', n'), recompute the approximant and step (m, n) down
    the diagonal whenever sigma_n(C) <= tol * sigma_1(C) or the result is
    numerically degenerate.  The accepted result has sigma_n above the
    threshold and zero numerical defect.  If the walk exhausts (possible
    only for n' > m'), the (max(m'-n', 0), 0) polynomial truncation is
    returned with fallback_truncation set; reaching n = 0 from a request
    with n' > 0 also sets the flag.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m_request < 0 or n_request < 0:
        raise ValueError("requested degrees must be nonnegative")
    m, n = m_request, n_request
    while m >= 0 and n >= 0:
        res = pade(c_raw, m, n, radius=radius)
        robust = n == 0 or res.sigma_n > tol * res.sigma_1
        if robust and not res.degenerate:
            if n == 0 and n_request > 0:
                res = replace(res, fallback_truncation=True)
            return res
        m -= 1
        n -= 1
    res = pade(c_raw, max(m_request - n_request, 0), 0, radius=radius)
    return replace(res, fallback_truncation=True)
