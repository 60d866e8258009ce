"""Core polynomial and rational-function types plus Taylor expansion.

Everything here is immutable after construction and every operation is pure,
so the types are safe to share across concurrent sweeps.  Scalars are complex
double precision throughout; real input takes the same code path and simply
carries zero imaginary parts.

Trailing zero coefficients are retained on purpose: the formal degree is part
of the identity of a Pade numerator or denominator, because the defect
min{m - deg p, n - deg q} depends on it.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Polynomial",
    "RationalFunction",
    "CoefficientVector",
    "TaylorCoefficients",
    "PoleAtOriginError",
    "POINT_AT_INFINITY",
    "INDETERMINATE",
    "coeff_array",
    "eval_poly",
    "eval_rational",
    "taylor_of_rational",
]


class PoleAtOriginError(ValueError):
    """Raised when a Taylor expansion at 0 is requested but q(0) = 0."""


class _SpherePoint:
    """Named singleton for special values of rational evaluation."""

    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


#: The point at infinity on the Riemann sphere: q(z) = 0 while p(z) != 0.
POINT_AT_INFINITY = _SpherePoint("POINT_AT_INFINITY")

#: Marker for 0/0 sample points (z hits a common root of p and q).
#: Indeterminate is a value, not an error; samplers skip such points.
INDETERMINATE = _SpherePoint("INDETERMINATE")


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def coeff_array(c) -> np.ndarray:
    """Coefficients of ``c`` as a 1-D complex128 array.

    Accepts Polynomial, TaylorCoefficients, or any 1-D sequence.
    """
    if isinstance(c, Polynomial):
        return c.coeffs
    if isinstance(c, TaylorCoefficients):
        return c.c
    arr = np.asarray(c, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("expected a 1-D coefficient sequence")
    return arr


class Polynomial:
    """A polynomial in the monomial basis with an explicit formal degree.

    ``coeffs[j]`` holds the coefficient of ``z**j``; the formal degree is
    ``len(coeffs) - 1`` and trailing zeros are kept.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeff_array(coeffs), dtype=np.complex128, copy=True)
        if arr.size == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        self._coeffs = _readonly(arr)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def formal_degree(self) -> int:
        return self._coeffs.size - 1

    @property
    def exact_degree(self) -> int:
        """Largest j with coeffs[j] != 0 exactly; -1 for the zero polynomial."""
        nz = np.nonzero(self._coeffs)[0]
        return int(nz[-1]) if nz.size else -1

    def is_zero(self) -> bool:
        return self.exact_degree < 0

    def __call__(self, z):
        return eval_poly(self, z)

    def derivative(self) -> "Polynomial":
        if self.formal_degree == 0:
            return Polynomial([0.0])
        c = self._coeffs
        return Polynomial(c[1:] * np.arange(1, c.size))

    def padded(self, formal_degree: int) -> "Polynomial":
        """Zero-pad up to a higher formal degree."""
        if formal_degree < self.formal_degree:
            raise ValueError("cannot pad to a lower formal degree")
        out = np.zeros(formal_degree + 1, dtype=np.complex128)
        out[: self._coeffs.size] = self._coeffs
        return Polynomial(out)

    def trimmed(self, tol: float = 0.0) -> "Polynomial":
        """Drop trailing coefficients with modulus <= tol (at least one kept)."""
        mags = np.abs(self._coeffs)
        nz = np.nonzero(mags > tol)[0]
        deg = int(nz[-1]) if nz.size else 0
        return Polynomial(self._coeffs[: deg + 1])

    def __repr__(self):
        return f"Polynomial(degree={self.formal_degree}, coeffs={np.array2string(self._coeffs, precision=4)})"


class RationalFunction:
    """A rational function p/q with fixed formal degrees (m, n)."""

    __slots__ = ("_p", "_q")

    def __init__(self, p, q):
        self._p = p if isinstance(p, Polynomial) else Polynomial(p)
        self._q = q if isinstance(q, Polynomial) else Polynomial(q)
        if self._q.is_zero():
            raise ValueError("denominator is identically zero")

    @property
    def p(self) -> Polynomial:
        return self._p

    @property
    def q(self) -> Polynomial:
        return self._q

    @property
    def m(self) -> int:
        return self._p.formal_degree

    @property
    def n(self) -> int:
        return self._q.formal_degree

    def stacked(self) -> np.ndarray:
        """The stacked coefficient vector [vec(p); vec(q)], not normalized."""
        return np.concatenate([self._p.coeffs, self._q.coeffs])

    def padded(self, m: int, n: int) -> "RationalFunction":
        return RationalFunction(self._p.padded(m), self._q.padded(n))

    def __call__(self, z):
        return eval_rational(self, z)

    def __repr__(self):
        return f"RationalFunction(m={self.m}, n={self.n})"


class CoefficientVector:
    """Stacked coefficients (p_0..p_m, q_0..q_n) of a rational function.

    When produced by the Pade map the vector has unit Euclidean norm and the
    phase is fixed so that q_0 is real positive.  ``phase_index`` records
    which q entry anchored the phase; it is 0 except when q_0 vanished
    exactly, in which case the largest-modulus q entry was used instead.
    """

    __slots__ = ("_entries", "_m", "_n", "_phase_index")

    def __init__(self, entries, m: int, n: int, phase_index: int = 0):
        arr = np.array(np.asarray(entries, dtype=np.complex128), copy=True)
        if arr.ndim != 1 or arr.size != m + n + 2:
            raise ValueError(f"expected {m + n + 2} stacked entries, got {arr.size}")
        self._entries = _readonly(arr)
        self._m = int(m)
        self._n = int(n)
        self._phase_index = int(phase_index)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def phase_index(self) -> int:
        return self._phase_index

    @property
    def p_vec(self) -> np.ndarray:
        return self._entries[: self._m + 1]

    @property
    def q_vec(self) -> np.ndarray:
        return self._entries[self._m + 1 :]

    def norm(self) -> float:
        return float(np.linalg.norm(self._entries))

    def to_rational(self) -> RationalFunction:
        return RationalFunction(Polynomial(self.p_vec), Polynomial(self.q_vec))

    def __repr__(self):
        return f"CoefficientVector(m={self._m}, n={self._n}, norm={self.norm():.3g})"


class TaylorCoefficients:
    """A (scaled) Taylor coefficient sequence c_0, c_1, ...

    ``scale_a`` and ``scale_b`` record the substitution a*f(b*z) that produced
    these coefficients from the raw input; after the standard scaling the
    first m+n+1 entries have unit Euclidean norm.
    """

    __slots__ = ("_c", "_scale_a", "_scale_b")

    def __init__(self, c, scale_a=1.0, scale_b=1.0):
        arr = np.array(np.asarray(c, dtype=np.complex128), copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("expected a nonempty 1-D coefficient sequence")
        self._c = _readonly(arr)
        self._scale_a = complex(scale_a)
        self._scale_b = complex(scale_b)

    @property
    def c(self) -> np.ndarray:
        return self._c

    @property
    def scale_a(self) -> complex:
        return self._scale_a

    @property
    def scale_b(self) -> complex:
        return self._scale_b

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f"TaylorCoefficients(len={self._c.size}, a={self._scale_a:.3g}, b={self._scale_b:.3g})"


def eval_poly(p, z):
    """Evaluate a polynomial by Horner's scheme.

    ``z`` may be a scalar or an ndarray; scalars come back as Python complex.
    """
    c = coeff_array(p)
    acc = c[-1] * (np.zeros_like(z) + 1.0) if isinstance(z, np.ndarray) else c[-1]
    for k in range(c.size - 2, -1, -1):
        acc = acc * z + c[k]
    if isinstance(z, np.ndarray):
        return acc
    return complex(acc)


def eval_rational(r: RationalFunction, z):
    """Evaluate p(z)/q(z) at a scalar point on the Riemann sphere.

    Returns POINT_AT_INFINITY at a pole (q(z)=0, p(z)!=0) and INDETERMINATE
    when numerator and denominator both vanish.
    """
    pv = eval_poly(r.p, z)
    qv = eval_poly(r.q, z)
    if qv == 0:
        return INDETERMINATE if pv == 0 else POINT_AT_INFINITY
    return pv / qv


def taylor_of_rational(r: RationalFunction, count: int) -> np.ndarray:
    """First ``count`` Taylor coefficients of p/q at the origin.

    Uses the triangular recurrence
    ``c_k = (p_k - sum_{j=1..min(k,n)} q_j c_{k-j}) / q_0``,
    i.e. the local inverse of the Pade map for denominators with q(0) != 0.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    p = r.p.coeffs
    q = r.q.coeffs
    if q[0] == 0:
        raise PoleAtOriginError("pole at origin: q(0) = 0 has no Taylor expansion there")
    n = r.n
    out = np.zeros(count, dtype=np.complex128)
    for k in range(count):
        acc = p[k] if k <= r.m else 0.0 + 0.0j
        for j in range(1, min(k, n) + 1):
            acc -= q[j] * out[k - j]
        out[k] = acc / q[0]
    return out
