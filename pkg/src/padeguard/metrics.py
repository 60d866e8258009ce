"""Chordal metric on the Riemann sphere, its sampled uniform version over the
closed unit disk, the phase-optimal coefficient distance, and the spherical
derivative."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .polyrat import INDETERMINATE, POINT_AT_INFINITY, RationalFunction, eval_poly

__all__ = [
    "DiskSampling",
    "chordal",
    "chordal_metric_disk",
    "coefficient_distance",
    "spherical_derivative",
]


@dataclass(frozen=True)
class DiskSampling:
    """Deterministic sample set on the closed unit disk.

    The points consist of z = 0, all order-th roots of unity (the critical
    set of the distance-equivalence proof), ``boundary_count`` equispaced
    points on |z| = 1, and ``interior_rings`` rings of ``ring_count`` points
    at radii i / (interior_rings + 1).  Sampling is boundary-heavy because
    the numerator of the squared pointwise chordal distance obeys the
    maximum principle.
    """

    boundary_count: int = 512
    interior_rings: int = 32
    ring_count: int = 128

    def points(self, order: int) -> np.ndarray:
        """All sample points; ``order`` is m+n+1 of the pair under study."""
        if order < 1:
            raise ValueError("order must be >= 1")
        chunks = [np.zeros(1, dtype=np.complex128)]
        chunks.append(np.exp(2j * np.pi * np.arange(order) / order))
        if self.boundary_count > 0:
            chunks.append(np.exp(2j * np.pi * np.arange(self.boundary_count) / self.boundary_count))
        if self.interior_rings > 0 and self.ring_count > 0:
            angles = np.exp(2j * np.pi * np.arange(self.ring_count) / self.ring_count)
            for i in range(1, self.interior_rings + 1):
                chunks.append((i / (self.interior_rings + 1)) * angles)
        return np.concatenate(chunks)

    def total_points(self, order: int) -> int:
        return 1 + order + self.boundary_count + self.interior_rings * self.ring_count


def chordal(a, b) -> float:
    """chi(a, b) = |a - b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)), extended by
    continuity to the point at infinity: chi(a, inf) = 1/sqrt(1+|a|^2)."""
    a_inf = a is POINT_AT_INFINITY
    b_inf = b is POINT_AT_INFINITY
    if a is INDETERMINATE or b is INDETERMINATE:
        raise ValueError("chordal distance of an indeterminate value")
    if a_inf and b_inf:
        return 0.0
    if a_inf or b_inf:
        w = complex(b if a_inf else a)
        return 1.0 / math.hypot(1.0, abs(w))
    a = complex(a)
    b = complex(b)
    return abs(a - b) / (math.hypot(1.0, abs(a)) * math.hypot(1.0, abs(b)))


def chordal_metric_disk(r: RationalFunction, rt: RationalFunction, sampling: DiskSampling | None = None) -> float:
    """Sampled uniform chordal distance max_z chi(r(z), rt(z)) over the
    closed unit disk.

    This is a lower bound on the true maximum whose quality is set by the
    sampling descriptor; indeterminate sample points are skipped.
    """
    if sampling is None:
        sampling = DiskSampling()
    order = max(r.m + r.n, rt.m + rt.n) + 1
    pts = sampling.points(order)
    vals = _kernels.chordal_values(r.p.coeffs, r.q.coeffs, rt.p.coeffs, rt.q.coeffs, pts)
    if np.all(np.isnan(vals)):
        return 0.0
    return float(np.nanmax(vals))


def coefficient_distance(r: RationalFunction, rt: RationalFunction) -> float:
    """d(r, rt) = min over unit phases a of ||x(r) - a x(rt)||.

    The stacked coefficient vectors are zero-padded to the common formal
    degrees (max m, max n), then normalized to unit norm; the optimal phase
    is x(rt)^* x(r) / |x(rt)^* x(r)|, and orthogonal vectors are at
    distance sqrt(2).
    """
    m = max(r.m, rt.m)
    n = max(r.n, rt.n)
    x = r.padded(m, n).stacked()
    y = rt.padded(m, n).stacked()
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    inner = np.vdot(y, x)  # = x(rt)^* x(r)
    if abs(inner) == 0.0:
        return math.sqrt(2.0)
    a = inner / abs(inner)
    return float(np.linalg.norm(x - a * y))


def spherical_derivative(r: RationalFunction, z) -> float:
    """r#(z) = |r'(z)| / (1 + |r(z)|^2), evaluated in the homogeneous form
    |p'(z) q(z) - q'(z) p(z)| / (|p(z)|^2 + |q(z)|^2), which is invariant
    under joint scaling of (p, q) and extends continuously through poles."""
    pv = eval_poly(r.p, z)
    qv = eval_poly(r.q, z)
    den = abs(pv) ** 2 + abs(qv) ** 2
    if den == 0.0:
        raise ValueError("indeterminate point: p(z) = q(z) = 0")
    pd = eval_poly(r.p.derivative(), z)
    qd = eval_poly(r.q.derivative(), z)
    return abs(pd * qv - qd * pv) / den
