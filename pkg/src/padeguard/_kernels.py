"""Hot evaluation kernels: many-point Horner, the numerical-GCD objective,
and pointwise chordal values.

Each kernel has a numba @njit fast path and a vectorized pure-numpy fallback.
The backend is chosen once at import time from the environment variable
PADE_GUARD_BACKEND: "auto" (default) takes numba when it imports, "numba"
requires it, "numpy" forces the fallback.  benchmarks/bench_kernels.py times
the two paths against each other.
"""

import os

import numpy as np

__all__ = [
    "HAS_NUMBA",
    "active_backend",
    "polyval_points",
    "eps_objective_values",
    "chordal_values",
]

_CHUNK = 1 << 18

# Switch point for the stabilized geometric sum 1 + t + ... + t^m: below this
# distance from t=1 the closed form loses too many digits to cancellation.
_GEOM_SWITCH = 1e-6


# -- pure numpy fallbacks ---------------------------------------------------

def _np_polyval(c, z):
    acc = np.full(z.shape, c[-1], dtype=np.complex128)
    for k in range(c.size - 2, -1, -1):
        acc *= z
        acc += c[k]
    return acc


def _np_geom_sum(t, m):
    # sum_{j=0}^{m} t**j for t >= 0, second-order expansion near t = 1
    h = t - 1.0
    near = np.abs(h) < _GEOM_SWITCH
    tt = np.where(near, 2.0, t)
    direct = (tt ** (m + 1) - 1.0) / (tt - 1.0)
    series = (m + 1.0) + h * (m * (m + 1.0) / 2.0) + h * h * ((m - 1.0) * m * (m + 1.0) / 6.0)
    return np.where(near, series, direct)


def _np_eps_objective(p, q, z):
    m = p.size - 1
    n = q.size - 1
    out = np.empty(z.size, dtype=np.float64)
    for s in range(0, z.size, _CHUNK):
        zz = z[s : s + _CHUNK]
        pv = _np_polyval(p, zz)
        qv = _np_polyval(q, zz)
        t = zz.real * zz.real + zz.imag * zz.imag
        sm = _np_geom_sum(t, m)
        sn = _np_geom_sum(t, n)
        out[s : s + zz.size] = np.sqrt(
            (pv.real * pv.real + pv.imag * pv.imag) / sm
            + (qv.real * qv.real + qv.imag * qv.imag) / sn
        )
    return out


def _np_chordal(pa, qa, pb, qb, z):
    out = np.empty(z.size, dtype=np.float64)
    for s in range(0, z.size, _CHUNK):
        zz = z[s : s + _CHUNK]
        va = _np_polyval(pa, zz)
        wa = _np_polyval(qa, zz)
        vb = _np_polyval(pb, zz)
        wb = _np_polyval(qb, zz)
        da = va.real * va.real + va.imag * va.imag + wa.real * wa.real + wa.imag * wa.imag
        db = vb.real * vb.real + vb.imag * vb.imag + wb.real * wb.real + wb.imag * wb.imag
        num = np.abs(va * wb - vb * wa)
        with np.errstate(invalid="ignore", divide="ignore"):
            val = num / np.sqrt(da * db)
        val[(da == 0.0) | (db == 0.0)] = np.nan
        out[s : s + zz.size] = val
    return out


# -- numba fast paths --------------------------------------------------------

_env = os.environ.get("PADE_GUARD_BACKEND", "auto").lower()
if _env not in ("auto", "numba", "numpy"):
    raise ValueError(f"PADE_GUARD_BACKEND must be auto|numba|numpy, got {_env!r}")

HAS_NUMBA = False
if _env != "numpy":
    try:
        import numba

        HAS_NUMBA = True
    except ImportError:
        if _env == "numba":
            raise


if HAS_NUMBA:

    @numba.njit(cache=True)
    def _nb_polyval(c, z):
        out = np.empty(z.size, dtype=np.complex128)
        last = c.size - 1
        for i in range(z.size):
            acc = c[last]
            for k in range(last - 1, -1, -1):
                acc = acc * z[i] + c[k]
            out[i] = acc
        return out

    @numba.njit(cache=True)
    def _nb_eps_objective(p, q, z):
        m = p.size - 1
        n = q.size - 1
        out = np.empty(z.size, dtype=np.float64)
        for i in range(z.size):
            zi = z[i]
            pv = p[m]
            for k in range(m - 1, -1, -1):
                pv = pv * zi + p[k]
            qv = q[n]
            for k in range(n - 1, -1, -1):
                qv = qv * zi + q[k]
            t = zi.real * zi.real + zi.imag * zi.imag
            h = t - 1.0
            if abs(h) < _GEOM_SWITCH:
                sm = (m + 1.0) + h * (m * (m + 1.0) / 2.0) + h * h * ((m - 1.0) * m * (m + 1.0) / 6.0)
                sn = (n + 1.0) + h * (n * (n + 1.0) / 2.0) + h * h * ((n - 1.0) * n * (n + 1.0) / 6.0)
            else:
                sm = (t ** (m + 1) - 1.0) / (t - 1.0)
                sn = (t ** (n + 1) - 1.0) / (t - 1.0)
            ap = pv.real * pv.real + pv.imag * pv.imag
            aq = qv.real * qv.real + qv.imag * qv.imag
            out[i] = np.sqrt(ap / sm + aq / sn)
        return out

    @numba.njit(cache=True)
    def _nb_chordal(pa, qa, pb, qb, z):
        out = np.empty(z.size, dtype=np.float64)
        for i in range(z.size):
            zi = z[i]
            va = pa[pa.size - 1]
            for k in range(pa.size - 2, -1, -1):
                va = va * zi + pa[k]
            wa = qa[qa.size - 1]
            for k in range(qa.size - 2, -1, -1):
                wa = wa * zi + qa[k]
            vb = pb[pb.size - 1]
            for k in range(pb.size - 2, -1, -1):
                vb = vb * zi + pb[k]
            wb = qb[qb.size - 1]
            for k in range(qb.size - 2, -1, -1):
                wb = wb * zi + qb[k]
            da = va.real * va.real + va.imag * va.imag + wa.real * wa.real + wa.imag * wa.imag
            db = vb.real * vb.real + vb.imag * vb.imag + wb.real * wb.real + wb.imag * wb.imag
            if da == 0.0 or db == 0.0:
                out[i] = np.nan
            else:
                d = va * wb - vb * wa
                out[i] = np.sqrt((d.real * d.real + d.imag * d.imag) / (da * db))
        return out


def active_backend() -> str:
    """Which kernel path is in use: 'numba' or 'numpy'."""
    return "numba" if HAS_NUMBA else "numpy"


def _as_c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def polyval_points(coeffs, points) -> np.ndarray:
    """Horner evaluation of one polynomial at many points."""
    c = _as_c128(coeffs)
    z = _as_c128(points)
    if HAS_NUMBA:
        return _nb_polyval(c, z)
    return _np_polyval(c, z)


def eps_objective_values(p, q, points) -> np.ndarray:
    """The numerical-GCD objective
    sqrt(|p(z)|^2 / sum_{j<=m}|z|^{2j} + |q(z)|^2 / sum_{j<=n}|z|^{2j})
    at many points, with m, n the formal degrees of the coefficient arrays.
    """
    pc = _as_c128(p)
    qc = _as_c128(q)
    z = _as_c128(points)
    if HAS_NUMBA:
        return _nb_eps_objective(pc, qc, z)
    return _np_eps_objective(pc, qc, z)


def chordal_values(pa, qa, pb, qb, points) -> np.ndarray:
    """Pointwise chordal distance of two rational functions at many points.

    Computed in the homogeneous form |pa*qb - pb*qa| / (||(pa,qa)|| ||(pb,qb)||),
    which extends continuously through poles.  Sample points where either
    function is indeterminate (0/0) come back as NaN and should be skipped.
    """
    z = _as_c128(points)
    a, b, c, d = map(_as_c128, (pa, qa, pb, qb))
    if HAS_NUMBA:
        return _nb_chordal(a, b, c, d, z)
    return _np_chordal(a, b, c, d, z)
