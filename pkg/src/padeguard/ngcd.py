"""Numerical-GCD distance eps(p, q), the estimators kappa_BL and kappa_CM,
and the margin checks relating them.

The distance to the nearest degenerate coefficient pair has the closed form

    eps(p, q) = inf_z sqrt( |p(z)|^2 / sum_{j<=m} |z|^{2j}
                          + |q(z)|^2 / sum_{j<=n} |z|^{2j} ),

minimized over the Riemann sphere; the minimizer is the closest common root.
The quantity is normalization dependent: callers should pass a pair whose
stacked coefficient vector has unit norm.

The global minimization uses two charts (z, and w = 1/z with reversed
coefficient arrays, so the value at w = 0 is sqrt(|p_m|^2 + |q_n|^2)),
a coarse polar grid per chart, and Nelder-Mead refinement on the real 2-D
parametrization.  A brute-force grid oracle with pure grid-zoom refinement
ships alongside it for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from . import _kernels
from .numerics import RankDeficientError, poly_roots, singular_values
from .polyrat import POINT_AT_INFINITY, Polynomial, coeff_array
from .structmat import build_C, build_square_sylvester

__all__ = [
    "NgcdResult",
    "KappaCMResult",
    "Lemma5Margin",
    "LemmaCMReport",
    "epsilon_gcd",
    "epsilon_gcd_bruteforce",
    "kappa_BL",
    "kappa_CM",
    "ngcd_result",
    "verify_lemma_CM",
    "verify_ngcd_froissart",
]

_DISK_TOL = 1e-12


def _reversed_pair(p, q):
    # w^m p(1/w), w^n q(1/w): reverse the full formal-degree arrays
    return coeff_array(p)[::-1].copy(), coeff_array(q)[::-1].copy()


def _polar_grid(n_radial: int, n_angle: int, rmax: float) -> np.ndarray:
    radii = np.linspace(0.0, rmax, n_radial)
    angles = np.exp(2j * np.pi * np.arange(n_angle) / n_angle)
    return (radii[:, None] * angles[None, :]).ravel()


def _chart_min(p, q, grid):
    vals = _kernels.eps_objective_values(p, q, grid)
    k = int(np.argmin(vals))
    return float(vals[k]), complex(grid[k])


def _refine_nelder_mead(p, q, z0: complex):
    def fun(xy):
        pt = np.array([complex(xy[0], xy[1])])
        return float(_kernels.eps_objective_values(p, q, pt)[0])

    res = scipy.optimize.minimize(
        fun,
        np.array([z0.real, z0.imag]),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000, "maxfev": 4000},
    )
    return float(res.fun), complex(res.x[0], res.x[1])


def epsilon_gcd(p, q, n_radial: int = 200, n_angle: int = 200):
    """Globally minimize the numerical-GCD objective.

    Returns ``(value, argmin)`` where argmin is a complex number or
    POINT_AT_INFINITY.  Coarse polar grids on |z| <= 2 and on the reversed
    chart |w| <= 1 locate the basin; a Nelder-Mead simplex polishes the best
    candidate of each chart.
    """
    pc = coeff_array(p)
    qc = coeff_array(q)
    pr, qr = _reversed_pair(pc, qc)

    best_z = _chart_min(pc, qc, _polar_grid(n_radial, n_angle, 2.0))
    best_w = _chart_min(pr, qr, _polar_grid(n_radial, n_angle, 1.0))

    val_z, z_star = _refine_nelder_mead(pc, qc, best_z[1])
    if val_z > best_z[0]:
        val_z, z_star = best_z
    val_w, w_star = _refine_nelder_mead(pr, qr, best_w[1])
    if val_w > best_w[0]:
        val_w, w_star = best_w

    # Minimizers beyond |z| = 1e12 are reported as the infinity limit: the
    # simplex drifts arbitrarily far when the objective decays toward its
    # value at z = infinity (e.g. the planted-defect case, where it is 0).
    if val_z <= val_w:
        if abs(z_star) > 1e12:
            return val_z, POINT_AT_INFINITY
        return val_z, z_star
    aw = abs(w_star)
    if aw < 1e-12:
        return val_w, POINT_AT_INFINITY
    return val_w, 1.0 / w_star


def epsilon_gcd_bruteforce(p, q, n_radial: int = 2000, n_angle: int = 2000, zoom_rounds: int = 8):
    """Brute-force enumeration oracle for eps(p, q).

    Dense two-chart polar grids followed by repeated cartesian re-gridding
    around the incumbent (pure enumeration, no simplex), reaching roughly
    1e-10 accuracy.  Independent of the production optimizer by construction.
    """
    pc = coeff_array(p)
    qc = coeff_array(q)
    pr, qr = _reversed_pair(pc, qc)

    charts = {}
    charts["z"] = _chart_min(pc, qc, _polar_grid(n_radial, n_angle, 1.0))
    charts["w"] = _chart_min(pr, qr, _polar_grid(n_radial, n_angle, 1.0))

    h0 = 2.0 * max(1.0 / (n_radial - 1), 2.0 * np.pi / n_angle)
    best_val = math.inf
    for name, (val, z0) in charts.items():
        coeffs = (pc, qc) if name == "z" else (pr, qr)
        h = h0
        center = z0
        incumbent = val
        side = np.linspace(-1.0, 1.0, 41)
        for _ in range(zoom_rounds):
            box = center + (side[:, None] + 1j * side[None, :]).ravel() * h
            vals = _kernels.eps_objective_values(coeffs[0], coeffs[1], box)
            k = int(np.argmin(vals))
            if vals[k] < incumbent:
                incumbent = float(vals[k])
                center = complex(box[k])
            h *= 0.12
        best_val = min(best_val, incumbent)
    return best_val


def kappa_BL(square_sylvester) -> float:
    """max(||S_sq^-1 e_1||, ||S_sq^-1 e_{m+n}||); +inf when S_sq is singular."""
    mat = np.asarray(square_sylvester, dtype=np.complex128)
    k = mat.shape[0]
    e1 = np.zeros(k, dtype=np.complex128)
    e1[0] = 1.0
    ek = np.zeros(k, dtype=np.complex128)
    ek[-1] = 1.0
    try:
        x = np.linalg.solve(mat, e1)
        y = np.linalg.solve(mat, ek)
    except np.linalg.LinAlgError:
        return math.inf
    return float(max(np.linalg.norm(x), np.linalg.norm(y)))


@dataclass(frozen=True)
class KappaCMResult:
    """The Cabay-Meleshko look-ahead quantities for one (c, m, n)."""

    kappa_cm: float
    q0: complex | None
    e_tilde: complex | None
    q: np.ndarray | None
    q_tilde: np.ndarray | None


def kappa_CM(c, m: int, n: int) -> KappaCMResult:
    """kappa_CM = 1 / |q(0) e~| from the square Toeplitz solves.

    vec(q) = q(0) [1; -Cu^-1 cu] with both denominators normalized to unit
    norm and q(0) > 0; vec(q~) = x/||x|| with x = Cu^-1 e_n and e~ = 1/||x||,
    so that Cu vec(q~) = (0, ..., 0, e~)^t.  Singular Cu gives +inf.
    """
    if n < 1:
        raise ValueError("kappa_CM needs n >= 1")
    C = build_C(c, m, n)
    cu = C[:, 0]
    Cu = C[:, 1:]
    en = np.zeros(n, dtype=np.complex128)
    en[-1] = 1.0
    try:
        u = np.linalg.solve(Cu, cu)
        x = np.linalg.solve(Cu, en)
    except np.linalg.LinAlgError:
        return KappaCMResult(math.inf, None, None, None, None)
    vraw = np.concatenate([[1.0 + 0j], -u])
    q0 = 1.0 / np.linalg.norm(vraw)
    qvec = q0 * vraw
    xnorm = np.linalg.norm(x)
    if xnorm == 0.0:
        return KappaCMResult(math.inf, None, None, None, None)
    e_tilde = 1.0 / xnorm
    qtil = x / xnorm
    return KappaCMResult(
        kappa_cm=float(1.0 / abs(q0 * e_tilde)),
        q0=complex(q0),
        e_tilde=complex(e_tilde),
        q=qvec,
        q_tilde=qtil,
    )


@dataclass(frozen=True)
class NgcdResult:
    epsilon: float
    argmin_z: object
    kappa_BL: float
    kappa_CM: float
    e_tilde: complex | None
    q0: complex | None


def ngcd_result(p, q, c, m: int, n: int) -> NgcdResult:
    """Assemble the full numerical-GCD report for a jointly unit-normalized
    pair (p, q) and its scaled coefficient sequence."""
    eps, argmin = epsilon_gcd(p, q)
    if m + n >= 1:
        kbl = kappa_BL(build_square_sylvester(p, q))
    else:
        kbl = math.nan
    if n >= 1:
        cm = kappa_CM(c, m, n)
        kcm, et, q0 = cm.kappa_cm, cm.e_tilde, cm.q0
    else:
        kcm, et, q0 = math.nan, None, None
    return NgcdResult(epsilon=eps, argmin_z=argmin, kappa_BL=kbl, kappa_CM=kcm, e_tilde=et, q0=q0)


@dataclass(frozen=True)
class Lemma5Margin:
    """min{m,n} * |sigma - tau| - eps(p, q) over in-disk zero/pole pairs."""

    margin: float
    epsilon: float
    min_pair_gap: float
    pairs_checked: int


def verify_ngcd_froissart(p, q) -> Lemma5Margin:
    """Check eps(p, q) <= min{m, n} |sigma - tau| for every zero sigma of p
    and pole tau of q in the closed unit disk (vacuous pass when none).

    Callers must supply the proof's normalization ||vec(p)|| <= 1 and
    ||vec(q)|| <= 1.
    """
    pp = p if isinstance(p, Polynomial) else Polynomial(p)
    qq = q if isinstance(q, Polynomial) else Polynomial(q)
    eps, _ = epsilon_gcd(pp, qq)
    zeros = poly_roots(pp) if not pp.is_zero() else np.empty(0, complex)
    poles = poly_roots(qq)
    zeros = zeros[np.abs(zeros) <= 1.0 + _DISK_TOL]
    poles = poles[np.abs(poles) <= 1.0 + _DISK_TOL]
    if zeros.size == 0 or poles.size == 0:
        return Lemma5Margin(margin=math.inf, epsilon=eps, min_pair_gap=math.inf, pairs_checked=0)
    gaps = np.abs(zeros[:, None] - poles[None, :])
    gap = float(gaps.min())
    scale = min(pp.formal_degree, qq.formal_degree)
    return Lemma5Margin(
        margin=scale * gap - eps,
        epsilon=eps,
        min_pair_gap=gap,
        pairs_checked=zeros.size * poles.size,
    )


@dataclass(frozen=True)
class LemmaCMReport:
    """Margins for the four Cabay-Meleshko estimator relations.

    Parts (i)-(iii) are slacks that should be >= -1e-8; part (iv) is the
    ratio kappa_CM / ||S_sq^-1 e_{m+n}||, expected inside
    [1 / (2 + sqrt(m+n+2)), 2 + sqrt(m+n+2)] (a bracket derived from the
    equivalence chain ||x(r~)|| ~ 1, factor 1 + sqrt(m+n+2)).
    """

    margin_i: float
    margin_ii: float
    margin_iii: float
    ratio_iv: float | None
    bracket_lo: float | None
    bracket_hi: float | None
    margin_e_le_bl: float | None
    kappa_cm: float
    inv_C_norm: float
    sigma_n_C: float
    kappa_bl: float | None
    s_inv_e_norm: float | None
    x_tilde_norm: float | None
    equivalence_factor: float
    inconclusive: bool
    reason: str | None = None


def _inconclusive_cm(reason: str) -> LemmaCMReport:
    nanv = math.nan
    return LemmaCMReport(
        margin_i=nanv, margin_ii=nanv, margin_iii=nanv, ratio_iv=None,
        bracket_lo=None, bracket_hi=None, margin_e_le_bl=None, kappa_cm=nanv,
        inv_C_norm=nanv, sigma_n_C=nanv, kappa_bl=None, s_inv_e_norm=None,
        x_tilde_norm=None, equivalence_factor=nanv, inconclusive=True, reason=reason,
    )


def verify_lemma_CM(c, m: int, n: int) -> LemmaCMReport:
    """Evaluate the kappa_CM relations on a scaled coefficient sequence.

    Requires n >= 1 with nonsingular square Toeplitz block; part (iv)
    additionally needs m >= 1 and a nonsingular square Sylvester matrix of
    the degree-(m, n) pair (degenerate pairs come back inconclusive).
    """
    if n < 1:
        return _inconclusive_cm("n < 1")
    cc = coeff_array(c)
    C = build_C(cc, m, n)
    Cu = C[:, 1:]
    s_under = singular_values(Cu)
    if s_under[-1] == 0.0:
        return _inconclusive_cm("square Toeplitz block singular")
    inv_C_norm = float(1.0 / s_under[-1])
    sigma_n_C = float(singular_values(C)[-1])
    cm = kappa_CM(cc, m, n)
    if not math.isfinite(cm.kappa_cm):
        return _inconclusive_cm("kappa_CM infinite")

    kcm = cm.kappa_cm
    margin_i = kcm - inv_C_norm / n
    margin_ii = math.sqrt(n) * inv_C_norm**2 - kcm
    margin_iii = sigma_n_C - 1.0 / (n * kcm)
    factor = 1.0 + math.sqrt(m + n + 2)

    ratio_iv = bracket_lo = bracket_hi = margin_e_le_bl = None
    kbl = s_inv_e = xt_norm = None
    if m >= 1:
        qvec = cm.q
        pvec = np.convolve(cc[: m + 1], qvec)[: m + 1]
        ptil = np.convolve(cc[:m], cm.q_tilde)[:m]
        xt_norm = float(np.linalg.norm(np.concatenate([ptil, cm.q_tilde])))
        ssq = build_square_sylvester(pvec, qvec)
        ek = np.zeros(m + n, dtype=np.complex128)
        ek[-1] = 1.0
        try:
            y = np.linalg.solve(ssq, ek)
        except np.linalg.LinAlgError:
            return _inconclusive_cm("square Sylvester matrix singular (degenerate pair)")
        s_inv_e = float(np.linalg.norm(y))
        kbl = kappa_BL(ssq)
        ratio_iv = kcm / s_inv_e
        bracket_lo = 1.0 / (2.0 + math.sqrt(m + n + 2))
        bracket_hi = 2.0 + math.sqrt(m + n + 2)
        margin_e_le_bl = kbl - s_inv_e

    return LemmaCMReport(
        margin_i=margin_i,
        margin_ii=margin_ii,
        margin_iii=margin_iii,
        ratio_iv=ratio_iv,
        bracket_lo=bracket_lo,
        bracket_hi=bracket_hi,
        margin_e_le_bl=margin_e_le_bl,
        kappa_cm=kcm,
        inv_C_norm=inv_C_norm,
        sigma_n_C=sigma_n_C,
        kappa_bl=kbl,
        s_inv_e_norm=s_inv_e,
        x_tilde_norm=xt_norm,
        equivalence_factor=factor,
        inconclusive=False,
    )
