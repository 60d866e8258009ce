"""Pole/zero extraction, the Froissart and Residual quantities, certified
lower bounds against spurious poles, neighborhood conditioning, and the
convergence obstructions.

Certified bounds (for a nondegenerate r = p/q with S = S(q, -p)):

    zero-pole gap in the closed disk  >=  1 / (3 sqrt(2) (m+n+1)^{3/2} kappa(S))
    simple-pole residual modulus      >=  1 / ((2 (m+n+1))^{3/2} kappa(S))

The first holds for any meromorphic r~ with chi_D(r, r~) <= 1/3, the second
for r~ in R_{m,n} under 2 (m+n+1)^2 kappa(S)^2 chi_D <= 1/3, or under the
weaker coefficient-distance hypothesis sqrt(2(m+n+1)) d(r, r~) kappa(S) <= 1/3.
Unsatisfied hypotheses yield an inconclusive certificate, never a false
positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ngcd
from .metrics import DiskSampling, chordal_metric_disk, coefficient_distance
from .numerics import RankDeficientError, cond, poly_roots
from .polyrat import Polynomial, RationalFunction, eval_poly
from .structmat import build_S, build_square_sylvester
from . import _kernels

__all__ = [
    "ROOT_MATCH_TOL",
    "COEFF_ZERO_TOL",
    "SpuriousReport",
    "Certificate",
    "NeighborhoodReport",
    "ObstructionMargins",
    "numerical_degree",
    "is_numerically_degenerate",
    "kappa_S",
    "spurious_report",
    "certify_froissart",
    "certify_residuals",
    "neighborhood_conditioning",
    "convergence_obstruction",
]

# Numerical degeneracy thresholds: a zero/pole pair counts as a common root
# below 1e-8 relative (double-precision SVD accuracy), and a leading
# coefficient counts as zero below 1e-12 (coefficient vectors are unit norm).
ROOT_MATCH_TOL = 1e-8
COEFF_ZERO_TOL = 1e-12

_DISK_TOL = 1e-12
_OPEN_DISK_TOL = 1e-8
_SIMPLE_POLE_SEP = 1e-8
_SIMPLE_POLE_DERIV = 1e-12


def numerical_degree(p, tol: float = COEFF_ZERO_TOL) -> int:
    """Largest j with |coeffs[j]| > tol; -1 when all are below."""
    c = p.coeffs if isinstance(p, Polynomial) else np.asarray(p, dtype=np.complex128)
    idx = np.nonzero(np.abs(c) > tol)[0]
    return int(idx[-1]) if idx.size else -1


def _roots_numerical(p: Polynomial, tol: float) -> np.ndarray:
    deg = numerical_degree(p, tol)
    if deg <= 0:
        return np.empty(0, dtype=np.complex128)
    return poly_roots(Polynomial(p.coeffs[: deg + 1]))


def is_numerically_degenerate(
    r: RationalFunction,
    root_tol: float = ROOT_MATCH_TOL,
    coeff_tol: float = COEFF_ZERO_TOL,
):
    """(degenerate, defect) for r = p/q with the thresholded definitions.

    The defect is min{m - deg p, n - deg q} with degrees read at coeff_tol;
    degeneracy means positive defect or a numerically common root (some pair
    of zero sigma and pole tau with |sigma - tau| < root_tol * max(1, |sigma|)).
    """
    defect = min(r.m - numerical_degree(r.p, coeff_tol), r.n - numerical_degree(r.q, coeff_tol))
    if defect > 0:
        return True, defect
    zeros = _roots_numerical(r.p, coeff_tol)
    poles = _roots_numerical(r.q, coeff_tol)
    if zeros.size and poles.size:
        gaps = np.abs(zeros[:, None] - poles[None, :])
        limits = root_tol * np.maximum(1.0, np.abs(zeros))[:, None]
        if np.any(gaps < limits):
            return True, defect
    return False, defect


def kappa_S(r: RationalFunction) -> float:
    """kappa of the Sylvester-like matrix S(q, -p); +inf when rank deficient."""
    try:
        return cond(build_S(r.p, r.q))
    except RankDeficientError:
        return math.inf


@dataclass(frozen=True)
class SpuriousReport:
    """Zeros, poles, the Froissart/Residual minima, and the certified bounds.

    The primary froissart/min_residual fields use the closed disk |tau| <= 1;
    the *_open variants restrict to |tau| < 1 - 1e-8 (the rounding-robust
    open-disk convention).  Residual minima skip non-simple poles, which are
    flagged through has_multiple_pole.
    """

    zeros: np.ndarray
    poles: np.ndarray
    froissart: float
    min_residual: float
    froissart_open: float
    min_residual_open: float
    bound_froissart: float
    bound_residual: float
    certified_froissart: bool
    certified_residual: bool
    n_poles_closed: int
    n_poles_open: int
    has_multiple_pole: bool


def _froissart_quantities(r: RationalFunction):
    """zeros, poles, and the two minima over closed/open-disk poles."""
    zeros = poly_roots(r.p) if not r.p.is_zero() else np.empty(0, dtype=np.complex128)
    poles = poly_roots(r.q)
    qd = r.q.derivative()

    in_closed = np.abs(poles) <= 1.0 + _DISK_TOL
    in_open = np.abs(poles) < 1.0 - _OPEN_DISK_TOL

    froissart = froissart_open = math.inf
    if zeros.size:
        for flag, tau in zip(in_closed, poles):
            if not flag:
                continue
            gap = float(np.min(np.abs(zeros - tau)))
            froissart = min(froissart, gap)
        for flag, tau in zip(in_open, poles):
            if not flag:
                continue
            gap = float(np.min(np.abs(zeros - tau)))
            froissart_open = min(froissart_open, gap)

    min_res = min_res_open = math.inf
    has_multiple = False
    for k, tau in enumerate(poles):
        if not in_closed[k]:
            continue
        others = np.delete(poles, k)
        sep = float(np.min(np.abs(others - tau))) if others.size else math.inf
        dq = eval_poly(qd, tau)
        if sep <= _SIMPLE_POLE_SEP or abs(dq) <= _SIMPLE_POLE_DERIV:
            has_multiple = True
            continue
        res = abs(eval_poly(r.p, tau) / dq)
        min_res = min(min_res, res)
        if in_open[k]:
            min_res_open = min(min_res_open, res)
    return zeros, poles, froissart, froissart_open, min_res, min_res_open, in_closed, in_open, has_multiple


def froissart_bound(m: int, n: int, kappa_s: float) -> float:
    return 1.0 / (3.0 * math.sqrt(2.0) * (m + n + 1) ** 1.5 * kappa_s)


def residual_bound(m: int, n: int, kappa_s: float) -> float:
    return 1.0 / ((2.0 * (m + n + 1)) ** 1.5 * kappa_s)


def spurious_report(r: RationalFunction, S_cond: float) -> SpuriousReport:
    """Roots, the Froissart/Residual minima, and the Theorem-level bounds
    evaluated with the supplied kappa(S)."""
    (zeros, poles, froi, froi_open, res, res_open,
     in_closed, in_open, has_multiple) = _froissart_quantities(r)
    bf = froissart_bound(r.m, r.n, S_cond) if math.isfinite(S_cond) else 0.0
    br = residual_bound(r.m, r.n, S_cond) if math.isfinite(S_cond) else 0.0
    return SpuriousReport(
        zeros=zeros,
        poles=poles,
        froissart=froi,
        min_residual=res,
        froissart_open=froi_open,
        min_residual_open=res_open,
        bound_froissart=bf,
        bound_residual=br,
        certified_froissart=froi >= bf,
        certified_residual=res >= br,
        n_poles_closed=int(np.count_nonzero(in_closed)),
        n_poles_open=int(np.count_nonzero(in_open)),
        has_multiple_pole=has_multiple,
    )


@dataclass(frozen=True)
class Certificate:
    """Outcome of one certified lower bound.

    status is "certified" when the hypothesis holds and the observed value
    clears the bound, "violated" if it does not (which for correct inputs
    indicates an implementation or root-accuracy failure, since the bounds
    are proved), and "inconclusive" when the hypothesis fails or kappa(S)
    is infinite.
    """

    status: str
    bound: float
    observed: float
    hypothesis_value: float
    hypothesis_limit: float
    kappa_s: float
    alternative_hypothesis_value: float | None = None

    @property
    def active(self) -> bool:
        return self.status != "inconclusive"


def certify_froissart(r: RationalFunction, r_tilde: RationalFunction | None = None, chi: float = 0.0) -> Certificate:
    """Certify the zero-pole gap of r_tilde (default: of r itself, chi = 0).

    Active when chi <= 1/3 and r is nondegenerate with finite kappa(S); then
    every zero-pole pair of r_tilde with the pole in the closed disk must be
    separated by at least 1/(3 sqrt(2) (m+n+1)^{3/2} kappa(S)).
    """
    target = r if r_tilde is None else r_tilde
    ks = kappa_S(r)
    degenerate, _ = is_numerically_degenerate(r)
    if degenerate or not math.isfinite(ks) or chi > 1.0 / 3.0:
        return Certificate("inconclusive", math.nan, math.nan, chi, 1.0 / 3.0, ks)
    bound = froissart_bound(r.m, r.n, ks)
    observed = _froissart_quantities(target)[2]
    status = "certified" if observed >= bound else "violated"
    return Certificate(status, bound, observed, chi, 1.0 / 3.0, ks)


def certify_residuals(r: RationalFunction, r_tilde: RationalFunction | None = None, chi: float = 0.0) -> Certificate:
    """Certify the simple-pole residual moduli of r_tilde in the closed disk.

    Triggers under 2 (m+n+1)^2 kappa(S)^2 chi <= 1/3 or under the weaker
    coefficient-distance hypothesis sqrt(2(m+n+1)) d(r, r_tilde) kappa(S) <= 1/3;
    the bound is 1/((2(m+n+1))^{3/2} kappa(S)).
    """
    target = r if r_tilde is None else r_tilde
    ks = kappa_S(r)
    degenerate, _ = is_numerically_degenerate(r)
    mn1 = r.m + r.n + 1
    hyp_chi = 2.0 * mn1**2 * ks**2 * chi if math.isfinite(ks) else math.inf
    d = coefficient_distance(r, target)
    hyp_d = math.sqrt(2.0 * mn1) * d * ks if math.isfinite(ks) else math.inf
    if degenerate or not math.isfinite(ks) or (hyp_chi > 1.0 / 3.0 and hyp_d > 1.0 / 3.0):
        return Certificate("inconclusive", math.nan, math.nan, hyp_chi, 1.0 / 3.0, ks, hyp_d)
    bound = residual_bound(r.m, r.n, ks)
    observed = _froissart_quantities(target)[4]
    status = "certified" if observed >= bound else "violated"
    return Certificate(status, bound, observed, hyp_chi, 1.0 / 3.0, ks, hyp_d)


@dataclass(frozen=True)
class NeighborhoodReport:
    """Lemma-style neighborhood conditioning of a perturbed rational function.

    When sqrt(2(m+n+1)) d(r, r~) kappa(S) <= 1/3 the perturbed function is
    guaranteed nondegenerate with kappa(S~) <= 2 kappa(S); if r~ is
    numerically degenerate the same expression must be >= 1 (contrapositive).
    """

    d: float
    kappa_s: float
    kappa_s_tilde: float
    hypothesis_value: float
    hypothesis_ok: bool
    guarantee_ok: bool | None
    tilde_degenerate: bool
    contrapositive_margin: float | None


def neighborhood_conditioning(r: RationalFunction, rt: RationalFunction) -> NeighborhoodReport:
    if rt.m > r.m or rt.n > r.n:
        raise ValueError("r_tilde must live in the same R_{m,n} (pad r_tilde, not r)")
    rt = rt.padded(r.m, r.n)
    d = coefficient_distance(r, rt)
    ks = kappa_S(r)
    kst = kappa_S(rt)
    hyp = math.sqrt(2.0 * (r.m + r.n + 1)) * d * ks
    hyp_ok = hyp <= 1.0 / 3.0
    degenerate_t, _ = is_numerically_degenerate(rt)
    guarantee = (kst <= 2.0 * ks) if hyp_ok else None
    contr = (hyp - 1.0) if degenerate_t else None
    return NeighborhoodReport(
        d=d,
        kappa_s=ks,
        kappa_s_tilde=kst,
        hypothesis_value=hyp,
        hypothesis_ok=hyp_ok,
        guarantee_ok=guarantee,
        tilde_degenerate=degenerate_t,
        contrapositive_margin=contr,
    )


@dataclass(frozen=True)
class ObstructionMargins:
    """Left-minus-right margins of the convergence obstructions.

    theorem4_margin = 2 chi_hat kappa(S)^2 - (m+n+1)^{-2} applies to any
    r~ one degree down; the corollary and pointwise margins are only
    meaningful for Pade approximant pairs of the same series and use
    kappa = min{2 (m+n+1)^{3/2} kappa(S_sq), (m+n+1)^2 kappa_BL}.
    """

    chi_hat: float
    kappa_s: float
    theorem4_margin: float
    kappa_s_square: float | None = None
    kappa_bl: float | None = None
    corollary1_margin: float | None = None
    lemma6_min_margin: float | None = None


def convergence_obstruction(
    r: RationalFunction,
    rt: RationalFunction,
    sampling: DiskSampling | None = None,
    pade_pair: bool = False,
) -> ObstructionMargins:
    """Spot-check the convergence obstructions for r in R_{m,n} against an
    r_tilde in R_{m-1,n-1} (set pade_pair=True only when both are Pade
    approximants of the same series)."""
    if sampling is None:
        sampling = DiskSampling()
    m, n = r.m, r.n
    chi_hat = chordal_metric_disk(r, rt, sampling)
    ks = kappa_S(r)
    t4 = 2.0 * chi_hat * ks**2 - 1.0 / (m + n + 1) ** 2
    if not pade_pair:
        return ObstructionMargins(chi_hat=chi_hat, kappa_s=ks, theorem4_margin=t4)

    ssq = build_square_sylvester(r.p, r.q)
    try:
        kssq = cond(ssq)
    except RankDeficientError:
        kssq = math.inf
    kbl = ngcd.kappa_BL(ssq)
    cor1 = 2.0 * (m + n + 1) ** 1.5 * kssq * chi_hat - 1.0
    kappa = min(2.0 * (m + n + 1) ** 1.5 * kssq, (m + n + 1) ** 2 * kbl)
    pts = sampling.points(m + n + 1)
    chi_vals = _kernels.chordal_values(r.p.coeffs, r.q.coeffs, rt.p.coeffs, rt.q.coeffs, pts)
    rhs = np.abs(pts) ** (m + n - 1)
    mask = ~np.isnan(chi_vals)
    lemma6 = float(np.min(kappa * chi_vals[mask] - rhs[mask])) if np.any(mask) else math.inf
    return ObstructionMargins(
        chi_hat=chi_hat,
        kappa_s=ks,
        theorem4_margin=t4,
        kappa_s_square=kssq,
        kappa_bl=kbl,
        corollary1_margin=cor1,
        lemma6_min_margin=lemma6,
    )
