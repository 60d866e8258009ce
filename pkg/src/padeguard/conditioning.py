"""Condition-number diagnostics of the real Pade map and the norm sandwich
checks relating C, T, Q, and S.

The forward condition number is ||T^dagger Q|| (the Jacobian norm of the map
from scaled coefficients to the normalized result vector) and the backward
one is ||Q^{-1} T||; both are computed from the explicitly formed products,
with T^dagger = T^* (T T^*)^{-1} and Q^{-1} applied by triangular solves.
The conditioning theory concerns the *real* Pade map; for complex data the
same numbers are reported and the real_map_theory flag is cleared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import RankDeficientError, cond, pinv_norm, singular_values, solve_lower_triangular, spectral_norm
from .pade import PadeResult
from .polyrat import TaylorCoefficients, coeff_array
from .structmat import build_C, build_Q, build_S, build_T

__all__ = [
    "Diagnostics",
    "SandwichEntry",
    "SandwichReport",
    "diagnostics",
    "verify_norm_sandwiches",
]

_INF = math.inf


@dataclass(frozen=True)
class Diagnostics:
    """Condition numbers, forward/backward norms, singular-value extremes,
    and rank-deficiency markers for one approximant."""

    kappa_C: float
    kappa_T: float
    kappa_Q: float
    kappa_S: float
    forward: float
    backward: float
    sigma: dict
    flags: tuple
    real_map_theory: bool


def _extremes(mat: np.ndarray):
    if mat.shape[0] == 0:
        return (0.0, 0.0)
    s = singular_values(mat)
    return (float(s[0]), float(s[-1]))


def _cond_or_inf(mat: np.ndarray, name: str, flags: list) -> float:
    try:
        return cond(mat)
    except RankDeficientError:
        flags.append(f"rank_deficient_{name}")
        return _INF


def diagnostics(c, res: PadeResult) -> Diagnostics:
    """Build C, T, Q, S for (c, res) and compute the six condition quantities.

    Degenerate results get kappa(S), kappa(Q) and the forward/backward
    numbers reported as +inf with flags set (the Jacobian of the Pade map
    does not exist at points of discontinuity); rank deficiencies are
    flagged, never thrown.
    """
    m, n = res.m, res.n
    flags: list = []
    C = build_C(c, m, n)
    T = build_T(c, m, n)
    Q = build_Q(res.r.q, m, n)
    S = build_S(res.r.p, res.r.q)

    sigma = {
        "C": _extremes(C),
        "T": _extremes(T),
        "Q": _extremes(Q),
        "S": _extremes(S),
    }

    kappa_c = _cond_or_inf(C, "C", flags)
    kappa_t = _cond_or_inf(T, "T", flags)

    if res.degenerate:
        flags.append("degenerate")
        kappa_q = kappa_s = forward = backward = _INF
    else:
        kappa_q = _cond_or_inf(Q, "Q", flags)
        kappa_s = _cond_or_inf(S, "S", flags)
        try:
            gram = T @ T.conj().T
            tdag_q = T.conj().T @ np.linalg.solve(gram, Q)
            forward = spectral_norm(tdag_q)
        except np.linalg.LinAlgError:
            flags.append("rank_deficient_T_gram")
            forward = _INF
        try:
            backward = spectral_norm(solve_lower_triangular(Q, T))
        except RankDeficientError:
            flags.append("singular_Q")
            backward = _INF

    cc = coeff_array(c)
    x = res.x.entries
    real_data = bool(np.all(cc[: m + n + 1].imag == 0) and np.all(np.abs(x.imag) < 1e-13))
    if not real_data:
        flags.append("real-map theory applies to real data only")

    return Diagnostics(
        kappa_C=kappa_c,
        kappa_T=kappa_t,
        kappa_Q=kappa_q,
        kappa_S=kappa_s,
        forward=forward,
        backward=backward,
        sigma=sigma,
        flags=tuple(flags),
        real_map_theory=real_data,
    )


@dataclass(frozen=True)
class SandwichEntry:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class SandwichReport:
    """Slacks (rhs - lhs) of the norm inequalities tying C, T, Q, S together.

    All slacks are >= 0 in exact arithmetic for a scaled input and a
    normalized nondegenerate result; tests allow -1e-10 for rounding.
    Entries involving C pseudoinverses are skipped for n = 0 (C is empty).
    """

    entries: tuple

    def min_slack(self) -> float:
        return min((e.slack for e in self.entries), default=math.inf)

    def by_name(self, name: str) -> SandwichEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def verify_norm_sandwiches(c, res: PadeResult) -> SandwichReport:
    """Evaluate the norm sandwiches for a nondegenerate result.

    Requires c scaled (unit-norm window) and res normalized; the bounds are

        max{1, ||C||} <= ||T|| <= sqrt(m+n+2)
        ||C+|| <= ||T+|| <= sqrt(2(m+n+2)) ||C+||
        ||Q|| <= sqrt(m+n+1),  1/sqrt(2) <= ||S|| <= sqrt(m+n+1)
        ||Q^-1|| <= ||T|| ||S+||,  ||T+|| <= ||Q|| ||S+||.
    """
    m, n = res.m, res.n
    C = build_C(c, m, n)
    T = build_T(c, m, n)
    Q = build_Q(res.r.q, m, n)
    S = build_S(res.r.p, res.r.q)

    norm_C = spectral_norm(C)
    norm_T = spectral_norm(T)
    norm_Q = spectral_norm(Q)
    norm_S = spectral_norm(S)
    pinv_T = pinv_norm(T)
    pinv_S = pinv_norm(S)
    inv_Q = 1.0 / float(singular_values(Q)[-1])

    entries = [
        SandwichEntry("max(1,||C||) <= ||T||", max(1.0, norm_C), norm_T),
        SandwichEntry("||T|| <= sqrt(m+n+2)", norm_T, math.sqrt(m + n + 2)),
    ]
    if n > 0:
        pinv_C = pinv_norm(C)
        entries.append(SandwichEntry("||C+|| <= ||T+||", pinv_C, pinv_T))
        entries.append(
            SandwichEntry("||T+|| <= sqrt(2(m+n+2))||C+||", pinv_T, math.sqrt(2.0 * (m + n + 2)) * pinv_C)
        )
    entries.extend(
        [
            SandwichEntry("||Q|| <= sqrt(m+n+1)", norm_Q, math.sqrt(m + n + 1)),
            SandwichEntry("1/sqrt(2) <= ||S||", 1.0 / math.sqrt(2.0), norm_S),
            SandwichEntry("||S|| <= sqrt(m+n+1)", norm_S, math.sqrt(m + n + 1)),
            SandwichEntry("||Q^-1|| <= ||T|| ||S+||", inv_Q, norm_T * pinv_S),
            SandwichEntry("||T+|| <= ||Q|| ||S+||", pinv_T, norm_Q * pinv_S),
        ]
    )
    return SandwichReport(entries=tuple(entries))
