"""Taylor-coefficient generators for the three experiment functions and for
planted synthetic series.

    f1(z) = integral_{-1}^{1} (1 - x^2)^{-1/2} / (1 - x z) dx
            (Stieltjes transform of the arcsine measure, analytic in |z| < 1)
    f2(z) = exp(z)
    f3(z) = random series with real standard-normal coefficients

The f3 generator is pinned to numpy's PCG64 bit generator feeding
Generator.standard_normal (ziggurat), so a (length, seed) pair reproduces the
identical sequence everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polyrat import RationalFunction, taylor_of_rational

__all__ = [
    "SeriesSpec",
    "taylor_f1",
    "taylor_f2",
    "taylor_f3",
    "taylor_series",
]


def taylor_f1(count: int) -> np.ndarray:
    """Moments of the arcsine measure: c_{2k} = pi binom(2k, k) / 4^k via the
    Wallis recursion c_{2k} = c_{2k-2} (2k-1)/(2k), odd coefficients zero."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = np.zeros(count)
    even = math.pi
    out[0] = even
    for k in range(1, (count + 1) // 2):
        even *= (2 * k - 1) / (2 * k)
        if 2 * k < count:
            out[2 * k] = even
    return out.astype(np.complex128)


def taylor_f2(count: int) -> np.ndarray:
    """c_j = 1/j!"""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = np.empty(count)
    out[0] = 1.0
    for j in range(1, count):
        out[j] = out[j - 1] / j
    return out.astype(np.complex128)


def taylor_f3(count: int, seed: int) -> np.ndarray:
    """Seeded real standard-normal coefficients (PCG64 / standard_normal)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    gen = np.random.Generator(np.random.PCG64(seed))
    return gen.standard_normal(count).astype(np.complex128)


@dataclass(frozen=True)
class SeriesSpec:
    """Description of one generated coefficient sequence."""

    kind: str  # stieltjes_arcsine | exp | random_normal | planted_rational
    length: int
    seed: int = 0
    payload: RationalFunction | None = None


def taylor_series(spec: SeriesSpec) -> np.ndarray:
    if spec.kind == "stieltjes_arcsine":
        return taylor_f1(spec.length)
    if spec.kind == "exp":
        return taylor_f2(spec.length)
    if spec.kind == "random_normal":
        return taylor_f3(spec.length, spec.seed)
    if spec.kind == "planted_rational":
        if spec.payload is None:
            raise ValueError("planted_rational needs a payload rational function")
        return taylor_of_rational(spec.payload, spec.length)
    raise ValueError(f"unknown series kind {spec.kind!r}")
