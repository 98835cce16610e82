"""Analytic bound curves for the molecule and their extrema.

``E_ub`` is the product-state upper bound plus nuclear repulsion ``eps/(2a)``;
``E_ni`` drops the electron repulsion and is a lower bound. ``j`` decides
where ``E_ub`` dips below the dissociation limit -1, and ``g = eps`` locates
the stationary points of ``E_ub``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import bisect, brentq, minimize_scalar

from .one_electron import alpha0, e_ub, e_ub_prime, f_exchange
from .units import ModelParams

SCAN_STEP = 1e-3
SCAN_MAX = 10.0
XTOL = 1e-10


class NoEquilibrium(ValueError):
    """``E_ub`` has no local minimum at this epsilon."""


class PreconditionFailed(ValueError):
    pass


@dataclass(frozen=True)
class ExtremumResult:
    location: float
    value: float
    kind: str  # "minimum" or "maximum"
    bracket: Tuple[float, float]


def j_func(a: float, Z: float) -> float:
    """``2a (alpha0^2 - 1 - f/Z)``; the molecule is bound once ``eps < j``."""
    return 2.0 * a * (alpha0(a) ** 2 - 1.0 - f_exchange(a) / Z)


def g_func(a: float, Z: float) -> float:
    """``2a^2 d e_ub/da``; stationary points of ``E_ub`` solve ``g = eps``."""
    return 2.0 * a * a * e_ub_prime(a, Z)


def E_ub(a: float, params: ModelParams) -> float:
    if a == 0:
        return math.inf if params.epsilon > 0 else e_ub(0.0, params.Z)
    return e_ub(a, params.Z) + params.epsilon / (2.0 * a)


def E_ni(a: float, epsilon: float) -> float:
    if a == 0:
        return math.inf if epsilon > 0 else -4.0
    return -alpha0(a) ** 2 + epsilon / (2.0 * a)


@lru_cache(maxsize=None)
def _scan(name: str, Z: float) -> Tuple[np.ndarray, np.ndarray]:
    func = {"j": j_func, "g": g_func}[name]
    grid = np.arange(0.0, SCAN_MAX + SCAN_STEP / 2, SCAN_STEP)
    vals = np.array([func(a, Z) for a in grid])
    return grid, vals


def _refine(func: Callable[[float], float], grid, vals, kind: str) -> ExtremumResult:
    sign = -1.0 if kind == "maximum" else 1.0
    k = int(np.argmin(sign * vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(lambda a: sign * func(a), bounds=(lo, hi), method="bounded",
                          options={"xatol": XTOL})
    x = float(res.x)
    if sign * func(x) > sign * vals[k]:
        x = float(grid[k])
    return ExtremumResult(location=x, value=func(x), kind=kind, bracket=(float(lo), float(hi)))


def max_j(Z: float) -> ExtremumResult:
    """Global maximum of ``j(., Z)`` on [0, 10]."""
    grid, vals = _scan("j", float(Z))
    return _refine(lambda a: j_func(a, Z), grid, vals, "maximum")


@lru_cache(maxsize=None)
def max_g(Z: float) -> ExtremumResult:
    grid, vals = _scan("g", float(Z))
    return _refine(lambda a: g_func(a, Z), grid, vals, "maximum")


def equilibrium_ub(params: ModelParams) -> ExtremumResult:
    """Local minimum of ``E_ub``: the smaller root of ``g(a, Z) = eps``."""
    Z, eps = params.Z, params.epsilon
    if not eps > 0:
        raise PreconditionFailed("equilibrium_ub needs epsilon > 0")
    peak = max_g(float(Z))
    if eps >= peak.value:
        raise NoEquilibrium(f"epsilon={eps} >= max_a g(a, Z) = {peak.value:.6g}")
    grid, vals = _scan("g", float(Z))
    # first upward crossing; the scan starts at g(0) = 0 < eps
    above = np.flatnonzero(vals >= eps)
    if above.size and grid[above[0]] <= peak.location:
        k = int(above[0])
        lo, hi = float(grid[k - 1]), float(grid[k])
    else:
        # eps within scan resolution of the peak value
        lo = float(grid[np.searchsorted(grid, peak.location) - 1])
        hi = peak.location
    root = brentq(lambda a: g_func(a, Z) - eps, lo, hi, xtol=1e-15, rtol=1e-15)
    return ExtremumResult(location=root, value=E_ub(root, params), kind="minimum",
                          bracket=(lo, hi))


def E_min_ub(params: ModelParams) -> ExtremumResult:
    """Minimum of ``E_ub`` found by direct minimization on (0, argmax g]."""
    if not params.epsilon > 0:
        return ExtremumResult(0.0, e_ub(0.0, params.Z), "minimum", (0.0, 0.0))
    peak = max_g(float(params.Z))
    if params.epsilon >= peak.value:
        raise NoEquilibrium(f"epsilon={params.epsilon} >= max_a g = {peak.value:.6g}")
    grid = np.geomspace(1e-9, peak.location, 400)
    vals = np.array([E_ub(a, params) for a in grid])
    return _refine(lambda a: E_ub(a, params), grid, vals, "minimum")


def E_min_ni(epsilon: float) -> ExtremumResult:
    """Minimum of the non-interacting curve ``E_ni(., eps)`` on (0, 10]."""
    if not epsilon > 0:
        return ExtremumResult(0.0, -4.0, "minimum", (0.0, 0.0))
    grid = np.geomspace(1e-9, SCAN_MAX, 1200)
    vals = np.array([E_ni(a, epsilon) for a in grid])
    return _refine(lambda a: E_ni(a, epsilon), grid, vals, "minimum")


def a_plus(params: ModelParams) -> float:
    """Largest root of ``E_ni(A, eps) = min_a E_ub``; bounds the true
    equilibrium half-distance from above."""
    target = E_min_ub(params).value
    if not target < -1.0:
        raise PreconditionFailed(f"min E_ub = {target:.6g} is not below -1")
    lo = E_min_ni(params.epsilon).location
    hi = max(2.0 * lo, 1e-3)
    while E_ni(hi, params.epsilon) <= target:
        hi *= 2.0
    return brentq(lambda A: E_ni(A, params.epsilon) - target, lo, hi, xtol=1e-14)


def alpha0_inverse(target: float) -> float:
    """The unique ``a >= 0`` with ``alpha0(a) = target``, for target in (1, 2]."""
    if not 1.0 < target <= 2.0:
        raise ValueError(f"target must lie in (1, 2], got {target!r}")
    if target == 2.0:
        return 0.0
    hi = 1.0
    while alpha0(hi) > target:
        hi *= 2.0
    return bisect(lambda a: alpha0(a) - target, 0.0, hi, xtol=1e-13)
