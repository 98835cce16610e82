"""Molecular energy curve ``E(a) = e(a) + eps/(2a)`` and its minimum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from .bounds import E_min_ni, E_min_ub, NoEquilibrium, PreconditionFailed, a_plus
from .groundstate2e import e_electronic, e_prime_fh, make_grid
from .units import (ATOMIC, ModelParams, PhysicalRecord, UnitSystem, L_to_field,
                    convert_units, field_to_L)

__all__ = [
    "E_total", "EnergyCurve", "EquilibriumReport", "NoBinding", "electronic_curve",
    "find_equilibrium", "fit_power_law", "fit_sqrt_constant", "convert_units",
    "field_to_L", "L_to_field", "UnitSystem", "ATOMIC",
]

DEFAULT_ACCURACY = 5e-3
# 30 samples on (0, 0.35], a few closer to 0 where e'(a) bends fastest,
# then a coarser tail for larger epsilon.
CORE_STEP = 0.35 / 30
NEAR_ZERO = (0.00125, 0.0025, 0.005)
TAIL_STEP = 0.05
SEARCH_CAP = 1.5
DISSOCIATION = -1.0
BINDING_MARGIN = 1e-3
FH_SPACING = 0.025


class NoBinding(RuntimeError):
    """The minimum of E(a) found is not below the dissociation limit."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class EnergyCurve:
    label: str  # "UB", "NI" or "exact"
    a: Tuple[float, ...]
    values: Tuple[float, ...]


def sample_points(a_hi: float) -> np.ndarray:
    core = CORE_STEP * np.arange(1, 31)
    pts = [0.0, *NEAR_ZERO, *core]
    x = 0.35 + TAIL_STEP
    while x < a_hi + TAIL_STEP - 1e-12:
        pts.append(round(x, 12))
        x += TAIL_STEP
    return np.array(sorted(set(pts)))


def electronic_curve(Z: float, a_hi: float = 0.35,
                     accuracy: float = DEFAULT_ACCURACY) -> EnergyCurve:
    """``e(a)`` at the fixed sample points up to ``a_hi``. Solves are cached,
    so sweeps over epsilon reuse them."""
    pts = sample_points(a_hi)
    vals = [e_electronic(float(a), Z, accuracy) for a in pts]
    return EnergyCurve("exact", tuple(float(a) for a in pts), tuple(vals))


def E_total(a: float, params: ModelParams, accuracy: float = DEFAULT_ACCURACY) -> float:
    if not a > 0:
        raise ValueError(f"a must be > 0, got {a!r}")
    return e_electronic(a, params.Z, accuracy) + params.epsilon / (2.0 * a)


@dataclass(frozen=True)
class EquilibriumReport:
    """Minimum of the molecular curve.

    ``e_prime_at_eq`` is the Feynman-Hellman slope at ``a_eq``; at a true
    minimum it equals ``eps / (2 a_eq^2)``. ``a_plus`` is ``None`` when the
    upper bound does not dip below -1, in which case the search ran up to
    ``search_limit`` without that guarantee.
    """

    a_eq: float
    E_eq: float
    a_bracket: Tuple[float, float]
    e_prime_at_eq: float
    physical: Optional[PhysicalRecord]
    params: ModelParams
    E_min_ub: Optional[float] = None
    E_min_ni: Optional[float] = None
    a_plus: Optional[float] = None
    search_limit: float = math.nan

    @property
    def stationarity_gap(self) -> float:
        """Relative mismatch ``|e'(a) - eps/(2a^2)| / |e'(a)|``."""
        target = self.params.epsilon / (2.0 * self.a_eq**2)
        return abs(self.e_prime_at_eq - target) / abs(self.e_prime_at_eq)


def _minimize_curve(spline: CubicSpline, eps: float, limit: float):
    scan = np.unique(np.concatenate([np.geomspace(1e-6, limit, 3000),
                                     np.linspace(limit / 3000, limit, 3000)]))
    vals = spline(scan) + eps / (2.0 * scan)
    k = int(np.argmin(vals))
    lo, hi = scan[max(k - 1, 0)], scan[min(k + 1, scan.size - 1)]
    res = minimize_scalar(lambda a: float(spline(a)) + eps / (2.0 * a), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return float(res.x), (float(lo), float(hi)), k == scan.size - 1


def find_equilibrium(params: ModelParams,
                     accuracy: float = DEFAULT_ACCURACY) -> EquilibriumReport:
    """Locate the minimum of ``E(a)`` over ``(0, A+]``.

    ``e(a)`` is sampled at fixed points, interpolated by a cubic spline, and
    ``spline + eps/(2a)`` is minimized. The energy at the minimum is then
    recomputed with a direct solve.
    """
    Z, eps = params.Z, params.epsilon
    if not eps > 0:
        raise ValueError("find_equilibrium needs epsilon > 0")
    try:
        ub_min = E_min_ub(params).value
    except NoEquilibrium:
        ub_min = None
    try:
        ap = a_plus(params)
    except (PreconditionFailed, NoEquilibrium):
        ap = None
    ni_min = E_min_ni(eps).value

    limit = min(ap, SEARCH_CAP) if ap is not None else SEARCH_CAP
    while True:
        curve = electronic_curve(Z, max(0.35, limit), accuracy)
        spline = CubicSpline(curve.a, curve.values)
        a_eq, bracket, at_edge = _minimize_curve(spline, eps, limit)
        ceiling = ap if ap is not None else 4 * SEARCH_CAP
        if not at_edge or limit >= ceiling:
            break
        limit = min(2 * limit, ceiling)

    E_eq = e_electronic(a_eq, Z, accuracy) + eps / (2.0 * a_eq)
    slope = e_prime_fh(a_eq, Z, make_grid(a_eq, FH_SPACING))
    report = EquilibriumReport(
        a_eq=a_eq,
        E_eq=E_eq,
        a_bracket=bracket,
        e_prime_at_eq=slope,
        physical=convert_units(a_eq, E_eq, params) if params.L is not None else None,
        params=params,
        E_min_ub=ub_min,
        E_min_ni=ni_min,
        a_plus=ap,
        search_limit=limit,
    )
    if E_eq >= DISSOCIATION - BINDING_MARGIN:
        raise NoBinding(f"min E = {E_eq:.6g} is not below {DISSOCIATION} at Z={Z}, "
                        f"epsilon={eps}", report)
    return report


def fit_power_law(eps: Sequence[float], a: Sequence[float]) -> float:
    """Least-squares slope of ``log a`` against ``log eps``."""
    slope, _ = np.polyfit(np.log(eps), np.log(a), 1)
    return float(slope)


def fit_sqrt_constant(eps: Sequence[float], a: Sequence[float]) -> float:
    """Constant ``c`` in ``a ~ c sqrt(eps)``: intercept of the straight-line fit
    of ``a / sqrt(eps)`` against ``sqrt(eps)``."""
    s = np.sqrt(np.asarray(eps, dtype=float))
    _, intercept = np.polyfit(s, np.asarray(a, dtype=float) / s, 1)
    return float(intercept)
