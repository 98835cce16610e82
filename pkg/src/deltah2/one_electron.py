"""Closed forms for one electron in the symmetric double delta well.

The one-electron operator is ``-1/2 d^2/dz^2 - delta(z - a) - delta(z + a)``.
Its ground state decays like ``exp(-alpha0 |z|)`` outside the wells and has
energy ``-alpha0**2 / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import lambert_w0

# Below this half-distance alpha0 and its derivative use their Taylor series
# (the closed form is 0/0 at a = 0).
SERIES_CUTOFF = 1e-6


def _check_a(a: float) -> float:
    a = float(a)
    if not a >= 0.0:
        raise ValueError(f"half-distance a must be >= 0, got {a!r}")
    return a


def alpha0(a: float) -> float:
    """Ground-state decay exponent, ``1 + W(2a exp(-2a)) / (2a)``.

    Decreases from 2 at ``a = 0`` to 1 as ``a -> inf``.
    """
    a = _check_a(a)
    if a < SERIES_CUTOFF:
        return 2.0 - 4.0 * a + 16.0 * a * a - 224.0 / 3.0 * a**3
    return 1.0 + lambert_w0(2.0 * a * math.exp(-2.0 * a)) / (2.0 * a)


def alpha0_excess(a: float) -> float:
    """``alpha0(a) - 1`` without the rounding of the leading 1; stays positive
    where ``alpha0`` itself rounds to 1.0 (a beyond ~20)."""
    a = _check_a(a)
    if a < SERIES_CUTOFF:
        return alpha0(a) - 1.0
    return lambert_w0(2.0 * a * math.exp(-2.0 * a)) / (2.0 * a)


def alpha0_prime(a: float) -> float:
    """Analytic derivative of :func:`alpha0`; equals -4 at ``a = 0``."""
    a = _check_a(a)
    if a < SERIES_CUTOFF:
        return -4.0 + 32.0 * a - 224.0 * a * a
    w = lambert_w0(2.0 * a * math.exp(-2.0 * a))
    return -w * (2.0 * a + w) / (2.0 * a * a * (1.0 + w))


@dataclass(frozen=True)
class OneElectronState:
    """Normalized ground state at half-distance ``a``.

    ``A1`` multiplies the outer tails ``exp(-alpha0 |z|)`` and ``A2`` the inner
    ``cosh(alpha0 z)``; both follow from continuity at ``|z| = a`` and unit norm.
    """

    a: float
    alpha0: float
    A1: float
    A2: float

    @classmethod
    def at(cls, a: float) -> "OneElectronState":
        a = _check_a(a)
        al = alpha0(a)
        x = a * al
        a2 = math.sqrt(2.0 * al / (1.0 + 2.0 * x + math.exp(2.0 * x)))
        # A1 = A2 cosh(x) e^x, written to avoid cosh overflow
        a1 = a2 * 0.5 * (math.exp(2.0 * x) + 1.0)
        return cls(a=a, alpha0=al, A1=a1, A2=a2)

    @property
    def energy(self) -> float:
        return -0.5 * self.alpha0**2

    def __call__(self, z):
        return phi0(self, z)


def phi0(state: OneElectronState, z):
    """Evaluate the ground-state eigenfunction at ``z`` (scalar or array)."""
    z = np.asarray(z, dtype=float)
    az = np.abs(z)
    inner = az <= state.a
    out = np.where(
        inner,
        state.A2 * np.cosh(state.alpha0 * np.where(inner, z, 0.0)),
        state.A1 * np.exp(-state.alpha0 * az),
    )
    return out if out.ndim else float(out)


def _scaled_parts(x: float):
    """Numerator and denominator of f(a), both divided by exp(4x), plus their
    log-derivatives in x."""
    q = math.exp(-2.0 * x)
    num = (0.5 * (1.0 + q) ** 4 + 0.5 * (1.0 - q**4) + 4.0 * (q - q**3)
           + 12.0 * x * q * q)
    dnum = (2.0 * (1.0 + q) ** 3 * (1.0 - q) + 2.0 * (1.0 + q**4) + 8.0 * (q + q**3)
            + 12.0 * q * q)
    den = 1.0 + (2.0 * x + 1.0) * q
    dden = 2.0 + 2.0 * q
    return num, den, dnum / num, dden / den


def f_exchange(a: float) -> float:
    """Exchange integral ``f(a) = int phi0(z)**4 dz``.

    Uses the ``8 cosh^4 + sinh 4x + 8 sinh 2x + 12x`` form, rescaled by
    ``exp(-4 a alpha0)`` so that large ``a`` does not overflow.
    """
    a = _check_a(a)
    al = alpha0(a)
    num, den, _, _ = _scaled_parts(a * al)
    return al * num / (4.0 * den * den)


def f_exchange_alt(a: float) -> float:
    """Same integral from the ``e^{4x} + 4 e^{2x} + ...`` form, used as a
    cross-check. Evaluated literally, so it overflows for ``a`` beyond ~170."""
    a = _check_a(a)
    al = alpha0(a)
    x = a * al
    num = math.exp(4 * x) + 4 * math.exp(2 * x) + 4 * math.sinh(2 * x) + 12 * x + 3
    return al * num / (4.0 * (math.exp(2 * x) + 2 * x + 1) ** 2)


def f_exchange_prime(a: float) -> float:
    """Analytic ``df/da`` via the chain rule through ``x = a alpha0(a)``."""
    a = _check_a(a)
    al = alpha0(a)
    alp = alpha0_prime(a)
    x = a * al
    num, den, dlog_num, dlog_den = _scaled_parts(x)
    f = al * num / (4.0 * den * den)
    # the exp(-4x) scaling cancels between numerator and squared denominator
    return f * (alp / al + (dlog_num - 2.0 * dlog_den) * (al + a * alp))


def e_ub(a: float, Z: float) -> float:
    """Product-state upper bound on the two-electron energy,
    ``-alpha0**2 + f(a) / Z``."""
    if not Z > 0:
        raise ValueError(f"nuclear charge Z must be > 0, got {Z!r}")
    return -alpha0(a) ** 2 + f_exchange(a) / Z


def e_ub_prime(a: float, Z: float) -> float:
    return -2.0 * alpha0(a) * alpha0_prime(a) + f_exchange_prime(a) / Z
