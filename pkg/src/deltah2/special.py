"""Principal branch of the Lambert W function."""

from __future__ import annotations

import math

import numpy as np

INV_E = math.exp(-1.0)
# 1/e = INV_E + _INV_E_LO to about 1e-33; x + INV_E is exact near the branch
# point, so e x + 1 = e (x + INV_E + _INV_E_LO) keeps its relative accuracy.
_INV_E_LO = -1.2428753672788363e-17

# Series in p = sqrt(2(e x + 1)) about the branch point x = -1/e.
_BRANCH_COEFFS = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0, 769.0 / 17280.0,
                  -221.0 / 8505.0)


def _branch_distance(x: float) -> float:
    """``2 (e x + 1)`` without cancellation."""
    return 2.0 * math.e * ((x + INV_E) + _INV_E_LO)


def _initial_guess(x: float) -> float:
    if x < -0.32:
        p = math.sqrt(max(_branch_distance(x), 0.0))
        return sum(c * p**k for k, c in enumerate(_BRANCH_COEFFS))
    if abs(x) <= 0.3:
        return x * (1.0 - x * (1.0 - x * (1.5 - x * 8.0 / 3.0)))
    if x < 3.0:
        # Winitzki's approximation, a few percent everywhere on this interval.
        l1 = math.log1p(x)
        return l1 * (1.0 - math.log1p(l1) / (2.0 + l1))
    l1 = math.log(x)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def _w0(x: float) -> float:
    if math.isnan(x):
        raise ValueError("lambert_w0 got nan")
    if x < -INV_E:
        # one ulp of slack for arguments that are -1/e up to rounding
        if x < -INV_E * (1.0 + 4.0 * np.finfo(float).eps):
            raise ValueError(f"lambert_w0 is undefined for x < -1/e, got {x!r}")
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    w = _initial_guess(x)
    p2 = _branch_distance(x)
    if p2 < 1e-6:
        # Halley stalls where w -> -1; the truncated series is exact to ~p**7 here.
        return w

    if x > math.e:
        # work with w + log(w) - log(x) to keep exp(w) out of the iteration
        logx = math.log(x)
        for _ in range(50):
            g = w + math.log(w) - logx
            gp = 1.0 + 1.0 / w
            gpp = -1.0 / (w * w)
            dw = 2.0 * g * gp / (2.0 * gp * gp - g * gpp)
            w -= dw
            if abs(dw) <= 4.0 * np.finfo(float).eps * (1.0 + abs(w)):
                break
        return w

    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4.0 * np.finfo(float).eps * (1.0 + abs(w)):
            break
    return w


def lambert_w0(x):
    """Principal branch W0 of the inverse of ``w -> w * exp(w)``.

    Accepts a scalar or an array. Raises ``ValueError`` for arguments
    below -1/e, where the principal branch is not real.
    """
    if np.ndim(x) == 0:
        return _w0(float(x))
    arr = np.asarray(x, dtype=float)
    return np.array([_w0(v) for v in arr.ravel()]).reshape(arr.shape)


def lambert_w0_prime(x: float) -> float:
    """dW/dx = W / (x (1 + W)), with the limit 1 at x = 0."""
    if x == 0.0:
        return 1.0
    w = _w0(x)
    return w / (x * (1.0 + w))
