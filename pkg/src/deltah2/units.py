"""Model parameters, the field map L(B), and conversion to physical units.

The scaled half-distance is ``a = R L Z / 2`` and the small parameter is
``epsilon = Z / L`` with ``L = 2 W(sqrt(B) / 2)``, i.e. ``B = L**2 exp(L)``
(B in atomic units of field).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from .special import lambert_w0


@dataclass(frozen=True)
class UnitSystem:
    B0_tesla: float = 2.35e5
    hartree_eV: float = 27.2
    bohr_angstrom: float = 0.53


ATOMIC = UnitSystem()


def L_to_field(L: float) -> float:
    """Field strength in atomic units for field parameter ``L``."""
    if not L > 0:
        raise ValueError(f"L must be > 0, got {L!r}")
    return L * L * math.exp(L)


def field_to_L(B: float) -> float:
    """Inverse of :func:`L_to_field`, ``2 W(sqrt(B) / 2)``."""
    if not B > 0:
        raise ValueError(f"B must be > 0, got {B!r}")
    return 2.0 * lambert_w0(math.sqrt(B) / 2.0)


@dataclass(frozen=True)
class ModelParams:
    """Nuclear charge and field strength of one molecule.

    Build with :meth:`from_epsilon`, :meth:`from_L` or :meth:`from_B`; the
    other field descriptors are filled in consistently. ``L`` and ``B`` are
    ``None`` only when ``epsilon == 0`` (infinite field).
    """

    Z: float
    epsilon: float
    L: Optional[float] = None
    B: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.Z > 0:
            raise ValueError(f"Z must be > 0, got {self.Z!r}")
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon!r}")
        # compared as epsilon vs Z/L so that subnormal epsilon is not flagged
        if self.L is not None and not math.isclose(self.epsilon, self.Z / self.L,
                                                   rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError("epsilon * L must equal Z")

    @classmethod
    def from_epsilon(cls, Z: float, epsilon: float) -> "ModelParams":
        if epsilon == 0:
            return cls(Z=Z, epsilon=0.0)
        L = Z / epsilon
        return cls(Z=Z, epsilon=epsilon, L=L, B=_safe_field(L))

    @classmethod
    def from_L(cls, Z: float, L: float) -> "ModelParams":
        if not L > 0:
            raise ValueError(f"L must be > 0, got {L!r}")
        return cls(Z=Z, epsilon=Z / L, L=L, B=_safe_field(L))

    @classmethod
    def from_B(cls, Z: float, B: float) -> "ModelParams":
        L = field_to_L(B)
        return cls(Z=Z, epsilon=Z / L, L=L, B=B)

    @property
    def B_tesla(self) -> Optional[float]:
        return None if self.B is None else self.B * ATOMIC.B0_tesla


def _safe_field(L: float) -> float:
    """``L_to_field`` with ``inf`` where ``L**2 exp(L)`` exceeds the float range."""
    if 2.0 * math.log(L) + L >= math.log(sys.float_info.max):
        return math.inf
    return L_to_field(L)


@dataclass(frozen=True)
class PhysicalRecord:
    R_angstrom: float
    E_hartree: float
    E_eV: float
    B_tesla: float


def convert_units(a: float, E: float, params: ModelParams,
                  units: UnitSystem = ATOMIC) -> PhysicalRecord:
    """Map a scaled half-distance and molecular energy to physical units.

    ``R = a0 * 2a / (L Z)``. The energy is read directly in Hartree, which
    is the convention of the L = 10 worked example; the exact factor between
    scaled and true energies depends on the choice of L-scaling.
    """
    if params.L is None:
        raise ValueError("physical units need a finite field (epsilon > 0)")
    R = units.bohr_angstrom * 2.0 * a / (params.L * params.Z)
    return PhysicalRecord(
        R_angstrom=R,
        E_hartree=E,
        E_eV=E * units.hartree_eV,
        B_tesla=params.B * units.B0_tesla,
    )
