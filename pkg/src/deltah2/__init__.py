"""One-dimensional delta-potential model of H2 in a strong magnetic field."""

from .special import lambert_w0
from .one_electron import OneElectronState, alpha0, alpha0_prime, e_ub, f_exchange
from .units import ModelParams, PhysicalRecord, convert_units
from .bounds import (E_min_ub, E_ni, E_ub, a_plus, alpha0_inverse, equilibrium_ub, g_func,
                     j_func, max_g, max_j)
from .groundstate2e import (GridSpec, GroundStateResult, e_electronic, e_prime_fh,
                            extrapolate_energy, ground_state, make_grid)
from .molecule import EquilibriumReport, NoBinding, find_equilibrium

__version__ = "0.1.0"
