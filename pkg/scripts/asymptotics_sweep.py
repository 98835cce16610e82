"""Small-epsilon behaviour of the equilibrium half-distance.

Fits a_eq ~ c sqrt(eps) for the upper-bound curve (eps in [1e-6, 1e-3]) and
for the full solver (eps in [1e-4, 1e-2]), and compares c with
sqrt(1 / (2 e'(0+))) from each e'(0+) estimator.
"""

import math
import time

import numpy as np

from deltah2.bounds import E_min_ub, equilibrium_ub
from deltah2.groundstate2e import e_prime_zero
from deltah2.molecule import find_equilibrium, fit_power_law, fit_sqrt_constant
from deltah2.units import ModelParams


def main(Z: float = 1.0) -> None:
    eps = np.geomspace(1e-6, 1e-3, 7)
    a_ub = [equilibrium_ub(ModelParams.from_epsilon(Z, e)).location for e in eps]
    print(f"UB: c fitted {fit_sqrt_constant(eps, a_ub):.5f}, closed form "
          f"{0.5 * math.sqrt(Z / (8 * Z - 1)):.5f}, slope {fit_power_law(eps, a_ub):.4f}")
    excess = [E_min_ub(ModelParams.from_epsilon(Z, e)).value + 4 - 1 / Z for e in eps]
    print(f"UB: min E_ub + 4 - 1/Z ~ C sqrt(eps), C fitted {fit_sqrt_constant(eps, excess):.4f}")

    t0 = time.perf_counter()
    eps = np.geomspace(1e-4, 1e-2, 7)
    print(f"{'eps':>10} {'a_eq':>10} {'a_eq/sqrt':>10} {'E_eq':>10}")
    a = []
    for e in eps:
        rep = find_equilibrium(ModelParams.from_epsilon(Z, float(e)))
        a.append(rep.a_eq)
        print(f"{e:10.3e} {rep.a_eq:10.6f} {rep.a_eq / math.sqrt(e):10.5f} {rep.E_eq:10.5f}")
    print(f"full: c fitted {fit_sqrt_constant(eps, a):.5f}, slope {fit_power_law(eps, a):.4f}"
          f" on [1e-4, 1e-2]; slope {fit_power_law(eps[3:], a[3:]):.4f} on [1e-3, 1e-2]")
    for method in ("trace", "fh0", "linear"):
        d = e_prime_zero(Z, method)
        print(f"e'(0+) [{method:6s}] = {d:.4f} -> c = {math.sqrt(1 / (2 * d)):.5f}")
    print(f"({time.perf_counter() - t0:.0f} s)")


if __name__ == "__main__":
    main()
