"""Grid convergence of the two-electron energy and of the Feynman-Hellman slope."""

import math

from deltah2.groundstate2e import extrapolate_energy, fh_convergence

if __name__ == "__main__":
    for a, Z in [(0.0, 1.0), (0.1, 1.0), (0.5, 1.0), (0.5, math.inf)]:
        r = extrapolate_energy(a, Z)
        e = r.energies
        ratio = (e[-3] - e[-2]) / (e[-2] - e[-1])
        print(f"a={a:<4} Z={Z:<4} h={r.spacings} e={['%.6f' % v for v in e]} "
              f"ratio {ratio:.2f} extrapolated {r.value:.6f} +- {r.error:.1e}")
    for a in (0.1, 0.2):
        hs, vals, order = fh_convergence(a, 1.0, h=0.1, levels=3)
        print(f"FH a={a}: h={hs} e'={['%.4f' % v for v in vals]} order {order:.2f}")
