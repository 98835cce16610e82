"""Equilibrium of H2 at Z = 1, L = 10 (B ~ 5.2e11 T), with bounds and units."""

from deltah2.cli import _report_lines
from deltah2.molecule import find_equilibrium
from deltah2.units import ModelParams

if __name__ == "__main__":
    rep = find_equilibrium(ModelParams.from_L(1, 10.0))
    print("\n".join(_report_lines(rep)))
    print(f"stationarity gap |e'(a_eq) - eps/(2 a_eq^2)| / e'(a_eq) = {rep.stationarity_gap:.2%}")
