"""Command-line front end.

Subcommands write CSV (curves, tables) or short text reports::

    deltah2 curve --Z 1 --epsilon 0.1 --a-min 0 --a-max 3 --n 301 --out fig1.csv
    deltah2 equilibrium --Z 1 --L 10
    deltah2 asymptotics --Z 1 --with-exact
    deltah2 groundstate --Z 1 --a 0.1 --out psi.csv
    deltah2 units --B 1e6

Exit codes: 0 ok, 2 configuration error, 3 solver failure, 4 no binding.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import bounds, groundstate2e, molecule
from .one_electron import alpha0, e_ub
from .units import ModelParams

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_NO_BINDING = 0, 2, 3, 4

CURVE_HEADER = ["a", "j", "g", "e_ub", "e_ni", "e_exact", "E_ub", "E_ni", "E_exact",
                "one_electron"]
EQUILIBRIUM_HEADER = ["Z", "epsilon", "L", "a_eq", "E_eq", "bracket_lo", "bracket_hi",
                      "R_angstrom", "E_eV", "B_tesla"]
ASYMPTOTICS_HEADER = ["method", "epsilon", "a_eq", "a_eq_over_sqrt_eps"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    Z: float = 1.0
    epsilon: Optional[float] = None
    L: Optional[float] = None
    B: Optional[float] = None
    a_min: float = 0.0
    a_max: float = 1.0
    n_points: int = 101
    accuracy: float = molecule.DEFAULT_ACCURACY
    with_exact: bool = False
    out: Optional[str] = None
    # groundstate
    a: float = 0.0
    h: float = groundstate2e.DEFAULT_H
    box: float = groundstate2e.DEFAULT_BOX
    # asymptotics
    eps_min: float = 1e-6
    eps_max: float = 1e-3
    exact_eps_min: float = 1e-3
    exact_eps_max: float = 1e-2
    n_eps: int = 7

    def __post_init__(self):
        if not self.Z > 0:
            raise ConfigError(f"--Z must be > 0, got {self.Z}")
        given = [v is not None for v in (self.epsilon, self.L, self.B)]
        if sum(given) > 1:
            raise ConfigError("give at most one of --epsilon, --L, --B")
        if self.command in ("curve", "equilibrium", "units") and sum(given) != 1:
            raise ConfigError(f"{self.command} needs one of --epsilon, --L, --B")
        if self.command == "curve":
            if not self.a_min >= 0:
                raise ConfigError("--a-min must be >= 0")
            if not self.a_max > self.a_min:
                raise ConfigError("--a-max must exceed --a-min")
            if self.n_points < 2:
                raise ConfigError("--n must be >= 2")
        if self.command == "asymptotics":
            if not 0 < self.eps_min < self.eps_max:
                raise ConfigError("need 0 < --eps-min < --eps-max")
            if not 0 < self.exact_eps_min < self.exact_eps_max:
                raise ConfigError("need 0 < --exact-eps-min < --exact-eps-max")
            if self.n_eps < 2:
                raise ConfigError("--n-eps must be >= 2")
        if self.command == "groundstate" and not self.a >= 0:
            raise ConfigError("--a must be >= 0")

    def params(self) -> ModelParams:
        if self.L is not None:
            return ModelParams.from_L(self.Z, self.L)
        if self.B is not None:
            return ModelParams.from_B(self.Z, self.B)
        return ModelParams.from_epsilon(self.Z, self.epsilon)


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


class _Output:
    """stdout, or a file opened with LF line endings."""

    def __init__(self, path: Optional[str], mode: str = "w"):
        self.path, self.mode, self.fh = path, mode, None

    def __enter__(self):
        if self.path is None or self.path == "-":
            return sys.stdout
        self.fh = open(self.path, self.mode, encoding="utf-8", newline="")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def curve_rows(config: RunConfig) -> List[List[str]]:
    params = config.params()
    Z, eps = params.Z, params.epsilon
    rows = []
    for a in np.linspace(config.a_min, config.a_max, config.n_points):
        a = float(a)
        al2 = alpha0(a) ** 2
        exact = e_exact = None
        if config.with_exact:
            exact = groundstate2e.e_electronic(a, Z, config.accuracy)
            e_exact = math.inf if (a == 0 and eps > 0) else (
                exact + (eps / (2 * a) if a > 0 else 0.0))
        rows.append([
            _fmt(a), _fmt(bounds.j_func(a, Z)), _fmt(bounds.g_func(a, Z)), _fmt(e_ub(a, Z)),
            _fmt(-al2), _fmt(exact), _fmt(bounds.E_ub(a, params)),
            _fmt(bounds.E_ni(a, eps)), _fmt(e_exact), _fmt(-0.5 * al2),
        ])
    return rows


def cmd_curve(config: RunConfig) -> int:
    rows = curve_rows(config)
    with _Output(config.out) as fh:
        w = _writer(fh)
        w.writerow(CURVE_HEADER)
        w.writerows(rows)
    return EXIT_OK


def _report_lines(rep: molecule.EquilibriumReport) -> List[str]:
    p = rep.params
    lines = [
        f"Z = {p.Z:g}   epsilon = {p.epsilon:.6g}   L = {p.L:.6g}",
        f"a_eq = {rep.a_eq:.6f}   (bracket {rep.a_bracket[0]:.6f} .. {rep.a_bracket[1]:.6f})",
        f"E_eq = {rep.E_eq:.6f}",
        f"e'(a_eq) = {rep.e_prime_at_eq:.6g}   eps/(2 a_eq^2) = "
        f"{p.epsilon / (2 * rep.a_eq ** 2):.6g}",
    ]
    if rep.E_min_ub is not None:
        lines.append(f"min E_ub = {rep.E_min_ub:.6f}   min E_ni = {rep.E_min_ni:.6f}")
    if rep.a_plus is not None:
        lines.append(f"A+ = {rep.a_plus:.6f}")
    if rep.physical is not None:
        ph = rep.physical
        lines.append(f"R = {ph.R_angstrom:.4e} A   E = {ph.E_eV:.4f} eV   "
                     f"B = {ph.B_tesla:.4e} T")
    return lines


def cmd_equilibrium(config: RunConfig) -> int:
    params = config.params()
    try:
        rep = molecule.find_equilibrium(params, config.accuracy)
    except molecule.NoBinding as exc:
        print(f"no binding: {exc}")
        return EXIT_NO_BINDING
    print("\n".join(_report_lines(rep)))
    if config.out:
        new = not os.path.exists(config.out) or os.path.getsize(config.out) == 0
        ph = rep.physical
        with _Output(config.out, "a") as fh:
            w = _writer(fh)
            if new:
                w.writerow(EQUILIBRIUM_HEADER)
            w.writerow([_fmt(params.Z), _fmt(params.epsilon), _fmt(params.L),
                        _fmt(rep.a_eq), _fmt(rep.E_eq), _fmt(rep.a_bracket[0]),
                        _fmt(rep.a_bracket[1]),
                        _fmt(ph.R_angstrom if ph else None), _fmt(ph.E_eV if ph else None),
                        _fmt(ph.B_tesla if ph else None)])
    return EXIT_OK


def ub_closed_form(Z: float) -> float:
    return 0.5 * math.sqrt(Z / (8 * Z - 1))


def cmd_asymptotics(config: RunConfig) -> int:
    Z = config.Z
    eps_ub = np.geomspace(config.eps_min, config.eps_max, config.n_eps)
    a_ub = [bounds.equilibrium_ub(ModelParams.from_epsilon(Z, float(e))).location
            for e in eps_ub]
    rows = [["UB", _fmt(e), _fmt(a), _fmt(a / math.sqrt(e))] for e, a in zip(eps_ub, a_ub)]
    summary = [
        f"c_UB fitted = {molecule.fit_sqrt_constant(eps_ub, a_ub):.6f}",
        f"c_UB closed form 1/2 sqrt(Z/(8Z-1)) = {ub_closed_form(Z):.6f}",
        f"slope log a_eq_UB vs log eps = {molecule.fit_power_law(eps_ub, a_ub):.4f}",
    ]
    if config.with_exact:
        eps_ex = np.geomspace(config.exact_eps_min, config.exact_eps_max, config.n_eps)
        a_ex = [molecule.find_equilibrium(ModelParams.from_epsilon(Z, float(e)),
                                          config.accuracy).a_eq for e in eps_ex]
        rows += [["exact", _fmt(e), _fmt(a), _fmt(a / math.sqrt(e))]
                 for e, a in zip(eps_ex, a_ex)]
        slope0 = groundstate2e.e_prime_zero(Z)
        summary += [
            f"c fitted = {molecule.fit_sqrt_constant(eps_ex, a_ex):.6f}",
            f"c from e'(0+) = {slope0:.6f}: sqrt(1/(2 e'(0+))) = "
            f"{math.sqrt(1 / (2 * slope0)):.6f}",
            f"slope log a_eq vs log eps = {molecule.fit_power_law(eps_ex, a_ex):.4f}",
        ]
    with _Output(config.out) as fh:
        w = _writer(fh)
        w.writerow(ASYMPTOTICS_HEADER)
        w.writerows(rows)
    stream = sys.stderr if config.out in (None, "-") else sys.stdout
    print("\n".join(summary), file=stream)
    return EXIT_OK


def cmd_groundstate(config: RunConfig) -> int:
    grid = groundstate2e.make_grid(config.a, config.h, config.box)
    res = groundstate2e.ground_state(config.a, config.Z, grid)
    print(f"a = {config.a:g}   Z = {config.Z:g}   h = {config.h:g}   box = {grid.box:g}")
    print(f"e = {res.energy:.12f}   residual = {res.residual:.2e}   "
          f"iterations = {res.iterations}")
    print(f"bounds: e_ni = {-alpha0(config.a) ** 2:.6f}   "
          f"e_ub = {e_ub(config.a, config.Z):.6f}")
    if config.out:
        groundstate2e.write_eigenvector_csv(res, config.out)
    return EXIT_OK


def cmd_units(config: RunConfig) -> int:
    p = config.params()
    print(f"Z = {p.Z:g}")
    print(f"epsilon = {p.epsilon:.12g}")
    print(f"L = {_fmt(p.L) or 'inf'}")
    print(f"B = {_fmt(p.B) or 'inf'} a.u. = {_fmt(p.B_tesla) or 'inf'} T")
    return EXIT_OK


COMMANDS = {
    "curve": cmd_curve,
    "equilibrium": cmd_equilibrium,
    "asymptotics": cmd_asymptotics,
    "groundstate": cmd_groundstate,
    "units": cmd_units,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltah2", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--Z", type=float, default=1.0)
        field = p.add_mutually_exclusive_group()
        field.add_argument("--epsilon", type=float)
        field.add_argument("--L", type=float)
        field.add_argument("--B", type=float, help="field in atomic units")
        p.add_argument("--accuracy", type=float, default=molecule.DEFAULT_ACCURACY)
        p.add_argument("--out")
        if name == "curve":
            p.add_argument("--a-min", type=float, default=0.0)
            p.add_argument("--a-max", type=float, default=1.0)
            p.add_argument("--n", dest="n_points", type=int, default=101)
            p.add_argument("--with-exact", action="store_true")
        elif name == "asymptotics":
            p.add_argument("--eps-min", type=float, default=1e-6)
            p.add_argument("--eps-max", type=float, default=1e-3)
            p.add_argument("--exact-eps-min", type=float, default=1e-3)
            p.add_argument("--exact-eps-max", type=float, default=1e-2)
            p.add_argument("--n-eps", type=int, default=7)
            p.add_argument("--with-exact", action="store_true")
        elif name == "groundstate":
            p.add_argument("--a", type=float, default=0.0)
            p.add_argument("--h", type=float, default=groundstate2e.DEFAULT_H)
            p.add_argument("--box", type=float, default=groundstate2e.DEFAULT_BOX)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    return RunConfig(**args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors already exit with 2
        return int(exc.code or 0)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[config.command](config)
    except molecule.NoBinding as exc:
        print(f"no binding: {exc}", file=sys.stderr)
        return EXIT_NO_BINDING
    except (groundstate2e.NonConvergence, groundstate2e.AccuracyNotReached,
            groundstate2e.GridTooLarge, bounds.NoEquilibrium) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
