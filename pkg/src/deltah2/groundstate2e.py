"""Grid eigensolver for the two-electron delta Hamiltonian.

The electronic operator on the plane ``(z1, z2)`` is

    -1/2 (d1^2 + d2^2) - sum_i [delta(z_i - a) + delta(z_i + a)] + delta(z1 - z2) / Z

It is discretized on a tensor-product grid whose nodes include ``0`` and
``+-a``: spacing ``h`` outside ``[-a, a]`` and ``2a / n_inner`` inside. Each
delta line sits on a row of nodes and becomes a diagonal entry ``-+1/w`` (``w``
the lumped quadrature weight; ``1/h`` on a uniform grid). The discrete
eigenvalue converges at second order in ``h``.

The ground state is positive, so it is invariant under the coordinate swap
and under ``(z1, z2) -> (-z1, -z2)``. The eigenproblem is solved in the
subspace of grid functions with both symmetries, about a quarter of the
grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh, splu

from .one_electron import OneElectronState

DEFAULT_BOX = 12.0
DEFAULT_H = 0.05
MIN_BOX = 10.0
MAX_NONZEROS = 50_000_000
RESIDUAL_TOL = 1e-8
MAX_ITER = 10_000


class NonConvergence(RuntimeError):
    pass


class AccuracyNotReached(RuntimeError):
    pass


class GridTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Nodes on ``[-box, box]`` with ``0`` and ``+-a`` among them.

    Outside ``[-a, a]`` the spacing is ``h`` and ``box - a`` is a whole number
    of steps; inside, ``n_inner`` equal intervals span ``[-a, a]``.
    """

    box: float
    h: float
    a: float
    n_inner: int

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"grid spacing must be > 0, got {self.h!r}")
        if self.a < 0:
            raise ValueError(f"a must be >= 0, got {self.a!r}")
        if self.box < MIN_BOX - 1e-12:
            raise ValueError(f"box must be >= {MIN_BOX}, got {self.box!r}")
        steps = (self.box - self.a) / self.h
        if abs(steps - round(steps)) > 1e-6 or round(steps) < 3:
            raise ValueError("box - a must be a whole number (>= 3) of steps h")
        if self.a > 0 and (self.n_inner < 2 or self.n_inner % 2):
            raise ValueError("n_inner must be even and >= 2 when a > 0")

    @property
    def n_outer(self) -> int:
        return int(round((self.box - self.a) / self.h))

    @property
    def a_snapped(self) -> float:
        # the nodes are fitted to +-a, so no snapping error
        return self.a

    def nodes(self) -> np.ndarray:
        outer = self.a + self.h * np.arange(1, self.n_outer + 1)
        if self.a == 0:
            inner = np.zeros(1)
        else:
            inner = np.linspace(-self.a, self.a, self.n_inner + 1)
        return np.concatenate([-outer[::-1], inner, outer])

    def refined(self) -> "GridSpec":
        """Bisect every interval."""
        return GridSpec(self.box, self.h / 2, self.a, 2 * self.n_inner)

    @property
    def size(self) -> int:
        return len(self.nodes())


def make_grid(a: float, h: float = DEFAULT_H, box: float = DEFAULT_BOX) -> GridSpec:
    """Grid fitted to ``+-a`` with outer spacing ``h`` reaching at least ``box``."""
    a = float(a)
    n_inner = 0 if a == 0 else max(2, 2 * int(math.ceil(a / h - 1e-9)))
    n_outer = int(math.ceil((box - a) / h - 1e-9))
    return GridSpec(box=a + n_outer * h, h=h, a=a, n_inner=n_inner)


def _lumped_weights(z: np.ndarray) -> np.ndarray:
    d = np.diff(z)
    w = np.empty_like(z)
    w[1:-1] = 0.5 * (d[:-1] + d[1:])
    w[0], w[-1] = 0.5 * d[0], 0.5 * d[-1]
    return w


def _one_dim(grid: GridSpec):
    """Interior nodes, their weights, and the symmetrized 1D operator
    ``-1/2 d^2 - delta(z-a) - delta(z+a)`` as (diagonal, off-diagonal)."""
    z_all = grid.nodes()
    d = np.diff(z_all)
    z = z_all[1:-1]
    w = 0.5 * (d[:-1] + d[1:])
    diag = 0.5 * (1.0 / d[:-1] + 1.0 / d[1:]) / w
    off = -0.5 / d[1:-1] / np.sqrt(w[:-1] * w[1:])
    strength = 2.0 if grid.a == 0 else 1.0
    on_well = np.isclose(np.abs(z), grid.a, rtol=0.0, atol=1e-12 * max(1.0, grid.a))
    diag = diag - strength * on_well / w
    return z, w, diag, off


def assemble_hamiltonian(grid: GridSpec, Z: float) -> sp.csr_matrix:
    """Symmetric sparse matrix of the electronic operator on interior nodes.

    Row-major in ``(z1, z2)``; Dirichlet data at ``+-box``. ``Z = inf``
    switches the electron repulsion off.
    """
    if not Z > 0:
        raise ValueError(f"Z must be > 0, got {Z!r}")
    z, w, diag, off = _one_dim(grid)
    m = z.size
    if 5 * m * m > MAX_NONZEROS:
        raise GridTooLarge(f"{m}x{m} interior grid exceeds {MAX_NONZEROS} nonzeros")
    one = sp.diags([off, diag, off], [-1, 0, 1], format="csr")
    eye = sp.identity(m, format="csr")
    H = sp.kron(one, eye, format="csr") + sp.kron(eye, one, format="csr")
    if math.isfinite(Z):
        rep = np.zeros((m, m))
        rep[np.diag_indices(m)] = 1.0 / (Z * w)
        H = H + sp.diags(rep.ravel(), format="csr")
    return H.tocsr()


@lru_cache(maxsize=8)
def symmetric_basis(m: int) -> sp.csr_matrix:
    """Orthonormal basis (as columns) of ``m x m`` grid functions invariant
    under the coordinate swap and the total reflection."""
    idx = np.arange(m * m).reshape(m, m)
    i, j = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    r = m - 1
    rep = np.minimum.reduce([idx, idx[j, i], idx[r - i, r - j], idx[r - j, r - i]]).ravel()
    _, orbit = np.unique(rep, return_inverse=True)
    count = np.bincount(orbit)
    return sp.csr_matrix((1.0 / np.sqrt(count[orbit]), (np.arange(m * m), orbit)),
                         shape=(m * m, count.size))


@dataclass
class GroundStateResult:
    """Lowest symmetric eigenpair on one grid.

    ``psi`` holds the normalized eigenfunction at all nodes (boundary rows
    are zero), indexed ``psi[i1, i2]``; ``sum(w1 w2 psi^2) = 1``.
    """

    energy: float
    psi: np.ndarray = field(repr=False)
    residual: float
    grid: GridSpec
    Z: float
    iterations: int = 0

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes()

    @property
    def weights(self) -> np.ndarray:
        return _lumped_weights(self.grid.nodes())

    def norm(self) -> float:
        w = self.weights
        return float(np.sqrt(np.einsum("i,j,ij->", w, w, self.psi**2)))


def ground_state(a: float, Z: float, grid: Optional[GridSpec] = None) -> GroundStateResult:
    """Lowest eigenpair of the discretized operator in the symmetric sector.

    Shift-and-invert Lanczos with a shift below the non-interacting ground
    energy of the same grid, seeded with the product of one-electron ground
    states, so the result is deterministic.
    """
    if grid is None:
        grid = make_grid(a)
    if not math.isclose(grid.a, a, rel_tol=0, abs_tol=1e-12):
        raise ValueError(f"grid is fitted to a={grid.a}, not a={a}")
    z, w, diag, off = _one_dim(grid)
    m = z.size
    H = assemble_hamiltonian(grid, Z)
    Q = symmetric_basis(m)
    Hr = (Q.T @ H @ Q).tocsc()

    # repulsion is positive, so twice the 1D ground energy bounds the spectrum below
    lam1 = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, 0))[0]
    shift = 2.0 * lam1 - 0.25

    seed1 = OneElectronState.at(a)(z) * np.sqrt(w)
    v0 = Q.T @ np.outer(seed1, seed1).ravel()
    v0 /= np.linalg.norm(v0)

    lu = splu((Hr - shift * sp.identity(Hr.shape[0], format="csc")).tocsc())
    op_inv = LinearOperator(Hr.shape, matvec=lu.solve, dtype=float)
    try:
        vals, vecs = eigsh(Hr, k=1, sigma=shift, which="LM", OPinv=op_inv, v0=v0,
                           tol=0, maxiter=MAX_ITER)
    except ArpackNoConvergence as exc:
        raise NonConvergence(f"eigensolver did not converge at a={a}, Z={Z}") from exc
    energy = float(vals[0])
    v = vecs[:, 0]

    residual = np.linalg.norm(Hr @ v - energy * v)
    polish = 0
    while residual > RESIDUAL_TOL and polish < 20:
        v = lu.solve(v)
        v /= np.linalg.norm(v)
        energy = float(v @ (Hr @ v))
        residual = np.linalg.norm(Hr @ v - energy * v)
        polish += 1
    if residual > RESIDUAL_TOL:
        raise NonConvergence(f"residual {residual:.3g} above {RESIDUAL_TOL} at a={a}, Z={Z}")

    v = v * np.sign(v.sum())
    inner = (Q @ v).reshape(m, m) / np.sqrt(np.outer(w, w))
    psi = np.zeros((m + 2, m + 2))
    psi[1:-1, 1:-1] = inner
    return GroundStateResult(energy=energy, psi=psi, residual=float(residual), grid=grid,
                             Z=Z, iterations=polish)


@dataclass(frozen=True)
class ExtrapolatedEnergy:
    """Richardson-extrapolated ground energy.

    ``spacings``/``energies`` list every grid level solved, coarsest first;
    ``value`` combines the two finest, ``error`` is the disagreement with the
    extrapolation one level coarser.
    """

    value: float
    error: float
    spacings: Tuple[float, ...]
    energies: Tuple[float, ...]

    @property
    def observed_order(self) -> float:
        e = self.energies
        return math.log2((e[-3] - e[-2]) / (e[-2] - e[-1]))


def _richardson(coarse: float, fine: float) -> float:
    return (4.0 * fine - coarse) / 3.0


@lru_cache(maxsize=4096)
def extrapolate_energy(a: float, Z: float, accuracy: float = 5e-3, h: float = 0.1,
                       h_min: float = 0.025, box: float = DEFAULT_BOX) -> ExtrapolatedEnergy:
    """Ground energy extrapolated from spacings ``h`` and ``h/2``.

    A third, coarser level ``2h`` gives the error estimate. If the estimate
    exceeds ``accuracy`` the finest spacing is halved again, down to ``h_min``.
    """
    if accuracy < 1e-3:
        raise ValueError("accuracy must be >= 1e-3")
    grid = make_grid(a, 2.0 * h, box)
    levels = [grid, grid.refined(), grid.refined().refined()]
    energies = [ground_state(a, Z, g).energy for g in levels]
    while True:
        value = _richardson(energies[-2], energies[-1])
        error = abs(value - _richardson(energies[-3], energies[-2]))
        if error <= accuracy:
            break
        nxt = levels[-1].refined()
        if nxt.h < h_min * (1 - 1e-9):
            raise AccuracyNotReached(
                f"error estimate {error:.2g} > {accuracy:.2g} at h={levels[-1].h} (a={a}, Z={Z})")
        levels.append(nxt)
        energies.append(ground_state(a, Z, nxt).energy)
    return ExtrapolatedEnergy(value=value, error=error,
                              spacings=tuple(g.h for g in levels), energies=tuple(energies))


def e_electronic(a: float, Z: float, accuracy: float = 5e-3) -> float:
    """Electronic ground-state energy ``e(a)`` to within ``accuracy``."""
    return extrapolate_energy(float(a), float(Z), float(accuracy)).value


def _line_terms(psi: np.ndarray, w: np.ndarray, ia: int, im: int, h: float) -> float:
    """Contribution of electron 1 (axis 0) to the Feynman-Hellman sum."""
    d_plus = (-3.0 * psi[ia] + 4.0 * psi[ia + 1] - psi[ia + 2]) / (2.0 * h)
    d_minus = (3.0 * psi[im] - 4.0 * psi[im - 1] + psi[im - 2]) / (2.0 * h)
    integrand = (-2.0 * psi[ia] * d_plus - 2.0 * psi[ia] ** 2
                 + 2.0 * psi[im] * d_minus - 2.0 * psi[im] ** 2)
    return float(w @ integrand)


def e_prime_fh(a: float, Z: float, grid: Optional[GridSpec] = None,
               result: Optional[GroundStateResult] = None) -> float:
    """``de/da`` from the ground state through line integrals on ``z_i = +-a``.

    Uses outward one-sided derivatives, ``-2 int psi (d_i psi)(a+) +
    2 int psi (d_i psi)(-a-)``, plus the delta-line terms ``-2 int psi^2`` on
    both lines, summed over both electrons. At ``a = 0`` this is the right
    derivative.
    """
    if a < 0:
        raise ValueError(f"a must be >= 0, got {a!r}")
    if result is None:
        result = ground_state(a, Z, grid)
    nodes = result.nodes
    w = result.weights
    ia = int(np.argmin(np.abs(nodes - a)))
    im = int(np.argmin(np.abs(nodes + a)))
    h = result.grid.h
    psi = result.psi
    return _line_terms(psi, w, ia, im, h) + _line_terms(psi.T, w, ia, im, h)


def e_prime_zero(Z: float, method: str = "trace", h: float = DEFAULT_H,
                 points: Tuple[float, ...] = (0.02, 0.04, 0.08)) -> float:
    """Right derivative ``e'(0+)``.

    ``"trace"``: ``4 sum_i int_{z_i=0} psi_0^2`` on grids ``h`` and ``h/2``,
    Richardson-combined. ``"fh0"``: :func:`e_prime_fh` at ``a = 0``, same
    combination. ``"linear"``: straight-line fit of :func:`e_prime_fh` at
    ``points``, which runs low because ``e'`` bends sharply near 0.
    """
    if method == "linear":
        vals = [e_prime_fh(a, Z, make_grid(a, h)) for a in points]
        _, intercept = np.polyfit(points, vals, 1)
        return float(intercept)
    func = {"trace": e_prime_zero_trace, "fh0": lambda Z, g: e_prime_fh(0.0, Z, g)}[method]
    grid = make_grid(0.0, h)
    return _richardson(func(Z, grid), func(Z, grid.refined()))


def e_prime_zero_trace(Z: float, grid: Optional[GridSpec] = None) -> float:
    """``4 sum_i int_{z_i=0} psi_0^2`` from the ``a = 0`` ground state on one grid."""
    result = ground_state(0.0, Z, grid)
    c = int(np.argmin(np.abs(result.nodes)))
    w = result.weights
    return 4.0 * float(w @ result.psi[c] ** 2 + w @ result.psi[:, c] ** 2)


def fh_convergence(a: float, Z: float, h: float = 0.1, levels: int = 3):
    """Feynman-Hellman derivative on successively bisected grids.

    Returns ``(spacings, values, order)`` with the empirical order from the
    last three levels.
    """
    grid = make_grid(a, h)
    grids = [grid]
    for _ in range(levels - 1):
        grids.append(grids[-1].refined())
    vals = [e_prime_fh(a, Z, g) for g in grids]
    order = math.nan
    if levels >= 3:
        num, den = vals[-3] - vals[-2], vals[-2] - vals[-1]
        if den != 0 and num / den > 0:
            order = math.log2(num / den)
    return [g.h for g in grids], vals, order


def write_eigenvector_csv(result: GroundStateResult, path) -> None:
    """Dump ``psi`` as CSV.

    Line 1 ``box,h,a_snapped,Z,energy`` and line 2 their values; line 3 the
    node coordinates; then one row per ``z1`` node (row-major ``psi[i1, i2]``).
    """
    g = result.grid
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("box,h,a_snapped,Z,energy\n")
        fh.write(",".join(format(v, ".17g") for v in (g.box, g.h, g.a_snapped, result.Z,
                                                       result.energy)) + "\n")
        fh.write(",".join(format(v, ".17g") for v in result.nodes) + "\n")
        for row in result.psi:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def read_eigenvector_csv(path):
    """Inverse of :func:`write_eigenvector_csv`: ``(header, nodes, psi)``."""
    with open(path, encoding="utf-8") as fh:
        keys = fh.readline().strip().split(",")
        vals = [float(v) for v in fh.readline().split(",")]
        nodes = np.array([float(v) for v in fh.readline().split(",")])
        psi = np.loadtxt(fh, delimiter=",", ndmin=2)
    return dict(zip(keys, vals)), nodes, psi
