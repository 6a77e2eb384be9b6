"""Brute-force cross-check: diagonalize the axisymmetric Hamiltonian on a grid.

For the L = 0 channel in natural units the operator is

    H = -1/2 [ (1/rho) d/drho (rho d/drho) + d^2/dz^2 ]
        + rho^2/8 + U(sqrt(rho^2 + z^2)) + s/2,

with U = -U0 inside the well radius R and 0 outside.  The radial part is
discretized in conservative flux form on cell centers rho_i = (i+1/2) h_rho
and symmetrized by the sqrt(rho) similarity transform, which keeps zero
flux through rho = 0 (the regularity condition) built in.  Dirichlet walls
close the box at rho_max and +-z_max.

None of the perturbative machinery enters here; this module only needs the
parameter set, so its lowest eigenvalue is an independent check on the
spectral-equation roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import splu

from .errors import ConfigError, NumericsError
from .params import DimensionlessParams, to_physical

__all__ = [
    "CylindricalGrid", "DiscreteHamiltonian", "LanczosResult", "ConvergenceReport",
    "assemble", "lowest_eigenpair", "lowest_eigenvalue", "converge",
]


@dataclass(frozen=True)
class CylindricalGrid:
    """Cell-centered (rho, z) lattice: rho in (0, rho_max), z in (-z_max, z_max).

    When kappa_expected is supplied the box is validated for a weakly bound
    Landau-regime state: rho_max must cover the transverse Gaussian
    (rho_max >= 8) and z_max must cover the exponential tail
    (z_max >= 6/kappa).  Without it the box is taken as given, which is
    what well-scale problems (deep well, tiny R) need.
    """

    rho_max: float
    z_max: float
    n_rho: int
    n_z: int
    kappa_expected: float | None = None

    def __post_init__(self):
        if not (self.rho_max > 0.0 and self.z_max > 0.0):
            raise ConfigError("rho_max and z_max must be positive")
        if self.n_rho < 16 or self.n_z < 16:
            raise ConfigError(f"n_rho and n_z must be >= 16, got {self.n_rho}x{self.n_z}")
        if self.kappa_expected is not None:
            if not self.kappa_expected > 0.0:
                raise ConfigError("kappa_expected must be positive")
            if self.rho_max < 8.0:
                raise ConfigError(
                    f"rho_max={self.rho_max:g} < 8: box would clip the transverse profile")
            z_need = 6.0 / self.kappa_expected
            if self.z_max < z_need:
                raise ConfigError(
                    f"z_max={self.z_max:g} < 6/kappa = {z_need:g}: box would clip "
                    "the e^(-kappa|z|) tail")

    @property
    def h_rho(self) -> float:
        return self.rho_max / self.n_rho

    @property
    def h_z(self) -> float:
        return 2.0 * self.z_max / self.n_z

    @property
    def rho(self) -> np.ndarray:
        return (np.arange(self.n_rho) + 0.5) * self.h_rho

    @property
    def z(self) -> np.ndarray:
        return -self.z_max + (np.arange(self.n_z) + 0.5) * self.h_z

    @classmethod
    def sized_for(cls, d: DimensionlessParams, epsilon_expected: float,
                  points_per_radius: float = 5.0, rho_max: float = 8.0,
                  h_cap: float = 0.15) -> "CylindricalGrid":
        """Box and spacing for a predicted bound-state energy.

        z_max covers 6 decay lengths of e^(-kappa|z|) with 5% padding; the
        spacing resolves the well edge with points_per_radius cells per R
        (capped at h_cap for the no-well case).
        """
        if not epsilon_expected < 0.0:
            raise ConfigError("epsilon_expected must be negative")
        kappa = math.sqrt(2.0 * abs(epsilon_expected))
        z_max = 1.05 * 6.0 / kappa
        h = h_cap
        if d.xi > 0.0 and d.lambda_t > 0.0:
            h = min(h, math.sqrt(2.0 * d.xi) / points_per_radius)
        n_rho = max(16, math.ceil(rho_max / h))
        n_z = max(16, math.ceil(2.0 * z_max / h))
        return cls(rho_max=rho_max, z_max=z_max, n_rho=n_rho, n_z=n_z,
                   kappa_expected=kappa)


@dataclass(frozen=True)
class DiscreteHamiltonian:
    """Assembled sparse operator plus the data needed to interpret it."""

    matrix: sp.csr_matrix
    grid: CylindricalGrid
    d: DimensionlessParams
    potential: np.ndarray  # U samples, shape (n_rho, n_z)
    local_floor: float  # min of the local diagonal; kinetic part is PSD,
    #                     so this bounds the whole spectrum from below


def assemble(d: DimensionlessParams, grid: CylindricalGrid, *,
             include_well: bool = True, include_zeeman: bool = True) -> DiscreteHamiltonian:
    """Build the symmetric 5-point discretization of H on the grid.

    Unknowns are chi = sqrt(rho) psi in row-major (rho, z) order.  The
    radial stencil couples i and i+1 through -f/(2 h^2 sqrt(rho_i rho_i+1))
    with f = (i+1) h the face radius, so the operator is symmetric entry by
    entry and the rho = 0 face carries zero flux.
    """
    rho = grid.rho
    z = grid.z
    hr = grid.h_rho
    hz = grid.h_z
    nr, nz = grid.n_rho, grid.n_z

    depth, radius = 0.0, 0.0
    if include_well and d.lambda_t > 0.0:
        p = to_physical(d)
        depth, radius = p.well_depth, p.well_radius
        if radius / hr < 4.0 or radius / hz < 4.0:
            raise ConfigError(
                f"grid too coarse across the well: R/h_rho={radius / hr:.2f}, "
                f"R/h_z={radius / hz:.2f} (need >= 4)")

    faces = np.arange(1, nr) * hr  # interior face radii rho_{i+1/2}
    main_r = (np.arange(nr) * hr + np.arange(1, nr + 1) * hr) / (2.0 * hr * hr * rho)
    off_r = -faces / (2.0 * hr * hr * np.sqrt(rho[:-1] * rho[1:]))
    t_rho = sp.diags([off_r, main_r, off_r], [-1, 0, 1], format="csr")

    main_z = np.full(nz, 1.0 / (hz * hz))
    off_z = np.full(nz - 1, -0.5 / (hz * hz))
    t_z = sp.diags([off_z, main_z, off_z], [-1, 0, 1], format="csr")

    r3d = np.sqrt(rho[:, None] ** 2 + z[None, :] ** 2)
    potential = np.where(r3d <= radius, -depth, 0.0)
    diag = 0.125 * rho[:, None] ** 2 + potential
    if include_zeeman:
        diag = diag + 0.5 * d.s

    matrix = (sp.kron(t_rho, sp.eye(nz, format="csr"), format="csr")
              + sp.kron(sp.eye(nr, format="csr"), t_z, format="csr")
              + sp.diags(diag.ravel(), format="csr"))
    return DiscreteHamiltonian(matrix=matrix.tocsr(), grid=grid, d=d,
                               potential=potential, local_floor=float(diag.min()))


@dataclass(frozen=True)
class LanczosResult:
    value: float
    vector: np.ndarray
    iterations: int
    residual: float
    shift: float


class _ShiftAboveSpectrum(Exception):
    """Internal: a Ritz value of (A - shift)^-1 went negative, proving an
    eigenvalue of A below the shift; the run must restart lower."""


def _lanczos_run(a: sp.csr_matrix, shift: float, certified: bool, tol: float,
                 max_iter: int, residual_tol: float) -> LanczosResult:
    n = a.shape[0]
    lu = splu((a - shift * sp.eye(n, format="csr")).tocsc())
    cap = 64
    basis = np.zeros((cap, n))
    basis[0] = 1.0 / math.sqrt(n)
    alphas: list[float] = []
    betas: list[float] = []
    theta_prev = math.inf
    best: tuple[float, np.ndarray, float] | None = None
    next_check = 1

    def ritz(k: int) -> tuple[float, np.ndarray, float]:
        evals, evecs = eigh_tridiagonal(np.array(alphas), np.array(betas[:k]))
        i_star = int(np.argmax(evals))
        vec = basis[:k + 1].T @ evecs[:, i_star]
        vec /= np.linalg.norm(vec)
        theta = float(shift + 1.0 / evals[i_star])
        res = float(np.linalg.norm(a @ vec - theta * vec))
        return theta, vec, res

    for k in range(max_iter):
        w = lu.solve(basis[k])
        alpha = float(basis[k] @ w)
        w -= alpha * basis[k]
        if k > 0:
            w -= betas[k - 1] * basis[k - 1]
        # full reorthogonalization, applied twice to scrub rounding drift
        for _ in range(2):
            w -= basis[:k + 1].T @ (basis[:k + 1] @ w)
        alphas.append(alpha)
        beta = float(np.linalg.norm(w))

        evals = eigh_tridiagonal(np.array(alphas), np.array(betas), eigvals_only=True)
        mu = float(evals[-1])
        if not certified and evals[0] < -1e-12 * max(1.0, abs(mu)):
            # a negative Ritz value of the inverted operator certifies an
            # eigenvalue of A below the shift: the caller's guess sat inside
            # the spectrum, and tracking the largest mu would miss the
            # global minimum
            raise _ShiftAboveSpectrum
        theta = shift + 1.0 / mu
        settled = abs(theta - theta_prev) <= tol * max(1.0, abs(theta))
        theta_prev = theta
        exhausted = beta <= 1e-13 * max(1.0, abs(alpha))
        if (settled and k + 1 >= next_check) or exhausted:
            value, vec, res = ritz(k)
            best = (value, vec, res)
            if res <= residual_tol or exhausted:
                return LanczosResult(value=value, vector=vec, iterations=k + 1,
                                     residual=res, shift=shift)
            next_check = k + 6  # back off so failed checks stay cheap
        betas.append(beta)
        if k + 1 >= cap:
            cap *= 2
            grown = np.zeros((cap, n))
            grown[:k + 1] = basis[:k + 1]
            basis = grown
        basis[k + 1] = w / beta

    raise NumericsError(
        f"Lanczos did not converge in {max_iter} iterations "
        f"(last estimate {theta_prev:.6g})",
        last_value=best[0] if best is not None else theta_prev)


def lowest_eigenpair(h: DiscreteHamiltonian, tol: float = 1e-10, *,
                     max_iter: int = 400, shift: float | None = None,
                     residual_tol: float = 1e-8) -> LanczosResult:
    """Smallest eigenvalue via shift-invert Lanczos with full reorthogonalization.

    The spectrum of (A - shift I)^-1 is probed from the deterministic start
    vector (1, 1, ..., 1)/sqrt(n), which has guaranteed overlap with the
    (elementwise positive) ground state; the largest Ritz value maps back
    to the smallest eigenvalue of A provided the shift lies below the whole
    spectrum.  The default shift sits half a unit under the minimum of the
    local diagonal, a bound the positive semidefinite kinetic form makes
    rigorous.  A caller-supplied shift merely accelerates the run: if any
    Ritz value of the inverted operator turns negative, an eigenvalue of A
    provably lies below that shift and the computation restarts from the
    certified floor instead of silently returning an excited level.
    Convergence requires successive estimates to agree to tol and the
    residual ||A v - theta v|| to drop below residual_tol.
    """
    a = h.matrix
    floor = h.local_floor - 0.5
    if shift is None or shift <= floor:
        return _lanczos_run(a, floor, True, tol, max_iter, residual_tol)
    try:
        return _lanczos_run(a, shift, False, tol, max_iter, residual_tol)
    except _ShiftAboveSpectrum:
        return _lanczos_run(a, floor, True, tol, max_iter, residual_tol)


def lowest_eigenvalue(h: DiscreteHamiltonian, tol: float = 1e-10, **kwargs) -> float:
    return lowest_eigenpair(h, tol, **kwargs).value


@dataclass(frozen=True)
class ConvergenceReport:
    """Richardson study over a refinement sequence."""

    eigenvalues: tuple[float, ...]
    observed_order: float
    extrapolated: float
    asymptotic: bool


def converge(d: DimensionlessParams, grids, *, include_well: bool = True,
             include_zeeman: bool = True, tol: float = 1e-10,
             shift: float | None = None, residual_tol: float = 1e-8) -> ConvergenceReport:
    """Lowest eigenvalue on >= 3 grids in refinement ratio 2, with the
    observed order from the last three and the Richardson-extrapolated
    value.  Flags asymptotic=False when the differences do not contract
    like a power of h (extrapolation then falls back to the finest value).
    """
    grids = list(grids)
    if len(grids) < 3:
        raise ConfigError("need at least 3 grids in refinement ratio 2")
    for coarse, fine in zip(grids, grids[1:]):
        if fine.n_rho != 2 * coarse.n_rho or fine.n_z != 2 * coarse.n_z:
            raise ConfigError("grids must double n_rho and n_z at each step")
        if fine.rho_max != coarse.rho_max or fine.z_max != coarse.z_max:
            raise ConfigError("grids must share the same box")
    values = []
    for grid in grids:
        ham = assemble(d, grid, include_well=include_well, include_zeeman=include_zeeman)
        values.append(lowest_eigenpair(ham, tol, shift=shift,
                                       residual_tol=residual_tol).value)
    d1 = values[-2] - values[-3]
    d2 = values[-1] - values[-2]
    asymptotic = d1 * d2 > 0.0 and abs(d2) < abs(d1)
    if asymptotic:
        order = math.log2(abs(d1) / abs(d2))
        extrapolated = values[-1] + d2 / (2.0 ** order - 1.0)
    else:
        order = math.nan
        extrapolated = values[-1]
    return ConvergenceReport(eigenvalues=tuple(values), observed_order=order,
                             extrapolated=extrapolated, asymptotic=asymptotic)
