"""Spectra and time evolution of the tangential operator.

Eigensolves are verified: every reported pair must satisfy the residual
contract ||M v - lambda v|| / ||v|| < 1e-8 or the solve raises.  When the
measure-weighted matrix is Hermitian, or Hermitian up to a constant
imaginary diagonal (the uniform-coupling case), the solve goes through a
real-spectrum eigendecomposition and the imaginary shift is applied
exactly; otherwise a general dense solve is used, or shift-invert
iteration above DENSE_LIMIT points.

Propagation is Crank-Nicolson,

    (I + i dt/2 M) chi_{t+dt} = (I - i dt/2 M) chi_t,

which is exactly norm-preserving for measure-Hermitian generators.  Norms
are taken under the surface measure, ||chi|| = sqrt(sum w_j |chi_j|^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import InstabilityWarning, SolveError
from .operator import NormalChannel, TangentialOperator

RESIDUAL_TOL = 1e-8
DENSE_LIMIT = 3000
# relative threshold for classifying the weighted matrix as Hermitian
# (possibly up to a constant imaginary diagonal)
HERMITIAN_RTOL = 1e-13


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Verified eigenpairs of one azimuthal channel, sorted by (Re, Im).

    eigenvectors are columns, normalized under the surface measure.
    """

    m: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    """Crank-Nicolson history: states, surface-measure norms, fitted slope.

    norms[k] is ||chi(t_k)|| under the surface measure; log_norm_slope is
    the least-squares slope of ln ||chi|| against time.
    """

    times: np.ndarray
    states: Optional[np.ndarray]
    norms: np.ndarray
    log_norm_slope: float


@dataclass(frozen=True)
class HermiticityReport:
    """Structure of the measure-weighted matrix M_w = W^1/2 M W^-1/2.

    max_asymmetry is max |M_w - M_w^dag| (absolute), relative_asymmetry the
    same scaled by max |M_w|.  antihermitian_norm is the Frobenius norm of
    (M_w - M_w^dag)/2.  coupling_equality states whether that anti-Hermitian
    part equals the diagonal i e A3 H contribution to within 1e-10; on very
    fine grids plain rounding in the kinetic block can exceed that bound.
    """

    mode: str
    max_asymmetry: float
    relative_asymmetry: float
    antihermitian_norm: float
    coupling_equality: bool
    coupling_equality_gap: float


def _weighted_matrix(operator: TangentialOperator) -> np.ndarray:
    d = np.sqrt(operator.measure_weights)
    return (d[:, None] * operator.matrix) / d[None, :]


def _residuals(matrix, values, vectors) -> np.ndarray:
    res = matrix @ vectors - vectors * values[None, :]
    return np.linalg.norm(res, axis=0) / np.linalg.norm(vectors, axis=0)


def eigen_solve(operator: TangentialOperator, k: int) -> Spectrum:
    """k verified eigenpairs with smallest real parts."""
    n = operator.n
    if not 1 <= k <= n:
        raise SolveError(f"k = {k} not in [1, {n}]")

    if n > DENSE_LIMIT:
        values, vectors = _sparse_solve(operator, k)
    else:
        values, vectors = _dense_solve(operator, k)

    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    # normalize under the surface measure
    wnorm = np.sqrt(operator.measure_weights @ (np.abs(vectors) ** 2))
    vectors = vectors / wnorm[None, :]

    residuals = _residuals(operator.matrix, values, vectors)
    if np.any(residuals >= RESIDUAL_TOL):
        raise SolveError(
            f"eigen residual contract violated: max {residuals.max():.3e} "
            f">= {RESIDUAL_TOL}"
        )
    return Spectrum(m=operator.m, eigenvalues=values,
                    eigenvectors=vectors, residuals=residuals)


def _dense_solve(operator: TangentialOperator, k: int):
    mw = _weighted_matrix(operator)
    scale = max(1.0, np.abs(mw).max())
    anti = 0.5 * (mw - mw.conj().T)
    shift = 1j * float(np.mean(anti.diagonal().imag))
    if np.abs(anti).max() <= HERMITIAN_RTOL * scale:
        shift = 0.0 + 0.0j
        structured = True
    else:
        structured = bool(
            np.abs(anti - shift * np.eye(operator.n)).max() <= HERMITIAN_RTOL * scale
        )

    if structured:
        herm = 0.5 * (mw + mw.conj().T)
        if np.abs(herm.imag).max() == 0.0:
            herm = herm.real
        values, vectors = np.linalg.eigh(herm)
        values = values[:k].astype(complex) + shift
        vectors = vectors[:, :k].astype(complex)
        d = np.sqrt(operator.measure_weights)
        return values, vectors / d[:, None]

    values, vectors = sla.eig(operator.matrix)
    order = np.lexsort((values.imag, values.real))[:k]
    return values[order], vectors[:, order]


def _sparse_solve(operator: TangentialOperator, k: int):
    """Shift-invert iteration targeting the smallest real parts."""
    mat = operator.matrix
    diag = mat.diagonal()
    sparse = sp.diags(
        [np.diagonal(mat, -1), diag, np.diagonal(mat, 1)], [-1, 0, 1], format="csc"
    )
    # Gershgorin-style lower bound keeps the shift left of the spectrum
    offsum = np.zeros(operator.n)
    offsum[:-1] += np.abs(np.diagonal(mat, 1))
    offsum[1:] += np.abs(np.diagonal(mat, -1))
    sigma = float((diag.real - offsum).min()) - 1.0
    try:
        values, vectors = spla.eigs(sparse, k=k, sigma=sigma, which="LM")
    except spla.ArpackNoConvergence as exc:
        raise SolveError(f"shift-invert iteration failed to converge: {exc}") from exc
    return values, vectors


def evolve(operator: TangentialOperator, initial: np.ndarray, dt: float,
           steps: int, record_states: bool = True) -> EvolutionTrace:
    """Crank-Nicolson propagation of an initial state over steps * dt."""
    if dt <= 0:
        raise SolveError(f"dt must be positive, got {dt}")
    if steps < 1:
        raise SolveError(f"steps must be >= 1, got {steps}")
    chi = np.asarray(initial, dtype=complex).copy()
    n = operator.n
    if chi.shape != (n,):
        raise SolveError(f"initial state has shape {chi.shape}, expected ({n},)")

    mat = operator.matrix
    eye = np.eye(n, dtype=complex)
    try:
        lu = sla.lu_factor(eye + 0.5j * dt * mat)
    except np.linalg.LinAlgError as exc:
        raise SolveError(f"Crank-Nicolson factorization failed: {exc}") from exc
    back = eye - 0.5j * dt * mat

    w = operator.measure_weights

    def wnorm(v):
        return math.sqrt(float(w @ np.abs(v) ** 2))

    norms = np.empty(steps + 1)
    norms[0] = wnorm(chi)
    states = np.empty((steps + 1, n), dtype=complex) if record_states else None
    if record_states:
        states[0] = chi
    warned = False
    for s in range(1, steps + 1):
        chi = sla.lu_solve(lu, back @ chi)
        norms[s] = wnorm(chi)
        if record_states:
            states[s] = chi
        if not warned and (norms[s] > 10.0 * norms[s - 1]
                           or norms[s] < 0.1 * norms[s - 1]):
            warnings.warn(
                f"norm changed by more than 10x in one step at t = {s * dt}",
                InstabilityWarning, stacklevel=2,
            )
            warned = True

    if not np.all(np.isfinite(norms)) or np.any(norms <= 0.0):
        raise SolveError("propagation produced non-positive or non-finite norms")

    times = dt * np.arange(steps + 1)
    slope = float(np.polyfit(times, np.log(norms), 1)[0])
    return EvolutionTrace(times=times, states=states, norms=norms,
                          log_norm_slope=slope)


def hermiticity_report(operator: TangentialOperator) -> HermiticityReport:
    """Measure, report and classify the operator's non-Hermitian content."""
    mw = _weighted_matrix(operator)
    gap_matrix = mw - mw.conj().T
    max_asym = float(np.abs(gap_matrix).max())
    scale = max(1.0, float(np.abs(mw).max()))
    anti = 0.5 * gap_matrix
    expected = 1j * operator.coupling_diag
    gap = float(np.abs(anti - np.diag(expected)).max())
    return HermiticityReport(
        mode=operator.mode,
        max_asymmetry=max_asym,
        relative_asymmetry=max_asym / scale,
        antihermitian_norm=float(np.linalg.norm(anti)),
        coupling_equality=bool(gap <= 1e-10),
        coupling_equality_gap=gap,
    )


def total_energy(spectrum: Spectrum, normal: NormalChannel) -> np.ndarray:
    """Combined levels E_t + E_q for every tangential eigenvalue."""
    return spectrum.eigenvalues + normal.energy


def weighted_coupling(operator: TangentialOperator, state: np.ndarray) -> float:
    """Surface-measure average of e A3 H weighted by |chi|^2.

    For spatially varying coupling this is the only quantitative handle on
    the expected norm-growth rate; the exponential law itself holds only
    for coupling that is uniform over the whole domain.
    """
    w = operator.measure_weights
    density = w * np.abs(np.asarray(state)) ** 2
    total = float(density.sum())
    if total == 0.0:
        raise SolveError("state has zero norm")
    return float((density @ operator.coupling_diag) / total)


def ground_state(operator: TangentialOperator) -> np.ndarray:
    """Eigenvector of smallest real part, normalized under the measure."""
    return eigen_solve(operator, 1).eigenvectors[:, 0]
