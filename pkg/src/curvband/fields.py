"""Static vector potentials in the surface-adapted frame.

A field is carried as its three physical components (A1, A2, A3) along the
adapted frame (e1, e2, e3), each a vectorized map of (rho, q).  Components
must be axisymmetric; Cartesian fields are admitted through projection and
checked for axisymmetry at construction.

The divergence in the offset chart,

    div A = [d/drho (h2 A1) + d/dq (h1 h2 A3)] / (h1 h2),

doubles as the numeric gauge diagnostic: a potential is accepted as
divergence-free when |div A| stays below a caller tolerance on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ChartDegenerateError, DomainError, EvaluationError
from .geometry import SurfaceProfile, curvatures, offset_scale_factors

# step for the q-derivative in the divergence
Q_STEP = 1e-5


def _farr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


@dataclass(frozen=True, eq=False)
class VectorPotentialSpec:
    """Axisymmetric vector potential by frame components.

    A1, A2, A3 map (rho, q) to the physical component along e1, e2, e3.
    region_mask, when present, is the indicator of the support region
    applied at construction time.
    """

    A1: Callable
    A2: Callable
    A3: Callable
    source: str  # "frame-given" | "cartesian-projected"
    region_mask: Optional[Callable] = None


def _component(value, mask) -> Callable:
    """Lift a constant or (rho, q) callable to a masked vectorized map."""
    if callable(value):
        def comp(rho, q):
            r = _farr(rho)
            out = np.broadcast_to(_farr(value(r, q)), r.shape).astype(float).copy()
            if mask is not None:
                out *= mask(r)
            return out
    else:
        const = float(value)

        def comp(rho, q):
            r = _farr(rho)
            out = np.full_like(r, const)
            if mask is not None:
                out *= mask(r)
            return out

    return comp


def frame_synthetic(a1=0.0, a2=0.0, a3=0.0,
                    gamma_interval: Optional[Tuple[float, float]] = None) -> VectorPotentialSpec:
    """Field given directly by frame components (constants or callables).

    gamma_interval = (lo, hi) restricts the support to lo <= rho <= hi with
    hard edges; outside, all components vanish.
    """
    mask = None
    if gamma_interval is not None:
        lo, hi = float(gamma_interval[0]), float(gamma_interval[1])
        if not lo <= hi:
            raise DomainError(f"gamma_interval must be ordered, got {gamma_interval}")

        def mask(r):
            return ((r >= lo) & (r <= hi)).astype(float)

    return VectorPotentialSpec(
        A1=_component(a1, mask),
        A2=_component(a2, mask),
        A3=_component(a3, mask),
        source="frame-given",
        region_mask=mask,
    )


def zero_field() -> VectorPotentialSpec:
    return frame_synthetic(0.0, 0.0, 0.0)


# ----------------------------------------------------------------------
# Cartesian fields and projection
# ----------------------------------------------------------------------

def _frame_components(cartesian_field: Callable, profile: SurfaceProfile,
                      rho, phi: float, q):
    """Project a Cartesian field onto the adapted frame at (rho, phi, q)."""
    r = _farr(rho)
    sr = _farr(profile.S_rho(r))
    S = _farr(profile.S(r))
    Z = np.sqrt(1.0 + sr * sr)
    c, s = np.cos(phi), np.sin(phi)
    rad = r - q * sr / Z          # cylindrical radius of the offset point
    x, y, z = rad * c, rad * s, S + q / Z
    fx, fy, fz = (np.asarray(v, dtype=float) for v in cartesian_field(x, y, z))
    a1 = (fx * c + fy * s + fz * sr) / Z
    a2 = -fx * s + fy * c
    a3 = (-fx * sr * c - fy * sr * s + fz) / Z
    return a1, a2, a3


def project_to_frame(cartesian_field: Callable, profile: SurfaceProfile,
                     rho: float, phi: float, q: float) -> Tuple[float, float, float]:
    """Frame components of a Cartesian field at one offset-chart point.

    The field is evaluated at x = r(rho, phi) + q e3 and dotted with the
    frame there.  Raises ChartDegenerateError outside the valid chart.
    """
    _, H, K = curvatures(profile, float(rho))
    F = 1.0 + 2.0 * q * float(H) + q * q * float(K)
    if F <= 0.0:
        raise ChartDegenerateError(f"chart degenerate at rho={rho}, q={q}: F={F}")
    a1, a2, a3 = _frame_components(cartesian_field, profile, float(rho), phi, q)
    return float(a1), float(a2), float(a3)


def from_cartesian(cartesian_field: Callable, profile: SurfaceProfile,
                   check_axisymmetry: bool = True) -> VectorPotentialSpec:
    """Field spec from a Cartesian field (x, y, z) -> (fx, fy, fz).

    Components are sampled at phi = 0, which is exact only when the frame
    components carry no phi dependence; a spot check at several angles
    enforces this unless disabled.
    """
    if check_axisymmetry:
        probes = np.array([0.25, 0.55, 0.9]) * profile.rho_max
        base = np.array(_frame_components(cartesian_field, profile, probes, 0.0, 0.0))
        scale = max(1.0, np.abs(base).max())
        for phi in (1.1, 2.7, 4.3):
            other = np.array(_frame_components(cartesian_field, profile, probes, phi, 0.0))
            if np.abs(other - base).max() > 1e-10 * scale:
                raise EvaluationError(
                    "cartesian field has phi-dependent frame components; "
                    "only axisymmetric fields are supported"
                )

    def make(i):
        def comp(rho, q):
            return _frame_components(cartesian_field, profile, rho, 0.0, q)[i]
        return comp

    return VectorPotentialSpec(
        A1=make(0), A2=make(1), A3=make(2),
        source="cartesian-projected", region_mask=None,
    )


def axial_uniform(b: float, profile: SurfaceProfile) -> VectorPotentialSpec:
    """Symmetric gauge of a uniform axial magnetic field: (B/2)(-y, x, 0).

    Purely azimuthal in the adapted frame (A1 = A3 = 0 identically), hence
    exactly divergence-free.
    """
    def field(x, y, z):
        return -0.5 * b * y, 0.5 * b * x, np.zeros_like(_farr(z))

    return from_cartesian(field, profile, check_axisymmetry=False)


def cartesian_constant(c: float, profile: SurfaceProfile) -> VectorPotentialSpec:
    """Constant Cartesian field (0, 0, c) projected onto the frame."""
    def field(x, y, z):
        zz = _farr(z)
        return np.zeros_like(zz), np.zeros_like(zz), np.full_like(zz, float(c))

    return from_cartesian(field, profile, check_axisymmetry=False)


# ----------------------------------------------------------------------
# divergence diagnostic
# ----------------------------------------------------------------------

def divergence(A: VectorPotentialSpec, profile: SurfaceProfile,
               rho: float, q: float = 0.0,
               step_rho: Optional[float] = None, step_q: float = Q_STEP) -> float:
    """Numeric divergence of A at (rho, q) by central differences.

    The rho-derivative uses step_rho (default 1e-5 * rho_max); both the
    profile and the field must be evaluable within one step of the point.
    """
    h = step_rho if step_rho is not None else 1e-5 * profile.rho_max
    if rho < h * (1.0 - 1e-12):
        raise DomainError(f"rho = {rho} smaller than differencing step {h}")

    def radial_flux(r):
        _, h2 = offset_scale_factors(profile, r, q)
        return h2 * A.A1(r, q)

    def normal_flux(qq):
        h1, h2 = offset_scale_factors(profile, rho, qq)
        return h1 * h2 * A.A3(rho, qq)

    d_rho = (radial_flux(rho + h) - radial_flux(rho - h)) / (2.0 * h)
    d_q = (normal_flux(q + step_q) - normal_flux(q - step_q)) / (2.0 * step_q)
    h1, h2 = offset_scale_factors(profile, rho, q)
    denom = float(h1 * h2)
    if denom <= 0.0:
        raise ChartDegenerateError(f"chart degenerate at rho={rho}, q={q}")
    return float((d_rho + d_q) / denom)


@dataclass(frozen=True)
class GaugeReport:
    """Outcome of the divergence-free check over a radial grid."""

    passed: bool
    max_violation: float
    at_rho: float
    tol: float
    note: str = ""


def is_coulomb_gauge(A: VectorPotentialSpec, profile: SurfaceProfile,
                     grid, tol: float) -> GaugeReport:
    """Check |div A| <= tol at every grid node (on-surface, q = 0).

    Diagnostic only: never raises, always reports the worst violation and
    where it occurs.
    """
    try:
        nodes = grid.nodes
        values = np.array([
            divergence(A, profile, float(r), 0.0, step_rho=grid.spacing)
            for r in nodes
        ])
        worst = int(np.argmax(np.abs(values)))
        max_violation = float(abs(values[worst]))
        return GaugeReport(
            passed=bool(max_violation <= tol),
            max_violation=max_violation,
            at_rho=float(nodes[worst]),
            tol=tol,
        )
    except Exception as exc:  # diagnostic never fails hard
        return GaugeReport(
            passed=False, max_violation=float("inf"), at_rho=float("nan"),
            tol=tol, note=f"evaluation failed: {exc}",
        )


def coupling_profile(A: VectorPotentialSpec, profile: SurfaceProfile, grid) -> np.ndarray:
    """Per-node product A3(rho, 0) * H(rho), the imaginary-potential source."""
    nodes = grid.nodes
    _, H, _ = curvatures(profile, nodes)
    return np.asarray(A.A3(nodes, 0.0), dtype=float) * H
