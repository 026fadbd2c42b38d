"""Frenet apparatus of a unit-speed sampled curve, with frame and
derivative-identity verification reports.

Curvature is kept nonnegative throughout; orientation information lives in
the torsion sign and the frame itself.  Samples where the curvature falls
below KAPPA_FLOOR carry no usable normal or binormal and are flagged out
instead of raising, so straight stretches inside otherwise curved data
degrade gracefully.
"""

from dataclasses import dataclass

import numpy as np

from .curves import CurveSamples
from .errors import DomainError
from .numerics import BOUNDARY_MARGIN, Grid, VectorSamples, derivative

KAPPA_FLOOR = 1e-9


@dataclass(frozen=True)
class FrenetData:
    """Tangent, normal, binormal, curvature, and torsion per sample.

    frenet_valid is false where the curvature is below KAPPA_FLOOR; N, B,
    and tau hold NaN there.
    """

    grid: Grid
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    frenet_valid: np.ndarray

    def valid_interior(self, margin: int = BOUNDARY_MARGIN) -> np.ndarray:
        """Boolean mask: frenet_valid and clear of the boundary margin."""
        mask = np.zeros(self.grid.n, dtype=bool)
        mask[self.grid.interior(margin)] = True
        return mask & self.frenet_valid


def frenet_apparatus(c: CurveSamples) -> FrenetData:
    """Compute {T, N, B, kappa, tau} from unit-speed samples.

    T is the numerical first derivative; the binormal direction comes from
    the first-two-derivatives cross product, which keeps kappa nonnegative,
    and torsion from the third derivative projected on it.
    """
    if not c.unit_speed:
        raise DomainError(
            "frenet_apparatus needs an arc-length parametrization; "
            "run arclength_reparametrize first"
        )
    pts = VectorSamples(c.grid, c.points)
    d1 = derivative(pts, 1).data
    d2 = derivative(pts, 2).data
    d3 = derivative(pts, 3).data

    cross = np.cross(d1, d2)
    kappa = np.linalg.norm(cross, axis=1)
    valid = kappa >= KAPPA_FLOOR

    # T is normalized so the triad is orthonormal by construction: B is unit
    # and perpendicular to d1 already, and N = B x T inherits both.  The
    # magnitude correction is the O(h^4) speed defect, well under any frame
    # tolerance in use.
    T = d1 / np.linalg.norm(d1, axis=1)[:, None]
    # safe denominator; invalid rows are overwritten with NaN below
    denom = np.where(valid, kappa, 1.0)
    B = cross / denom[:, None]
    N = np.cross(B, T)
    tau = np.einsum("ij,ij->i", cross, d3) / denom**2
    B[~valid] = np.nan
    N[~valid] = np.nan
    tau[~valid] = np.nan

    return FrenetData(grid=c.grid, T=T, N=N, B=B, kappa=kappa, tau=tau, frenet_valid=valid)


@dataclass(frozen=True)
class FrameCheck:
    """Worst-case orthonormality and handedness violations.

    Each field is a max of |deviation| over valid interior samples; vacuous
    marks the no-valid-samples case, which passes by convention.
    """

    norm_T: float
    norm_N: float
    norm_B: float
    dot_TN: float
    dot_TB: float
    dot_NB: float
    handedness: float
    passed: bool
    vacuous: bool


def verify_frame(f: FrenetData, tol: float = 1e-6) -> FrameCheck:
    if tol <= 0:
        raise ValueError("tol must be positive")
    mask = f.valid_interior()
    if not np.any(mask):
        return FrameCheck(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, passed=True, vacuous=True)
    T, N, B = f.T[mask], f.N[mask], f.B[mask]

    def _max(x):
        return float(np.max(np.abs(x)))

    devs = FrameCheck(
        norm_T=_max(np.linalg.norm(T, axis=1) - 1.0),
        norm_N=_max(np.linalg.norm(N, axis=1) - 1.0),
        norm_B=_max(np.linalg.norm(B, axis=1) - 1.0),
        dot_TN=_max(np.einsum("ij,ij->i", T, N)),
        dot_TB=_max(np.einsum("ij,ij->i", T, B)),
        dot_NB=_max(np.einsum("ij,ij->i", N, B)),
        handedness=_max(np.einsum("ij,ij->i", np.cross(T, N), B) - 1.0),
        passed=False,
        vacuous=False,
    )
    worst = max(
        devs.norm_T, devs.norm_N, devs.norm_B,
        devs.dot_TN, devs.dot_TB, devs.dot_NB, devs.handedness,
    )
    object.__setattr__(devs, "passed", bool(worst < tol))
    return devs


@dataclass(frozen=True)
class ResidualCheck:
    """Worst-case residuals of the frame derivative identities
    T' = kappa N, N' = -kappa T + tau B, B' = -tau N."""

    res_T: float
    res_N: float
    res_B: float
    passed: bool
    vacuous: bool


def frenet_derivative_check(f: FrenetData, tol: float = 1e-4,
                            margin: int = 2 * BOUNDARY_MARGIN) -> ResidualCheck:
    # The frame fields are themselves finite-difference output, so this
    # second differentiation pass doubles the boundary-contaminated band:
    # stencils that straddle the one-sided rows of the first pass lose an
    # order.  Statistics therefore skip twice the usual margin.
    if tol <= 0:
        raise ValueError("tol must be positive")
    dT = derivative(VectorSamples(f.grid, f.T), 1).data
    with np.errstate(invalid="ignore"):
        dN = derivative(VectorSamples(f.grid, f.N), 1).data
        dB = derivative(VectorSamples(f.grid, f.B), 1).data
        k = f.kappa[:, None]
        t = f.tau[:, None]
        rT = np.linalg.norm(dT - k * f.N, axis=1)
        rN = np.linalg.norm(dN + k * f.T - t * f.B, axis=1)
        rB = np.linalg.norm(dB + t * f.N, axis=1)
    mask = f.valid_interior(margin) & np.isfinite(rT) & np.isfinite(rN) & np.isfinite(rB)
    if not np.any(mask):
        return ResidualCheck(0.0, 0.0, 0.0, passed=True, vacuous=True)
    res_T = float(np.max(rT[mask]))
    res_N = float(np.max(rN[mask]))
    res_B = float(np.max(rB[mask]))
    return ResidualCheck(
        res_T=res_T,
        res_N=res_N,
        res_B=res_B,
        passed=bool(max(res_T, res_N, res_B) < tol),
        vacuous=False,
    )
