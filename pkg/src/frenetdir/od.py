"""Companion curves built in the donor's osculating plane.

The construction places a curve at

    gamma(s) = [(s + b) sin(theta) + a cos(theta)] T(s)
             + [(s + b) cos(theta) - a sin(theta)] N(s)

with theta the accumulated donor curvature plus a phase, and the
verification side checks the three properties such a curve is meant to
have: position confined to its own rectifying plane, torsion/curvature
growing linearly as (s + b)/a, and position parallel to the modified
Darboux vector.

The two sides agree only for donors whose curvature over the window is
kappa(s) = a / (a^2 + (s+b)^2) with the phase matching arctan(b/a):
differentiating the position gives

    gamma' = sin(theta) T + cos(theta) N + n tau B,

so the curve is unit-speed (and the verification properties hold) exactly
where the N-coefficient n vanishes, which pins theta to arctan((s+b)/a)
and hence kappa to that profile.  For any other donor the construction
still evaluates fine, but the output's unit_speed flag records the
measured speed and the verification report says how far the properties
fail.  Tests cover both regimes.
"""

from dataclasses import dataclass

import numpy as np

from .classify import LineFit, RectifyingReport, rectifying_test
from .curves import (
    CurveSamples,
    UNIT_SPEED_TOL,
    arclength_reparametrize,
    unit_speed_deviation,
)
from .direction import _require_valid
from .errors import DomainError
from .frenet import FrenetData, frenet_apparatus
from .numerics import (
    BOUNDARY_MARGIN,
    ScalarSamples,
    VectorSamples,
    cumulative_integral,
)

# ratio and cross-product statistics skip samples where curvature is this
# small relative to the curvature/torsion norm; the torsion estimate loses
# accuracy as its denominator shrinks (same threshold classify uses)
RATIO_FLOOR = 0.05


@dataclass(frozen=True)
class ODParameters:
    """Integration constants of the osculating-plane construction.

    a scales the binormal component of the position, b offsets arc length;
    both enter the predicted ratio line (s + b)/a.  phase_c seeds the
    accumulated-curvature angle at the first sample.
    """

    a: float
    b: float
    phase_c: float = 0.0

    def __post_init__(self):
        if self.a == 0.0 or self.b == 0.0:
            raise ValueError("ODParameters: a and b must be nonzero")


def od_osculating_curve(f: FrenetData, p: ODParameters) -> CurveSamples:
    """Evaluate the osculating-plane companion of a donor curve.

    Direct formula, no integration of a direction field: the position is
    m(s) T(s) + n(s) N(s) with m, n the rotated pair of (s - s_min + b, a)
    through theta.  The returned unit_speed flag is measured, not assumed;
    see the module docstring for when it can be true.
    """
    _require_valid(f, "od_osculating_curve")
    theta = cumulative_integral(ScalarSamples(f.grid, f.kappa), initial=p.phase_c).data
    rho = (f.grid.values - f.grid.values[0]) + p.b
    m = rho * np.sin(theta) + p.a * np.cos(theta)
    n = rho * np.cos(theta) - p.a * np.sin(theta)
    pts = m[:, None] * f.T + n[:, None] * f.N
    c = CurveSamples(grid=f.grid, points=pts, unit_speed=False)
    flag = unit_speed_deviation(c) <= UNIT_SPEED_TOL
    return CurveSamples(grid=f.grid, points=pts, unit_speed=flag)


def modified_darboux(f: FrenetData) -> VectorSamples:
    """Rotation-axis field (torsion/curvature) T + B, NaN where the frame
    is undefined."""
    if not np.any(f.frenet_valid):
        raise DomainError("modified_darboux: curvature below floor everywhere")
    out = np.full((f.grid.n, 3), np.nan)
    m = f.frenet_valid
    out[m] = (f.tau[m] / f.kappa[m])[:, None] * f.T[m] + f.B[m]
    return VectorSamples(f.grid, out)


@dataclass(frozen=True)
class ODReport:
    """Measured distance from the three companion-curve properties.

    speed_deviation is max |speed - 1| of the input samples.  ratio_fit is
    the least-squares line of torsion/curvature against arc length from
    the first sample; slope_error and intercept_error compare it with the
    predicted (s + b)/a.  cross_ratio is the worst normalized cross
    product between the position and the modified Darboux vector (0 for
    parallel, 1 for perpendicular).
    """

    speed_deviation: float
    rectifying: RectifyingReport
    ratio_fit: LineFit
    slope_error: float
    intercept_error: float
    cross_ratio: float
    passed: bool


def verify_od_properties(
    gamma: CurveSamples, p: ODParameters, tol: float = 2e-2
) -> ODReport:
    """Check a curve against the rectifying / linear-ratio / Darboux
    properties predicted for osculating-plane companions.

    Generic: any sampled curve can be checked.  Non-unit-speed input is
    reparametrized before its frame is computed; note the resampling step
    costs accuracy in the torsion of low-curvature curves, so a curve that
    is already unit-speed is judged much more sharply.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    speed_dev = unit_speed_deviation(gamma)
    cu = gamma if gamma.unit_speed else arclength_reparametrize(gamma, gamma.grid.n)
    g = frenet_apparatus(cu)
    rect = rectifying_test(cu, g, tol)

    mask = np.zeros(g.grid.n, dtype=bool)
    mask[g.grid.interior(2 * BOUNDARY_MARGIN)] = True
    mask &= g.frenet_valid
    with np.errstate(invalid="ignore"):
        frac = g.kappa / np.sqrt(g.kappa**2 + g.tau**2)
    mask &= np.nan_to_num(frac) >= RATIO_FLOOR
    if not np.any(mask):
        raise DomainError(
            "verify_od_properties: no usable samples (curvature below floor "
            "or all boundary)"
        )

    srel = cu.grid.values[mask] - cu.grid.values[0]
    ratio = g.tau[mask] / g.kappa[mask]
    slope, intercept = np.polyfit(srel, ratio, 1)
    residual = float(np.max(np.abs(ratio - (slope * srel + intercept))))
    fit = LineFit(slope=float(slope), intercept=float(intercept), max_residual=residual)
    slope_error = abs(float(slope) - 1.0 / p.a)
    intercept_error = abs(float(intercept) - p.b / p.a)

    axis = modified_darboux(g).data
    pts = cu.points[mask]
    ax = axis[mask]
    cross = np.linalg.norm(np.cross(pts, ax), axis=1)
    denom = np.linalg.norm(pts, axis=1) * np.linalg.norm(ax, axis=1)
    cross_ratio = float(np.max(cross / np.maximum(denom, 1e-12)))

    passed = bool(
        rect.is_rectifying
        and slope_error < tol
        and intercept_error < tol
        and cross_ratio < tol
    )
    return ODReport(
        speed_deviation=float(speed_dev),
        rectifying=rect,
        ratio_fit=fit,
        slope_error=slope_error,
        intercept_error=intercept_error,
        cross_ratio=cross_ratio,
        passed=passed,
    )
