"""Curve classification predicates: straight line, plane curve, general
helix, slant helix, and rectifying curve, plus an aggregate report.

Every statistic excludes boundary-contaminated rows and samples whose
Frenet data is undefined; the slant-helix invariant additionally goes NaN
wherever its derivative stencil touches an undefined row, and those samples
drop out of the verdict rather than poisoning it.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import CurveSamples, arclength_reparametrize
from .errors import DomainError
from .frenet import FrenetData, frenet_apparatus
from .numerics import (
    BOUNDARY_MARGIN,
    ConstancyReport,
    ScalarSamples,
    constancy,
    derivative,
)

# a constancy verdict whose level is below this magnitude is the
# identically-zero case: true as stated but carrying no axis information
ZERO_LEVEL = 1e-6


def _no_samples(who: str) -> DomainError:
    return DomainError(f"{who}: no usable samples (curvature below floor or all boundary)")


def general_helix_test(f: FrenetData, rel_tol: float = 1e-3) -> ConstancyReport:
    """Constancy verdict on torsion/curvature over usable samples.

    A ratio that is identically zero (plane curves) is constant with
    degenerate_zero set; relative variation is meaningless on a roundoff
    floor, and the median-against-level test mirrors slant_helix_test.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    mask = f.valid_interior()
    if not np.any(mask):
        raise _no_samples("general_helix_test")
    vals = f.tau[mask] / f.kappa[mask]
    if np.median(np.abs(vals)) < ZERO_LEVEL:
        return ConstancyReport(
            mean=float(vals.mean()),
            min=float(vals.min()),
            max=float(vals.max()),
            rel_variation=float(vals.max() - vals.min()) / ZERO_LEVEL,
            is_constant=True,
            degenerate_zero=True,
        )
    return constancy(vals, rel_tol)


def slant_helix_invariant(f: FrenetData) -> ScalarSamples:
    """Pointwise turning measure of the principal normal direction:
    curvature^2 / (curvature^2 + torsion^2)^(3/2) times the derivative of
    torsion/curvature.  NaN where the frame is undefined or the derivative
    stencil touches such a sample."""
    if not np.any(f.frenet_valid):
        raise _no_samples("slant_helix_invariant")
    n = f.grid.n
    ratio = np.full(n, np.nan)
    m = f.frenet_valid
    ratio[m] = f.tau[m] / f.kappa[m]
    d = derivative(ScalarSamples(f.grid, ratio), 1).data
    sq = f.kappa**2 + f.tau**2
    with np.errstate(invalid="ignore"):
        sigma = (f.kappa**2 / sq**1.5) * d
    return ScalarSamples(f.grid, sigma)


def slant_helix_test(
    f: FrenetData, rel_tol: float = 1e-3, cos_floor: float = 0.05
) -> ConstancyReport:
    """Constancy verdict on the magnitude of the slant-helix invariant.

    Magnitudes, not raw values: under the nonnegative-curvature convention
    the principal normal flips orientation across curvature zeros, which
    flips the raw invariant's sign piecewise while the underlying axis
    angle stays constant.  The tripled boundary margin keeps one-sided
    rows of the whole derivative chain out of the statistics, and samples
    where curvature falls below cos_floor times the curvature/torsion norm
    are excluded: the torsion/curvature ratio has a pole there and stencils
    that straddle it produce finite garbage.

    An identically-zero invariant (every general helix) is reported
    constant with degenerate_zero set: the constancy claim is true but the
    zero level means no slant axis exists.  The zero test uses the median
    because the folded values sit on a rough roundoff floor whose extreme
    outliers scale with grid resolution.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    sigma = slant_helix_invariant(f).data
    mask = np.zeros(f.grid.n, dtype=bool)
    mask[f.grid.interior(3 * BOUNDARY_MARGIN)] = True
    mask &= np.isfinite(sigma)
    if cos_floor > 0.0:
        with np.errstate(invalid="ignore"):
            frac = f.kappa / np.sqrt(f.kappa**2 + f.tau**2)
        mask &= np.nan_to_num(frac) >= cos_floor
    if not np.any(mask):
        raise _no_samples("slant_helix_test")
    vals = np.abs(sigma[mask])
    if np.median(vals) < ZERO_LEVEL:
        return ConstancyReport(
            mean=float(vals.mean()),
            min=float(vals.min()),
            max=float(vals.max()),
            rel_variation=float(vals.max() - vals.min()) / ZERO_LEVEL,
            is_constant=True,
            degenerate_zero=True,
        )
    return constancy(vals, rel_tol)


def line_test(f: FrenetData, abs_tol: float = 1e-6) -> bool:
    """True when the curvature vanishes to tolerance: the samples trace a
    straight segment and no frame-based predicate applies."""
    inner = f.grid.interior()
    return bool(np.max(f.kappa[inner]) < abs_tol)


def plane_test(f: FrenetData, abs_tol: float = 1e-6) -> bool:
    mask = f.valid_interior()
    if not np.any(mask):
        return False
    return bool(np.max(np.abs(f.tau[mask])) < abs_tol)


@dataclass(frozen=True)
class LineFit:
    """Ordinary least squares of a sampled ratio against arc length."""

    slope: float
    intercept: float
    max_residual: float


@dataclass(frozen=True)
class RectifyingReport:
    """Position-in-rectifying-plane statistic plus the linearity of
    torsion/curvature, the two halves of the rectifying characterization."""

    normal_component: float
    fit: LineFit
    is_rectifying: bool


def rectifying_test(c: CurveSamples, f: FrenetData, tol: float = 2e-2) -> RectifyingReport:
    """Check whether the position vector stays in the rectifying plane and
    torsion/curvature grows linearly in arc length.

    normal_component is max |<position, N>| / max |position| over usable
    samples; the fit residual is compared against tol scaled by the fitted
    line's own span, so steep and flat ratios are judged alike.
    """
    if c.grid != f.grid:
        raise ValueError(f"grids differ: {c.grid} vs {f.grid}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    mask = f.valid_interior()
    if not np.any(mask):
        raise _no_samples("rectifying_test")
    pts = c.points[mask]
    normal = float(np.max(np.abs(np.einsum("ij,ij->i", pts, f.N[mask]))))
    scale = float(np.max(np.linalg.norm(pts, axis=1)))
    normal_component = normal / max(scale, 1e-12)

    s = c.grid.values[mask]
    ratio = f.tau[mask] / f.kappa[mask]
    slope, intercept = np.polyfit(s, ratio, 1)
    residual = float(np.max(np.abs(ratio - (slope * s + intercept))))
    span = float(s[-1] - s[0])
    fit = LineFit(slope=float(slope), intercept=float(intercept), max_residual=residual)
    ok = normal_component < tol and residual < tol * (1.0 + abs(slope) * span)
    return RectifyingReport(normal_component=normal_component, fit=fit, is_rectifying=bool(ok))


@dataclass(frozen=True)
class ClassificationReport:
    """Aggregate verdicts.  For a straight line the frame never exists, so
    every frame-based field is suppressed (None / False)."""

    is_line: bool
    is_plane: bool
    is_general_helix: bool
    is_slant_helix: bool
    is_rectifying: bool
    helix_ratio: Optional[ConstancyReport]
    sigma_it: Optional[ConstancyReport]
    rectifying: Optional[RectifyingReport]


# stands in for a measured report when a field is known to be identically
# zero by implication; the noise statistics of such a field carry no
# information, so they are reported as the exact zeros they represent
_IDENTICALLY_ZERO = ConstancyReport(
    mean=0.0, min=0.0, max=0.0, rel_variation=0.0,
    is_constant=True, degenerate_zero=True,
)


def classify(
    c: CurveSamples,
    rel_tol: float = 1e-3,
    abs_tol: float = 1e-6,
    rect_tol: float = 2e-2,
) -> ClassificationReport:
    """Run every predicate on a sampled curve, reparametrizing to unit
    speed first when needed.

    Degenerate-zero fields are decided here by implication from the more
    robust upstream verdict, not by each test's own noise-floor median: a
    plane curve's torsion/curvature and a constant-ratio curve's slant
    invariant are identically zero, and measuring them yields floor noise
    whose absolute level moves with the coordinate magnitudes, so a rigid
    motion could flip a median-based verdict.  Call the individual tests
    for the raw measured statistics.
    """
    if not c.unit_speed:
        c = arclength_reparametrize(c, c.grid.n)
    f = frenet_apparatus(c)
    if line_test(f, abs_tol):
        return ClassificationReport(
            is_line=True,
            is_plane=False,
            is_general_helix=False,
            is_slant_helix=False,
            is_rectifying=False,
            helix_ratio=None,
            sigma_it=None,
            rectifying=None,
        )
    is_plane = plane_test(f, abs_tol)
    helix_ratio = (
        _IDENTICALLY_ZERO if is_plane else general_helix_test(f, rel_tol)
    )
    sigma = (
        _IDENTICALLY_ZERO
        if helix_ratio.is_constant
        else slant_helix_test(f, rel_tol)
    )
    rect = rectifying_test(c, f, rect_tol)
    return ClassificationReport(
        is_line=False,
        is_plane=is_plane,
        is_general_helix=helix_ratio.is_constant,
        is_slant_helix=sigma.is_constant,
        is_rectifying=rect.is_rectifying,
        helix_ratio=helix_ratio,
        sigma_it=sigma,
        rectifying=rect,
    )
