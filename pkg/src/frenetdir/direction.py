"""Direction curves built from a donor frame: integral curves of unit
fields lying in the osculating plane (or along the normal / binormal), the
closed-form predictions for their Frenet data, and the inverse map that
recovers the donor's curvatures from a constructed curve.

The osculating-plane coefficient pair is u = sin(theta), v = cos(theta)
with theta the accumulated curvature plus a free phase; every construction
here keeps that phase explicit because all downstream identities are
phase-covariant.
"""

from dataclasses import dataclass

import numpy as np

from .curves import CurveSamples
from .errors import DomainError
from .frenet import KAPPA_FLOOR, FrenetData
from .numerics import (
    Grid,
    ScalarSamples,
    VectorSamples,
    cumulative_integral,
    derivative,
)

# |sin theta| or |cos theta| below this marks a sample as degenerate for
# classification purposes (the construction itself stays smooth there)
DEGENERACY_FLOOR = 1e-6


def _runs_to_intervals(grid: Grid, bad: np.ndarray) -> str:
    s = grid.values
    edges = np.flatnonzero(np.diff(np.concatenate([[False], bad, [False]]).astype(int)))
    spans = [f"[{s[a]:g}, {s[b - 1]:g}]" for a, b in zip(edges[::2], edges[1::2])]
    return ", ".join(spans)


def _require_valid(f: FrenetData, who: str) -> None:
    if not f.frenet_valid.all():
        bad = ~f.frenet_valid
        raise DomainError(
            f"{who}: donor frame undefined (curvature below floor) on {_runs_to_intervals(f.grid, bad)}"
        )


def _require_same_grid(a: Grid, b: Grid) -> None:
    if a != b:
        raise ValueError(f"grids differ: {a} vs {b}")


@dataclass(frozen=True)
class DirectionCoefficients:
    """Coefficients of a unit field in the donor's osculating plane.

    theta accumulates the donor curvature from the grid start, so
    theta[0] == phase_c.  degeneracy_flags marks samples where either
    coefficient is too close to zero for the classification premises.
    """

    grid: Grid
    theta: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    phase_c: float
    degeneracy_flags: np.ndarray


def osculating_coefficients(f: FrenetData, phase_c: float) -> DirectionCoefficients:
    _require_valid(f, "osculating_coefficients")
    theta = cumulative_integral(ScalarSamples(f.grid, f.kappa), initial=phase_c).data
    u = np.sin(theta)
    v = np.cos(theta)
    flags = (np.abs(u) < DEGENERACY_FLOOR) | (np.abs(v) < DEGENERACY_FLOOR)
    return DirectionCoefficients(
        grid=f.grid,
        theta=theta,
        u=u,
        v=v,
        w=np.zeros(f.grid.n),
        phase_c=float(phase_c),
        degeneracy_flags=flags,
    )


def direction_field(f: FrenetData, dc: DirectionCoefficients) -> VectorSamples:
    """The unit field u T + v N sampled along the donor."""
    _require_same_grid(f.grid, dc.grid)
    _require_valid(f, "direction_field")
    X = dc.u[:, None] * f.T + dc.v[:, None] * f.N
    return VectorSamples(f.grid, X)


def integrate_direction_curve(X: VectorSamples, start=(0.0, 0.0, 0.0)) -> CurveSamples:
    """Integral curve of a unit field; its parameter is arc length by
    construction, so the result is marked unit_speed."""
    norms = np.linalg.norm(X.data, axis=1)
    worst = float(np.max(np.abs(norms - 1.0)))
    if worst > 1e-6:
        raise ValueError(f"field is not unit length (max deviation {worst:.3g})")
    pts = cumulative_integral(X, initial=np.asarray(start, dtype=float))
    return CurveSamples(grid=X.grid, points=pts.data, unit_speed=True)


def osculating_direction_curve(f: FrenetData, phase_c: float, start=(0.0, 0.0, 0.0)) -> CurveSamples:
    """Convenience composition: coefficients, field, then integral curve."""
    dc = osculating_coefficients(f, phase_c)
    return integrate_direction_curve(direction_field(f, dc), start)


def principal_direction_curve(f: FrenetData, start=(0.0, 0.0, 0.0)) -> CurveSamples:
    _require_valid(f, "principal_direction_curve")
    return integrate_direction_curve(VectorSamples(f.grid, f.N.copy()), start)


def binormal_direction_curve(f: FrenetData, start=(0.0, 0.0, 0.0)) -> CurveSamples:
    _require_valid(f, "binormal_direction_curve")
    return integrate_direction_curve(VectorSamples(f.grid, f.B.copy()), start)


@dataclass(frozen=True)
class PredictedBar:
    """Closed-form Frenet data of the osculating-direction curve, written in
    the donor's frame.  Curvature and torsion are kept signed; numerical
    comparisons take the magnitude where needed."""

    grid: Grid
    kappa_bar_signed: np.ndarray
    tau_bar_signed: np.ndarray
    Tbar: np.ndarray
    Nbar: np.ndarray
    Bbar: np.ndarray


def predicted_bar_data(f: FrenetData, dc: DirectionCoefficients) -> PredictedBar:
    _require_same_grid(f.grid, dc.grid)
    _require_valid(f, "predicted_bar_data")
    u, v = dc.u[:, None], dc.v[:, None]
    return PredictedBar(
        grid=f.grid,
        kappa_bar_signed=f.tau * dc.v,
        tau_bar_signed=f.tau * dc.u,
        Tbar=u * f.T + v * f.N,
        Nbar=f.B.copy(),
        Bbar=v * f.T - u * f.N,
    )


@dataclass(frozen=True)
class AgreementReport:
    """Worst-case gap between a constructed curve's numerical curvature and
    torsion and the closed-form prediction."""

    dev_kappa: float
    dev_tau: float
    samples_used: int
    passed: bool


def compare_predicted(
    g: FrenetData,
    pb: PredictedBar,
    dc: DirectionCoefficients,
    atol: float = 2e-4,
    cos_floor: float = 0.0,
) -> AgreementReport:
    """Compare numerical Frenet data of a constructed curve against the
    prediction.

    Numerical curvature is nonnegative, so it is checked against the
    magnitude of the signed prediction; the torsion prediction needs no
    sign adjustment (both signed quantities flip together through a
    curvature zero).  cos_floor > 0 additionally excludes samples where
    |v| is small and the curvature denominator amplifies grid error.
    """
    _require_same_grid(g.grid, pb.grid)
    _require_same_grid(g.grid, dc.grid)
    mask = g.valid_interior() & ~dc.degeneracy_flags
    if cos_floor > 0.0:
        mask &= np.abs(dc.v) > cos_floor
    if not np.any(mask):
        return AgreementReport(np.nan, np.nan, 0, passed=False)
    dev_k = float(np.max(np.abs(g.kappa[mask] - np.abs(pb.kappa_bar_signed[mask]))))
    dev_t = float(np.max(np.abs(g.tau[mask] - pb.tau_bar_signed[mask])))
    return AgreementReport(
        dev_kappa=dev_k,
        dev_tau=dev_t,
        samples_used=int(mask.sum()),
        passed=bool(max(dev_k, dev_t) < atol),
    )


@dataclass(frozen=True)
class RecoveredCurvatures:
    kappa: ScalarSamples
    tau: ScalarSamples


def donor_from_direction(g: FrenetData) -> RecoveredCurvatures:
    """Recover the donor's curvature and torsion from a direction curve's
    own Frenet data: the donor torsion is the curvature/torsion norm, and
    the donor curvature is the turning rate of their ratio."""
    if not g.frenet_valid.all():
        bad = ~g.frenet_valid
        raise DomainError(
            f"donor_from_direction: curvature below floor on {_runs_to_intervals(g.grid, bad)}"
        )
    if np.any(g.kappa < KAPPA_FLOOR):
        bad = g.kappa < KAPPA_FLOOR
        raise DomainError(
            f"donor_from_direction: curvature below floor on {_runs_to_intervals(g.grid, bad)}"
        )
    sq = g.kappa**2 + g.tau**2
    ratio = derivative(ScalarSamples(g.grid, g.tau / g.kappa), 1).data
    kappa = (g.kappa**2 / sq) * ratio
    return RecoveredCurvatures(
        kappa=ScalarSamples(g.grid, kappa),
        tau=ScalarSamples(g.grid, np.sqrt(sq)),
    )


@dataclass(frozen=True)
class MannheimReport:
    """Alignment of the constructed curve's normal with the donor binormal
    at shared parameter values."""

    min_alignment: float
    passed: bool
    vacuous: bool


def mannheim_check(g: FrenetData, f: FrenetData, tol: float = 1e-4) -> MannheimReport:
    _require_same_grid(g.grid, f.grid)
    if tol <= 0:
        raise ValueError("tol must be positive")
    mask = g.valid_interior() & f.frenet_valid
    if not np.any(mask):
        return MannheimReport(np.nan, passed=True, vacuous=True)
    align = np.abs(np.einsum("ij,ij->i", g.N[mask], f.B[mask]))
    mn = float(np.min(align))
    return MannheimReport(min_alignment=mn, passed=bool(mn >= 1.0 - tol), vacuous=False)
