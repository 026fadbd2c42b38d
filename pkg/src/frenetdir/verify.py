"""Catalog-wide verification table behind the command line front end.

Every row measures one property of the catalog curves or their companion
constructions and compares the deviation against a fixed tolerance.  Row
ids are stable filter tokens.  Most rows pass when the deviation stays
below tolerance; rows that assert a quantity stays above a threshold
(non-constancy of a ratio, convergence factors, a check that is supposed
to fail) invert the comparison, and each row's passed field already
accounts for the direction.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .classify import (
    classify,
    general_helix_test,
    slant_helix_test,
)
from .curves import CurveSamples, catalog_names, evaluate_catalog
from .direction import (
    direction_field,
    donor_from_direction,
    integrate_direction_curve,
    mannheim_check,
    osculating_coefficients,
)
from .frenet import frenet_apparatus
from .numerics import (
    BOUNDARY_MARGIN,
    ScalarSamples,
    VectorSamples,
    cumulative_integral,
    derivative,
    uniform_grid,
)
from .od import ODParameters, od_osculating_curve, verify_od_properties

__all__ = ["CheckRow", "run_checks", "check_names"]


@dataclass(frozen=True)
class CheckRow:
    check: str
    curve: str
    deviation: float
    tolerance: float
    # True when the row wants deviation >= tolerance instead of below
    exceeds: bool
    passed: bool


def _row(check, curve, deviation, tolerance, exceeds=False, passed=None):
    dev = float(deviation)
    if passed is None:
        passed = dev >= tolerance if exceeds else dev < tolerance
    return CheckRow(
        check=check,
        curve=curve,
        deviation=dev,
        tolerance=float(tolerance),
        exceeds=exceeds,
        passed=bool(passed),
    )


def _frenet(ctx, name, lo=None, hi=None, n=2001):
    key = (name, lo, hi, n)
    if key not in ctx:
        grid = None if lo is None else uniform_grid(lo, hi, n)
        ctx[key] = frenet_apparatus(evaluate_catalog(name, grid=grid))
    return ctx[key]


def _pair(ctx, name, phase, lo=None, hi=None, n=2001):
    key = ("pair", name, phase, lo, hi, n)
    if key not in ctx:
        f = _frenet(ctx, name, lo, hi, n)
        dc = osculating_coefficients(f, phase)
        g = frenet_apparatus(integrate_direction_curve(direction_field(f, dc)))
        ctx[key] = (f, dc, g)
    return ctx[key]


def _spherical_pair(ctx):
    if "spherical" not in ctx:
        f = _frenet(ctx, "spherical_helix", -0.49, 0.49, 801)
        span = cumulative_integral(ScalarSamples(f.grid, f.kappa)).data[-1]
        phase = np.pi / 2 + (np.pi / 2 - span) / 2
        dc = osculating_coefficients(f, phase)
        g = frenet_apparatus(integrate_direction_curve(direction_field(f, dc)))
        ctx["spherical"] = (f, dc, g)
    return ctx["spherical"]


def _constant_rows(ctx):
    rows = []
    for name, k0, t0 in (
        ("helix_12_5", 12.0 / 169.0, 5.0 / 169.0),
        ("circular_helix", 0.5, 0.5),
    ):
        f = _frenet(ctx, name)
        m = np.zeros(f.grid.n, dtype=bool)
        m[f.grid.interior(BOUNDARY_MARGIN)] = True
        m &= f.frenet_valid
        dev = max(np.max(np.abs(f.kappa[m] - k0)), np.max(np.abs(f.tau[m] - t0)))
        rows.append(_row("constants", name, dev, 1e-6))
    return rows


def _mannheim_rows(ctx):
    rows = []
    for name in ("circular_helix", "helix_12_5"):
        f, _, g = _pair(ctx, name, np.pi / 4)
        rep = mannheim_check(g, f)
        rows.append(_row("thm3.2", name, 1.0 - rep.min_alignment, 1e-4))
    return rows


def _bar_agreement_rows(ctx):
    _, _, g = _pair(ctx, "circular_helix", np.pi / 4)
    s = g.grid.values
    angle = s / 2 + np.pi / 4
    pred_kappa = np.abs(0.5 * np.cos(angle))
    pred_tau = 0.5 * np.sin(angle)
    m = np.zeros(g.grid.n, dtype=bool)
    m[g.grid.interior(2 * BOUNDARY_MARGIN)] = True
    m &= g.frenet_valid & (np.abs(np.cos(angle)) >= 0.05)
    dev = max(
        np.max(np.abs(g.kappa[m] - pred_kappa[m])),
        np.max(np.abs(g.tau[m] - pred_tau[m])),
    )
    return [_row("thm3.3", "circular_helix", dev, 2e-4)]


def _round_trip_rows(ctx):
    # sub-intervals keep the direction angle's cosine above 0.05; coarse
    # grids keep the third-derivative chain truncation-limited
    rows = []
    for name, hi, k0, t0 in (
        ("circular_helix", 1.47, 0.5, 0.5),
        ("helix_12_5", 10.35, 12.0 / 169.0, 5.0 / 169.0),
    ):
        _, _, g = _pair(ctx, name, np.pi / 4, 0.0, hi, 201)
        rec = donor_from_direction(g)
        inner = g.grid.interior(6)
        dev = max(
            np.max(np.abs(rec.kappa.data[inner] - k0) / k0),
            np.max(np.abs(rec.tau.data[inner] - t0) / t0),
        )
        rows.append(_row("thm3.4", name, dev, 1e-3))
    return rows


def _sigma_rows(ctx):
    rows = []
    for name, phase, expect, tol in (
        ("circular_helix", np.pi / 4, 1.0, 1e-2),
        ("helix_12_5", 0.11, 2.4, 1e-2),
    ):
        _, _, g = _pair(ctx, name, phase)
        rep = slant_helix_test(g)
        dev = max(abs(rep.mean - expect), rep.rel_variation)
        rows.append(_row("thm4.1", name, dev, tol))
    _, _, g = _spherical_pair(ctx)
    rep = slant_helix_test(g)
    dev = max(abs(abs(rep.mean) - 2.0), rep.rel_variation)
    rows.append(_row("thm4.1", "spherical_helix", dev, 2e-2))
    return rows


def _non_helix_rows(ctx):
    rows = []
    for name, phase, lo, hi, n in (
        ("circular_helix", np.pi / 4, None, None, 2001),
        ("root_curve", 0.2, 0.05, 0.95, 401),
        ("helix_12_5", 0.11, None, None, 2001),
    ):
        _, _, g = _pair(ctx, name, phase, lo, hi, n)
        rep = general_helix_test(g)
        rows.append(
            _row(
                "thm4.2",
                name,
                rep.rel_variation,
                1e-3,
                exceeds=True,
                passed=not rep.is_constant,
            )
        )
    return rows


def _rectifying_rows(ctx):
    rows = []
    p = ODParameters(1.0, 1.0)
    for name, lo, hi in (
        ("root_curve", 0.05, 0.95),
        ("helix_12_5", 0.0, 169.0),
    ):
        f = _frenet(ctx, name, lo, hi, 2001)
        rep = verify_od_properties(od_osculating_curve(f, p), p)
        dev = max(
            rep.rectifying.normal_component,
            rep.slope_error,
            rep.intercept_error,
            rep.cross_ratio,
        )
        rows.append(_row("thm4.4", name, dev, 2e-2, passed=rep.passed))
    plain = verify_od_properties(evaluate_catalog("circular_helix"), p)
    rows.append(
        _row(
            "thm4.4",
            "circular_helix",
            plain.rectifying.normal_component,
            2e-2,
            exceeds=True,
            passed=not plain.rectifying.is_rectifying,
        )
    )
    return rows


def _orthonormality(f):
    m = f.frenet_valid
    frames = np.stack([f.T[m], f.N[m], f.B[m]], axis=1)
    gram = np.einsum("nij,nkj->nik", frames, frames)
    return np.max(np.abs(gram - np.eye(3)))


def _frame_system_residual(f, margin=2 * BOUNDARY_MARGIN):
    dT = derivative(VectorSamples(f.grid, f.T), 1).data
    dN = derivative(VectorSamples(f.grid, f.N), 1).data
    dB = derivative(VectorSamples(f.grid, f.B), 1).data
    k, t = f.kappa[:, None], f.tau[:, None]
    r1 = np.linalg.norm(dT - k * f.N, axis=1)
    r2 = np.linalg.norm(dN + k * f.T - t * f.B, axis=1)
    r3 = np.linalg.norm(dB + t * f.N, axis=1)
    m = np.zeros(f.grid.n, dtype=bool)
    m[f.grid.interior(margin)] = True
    m &= f.frenet_valid
    return max(np.max(r1[m]), np.max(r2[m]), np.max(r3[m]))


# root_curve and spherical_helix have curvature singularities within 1e-3
# of their default domain ends, so derivative-based suites run on the same
# trimmed windows the classification examples use
_RESOLVABLE = (
    ("circular_helix", None, None),
    ("helix_12_5", None, None),
    ("root_curve", 0.05, 0.95),
    ("spherical_helix", -0.49, 0.49),
)


def _property_rows(ctx):
    rows = []

    dev = max(_orthonormality(_frenet(ctx, name)) for name in catalog_names())
    rows.append(_row("props", "orthonormality", dev, 1e-6))

    dev = max(
        _frame_system_residual(_frenet(ctx, name, lo, hi))
        for name, lo, hi in _RESOLVABLE
    )
    rows.append(_row("props", "frame-system", dev, 1e-4))

    dev = 0.0
    for name, lo, hi in _RESOLVABLE:
        f = _frenet(ctx, name, lo, hi)
        dc = osculating_coefficients(f, np.pi / 4)
        x = direction_field(f, dc).data
        dev = max(dev, np.max(np.abs(np.linalg.norm(x, axis=1) - 1.0)))
    rows.append(_row("props", "unit-fields", dev, 1e-9))

    def deriv_err(n, order, exact):
        g = uniform_grid(0.0, 1.5, n)
        d = derivative(ScalarSamples(g, np.sin(3 * g.values)), order)
        return np.max(np.abs(d.data - exact(g.values)))

    factors = []
    for order, exact in (
        (1, lambda s: 3 * np.cos(3 * s)),
        (2, lambda s: -9 * np.sin(3 * s)),
        (3, lambda s: -27 * np.cos(3 * s)),
    ):
        factors.append(deriv_err(41, order, exact) / deriv_err(81, order, exact))

    def integral_err(n):
        g = uniform_grid(0.0, 2.0, n)
        out = cumulative_integral(ScalarSamples(g, np.cos(g.values)))
        return np.max(np.abs(out.data - np.sin(g.values)))

    factors.append(integral_err(201) / integral_err(401))
    rows.append(_row("props", "convergence", min(factors), 12.0, exceeds=True))

    rng = np.random.default_rng(7)
    q = np.linalg.qr(rng.normal(size=(3, 3)))[0]
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1.0
    shift = np.array([3.0, -2.0, 0.5])
    dev = 0.0
    flags_equal = True
    for name in ("circular_helix", "helix_12_5"):
        c = evaluate_catalog(name)
        moved = CurveSamples(c.grid, c.points @ q.T + shift, c.unit_speed)
        base, rep = classify(c), classify(moved)
        flags_equal &= (
            base.is_line,
            base.is_plane,
            base.is_general_helix,
            base.is_slant_helix,
            base.is_rectifying,
        ) == (
            rep.is_line,
            rep.is_plane,
            rep.is_general_helix,
            rep.is_slant_helix,
            rep.is_rectifying,
        )
        dev = max(
            dev,
            abs(base.helix_ratio.mean - rep.helix_ratio.mean),
            abs(base.sigma_it.mean - rep.sigma_it.mean),
        )
    rows.append(
        _row("props", "rigid-motion", dev, 1e-6, passed=flags_equal and dev < 1e-6)
    )
    return rows


_BUILDERS = (
    _constant_rows,
    _mannheim_rows,
    _bar_agreement_rows,
    _round_trip_rows,
    _sigma_rows,
    _non_helix_rows,
    _rectifying_rows,
    _property_rows,
)

_CHECK_NAMES = (
    "constants",
    "thm3.2",
    "thm3.3",
    "thm3.4",
    "thm4.1",
    "thm4.2",
    "thm4.4",
    "props",
)


def check_names():
    return list(_CHECK_NAMES)


def run_checks(
    only: Optional[str] = None,
    curve: Optional[str] = None,
    tol: Optional[float] = None,
) -> list:
    """Evaluate the verification table, optionally filtered to one check id
    or one curve, optionally with every row's tolerance overridden."""
    if only is not None and only not in _CHECK_NAMES:
        raise ValueError(
            f"unknown check {only!r}; available: {', '.join(_CHECK_NAMES)}"
        )
    if tol is not None and tol <= 0:
        raise ValueError("tol must be positive")
    ctx = {}
    rows = []
    for build in _BUILDERS:
        if only is not None and build is not _BUILDER_BY_NAME[only]:
            continue
        rows.extend(build(ctx))
    if curve is not None:
        known = {r.curve for r in rows}
        if curve not in known:
            raise ValueError(
                f"no rows for curve {curve!r}; available: {', '.join(sorted(known))}"
            )
        rows = [r for r in rows if r.curve == curve]
    if tol is not None:
        rows = [
            replace(
                r,
                tolerance=tol,
                passed=r.deviation >= tol if r.exceeds else r.deviation < tol,
            )
            for r in rows
        ]
    return rows


_BUILDER_BY_NAME = dict(zip(_CHECK_NAMES, _BUILDERS))
