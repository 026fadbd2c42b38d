"""Sampled space curves: the built-in catalog, CSV I/O, and arc-length
reparametrization.

Catalog curves are evaluated from closed-form expressions already in an
arc-length parametrization, so downstream differentiation sees exact
unit-speed data.  The spherical entry's natural parameter is not arc length;
its evaluator substitutes the exact inverse of the arc-length function first.
"""

import csv as _csv
from dataclasses import dataclass
from math import asin, cos, pi, sqrt

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import DomainError
from .numerics import (
    Grid,
    MIN_SAMPLES,
    ScalarSamples,
    VectorSamples,
    cumulative_integral,
    derivative,
    uniform_grid,
)

# numerical-speed band accepted as unit speed at interior samples
UNIT_SPEED_TOL = 1e-4

# below this numerical speed a curve counts as degenerate
SPEED_FLOOR = 1e-9


@dataclass(frozen=True)
class CurveSamples:
    """A space curve sampled on a uniform parameter grid.

    unit_speed records whether the grid parameter is arc length; consumers
    that require arc length check the flag instead of re-deriving it.
    """

    grid: Grid
    points: np.ndarray
    unit_speed: bool

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (self.grid.n, 3):
            raise ValueError(f"points shape {pts.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    domain: tuple


def _helix_domain(params):
    return (0.0, 4 * pi)


def _helix_validate(params):
    if params["a"] <= 0 or params["scale"] <= 0:
        raise ValueError("circular_helix needs a > 0 and scale > 0")


def _helix_points(params, s):
    R = params["a"] * params["scale"]
    P = params["b"] * params["scale"]
    m = sqrt(R * R + P * P)
    return np.stack([R * np.cos(s / m), R * np.sin(s / m), P * s / m], axis=1)


def _helix12_points(params, s):
    return _helix_points({"a": 12.0, "b": 5.0, "scale": 1.0}, s)


def _root_points(params, s):
    k = sqrt(2.0) / 3.0
    return np.stack([k * s**1.5, k * (1.0 - s) ** 1.5, (sqrt(2.0) / 2.0) * s], axis=1)


_ROOT_EPS = 1e-3
_SPH_EPS = 1e-2


def _sph_validate(params):
    if params["c"] <= 0:
        raise ValueError("spherical_helix needs c > 0")


def _sph_bound(params):
    # arc length runs over sin(sigma)/c as the native parameter sweeps
    # (-pi/2 + eps, pi/2 - eps)
    return cos(_SPH_EPS) / params["c"]


def _sph_points(params, s):
    c = params["c"]
    w = sqrt(1.0 + c * c) / c
    t = np.arcsin(c * s)
    ws = w * t
    return np.stack(
        [
            np.cos(t) * np.cos(ws) + np.sin(t) * np.sin(ws) / w,
            -np.cos(t) * np.sin(ws) + np.sin(t) * np.cos(ws) / w,
            np.sin(t) / (c * w),
        ],
        axis=1,
    )


_CATALOG = {
    "circular_helix": {
        "defaults": {"a": 1.0, "b": 1.0, "scale": 1.0},
        "validate": _helix_validate,
        "domain": _helix_domain,
        "bounds": lambda params: (-np.inf, np.inf),
        "points": _helix_points,
    },
    "helix_12_5": {
        "defaults": {},
        "validate": lambda params: None,
        "domain": lambda params: (0.0, 169.0),
        "bounds": lambda params: (-np.inf, np.inf),
        "points": _helix12_points,
    },
    "root_curve": {
        "defaults": {},
        "validate": lambda params: None,
        "domain": lambda params: (_ROOT_EPS, 1.0 - _ROOT_EPS),
        "bounds": lambda params: (_ROOT_EPS, 1.0 - _ROOT_EPS),
        "points": _root_points,
    },
    "spherical_helix": {
        "defaults": {"c": 2.0},
        "validate": _sph_validate,
        "domain": lambda params: (-_sph_bound(params), _sph_bound(params)),
        "bounds": lambda params: (-_sph_bound(params), _sph_bound(params)),
        "points": _sph_points,
    },
}


def catalog_names():
    return sorted(_CATALOG)


def catalog_entry(name: str, parameters=None) -> CatalogEntry:
    """Resolve a catalog name and parameter overrides to a concrete entry."""
    if name not in _CATALOG:
        raise ValueError(f"unknown catalog curve {name!r}; available: {', '.join(catalog_names())}")
    spec_ = _CATALOG[name]
    params = dict(spec_["defaults"])
    for key, value in (parameters or {}).items():
        if key not in params:
            raise ValueError(f"{name} does not take parameter {key!r}")
        params[key] = float(value)
    spec_["validate"](params)
    return CatalogEntry(name=name, parameters=params, domain=spec_["domain"](params))


def default_grid(entry: CatalogEntry, n: int = 2001) -> Grid:
    return uniform_grid(entry.domain[0], entry.domain[1], n)


def evaluate_catalog(name: str, parameters=None, grid: Grid = None) -> CurveSamples:
    """Sample a catalog curve on `grid` (default: the entry's own domain at
    2001 points).  The grid parameter is arc length for every entry."""
    entry = catalog_entry(name, parameters)
    if grid is None:
        grid = default_grid(entry)
    lo, hi = _CATALOG[name]["bounds"](entry.parameters)
    if grid.s_min < lo:
        raise DomainError(f"grid s_min={grid.s_min:g} below {name} domain bound {lo:g}")
    if grid.s_max > hi:
        raise DomainError(f"grid s_max={grid.s_max:g} above {name} domain bound {hi:g}")
    points = _CATALOG[name]["points"](entry.parameters, grid.values)
    return CurveSamples(grid=grid, points=points, unit_speed=True)


def numerical_speed(c: CurveSamples) -> ScalarSamples:
    """Norm of the numerical first derivative of the points."""
    d1 = derivative(VectorSamples(c.grid, c.points), 1)
    return ScalarSamples(c.grid, np.linalg.norm(d1.data, axis=1))


def unit_speed_deviation(c: CurveSamples) -> float:
    """max |speed - 1| over interior samples (boundary stencils excluded)."""
    return float(np.max(np.abs(numerical_speed(c).data[c.grid.interior()] - 1.0)))


def load_csv(path) -> CurveSamples:
    """Read a curve from CSV (`s,x,y,z` or `x,y,z` header).

    A strictly increasing, uniform s column becomes the grid and the
    unit-speed flag is set from the measured speed; without a usable s
    column samples are indexed 0..n-1 and unit_speed is false.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = _csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DomainError(f"{path}: empty file") from None
        header = [col.strip() for col in header]
        if header == ["s", "x", "y", "z"]:
            has_s = True
        elif header == ["x", "y", "z"]:
            has_s = False
        else:
            raise DomainError(f"{path}: line 1: header must be s,x,y,z or x,y,z, got {','.join(header)}")
        width = 4 if has_s else 3
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise DomainError(f"{path}: line {lineno}: expected {width} fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise DomainError(f"{path}: line {lineno}: non-numeric field") from None
    n = len(rows)
    if n < MIN_SAMPLES:
        raise DomainError(f"{path}: fewer than {MIN_SAMPLES} samples (got {n})")
    if n % 2 == 0:
        raise DomainError(f"{path}: sample count must be odd for the quadrature grid, got {n}")
    data = np.asarray(rows)
    if has_s:
        s = data[:, 0]
        if np.any(np.diff(s) <= 0):
            raise DomainError(f"{path}: s column is not strictly increasing")
        span = s[-1] - s[0]
        uniform = np.allclose(np.diff(s), span / (n - 1), rtol=0, atol=1e-9 * max(span, 1.0))
        if uniform:
            grid = Grid(float(s[0]), float(s[-1]), n)
            curve = CurveSamples(grid=grid, points=data[:, 1:], unit_speed=False)
            flag = unit_speed_deviation(curve) <= UNIT_SPEED_TOL
            return CurveSamples(grid=grid, points=data[:, 1:], unit_speed=flag)
        return CurveSamples(grid=Grid(0.0, float(n - 1), n), points=data[:, 1:], unit_speed=False)
    return CurveSamples(grid=Grid(0.0, float(n - 1), n), points=data, unit_speed=False)


def save_csv(c: CurveSamples, path) -> None:
    """Write `s,x,y,z` rows at 17 significant digits (lossless for doubles)."""
    s = c.grid.values
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("s,x,y,z\n")
        for i in range(c.grid.n):
            fh.write("%.17g,%.17g,%.17g,%.17g\n" % (s[i], c.points[i, 0], c.points[i, 1], c.points[i, 2]))


def arclength_reparametrize(c: CurveSamples, n_out: int) -> CurveSamples:
    """Resample a regular curve by arc length onto a uniform grid over [0, L].

    The arc-length function is accumulated from the numerical speed and
    inverted with a monotone cubic interpolant; points are then evaluated
    through a C^2 spline so the output stays smooth enough to differentiate.
    """
    speed = numerical_speed(c)
    if np.min(speed.data) <= SPEED_FLOOR:
        i = int(np.argmin(speed.data))
        raise DomainError(
            f"degenerate curve: speed {speed.data[i]:.3g} at parameter {c.grid.values[i]:g} "
            f"is below the {SPEED_FLOOR:g} floor"
        )
    arc = cumulative_integral(speed).data
    if np.any(np.diff(arc) <= 0):
        raise DomainError("degenerate curve: arc length is not strictly increasing")
    total = float(arc[-1])
    out_grid = uniform_grid(0.0, total, n_out)
    t_of_s = PchipInterpolator(arc, c.grid.values)
    t_out = t_of_s(out_grid.values)
    # guard the spline against interpolation overshoot at the ends
    t_out = np.clip(t_out, c.grid.s_min, c.grid.s_max)
    spline = CubicSpline(c.grid.values, c.points, axis=0)
    return CurveSamples(grid=out_grid, points=spline(t_out), unit_speed=True)
