"""Uniform grids, high-order finite differences, cumulative quadrature, and
constancy detection.

Everything downstream differentiates or integrates sampled data through this
module, so the accuracy budget of the whole package is set here: interior
stencils and the cumulative integral are O(h^4), one-sided boundary rows use
widened windows to keep the same order, and statistics helpers let callers
drop the first and last few samples where boundary effects concentrate.

Integration and differentiation are used in composition (curves are built by
integrating a field, then differentiated up to third order), so the
quadrature's local error must vary smoothly from panel to panel; see
_cumulative_1d.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np

from .errors import DomainError

# Stencils need this much room; Simpson pairing wants an odd count.
MIN_SAMPLES = 9

# First/last samples considered boundary-contaminated by verification
# statistics (one-sided stencils live there).
BOUNDARY_MARGIN = 3


@dataclass(frozen=True)
class Grid:
    """Uniform sample grid on [s_min, s_max] with an odd number of points."""

    s_min: float
    s_max: float
    n: int

    def __post_init__(self):
        if self.n < MIN_SAMPLES:
            raise ValueError(f"grid needs at least {MIN_SAMPLES} samples, got {self.n}")
        if self.n % 2 == 0:
            raise ValueError(f"grid sample count must be odd, got {self.n}")
        if not self.s_min < self.s_max:
            raise ValueError(f"empty grid interval [{self.s_min}, {self.s_max}]")

    @property
    def h(self) -> float:
        return (self.s_max - self.s_min) / (self.n - 1)

    @cached_property
    def values(self) -> np.ndarray:
        return np.linspace(self.s_min, self.s_max, self.n)

    @property
    def span(self) -> float:
        return self.s_max - self.s_min

    def interior(self, margin: int = BOUNDARY_MARGIN) -> slice:
        """Slice selecting samples clear of the boundary margin."""
        return slice(margin, self.n - margin)


def uniform_grid(s_min: float, s_max: float, n: int) -> Grid:
    """Build a uniform grid; n must be odd and at least MIN_SAMPLES."""
    return Grid(float(s_min), float(s_max), int(n))


@dataclass(frozen=True)
class ScalarSamples:
    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.shape != (self.grid.n,):
            raise ValueError(f"scalar data shape {data.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "data", data)


@dataclass(frozen=True)
class VectorSamples:
    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.shape != (self.grid.n, 3):
            raise ValueError(f"vector data shape {data.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "data", data)


@dataclass(frozen=True)
class ConstancyReport:
    """Summary statistics answering "is this sampled function constant".

    rel_variation is (max - min) / max(|median|, 1e-12); is_constant holds
    exactly when rel_variation is below the tolerance the caller supplied.
    degenerate_zero is set by callers for the all-but-zero case, where the
    relative measure is meaningless.
    """

    mean: float
    min: float
    max: float
    rel_variation: float
    is_constant: bool
    degenerate_zero: bool = field(default=False)


def constancy(values: np.ndarray, rel_tol: float) -> ConstancyReport:
    """ConstancyReport over a plain array (callers pre-select samples)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("constancy statistics need at least one sample")
    lo = float(values.min())
    hi = float(values.max())
    rel = (hi - lo) / max(abs(float(np.median(values))), 1e-12)
    return ConstancyReport(
        mean=float(values.mean()),
        min=lo,
        max=hi,
        rel_variation=rel,
        is_constant=bool(rel < rel_tol),
    )


def is_constant(f, rel_tol: float) -> ConstancyReport:
    """Constancy verdict for ScalarSamples (or any array-like)."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    data = f.data if isinstance(f, ScalarSamples) else np.asarray(f, dtype=float)
    return constancy(data, rel_tol)


def _stencil(offsets: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference weights on integer offsets for the given derivative
    order, exact for polynomials up to degree len(offsets)-1."""
    m = len(offsets)
    A = np.vander(np.asarray(offsets, dtype=float), m, increasing=True).T
    rhs = np.zeros(m)
    rhs[order] = factorial(order)
    return np.linalg.solve(A, rhs)


# Interior half-widths: 5-point stencils for orders 1-2, 7-point for order 3.
_HALF = {1: 2, 2: 2, 3: 3}
# One-sided window sizes keeping every boundary row at O(h^4).
_EDGE_WINDOW = {1: 5, 2: 6, 3: 7}


def _derivative_1d(y: np.ndarray, order: int, h: float) -> np.ndarray:
    n = y.size
    half = _HALF[order]
    center = _stencil(np.arange(-half, half + 1), order)
    out = np.empty(n)
    out[half:n - half] = np.correlate(y, center, mode="valid")
    win = _EDGE_WINDOW[order]
    for i in range(half):
        out[i] = _stencil(np.arange(win) - i, order) @ y[:win]
        j = n - 1 - i
        out[j] = _stencil(np.arange(win) - (win - 1 - i), order) @ y[n - win:]
    return out / h**order


def derivative(f, order: int):
    """Differentiate sampled data on its uniform grid.

    Parameters
    ----------
    f : ScalarSamples or VectorSamples
    order : int
        1, 2, or 3.

    Returns
    -------
    Samples of the same kind holding the order-th derivative.  Interior
    points are O(h^4); the few boundary rows use one-sided windows of the
    same order.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"derivative order must be 1, 2, or 3, got {order}")
    h = f.grid.h
    if isinstance(f, ScalarSamples):
        return ScalarSamples(f.grid, _derivative_1d(f.data, order, h))
    if isinstance(f, VectorSamples):
        cols = [_derivative_1d(f.data[:, k], order, h) for k in range(3)]
        return VectorSamples(f.grid, np.stack(cols, axis=1))
    raise TypeError("derivative expects ScalarSamples or VectorSamples")


def _cumulative_1d(y: np.ndarray, h: float, initial: float) -> np.ndarray:
    n = y.size
    # Integral over each single interval from the cubic through the four
    # nearest nodes.  One stencil family for every interior interval keeps
    # the local error sign-coherent along the grid; a scheme that alternates
    # stencils by parity leaves a sawtooth residue that second-derivative
    # stencils amplify by 1/h^2 downstream.
    panels = np.empty(n - 1)
    j = np.arange(1, n - 2)
    panels[j] = h * (-y[j - 1] + 13.0 * y[j] + 13.0 * y[j + 1] - y[j + 2]) / 24.0
    panels[0] = h * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]) / 24.0
    panels[n - 2] = h * (y[n - 4] - 5.0 * y[n - 3] + 19.0 * y[n - 2] + 9.0 * y[n - 1]) / 24.0
    out = np.empty(n)
    out[0] = initial
    out[1:] = initial + np.cumsum(panels)
    return out


def cumulative_integral(f, initial=0.0):
    """Cumulative integral along the grid, anchored at the first sample.

    result[0] equals `initial`; cubic integrands are reproduced exactly at
    every sample and the scheme is globally O(h^4) for smooth data.
    """
    h = f.grid.h
    if isinstance(f, ScalarSamples):
        return ScalarSamples(f.grid, _cumulative_1d(f.data, h, float(initial)))
    if isinstance(f, VectorSamples):
        init = np.zeros(3) if initial is None else np.asarray(initial, dtype=float)
        if init.shape == ():
            init = np.full(3, float(init))
        cols = [_cumulative_1d(f.data[:, k], h, init[k]) for k in range(3)]
        return VectorSamples(f.grid, np.stack(cols, axis=1))
    raise TypeError("cumulative_integral expects ScalarSamples or VectorSamples")


def check_finite(name: str, arr: np.ndarray) -> None:
    """Raise DomainError if arr contains non-finite entries."""
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
