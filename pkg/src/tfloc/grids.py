"""Sampling grids and sampled functions.

Two grid kinds cover every domain in the library:

* ``LineGrid`` -- uniform samples of an interval of the real line.  Used for
  signals, for the second phase-plane coordinate, and for the translation
  axis of window atoms.  Integration against it is a plain Riemann sum with
  weight ``step``.
* ``ScaleGrid`` -- log-uniform samples of a scale interval ``[u_min, u_max]``.
  Nodes sit at midpoints in ``t = ln u`` so the rule integrates ``du/u``
  exactly on constants; the scale measure ``u^{-2} du`` is obtained by an
  extra ``1/u`` factor per node.

Grids are immutable after construction; everything downstream treats them as
value objects.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "LineGrid",
    "ScaleGrid",
    "SampledFunction",
    "induced_grid",
    "subgrid_indices",
]


class LineGrid:
    """Uniform grid x_j = start + j*step, j = 0..count-1."""

    def __init__(self, start: float, step: float, count: int):
        if not (step > 0 and math.isfinite(step) and math.isfinite(start)):
            raise ValueError(f"invalid grid: start={start}, step={step}")
        if count < 2:
            raise ValueError(f"grid needs at least 2 samples, got {count}")
        self.start = float(start)
        self.step = float(step)
        self.count = int(count)
        self.samples = self.start + np.arange(self.count) * self.step
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("grid samples overflow")

    @property
    def stop(self) -> float:
        """One step past the last sample (right-open interval end)."""
        return self.start + self.count * self.step

    @classmethod
    def centered(cls, half_width: float, count: int) -> "LineGrid":
        """Grid on [-half_width, half_width) with ``count`` samples."""
        step = 2.0 * half_width / count
        return cls(-(count // 2) * step, step, count)

    def approx_eq(self, other: "LineGrid", tol: float = 1e-9) -> bool:
        return (
            self.count == other.count
            and abs(self.start - other.start) <= tol * max(1.0, abs(self.start))
            and abs(self.step - other.step) <= tol * self.step
        )

    def __repr__(self):
        return f"LineGrid(start={self.start:g}, step={self.step:g}, count={self.count})"


def induced_grid(grid: LineGrid) -> LineGrid:
    """Frequency grid induced by a time grid of the same length.

    Step is 1/(count*step); the grid is centered at zero.  Centered grids are
    their own second induced grid, so transform round trips return to the
    original sampling.
    """
    step = 1.0 / (grid.count * grid.step)
    return LineGrid(-(grid.count // 2) * step, step, grid.count)


def subgrid_indices(sub: LineGrid, full: LineGrid) -> tuple[int, int]:
    """Return (offset, stride) such that sub.samples == full.samples[offset::stride][:sub.count].

    Raises ValueError when ``sub`` is not an aligned subgrid of ``full``.
    """
    ratio = sub.step / full.step
    stride = int(round(ratio))
    if stride < 1 or abs(ratio - stride) > 1e-9:
        raise ValueError(f"step {sub.step} is not a multiple of {full.step}")
    off = (sub.start - full.start) / full.step
    offset = int(round(off))
    if abs(off - offset) > 1e-6 or offset < 0:
        raise ValueError("subgrid start does not sit on the full grid")
    if offset + (sub.count - 1) * stride >= full.count:
        raise ValueError("subgrid extends past the full grid")
    return offset, stride


class ScaleGrid:
    """Log-uniform quadrature grid for the positive scale axis.

    Nodes are midpoints in log-coordinates, u_k = u_min * exp((k+1/2)*dt)
    with dt = ln(u_max/u_min)/count.  ``weights`` integrate against du/u
    (all equal to dt, exact on constants); ``measure_weights`` integrate
    against the hyperbolic measure u^{-2} du.
    """

    def __init__(self, u_min: float, u_max: float, count: int):
        if not (0 < u_min < u_max):
            raise ValueError(f"need 0 < u_min < u_max, got [{u_min}, {u_max}]")
        if count < 2:
            raise ValueError(f"scale grid needs at least 2 nodes, got {count}")
        self.u_min = float(u_min)
        self.u_max = float(u_max)
        self.count = int(count)
        self.log_step = math.log(self.u_max / self.u_min) / self.count
        k = np.arange(self.count)
        self.nodes = self.u_min * np.exp((k + 0.5) * self.log_step)
        self.weights = np.full(self.count, self.log_step)
        self.measure_weights = self.weights / self.nodes

    def __repr__(self):
        return f"ScaleGrid(u_min={self.u_min:g}, u_max={self.u_max:g}, count={self.count})"


class SampledFunction:
    """Complex-valued function sampled on a LineGrid."""

    def __init__(self, grid: LineGrid, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != (grid.count,):
            raise ValueError(f"expected {grid.count} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled function contains non-finite values")
        self.grid = grid
        self.values = values

    def norm(self) -> float:
        """L2 norm under the Riemann-sum measure of the grid."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.grid.step)

    def inner(self, other: "SampledFunction") -> complex:
        """Riemann-sum inner product <self, other>, conjugating the second slot."""
        if not self.grid.approx_eq(other.grid):
            raise ValueError("inner product requires matching grids")
        return complex(np.sum(self.values * np.conj(other.values)) * self.grid.step)

    def __repr__(self):
        return f"SampledFunction({self.grid!r})"
