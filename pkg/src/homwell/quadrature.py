"""Deterministic trapezoidal quadrature on uniform grids.

All k-integrals (packet synthesis) and x-integrals (probabilities) go
through this module.  Summation order is fixed: weighted samples are
reduced in chunks of SUM_CHUNK elements, left to right, with Neumaier
compensation across chunk partial sums.  The result is therefore
independent of how many worker threads produced the samples, and
repeated runs are bit-identical.

Trapezoid (not adaptive) quadrature is deliberate: the integrands are
analytic with Gaussian envelopes, where uniform sampling converges
spectrally once the phase gate below is satisfied, and adaptivity would
break reproducibility.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import GridError

# Fixed reduction chunk (elements) and parallel work chunk (rows); both
# are constants so chunk boundaries never depend on thread count.
SUM_CHUNK = 1024
ROW_CHUNK = 256

DEFAULT_K_NODES = 4097

QUADRANTS = ("++", "--", "+-", "-+")


def _chunked_sum_real(values: np.ndarray) -> np.ndarray:
    """Deterministic compensated sum of a float array along its last axis.

    Each SUM_CHUNK-sized block is reduced by numpy's pairwise sum (fixed
    order for a given length); block partials are then accumulated left
    to right with Neumaier compensation.
    """
    n = values.shape[-1]
    total = np.zeros(values.shape[:-1], dtype=np.float64)
    comp = np.zeros_like(total)
    for start in range(0, n, SUM_CHUNK):
        part = np.sum(values[..., start : start + SUM_CHUNK], axis=-1)
        fresh = total + part
        comp += np.where(
            np.abs(total) >= np.abs(part),
            (total - fresh) + part,
            (part - fresh) + total,
        )
        total = fresh
    return total + comp


def chunked_sum(values: np.ndarray) -> np.ndarray | complex | float:
    """Compensated deterministic sum along the last axis (real or complex)."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        out = _chunked_sum_real(values.real) + 1j * _chunked_sum_real(values.imag)
    else:
        out = _chunked_sum_real(values.astype(np.float64, copy=False))
    if out.ndim == 0:
        return complex(out) if np.iscomplexobj(values) else float(out)
    return out


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid over [lo, hi] with n nodes and trapezoidal weights."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise GridError(f"grid needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise GridError(f"grid needs at least 2 nodes, got {self.n}")

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.full(self.n, self.h)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    @cached_property
    def abs_max(self) -> float:
        return max(abs(self.lo), abs(self.hi))


@dataclass(frozen=True)
class Grid2D:
    """Cartesian product grid for joint (x1, x2) fields."""

    x1: Grid1D
    x2: Grid1D

    @classmethod
    def square(cls, grid: Grid1D) -> "Grid2D":
        return cls(grid, grid)


@dataclass(frozen=True)
class Field1D:
    """Samples of a complex amplitude or real density on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.n,):
            raise GridError(
                f"field shape {self.values.shape} does not match grid n={self.grid.n}"
            )


@dataclass(frozen=True)
class Field2D:
    """Samples on a Grid2D, row-major with x1 as rows and x2 as columns."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        expect = (self.grid.x1.n, self.grid.x2.n)
        if self.values.shape != expect:
            raise GridError(
                f"field shape {self.values.shape} does not match grid {expect}"
            )


def integrate_1d(samples: np.ndarray, grid: Grid1D):
    """Trapezoidal integral of sampled values over the grid.

    Deterministic left-to-right chunked reduction with compensation;
    linear in the samples to float rounding.
    """
    samples = np.asarray(samples)
    if samples.shape[-1] != grid.n:
        raise GridError(
            f"sample count {samples.shape[-1]} does not match grid n={grid.n}"
        )
    return chunked_sum(samples * grid.weights)


def side_weights(grid: Grid1D, side: int) -> np.ndarray:
    """Trapezoid weights restricted to x > 0 (side=+1) or x < 0 (side=-1).

    Integrates the piecewise-linear interpolant over the half line, so a
    node at exactly x = 0 contributes half its weight to each side and
    the two side-weight vectors always partition the full trapezoid
    weights exactly.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    x = grid.nodes
    h = grid.h
    w = np.zeros(grid.n)
    for j in range(grid.n - 1):
        if side == 1:
            a, b = max(x[j], 0.0), x[j + 1]
        else:
            a, b = x[j], min(x[j + 1], 0.0)
        if b <= a:
            continue
        # cell-local coordinates of the sub-interval; the interpolant is
        # f_j (1 - t) + f_{j+1} t for t in [0, 1]
        ua = (a - x[j]) / h
        ub = (b - x[j]) / h
        quad = 0.5 * (ub * ub - ua * ua)
        w[j] += h * ((ub - ua) - quad)
        w[j + 1] += h * quad
    return w


def integrate_2d(field: Field2D):
    """Tensor-product trapezoidal integral over the full plane."""
    row_integrals = chunked_sum(field.values * field.grid.x2.weights)
    return chunked_sum(row_integrals * field.grid.x1.weights)


def integrate_2d_quadrant(field: Field2D, quadrant: str) -> float:
    """Integral of a density restricted to one quadrant of the (x1, x2) plane.

    Quadrant labels: "++" (x1>0, x2>0), "--", "+-", "-+".  A node at
    x = 0 contributes with half weight to each adjacent quadrant.
    """
    if quadrant not in QUADRANTS:
        raise ValueError(f"quadrant must be one of {QUADRANTS}, got {quadrant!r}")
    values = field.values
    if np.isnan(values).any():
        raise ValueError("density contains NaN")
    s1 = 1 if quadrant[0] == "+" else -1
    s2 = 1 if quadrant[1] == "+" else -1
    w1 = side_weights(field.grid.x1, s1)
    w2 = side_weights(field.grid.x2, s2)
    row_integrals = chunked_sum(values * w2)
    return float(chunked_sum(row_integrals * w1))


def quadrant_sums(field: Field2D) -> dict[str, float]:
    return {q: integrate_2d_quadrant(field, q) for q in QUADRANTS}


def phase_gate_step(x_absmax: float, k_absmax: float, tau: float) -> float:
    """Largest admissible k-grid spacing for integrands exp(iKX - iK^2 tau).

    Keeps the fastest local phase advance below pi/4 per step:
    h <= pi / (4 (|X|max + 2 |K|max tau)).
    """
    return math.pi / (4.0 * (x_absmax + 2.0 * k_absmax * tau))


def check_k_sampling(grid: Grid1D, x_absmax: float, tau: float) -> None:
    limit = phase_gate_step(x_absmax, grid.abs_max, tau)
    if grid.h > limit:
        raise GridError(
            f"k-grid spacing {grid.h:.3e} exceeds the phase gate {limit:.3e} "
            f"(|X|max={x_absmax}, |K|max={grid.abs_max}, tau={tau})"
        )


def auto_k_count(
    span: float, x_absmax: float, k_absmax: float, tau: float, minimum: int = DEFAULT_K_NODES
) -> int:
    """Node count of form 2^m + 1 satisfying the phase gate for this window."""
    h = phase_gate_step(x_absmax, k_absmax, tau)
    need = max(minimum, int(math.ceil(span / h)) + 1)
    m = max(1, int(math.ceil(math.log2(max(need - 1, 1)))))
    n = 2**m + 1
    if n > 2**21 + 1:
        raise GridError(
            f"phase gate requires {need} k-nodes (span={span}, |X|max={x_absmax}, "
            f"tau={tau}); evaluation domain is too demanding"
        )
    return n


def map_row_chunks(
    fn: Callable[[int, int], np.ndarray], n_rows: int, threads: int = 1
) -> np.ndarray:
    """Evaluate fn over fixed row chunks, optionally in a thread pool.

    Chunk boundaries depend only on n_rows, and results are concatenated
    in chunk order, so the output is identical for any thread count.
    """
    bounds = [(lo, min(lo + ROW_CHUNK, n_rows)) for lo in range(0, n_rows, ROW_CHUNK)]
    if threads <= 1 or len(bounds) == 1:
        parts = [fn(lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(fn, lo, hi) for lo, hi in bounds]
            parts = [f.result() for f in futures]
    return np.concatenate(parts, axis=0)
