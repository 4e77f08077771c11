"""Exact Gaussian sampling and Monte Carlo validation utilities.

Randomness: every batch is drawn from a counter-based Philox bit generator
keyed by the user seed (``numpy.random.Philox``), with normal variates from
numpy's ziggurat transform. A batch is one contiguous vectorized draw, so
results are bit-reproducible for fixed (seed, model, paths).

Covariance factorization is spectral: eigenvalues in [-tol_pd, 0] are clamped
to zero (exactly semidefinite models such as the Brownian ring live on this
boundary), anything below -tol_pd raises IndefiniteCovariance. Samples from a
semidefinite covariance therefore carry exactly zero weight along its null
directions.

The reflected construction of the periodic Brownian motion on a circle of
circumference 2*pi runs an ordinary Wiener path up to its half point and
returns along the mirror image: b(t) = B(t) on [0, pi] and
b(t) = B(pi) - B(t - pi) on [pi, 2*pi]. It closes exactly (b(0) = b(2pi) = 0)
and has the piecewise-linear covariance implemented in
:func:`piecewise_ring_cov`. The rescaled bridge B(t) - t/(2pi) B(2pi), kept
here as a negative control, closes as well but has the wrong covariance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import IndefiniteCovariance, QuadratureFailure

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SampleBatch:
    """A (paths x dim) block of samples plus the seed that produced it."""

    values: np.ndarray
    seed: int
    model_tag: str

    @property
    def paths(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


def _normals(shape: tuple[int, int], seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=seed))
    return rng.standard_normal(shape)


def sample_gaussian(
    cov: np.ndarray,
    paths: int,
    seed: int,
    tol_pd: float | None = None,
    model_tag: str = "gaussian",
) -> SampleBatch:
    """Exact zero-mean Gaussian samples with the given covariance.

    ``cov`` must be positive semidefinite at tolerance ``tol_pd``; a smaller
    eigenvalue raises IndefiniteCovariance (e.g. a periodic model requested
    above its admissible Hurst range).
    """
    cov = linalg.require_symmetric(cov)
    if paths < 1:
        raise ValueError("paths must be >= 1")
    if tol_pd is None:
        tol_pd = linalg.default_tol_pd(cov)
    w, v = linalg.eigen_sym(cov)
    if w[0] < -tol_pd:
        raise IndefiniteCovariance(min_eigenvalue=float(w[0]))
    factor = v * np.sqrt(np.clip(w, 0.0, None))
    z = _normals((paths, cov.shape[0]), seed)
    return SampleBatch(values=z @ factor.T, seed=seed, model_tag=model_tag)


def empirical_covariance(batch: SampleBatch) -> np.ndarray:
    """Zero-mean covariance estimate values.T @ values / paths."""
    return batch.values.T @ batch.values / batch.paths


def covariance_bound(cov: np.ndarray, paths: int, sigmas: float = 5.0) -> np.ndarray:
    """Elementwise statistical bound for the zero-mean covariance estimator.

    The estimator variance for Gaussian data is (c_ii c_kk + c_ik^2) / paths.
    """
    cov = np.asarray(cov, dtype=float)
    d = np.diag(cov)
    return sigmas * np.sqrt((np.outer(d, d) + cov**2) / paths)


def piecewise_ring_cov(s: float, t: float) -> float:
    """Covariance of the periodic Brownian motion on [0, 2*pi], pinned at 0.

    For ordered arguments s <= t the value is s on the first half, 2*pi - t on
    the second, and the overlap max(pi + s - t, 0) when the arguments straddle
    the half point.
    """
    if not (0.0 <= s <= TWO_PI and 0.0 <= t <= TWO_PI):
        raise ValueError(f"arguments must lie in [0, 2*pi], got ({s}, {t})")
    s, t = min(s, t), max(s, t)
    if t <= math.pi:
        return s
    if s >= math.pi:
        return TWO_PI - t
    return max(math.pi + s - t, 0.0)


def piecewise_ring_cov_matrix(grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    return np.array([[piecewise_ring_cov(s, t) for t in grid] for s in grid])


def _source_paths(stops: np.ndarray, paths: int, seed: int) -> np.ndarray:
    """Wiener values at the sorted time points ``stops`` (one row per path)."""
    steps = np.diff(np.concatenate(([0.0], stops)))
    z = _normals((paths, stops.size), seed)
    return np.cumsum(z * np.sqrt(steps), axis=1)


def reflected_brownian_ring(t_grid: np.ndarray, paths: int, seed: int) -> SampleBatch:
    """Sample the reflected periodic Brownian motion at the given times.

    Each path is exact: one Wiener path is evaluated at every needed source
    time (t itself on the outbound half, t - pi on the return half) and the
    two halves are assembled from the same path, so b(0) = b(2*pi) = 0 holds
    exactly per sample.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if t_grid.min() < 0.0 or t_grid.max() > TWO_PI:
        raise ValueError("grid out of range: times must lie in [0, 2*pi]")
    source = np.where(t_grid <= math.pi, t_grid, t_grid - math.pi)
    stops = np.unique(np.concatenate((source[source > 0.0], [math.pi])))
    wiener = _source_paths(stops, paths, seed)
    half = wiener[:, np.searchsorted(stops, math.pi)]
    values = np.empty((paths, t_grid.size))
    for j, t in enumerate(t_grid):
        if t <= math.pi:
            values[:, j] = wiener[:, np.searchsorted(stops, t)] if t > 0.0 else 0.0
        else:
            back = t - math.pi
            values[:, j] = half - (wiener[:, np.searchsorted(stops, back)] if back > 0.0 else 0.0)
    return SampleBatch(values=values, seed=seed, model_tag=f"reflected_ring[{t_grid.size}]")


def brownian_bridge_ring(t_grid: np.ndarray, paths: int, seed: int) -> SampleBatch:
    """Rescaled-bridge construction B(t) - t/(2*pi) B(2*pi) (negative control)."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if t_grid.min() < 0.0 or t_grid.max() > TWO_PI:
        raise ValueError("grid out of range: times must lie in [0, 2*pi]")
    stops = np.unique(np.concatenate((t_grid[t_grid > 0.0], [TWO_PI])))
    wiener = _source_paths(stops, paths, seed)
    final = wiener[:, -1]
    values = np.empty((paths, t_grid.size))
    for j, t in enumerate(t_grid):
        base = wiener[:, np.searchsorted(stops, t)] if t > 0.0 else 0.0
        values[:, j] = base - (t / TWO_PI) * final
    return SampleBatch(values=values, seed=seed, model_tag=f"bridge_ring[{t_grid.size}]")


def uniform_ring_grid(n_points: int) -> np.ndarray:
    """n_points equally spaced times 2*pi*k/n, k = 1..n (endpoint included)."""
    if n_points < 2:
        raise ValueError("need at least 2 grid points")
    return TWO_PI * np.arange(1, n_points + 1) / n_points


def uniform_grid_increment_cov(n_increments: int, hurst: float = 0.5) -> np.ndarray:
    """Circulant increment covariance of the periodic model on a uniform grid.

    Spacing h = 2*pi/n on the circumference-2*pi circle; first row
    c_j = (d((j+1)h)^{2H} + d((j-1)h)^{2H} - 2 d(jh)^{2H}) / 2 with the arc
    geodesic distance d.
    """
    if n_increments < 2:
        raise ValueError("need at least 2 increments")
    h = TWO_PI / n_increments

    def arc(x: np.ndarray) -> np.ndarray:
        r = np.abs(x) % TWO_PI
        return np.minimum(r, TWO_PI - r)

    j = np.arange(-1, n_increments + 1, dtype=float)
    dpow = arc(j * h) ** (2.0 * hurst)
    row = 0.5 * ((dpow[2:] + dpow[:-2]) - 2.0 * dpow[1:-1])
    idx = np.arange(n_increments)
    return row[(idx[None, :] - idx[:, None]) % n_increments]


def grid_increments(batch: SampleBatch) -> np.ndarray:
    """Per-path increments including the step from the implicit start at 0."""
    return np.diff(batch.values, axis=1, prepend=0.0)


# 15-point Kronrod extension of 7-point Gauss (nodes symmetric about 0);
# the embedded Gauss rule sits on every other Kronrod node.
_GK_NODES_HALF = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
])
_GK_WEIGHTS_HALF = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
])
_GAUSS_WEIGHTS_HALF = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])
_GK_NODES = np.concatenate((-_GK_NODES_HALF[:-1], _GK_NODES_HALF[::-1]))
_GK_WEIGHTS = np.concatenate((_GK_WEIGHTS_HALF[:-1], _GK_WEIGHTS_HALF[::-1]))
_GAUSS_WEIGHTS = np.concatenate((_GAUSS_WEIGHTS_HALF[:-1], _GAUSS_WEIGHTS_HALF[::-1]))

_MAX_QUAD_PANELS = 5_000


def _gauss_kronrod_panel(f, a: float, b: float) -> tuple[float, float]:
    """15-point Kronrod value and |Kronrod - Gauss| error estimate on [a, b]."""
    center, half = 0.5 * (a + b), 0.5 * (b - a)
    fx = f(center + half * _GK_NODES)
    kronrod = half * float(_GK_WEIGHTS @ fx)
    gauss = half * float(_GAUSS_WEIGHTS @ fx[1::2])
    return kronrod, abs(kronrod - gauss)


def _adaptive_cos_quad(f, n_osc: int, upper: float, tol: float) -> tuple[float, float]:
    """integral_0^upper f(x) cos(n_osc x) dx by adaptive Gauss-Kronrod.

    Initial panels are split at the zeros of cos(n_osc x) so no panel spans a
    sign flip of the weight; the worst panel (by error estimate) is then
    bisected until the summed estimate drops below ``tol``. Bisection piles
    panels onto the left endpoint, where f may have a derivative singularity.
    """
    def integrand(x):
        return f(x) * np.cos(n_osc * x)

    zeros = (np.arange(n_osc) + 0.5) * math.pi / n_osc
    edges = np.concatenate(([0.0], zeros[zeros < upper], [upper]))
    heap: list[tuple[float, float, float, float]] = []
    total_err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, err = _gauss_kronrod_panel(integrand, a, b)
        heapq.heappush(heap, (-err, a, b, value))
        total_err += err
    for _ in range(_MAX_QUAD_PANELS):
        if total_err <= tol:
            break
        neg_err, a, b, value = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:  # panel narrower than float spacing
            heapq.heappush(heap, (neg_err, a, b, value))
            break
        total_err += neg_err
        for lo, hi in ((a, mid), (mid, b)):
            value, err = _gauss_kronrod_panel(integrand, lo, hi)
            heapq.heappush(heap, (-err, lo, hi, value))
            total_err += err
    return (
        math.fsum(item[3] for item in heap),
        max(math.fsum(-item[0] for item in heap), 0.0),
    )


def fourier_mode_energy(hurst: float, mode: int, tol: float = 1e-10) -> float:
    """Expected squared Fourier coefficient of the periodic model at ``mode``.

    Evaluates -(4 pi^2 / mode^{2H+1}) * integral_0^pi x^{2H} cos(mode x) dx
    with oscillation-aware adaptive quadrature to absolute tolerance ``tol``
    on the returned value. Nonnegative for hurst <= 1/2.
    """
    if not 0.0 < hurst <= 1.0:
        raise ValueError(f"hurst must be in (0, 1], got {hurst}")
    if mode < 1:
        raise ValueError(f"mode must be >= 1, got {mode}")
    prefactor = -4.0 * math.pi**2 / mode ** (2.0 * hurst + 1.0)
    value, err = _adaptive_cos_quad(
        lambda x: x ** (2.0 * hurst), mode, math.pi, 0.5 * tol / abs(prefactor)
    )
    if err * abs(prefactor) > tol:
        raise QuadratureFailure(estimate=prefactor * value, error=err * abs(prefactor), tol=tol)
    return prefactor * value
