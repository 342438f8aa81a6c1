"""Driving paths: deterministic bounded-variation drivers, fractional
Brownian motion, and weighted drivers Z obtained by integrating a
deterministic weight against fBm.

fBm with Hurst index H is the centered Gaussian process with covariance
cov(s, t) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2.  Paths are sampled exactly
via the Cholesky factor of the covariance matrix; each (path, component)
pair draws from its own counter-derived substream, so outputs are
deterministic in (seed, path index, component index) and independent of any
parallel scheduling.

The regime of interest is H > 1/2 (grid p-variation of sampled paths stays
bounded for p > 1/H); H = 1/2 is accepted as the standard-Brownian sanity
case.  Note that p-variation measured on a finite grid is a lower bound for
the p-variation of the underlying continuous path.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .paths import SampledPath, p_variation, read_path_csv

__all__ = [
    "FbmConfig",
    "SigmaWeight",
    "fbm_covariance",
    "fbm_sample",
    "weighted_fbm",
    "moment_check",
    "bv_driver",
]

#: covariance matrices above this size are refused (O(n^3) Cholesky).
CHOLESKY_CAP = 4096


@dataclass(frozen=True)
class FbmConfig:
    hurst: float
    dim: int
    grid: np.ndarray
    seed: int
    n_paths: int = 1

    def __post_init__(self):
        if not (0.5 <= self.hurst < 1.0):
            raise ValueError(
                f"hurst must be in [0.5, 1): got {self.hurst} "
                "(H < 1/2 is the rough regime, out of scope)"
            )
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid[0] != 0.0 or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing and start at 0")
        if grid.size - 1 > CHOLESKY_CAP:
            raise ValueError(
                f"grid of {grid.size} points exceeds the Cholesky cap "
                f"({CHOLESKY_CAP} + 1)"
            )
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.n_paths < 1:
            raise ValueError("n_paths must be >= 1")
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")
        g = grid.copy()
        g.flags.writeable = False
        object.__setattr__(self, "grid", g)


@dataclass(frozen=True)
class SigmaWeight:
    """Per-component weight sampled on the grid, with its L^{1/H} norms.

    ``lh_norm`` is the vector of (int_0^T |sigma^i_s|^{1/H} ds)^H computed by
    left-point quadrature on the grid, one entry per component.
    """

    times: np.ndarray
    values: np.ndarray
    hurst: float
    lh_norm: np.ndarray = field(init=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.shape[0] != times.size:
            raise ValueError("sigma values must be sampled on the grid")
        if not (0.5 <= self.hurst < 1.0):
            raise ValueError(f"hurst must be in [0.5, 1): got {self.hurst}")
        times = times.copy()
        values = values.copy()
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        norms = self.lh_norm_between(float(times[0]), float(times[-1]))
        norms.flags.writeable = False
        object.__setattr__(self, "lh_norm", norms)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def constant(cls, value, times, hurst) -> "SigmaWeight":
        value = np.atleast_1d(np.asarray(value, dtype=float))
        times = np.asarray(times, dtype=float)
        return cls(times, np.tile(value, (times.size, 1)), hurst)

    def lh_norm_between(self, t1: float, t2: float) -> np.ndarray:
        """(int_{t1}^{t2} |sigma|^{1/H} ds)^H per component, left-point rule;
        t1 and t2 must be grid points."""
        times = self.times
        i1 = int(np.searchsorted(times, t1))
        i2 = int(np.searchsorted(times, t2))
        if i1 >= times.size or times[i1] != t1 or i2 >= times.size or times[i2] != t2:
            raise ValueError("t1 and t2 must be grid points")
        if i2 <= i1:
            return np.zeros(self.dim)
        dt = np.diff(times[i1 : i2 + 1])
        h = self.hurst
        integrand = np.abs(self.values[i1:i2]) ** (1.0 / h)
        return (integrand * dt[:, None]).sum(axis=0) ** h


def fbm_covariance(t1, t2, hurst: float):
    """Covariance of fBm: (t2^{2H} + t1^{2H} - |t2 - t1|^{2H}) / 2.

    Accepts scalars or broadcastable arrays of non-negative times.
    """
    t1a = np.asarray(t1, dtype=float)
    t2a = np.asarray(t2, dtype=float)
    if np.any(t1a < 0) or np.any(t2a < 0):
        raise ValueError("times must be >= 0")
    h2 = 2.0 * hurst
    out = 0.5 * (t2a**h2 + t1a**h2 - np.abs(t2a - t1a) ** h2)
    if np.isscalar(t1) and np.isscalar(t2):
        return float(out)
    return out


def _cholesky_with_jitter(gamma: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor; on failure, add 1e-12 * max(diag) to the
    diagonal once, then give up."""
    try:
        return np.linalg.cholesky(gamma)
    except np.linalg.LinAlgError:
        jitter = 1e-12 * float(np.diag(gamma).max())
        try:
            return np.linalg.cholesky(gamma + jitter * np.eye(gamma.shape[0]))
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(
                f"covariance matrix of size {gamma.shape[0]} is not positive "
                f"definite even after diagonal jitter {jitter:g}"
            ) from exc


def _component_stream(seed: int, path_index: int, component: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(path_index, component))
    return np.random.Generator(np.random.PCG64(ss))


def fbm_sample(cfg: FbmConfig) -> list[SampledPath]:
    """Sample n_paths fBm paths on cfg.grid.

    Each component of each path is the exact Gaussian vector with covariance
    Gamma_ij = fbm_covariance(t_i, t_j, H) (times after 0; the path starts at
    0 by definition), obtained as lower-Cholesky times a standard normal
    vector from the (path, component) substream.
    """
    grid = cfg.grid
    t = grid[1:]
    m = t.size
    gamma = fbm_covariance(t[None, :], t[:, None], cfg.hurst)
    chol = _cholesky_with_jitter(gamma)
    values = np.zeros((cfg.n_paths, grid.size, cfg.dim))
    for c in range(cfg.dim):
        z = np.empty((m, cfg.n_paths))
        for i in range(cfg.n_paths):
            z[:, i] = _component_stream(cfg.seed, i, c).standard_normal(m)
        values[:, 1:, c] = (chol @ z).T
    return [SampledPath(grid, values[i]) for i in range(cfg.n_paths)]


def weighted_fbm(b: SampledPath, weight: SigmaWeight) -> SampledPath:
    """Left-point integral of the weight against b, componentwise:
    Z_t = sum_{t_i <= t} sigma(t_{i-1}) (b_{t_i} - b_{t_{i-1}})."""
    if not np.array_equal(b.times, weight.times):
        raise ValueError("weight and path must share a grid")
    if b.dim != weight.dim:
        raise ValueError("weight and path must share a dimension")
    db = np.diff(b.values, axis=0)
    out = np.zeros_like(b.values)
    out[1:] = np.cumsum(weight.values[:-1] * db, axis=0)
    return SampledPath(b.times, out)


def moment_check(
    paths: list[SampledPath], weight: SigmaWeight, r: float, t1: float, t2: float
) -> tuple[float, float]:
    """Monte Carlo moment of the weighted-driver increment against the
    scaling quantity that bounds it.

    Returns (E|Z_{t2} - Z_{t1}|^r estimated over the paths,
    (sum_i int_{t1}^{t2} |sigma^i|^{1/H} ds)^{rH}); the ratio of the two
    stays bounded as t2 - t1 shrinks.
    """
    if r <= 0:
        raise ValueError("r must be > 0")
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    gaps = np.empty(len(paths))
    for i, b in enumerate(paths):
        z = weighted_fbm(b, weight)
        dz = z.eval(t2) - z.eval(t1)
        gaps[i] = np.linalg.norm(dz)
    empirical = float(np.mean(gaps**r))
    h = weight.hurst
    integrals = weight.lh_norm_between(t1, t2) ** (1.0 / h)
    bound_shape = float(integrals.sum() ** (r * h))
    return empirical, bound_shape


def bv_driver(kind: str, *, grid=None, values=None, file=None) -> tuple[SampledPath, float]:
    """Build a bounded-variation driver and report its total variation V_1.

    kind is one of:
      - "identity": a_t = t sampled on ``grid``
      - "jumps": piecewise-constant path through ``values`` on ``grid``
      - "csv": path read from ``file`` in the shared CSV format
    """
    if kind == "identity":
        if grid is None:
            raise ValueError("identity driver needs a grid")
        grid = np.asarray(grid, dtype=float)
        path = SampledPath(grid, grid.copy())
    elif kind == "jumps":
        if grid is None or values is None:
            raise ValueError("jumps driver needs grid and values")
        path = SampledPath(np.asarray(grid, dtype=float), np.asarray(values, dtype=float))
    elif kind == "csv":
        if file is None:
            raise ValueError("csv driver needs a file")
        path = read_path_csv(file)
    else:
        raise ValueError(f"unknown bv driver kind {kind!r}")
    v1 = p_variation(path, 1.0).value
    return path, v1
