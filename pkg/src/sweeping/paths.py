"""Path data model and exact p-variation / oscillation functionals.

Sampled paths are interpreted as cadlag step functions: the value at time t
is the value at the largest grid time <= t.  With that convention the
p-variation of a path over an interval, taken over *all* real subdivisions,
is attained on grid points and can be computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SampledPath",
    "MatrixPath",
    "VariationResult",
    "constant_path",
    "uniform_grid",
    "union_times",
    "resample",
    "operator_norm",
    "p_variation",
    "vbar",
    "oscillation",
    "interpolation_bound",
    "read_path_csv",
    "write_path_csv",
]

#: p_variation refuses grids larger than this instead of silently approximating.
PVAR_POINT_CAP = 20_000


def _check_times(times: np.ndarray) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-d sequence")
    if times[0] != 0.0:
        raise ValueError(f"times must start at 0, got {times[0]}")
    if times.size > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    return times


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SampledPath:
    """A d-dimensional cadlag step path sampled on a strictly increasing grid.

    ``values`` has shape (n, d); one-dimensional input is reshaped to (n, 1).
    Instances are immutable (the arrays are marked read-only).
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _check_times(self.times)
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise ValueError("values must have shape (n,) or (n, d)")
        if values.shape[0] != times.size:
            raise ValueError(
                f"values length {values.shape[0]} != times length {times.size}"
            )
        object.__setattr__(self, "times", _freeze(times))
        object.__setattr__(self, "values", _freeze(values))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.times.size

    def eval(self, t):
        """Cadlag evaluation: value at the largest grid time <= t.

        Accepts a scalar (returns shape (d,)) or an array of times
        (returns shape (m, d)).  Times beyond the last grid point return
        the last value; t must be >= 0.
        """
        idx = _eval_indices(self.times, t)
        return self.values[idx]

    def __sub__(self, other: "SampledPath") -> "SampledPath":
        _require_same_grid(self, other)
        return SampledPath(self.times, self.values - other.values)

    def __add__(self, other: "SampledPath") -> "SampledPath":
        _require_same_grid(self, other)
        return SampledPath(self.times, self.values + other.values)


@dataclass(frozen=True)
class MatrixPath:
    """A d x d matrix-valued step path; increments are measured in the
    operator norm (largest singular value)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _check_times(self.times)
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 3 or values.shape[1] != values.shape[2]:
            raise ValueError("values must have shape (n, d, d)")
        if values.shape[0] != times.size:
            raise ValueError(
                f"values length {values.shape[0]} != times length {times.size}"
            )
        object.__setattr__(self, "times", _freeze(times))
        object.__setattr__(self, "values", _freeze(values))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.times.size

    def eval(self, t):
        idx = _eval_indices(self.times, t)
        return self.values[idx]


@dataclass(frozen=True)
class VariationResult:
    """Result of a p-variation computation over an interval.

    value is v_p (the supremum of p-th power increment sums), norm is
    V_p = value**(1/p), and bar_norm = V_p + |x(a)| where a is the left
    endpoint of the interval.
    """

    p: float
    value: float
    norm: float
    bar_norm: float
    interval: tuple[float, float]


def constant_path(times, value) -> SampledPath:
    """Path holding a single d-vector value on the whole grid."""
    times = np.asarray(times, dtype=float)
    value = np.atleast_1d(np.asarray(value, dtype=float))
    return SampledPath(times, np.tile(value, (times.size, 1)))


def uniform_grid(n: int, t_max: float = 1.0) -> np.ndarray:
    """Grid {k/n : 0 <= k/n <= t_max}.  Dyadic n gives exact dyadic floats,
    so nested levels n, 2n, 4n ... share grid points bitwise."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = int(np.floor(n * t_max + 1e-9))
    return np.arange(m + 1, dtype=float) / n


def union_times(*paths) -> np.ndarray:
    return np.unique(np.concatenate([np.asarray(p.times) for p in paths]))


def resample(path, times):
    """Resample a path onto a new grid by cadlag evaluation."""
    times = np.asarray(times, dtype=float)
    cls = type(path)
    return cls(times, path.eval(times))


def _eval_indices(times: np.ndarray, t):
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("evaluation time must be >= 0")
    idx = np.searchsorted(times, t_arr, side="right") - 1
    return idx


def _require_same_grid(a, b):
    if not np.array_equal(a.times, b.times):
        raise ValueError("paths must share a grid (use resample/merge_grids)")
    if a.values.shape[1:] != b.values.shape[1:]:
        raise ValueError("paths must share a dimension")


def operator_norm(mat: np.ndarray, tol: float = 1e-12, max_iter: int = 500) -> float:
    """Largest singular value via power iteration on m^T m."""
    m = np.asarray(mat, dtype=float)
    d = m.shape[0]
    if d == 1:
        return abs(float(m[0, 0]))
    mtm = m.T @ m
    # deterministic start, slightly tilted so it is not orthogonal to the
    # leading singular vector by symmetry
    v = np.ones(d) + 1e-3 * np.arange(d)
    v /= np.linalg.norm(v)
    s_prev = -1.0
    for _ in range(max_iter):
        w = mtm @ v
        lam = np.linalg.norm(w)
        if lam == 0.0:
            return 0.0
        v = w / lam
        s = float(np.sqrt(lam))
        if abs(s - s_prev) <= tol * max(1.0, s):
            return s
        s_prev = s
    return s_prev


def _restricted_points(path, a: float, b: float):
    """Point values of the step path on [a, b]: inserted endpoint a, the grid
    points strictly inside (a, b), and (optionally) inserted endpoint b."""
    times = path.times
    if a < 0:
        raise ValueError("interval must lie in [0, inf)")
    lo = np.searchsorted(times, a, side="right")
    hi = np.searchsorted(times, b, side="left")
    interior = path.values[lo:hi]
    head = path.eval(a)[None]
    tail = path.eval(b)[None]
    return np.concatenate([head, interior, tail], axis=0)


def _pvar_pow_vectors(vals: np.ndarray, p: float) -> float:
    """v_p over all subdivisions of the listed points that contain both
    endpoints; O(n^2) dynamic program best[j] = max_i best[i] + |x_j - x_i|^p."""
    m = vals.shape[0]
    if m < 2:
        return 0.0
    if p == 1.0:
        return float(np.sum(np.linalg.norm(np.diff(vals, axis=0), axis=1)))
    half_p = p / 2.0
    best = np.zeros(m)
    if vals.shape[1] == 1:
        v = vals[:, 0]
        for j in range(1, m):
            d2 = (v[:j] - v[j]) ** 2
            best[j] = np.max(best[:j] + d2**half_p)
    else:
        for j in range(1, m):
            diff = vals[:j] - vals[j]
            d2 = np.einsum("ij,ij->i", diff, diff)
            best[j] = np.max(best[:j] + d2**half_p)
    return float(best[m - 1])


def _pvar_pow_matrices(vals: np.ndarray, p: float) -> float:
    """Same DP with increments in the operator norm."""
    m = vals.shape[0]
    if m < 2:
        return 0.0
    dist = np.zeros((m, m))
    for j in range(1, m):
        for i in range(j):
            dist[i, j] = operator_norm(vals[j] - vals[i])
    if p == 1.0:
        return float(sum(dist[i, i + 1] for i in range(m - 1)))
    best = np.zeros(m)
    dp = dist**p
    for j in range(1, m):
        best[j] = np.max(best[:j] + dp[:j, j])
    return float(best[m - 1])


def p_variation(path, p: float, interval=None, *, point_cap: int = PVAR_POINT_CAP) -> VariationResult:
    """Exact p-variation of a step path over [a, b].

    The supremum over all real subdivisions of [a, b] is attained on the
    grid points augmented by a and b (cadlag-evaluated), and is computed by
    the O(n^2) dynamic program with both endpoints forced.  Grids larger
    than ``point_cap`` are refused rather than approximated.
    """
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    if interval is None:
        a, b = float(path.times[0]), float(path.times[-1])
        if len(path) == 1:
            pts = path.values[:1]
            pts = np.concatenate([pts, pts], axis=0)
        else:
            pts = path.values
    else:
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            raise ValueError(f"empty interval [{a}, {b}]")
        pts = _restricted_points(path, a, b)
    if pts.shape[0] > point_cap:
        raise ValueError(
            f"grid has {pts.shape[0]} points in [{a}, {b}], above the cap "
            f"{point_cap}; the exact O(n^2) computation is refused"
        )
    if isinstance(path, MatrixPath):
        value = _pvar_pow_matrices(pts, p)
        start = operator_norm(pts[0])
    else:
        value = _pvar_pow_vectors(pts, p)
        start = float(np.linalg.norm(pts[0]))
    norm = value ** (1.0 / p)
    return VariationResult(p=p, value=value, norm=norm, bar_norm=norm + start, interval=(a, b))


def vbar(path, p: float, interval=None) -> float:
    """bar V_p = V_p + |x(a)|, the p-variation norm used throughout."""
    return p_variation(path, p, interval).bar_norm


def oscillation(path: SampledPath, T: float | None = None) -> float:
    """max over grid pairs s, t <= T of |x_t - x_s|."""
    if T is None:
        T = float(path.times[-1])
    if T < 0:
        raise ValueError("T must be >= 0")
    hi = np.searchsorted(path.times, T, side="right")
    vals = path.values[:hi]
    if vals.shape[0] <= 1:
        return 0.0
    if vals.shape[1] == 1:
        return float(vals.max() - vals.min())
    # pairwise distances, chunked to keep memory at O(chunk * n)
    best = 0.0
    n = vals.shape[0]
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, chunk):
        block = vals[start : start + chunk]
        diff = block[:, None, :] - vals[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        best = max(best, float(d2.max()))
    return float(np.sqrt(best))


def interpolation_bound(path: SampledPath, p: float, eps: float, T: float | None = None):
    """Interpolation estimate between variation orders.

    Returns (lhs, rhs) with lhs = V_{p+eps}(x)_T and
    rhs = Osc(x)_T**(1 - p/(p+eps)) * V_p(x)_T**(p/(p+eps)); lhs <= rhs.
    """
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if T is None:
        T = float(path.times[-1])
    interval = (0.0, T) if T > 0 else None
    if interval is None:
        lhs = 0.0
        vp = 0.0
    else:
        lhs = p_variation(path, p + eps, interval).norm
        vp = p_variation(path, p, interval).norm
    osc = oscillation(path, T)
    expo = p / (p + eps)
    rhs = osc ** (1.0 - expo) * vp**expo
    return lhs, rhs


# ---------------------------------------------------------------------------
# CSV path format: header t,x1,...,xd; one row per grid point; floats are
# written with shortest round-trip decimal formatting so emit/parse is
# bit-faithful.
# ---------------------------------------------------------------------------

def write_path_csv(path: SampledPath, file) -> None:
    close = False
    if isinstance(file, (str, bytes)) or hasattr(file, "__fspath__"):
        file = open(file, "w", encoding="utf-8", newline="\n")
        close = True
    try:
        d = path.dim
        file.write("t," + ",".join(f"x{i + 1}" for i in range(d)) + "\n")
        for t, row in zip(path.times, path.values):
            file.write(repr(float(t)) + "," + ",".join(repr(float(v)) for v in row) + "\n")
    finally:
        if close:
            file.close()


def read_path_csv(file) -> SampledPath:
    close = False
    if isinstance(file, (str, bytes)) or hasattr(file, "__fspath__"):
        file = open(file, "r", encoding="utf-8")
        close = True
    try:
        header = file.readline().strip()
        cols = header.split(",")
        if not cols or cols[0] != "t" or len(cols) < 2:
            raise ValueError(f"bad path CSV header: {header!r}")
        for i, name in enumerate(cols[1:]):
            if name != f"x{i + 1}":
                raise ValueError(f"bad path CSV header column {name!r}")
        times = []
        values = []
        for line in file:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(cols):
                raise ValueError(f"bad path CSV row: {line!r}")
            times.append(float(parts[0]))
            values.append([float(v) for v in parts[1:]])
        return SampledPath(np.array(times), np.array(values))
    finally:
        if close:
            file.close()
