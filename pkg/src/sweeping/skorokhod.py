"""Exact solver and verifier for the extended Skorokhod problem with two
time-dependent barriers.

Given an input step path y and barriers l <= u with l_0 <= y_0 <= u_0, the
solver produces (x, k) with x = y + k confined to [l, u], where the
regulator k acts minimally: it only pushes up at the lower barrier and down
at the upper one.  For step paths the constrained path is given exactly by
the componentwise projection recursion

    K_0 = 0,   K_i = max(min(K_{i-1}, U_i - Y_i), L_i - Y_i),   X_i = Y_i + K_i.

Collapsed barriers (l = u in a component) are legal; no interior-gap
condition is assumed.  The variational characterisation (minimality of k via
the complementarity inequalities) is checked by ``verify_esp``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paths import SampledPath, p_variation, resample, union_times

__all__ = [
    "BarrierPair",
    "EspSolution",
    "VerificationReport",
    "constant_barriers",
    "esp_solve",
    "projection_step",
    "verify_esp",
    "esp_lipschitz_gap",
    "esp_supnorm_gap",
]


@dataclass(frozen=True)
class BarrierPair:
    """Lower/upper barrier paths l <= u on a shared grid, with an optional
    witness path h satisfying l <= h <= u (used in a priori norm bounds)."""

    lower: SampledPath
    upper: SampledPath
    witness: SampledPath | None = None

    def __post_init__(self):
        l, u = self.lower, self.upper
        if not np.array_equal(l.times, u.times) or l.dim != u.dim:
            raise ValueError("barriers must share a grid and dimension")
        if np.any(l.values > u.values):
            i = int(np.argwhere((l.values > u.values).any(axis=1))[0][0])
            raise ValueError(
                f"barrier crossing l > u at grid index {i} (t={l.times[i]})"
            )
        h = self.witness
        if h is not None:
            if not np.array_equal(h.times, l.times) or h.dim != l.dim:
                raise ValueError("witness must share the barrier grid and dimension")
            if np.any(h.values < l.values) or np.any(h.values > u.values):
                raise ValueError("witness must satisfy l <= h <= u")

    @property
    def times(self) -> np.ndarray:
        return self.lower.times

    @property
    def dim(self) -> int:
        return self.lower.dim

    def resampled(self, times) -> "BarrierPair":
        h = self.witness
        return BarrierPair(
            resample(self.lower, times),
            resample(self.upper, times),
            resample(h, times) if h is not None else None,
        )


@dataclass(frozen=True)
class EspSolution:
    """Constrained path x, regulator k and input y on a shared grid.

    The numeric solution properties (x = y + k, l <= x <= u, k_0 = 0 and the
    complementarity conditions) are checked by ``verify_esp``, not here, so
    that deliberately corrupted solutions can be constructed for testing.
    """

    x: SampledPath
    k: SampledPath
    y: SampledPath

    def __post_init__(self):
        if not (
            np.array_equal(self.x.times, self.k.times)
            and np.array_equal(self.x.times, self.y.times)
        ):
            raise ValueError("x, k, y must share a grid")
        if not (self.x.dim == self.k.dim == self.y.dim):
            raise ValueError("x, k, y must share a dimension")

    @property
    def times(self) -> np.ndarray:
        return self.x.times


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    n_violations: int
    first_violation: tuple[int, int, str] | None  # (grid index, component, check)
    tol_abs: float
    violations: tuple[tuple[int, int, str, float], ...] = ()

    def __bool__(self) -> bool:
        return self.passed


def constant_barriers(times, lower, upper, witness=None) -> BarrierPair:
    """Barriers that are constant in time."""
    from .paths import constant_path

    h = constant_path(times, witness) if witness is not None else None
    return BarrierPair(constant_path(times, lower), constant_path(times, upper), h)


def projection_step(x_prev, dy, l_t, u_t) -> np.ndarray:
    """Componentwise projection of x_prev + dy onto the box [l_t, u_t]."""
    x_prev = np.asarray(x_prev, dtype=float)
    dy = np.asarray(dy, dtype=float)
    l_t = np.asarray(l_t, dtype=float)
    u_t = np.asarray(u_t, dtype=float)
    if np.any(l_t > u_t):
        raise ValueError("barrier crossing l > u in projection_step")
    return np.maximum(np.minimum(x_prev + dy, u_t), l_t)


def esp_solve(y: SampledPath, barriers: BarrierPair) -> EspSolution:
    """Solve the extended Skorokhod problem for a step input.

    Requires y and the barriers on the same grid and l_0 <= y_0 <= u_0.
    """
    l, u = barriers.lower, barriers.upper
    if not np.array_equal(y.times, l.times):
        raise ValueError("y and barriers must share a grid (use resample)")
    if y.dim != barriers.dim:
        raise ValueError(f"dimension mismatch: y is {y.dim}-d, barriers {barriers.dim}-d")
    Y, L, U = y.values, l.values, u.values
    if np.any(Y[0] < L[0]) or np.any(Y[0] > U[0]):
        raise ValueError(
            f"initial condition violation: y_0={Y[0]} outside [l_0, u_0]="
            f"[{L[0]}, {U[0]}]"
        )
    n, d = Y.shape
    # projection form of the regulator recursion: x_i is the projection of
    # y_i + k_{i-1} onto [l_i, u_i] and k_i = x_i - y_i; clipping lands on
    # the barriers bitwise, so re-solving a constrained output yields k = 0
    # exactly
    X = np.empty((n, d))
    K = np.empty((n, d))
    X[0] = Y[0]
    K[0] = 0.0
    k = np.zeros(d)
    for i in range(1, n):
        xi = np.maximum(np.minimum(Y[i] + k, U[i]), L[i])
        k = xi - Y[i]
        X[i] = xi
        K[i] = k
    return EspSolution(
        x=SampledPath(y.times, X), k=SampledPath(y.times, K), y=y
    )


def _max_subarray(a: np.ndarray) -> tuple[float, int]:
    """Kadane: max sum over non-empty contiguous windows, with end index."""
    best = -np.inf
    best_end = 0
    run = 0.0
    for i, v in enumerate(a):
        run = v if run <= 0.0 else run + v
        if run > best:
            best = run
            best_end = i
    return best, best_end


def verify_esp(
    sol: EspSolution,
    barriers: BarrierPair,
    tol: float = 1e-12,
    gap_eps: float = 1e-8,
    max_recorded: int = 100,
) -> VerificationReport:
    """Check a candidate solution against the variational definition.

    The absolute tolerance is tol * (1 + max(|y|, |l|, |u|)).  Checks:
    x = y + k, k_0 = 0, l <= x <= u, the jump conditions (an upward move of
    k requires x at the lower barrier, a downward move x at the upper), and
    the discrete complementarity sums over every grid subinterval on which
    the barrier gap min(u - l) stays above ``gap_eps``:

        sum (x - l) dk <= tol_abs   and   sum (x - u) dk <= tol_abs.

    Failures are reported, not raised.
    """
    l, u = barriers.lower, barriers.upper
    if not np.array_equal(sol.times, l.times):
        raise ValueError("solution and barriers must share a grid")
    X, K, Y = sol.x.values, sol.k.values, sol.y.values
    L, U = l.values, u.values
    scale = 1.0 + max(np.abs(Y).max(), np.abs(L).max(), np.abs(U).max())
    atol = tol * scale
    n, d = X.shape
    viol: list[tuple[int, int, str, float]] = []

    def record(mask_or_idx, comp_idx, code, magnitude):
        for i, c, m in zip(mask_or_idx, comp_idx, magnitude):
            viol.append((int(i), int(c), code, float(m)))

    bad = np.abs(X - Y - K) > atol
    if bad.any():
        idx = np.argwhere(bad)
        record(idx[:, 0], idx[:, 1], "sum", np.abs(X - Y - K)[bad])
    bad0 = np.abs(K[0]) > atol
    if bad0.any():
        record(np.zeros(bad0.sum()), np.flatnonzero(bad0), "k0", np.abs(K[0])[bad0])
    below = L - X > atol
    if below.any():
        idx = np.argwhere(below)
        record(idx[:, 0], idx[:, 1], "below_lower", (L - X)[below])
    above = X - U > atol
    if above.any():
        idx = np.argwhere(above)
        record(idx[:, 0], idx[:, 1], "above_upper", (X - U)[above])

    dK = np.diff(K, axis=0)  # jump of k at grid index i+1
    push_up = dK > atol
    off_lower = (X[1:] - L[1:]) > atol
    bad = push_up & off_lower
    if bad.any():
        idx = np.argwhere(bad)
        record(idx[:, 0] + 1, idx[:, 1], "push_off_lower", (X[1:] - L[1:])[bad])
    pull_down = dK < -atol
    off_upper = (U[1:] - X[1:]) > atol
    bad = pull_down & off_upper
    if bad.any():
        idx = np.argwhere(bad)
        record(idx[:, 0] + 1, idx[:, 1], "pull_off_upper", (U[1:] - X[1:])[bad])

    # complementarity sums on maximal runs where the barrier gap is open
    gap_open = (U - L).min(axis=1) > gap_eps
    jumps = np.zeros((n, d))
    jumps[1:] = dK
    i = 0
    while i < n:
        if not gap_open[i]:
            i += 1
            continue
        j = i
        while j < n and gap_open[j]:
            j += 1
        for c in range(d):
            for code, ref in (("comp_lower", L), ("comp_upper", U)):
                terms = (X[i:j, c] - ref[i:j, c]) * jumps[i:j, c]
                s, end = _max_subarray(terms)
                if s > atol:
                    viol.append((i + end, c, code, float(s)))
        i = j

    viol.sort(key=lambda v: (v[0], v[1]))
    first = tuple(viol[0][:3]) if viol else None
    return VerificationReport(
        passed=not viol,
        n_violations=len(viol),
        first_violation=first,
        tol_abs=float(atol),
        violations=tuple(viol[:max_recorded]),
    )


def esp_lipschitz_gap(
    y1: SampledPath, y2: SampledPath, barriers: BarrierPair, p: float
) -> tuple[float, float, float]:
    """Solve against the same barriers and measure the p-variation gaps.

    Returns (bar V_p(k1 - k2)_T, bar V_p(x1 - x2)_T, bar V_p(y1 - y2)_T).
    For inputs of dimension d the contracts are lhs_k <= d * rhs and
    lhs_x <= (d + 1) * rhs; in dimension one additionally lhs_k <= rhs.
    """
    s1 = esp_solve(y1, barriers)
    s2 = esp_solve(y2, barriers)
    lhs_k = p_variation(s1.k - s2.k, p).bar_norm
    lhs_x = p_variation(s1.x - s2.x, p).bar_norm
    rhs = p_variation(y1 - y2, p).bar_norm
    return lhs_k, lhs_x, rhs


def esp_supnorm_gap(
    y1: SampledPath,
    y2: SampledPath,
    barriers1: BarrierPair,
    barriers2: BarrierPair,
) -> tuple[float, float, tuple[float, float]]:
    """Sup-norm stability of the solution map under input and barrier moves.

    All sups are taken componentwise (max over components and grid times);
    with that norm the solution map satisfies

        sup |x - x'| <= 2 sup |y - y'| + sup max(|l - l'|, |u - u'|)
        sup |k - k'| <=   sup |y - y'| + sup max(|l - l'|, |u - u'|)

    Returns (sup_x_gap, sup_k_gap, (sup_y_gap, sup_barrier_gap)).
    """
    times = union_times(y1, y2, barriers1.lower, barriers2.lower)
    y1r, y2r = resample(y1, times), resample(y2, times)
    b1, b2 = barriers1.resampled(times), barriers2.resampled(times)
    s1 = esp_solve(y1r, b1)
    s2 = esp_solve(y2r, b2)

    def supgap(a, b):
        return float(np.abs(a.values - b.values).max())

    sup_x = supgap(s1.x, s2.x)
    sup_k = supgap(s1.k, s2.k)
    sup_y = supgap(y1r, y2r)
    sup_b = max(supgap(b1.lower, b2.lower), supgap(b1.upper, b2.upper))
    return sup_x, sup_k, (sup_y, sup_b)
