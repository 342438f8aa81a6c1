"""Riemann-Stieltjes / Young integration of matrix step paths against vector
step paths, with the explicit zeta-constant variation bound.

The integral uses the left-point rule (the integrand enters through its left
limit), which is exact for step functions.  The variation of the integral is
controlled by

    V_p(int_a^. w dz)_[a,b]  <=  C_{p,q} * bar V_q(w)_[a,b) * V_p(z)_[a,b]

with C_{p,q} = zeta(1/p + 1/q), valid whenever 1/p + 1/q > 1.  The half-open
bar V_q(w)_[a,b) is evaluated over the grid points strictly below b together
with the left limit at b (for step paths these coincide).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paths import (
    MatrixPath,
    SampledPath,
    operator_norm,
    p_variation,
    resample,
    union_times,
)

__all__ = [
    "YoungBound",
    "zeta_constant",
    "young_integral",
    "young_loeve_check",
    "merge_grids",
]


@dataclass(frozen=True)
class YoungBound:
    """Right-hand side of the Young-Loeve estimate: bound = c_pq * vq_w * vp_z."""

    p: float
    q: float
    c_pq: float
    vq_w: float
    vp_z: float
    bound: float


def zeta_constant(p: float, q: float, *, rtol: float = 1e-12) -> float:
    """zeta(1/p + 1/q), the constant in the Young-Loeve bound.

    Computed by direct summation of n**(-s) up to N plus the integral tail
    correction N**(1-s)/(s-1) + 0.5*N**(-s), doubling N until the estimate
    moves by less than ``rtol``.  Requires 1/p + 1/q > 1 (else the series
    diverges and Young integration is not defined).
    """
    s = 1.0 / p + 1.0 / q
    if s <= 1.0:
        raise ValueError(
            f"Young condition violated: 1/p + 1/q = {s} must be > 1"
        )
    # partial sum over n < N; the tail over n >= N is, by Euler-Maclaurin,
    # N**(1-s)/(s-1) + 0.5*N**(-s) up to O(N**(-s-1))
    big_n = 64
    partial = np.sum(1.0 / np.arange(1, big_n, dtype=float) ** s)
    est = partial + big_n ** (1.0 - s) / (s - 1.0) + 0.5 * big_n ** (-s)
    while big_n < 2**22:
        new_terms = np.arange(big_n, 2 * big_n, dtype=float)
        partial += np.sum(1.0 / new_terms**s)
        big_n *= 2
        new_est = partial + big_n ** (1.0 - s) / (s - 1.0) + 0.5 * big_n ** (-s)
        if abs(new_est - est) < rtol:
            return float(new_est)
        est = new_est
    return float(est)


def merge_grids(*paths):
    """Resample all paths onto their union grid by cadlag evaluation."""
    times = union_times(*paths)
    return [resample(p, times) for p in paths]


def _check_integrand_pair(w: MatrixPath, z: SampledPath):
    if not np.array_equal(w.times, z.times):
        raise ValueError("w and z must share a grid (use merge_grids)")
    if w.dim != z.dim:
        raise ValueError(f"dimension mismatch: w is {w.dim}x{w.dim}, z is {z.dim}-d")


def young_integral(w: MatrixPath, z: SampledPath, interval=None) -> SampledPath:
    """Cumulative left-point integral t -> sum_{a < t_i <= min(t, b)}
    w(t_{i-1}) (z(t_i) - z(t_{i-1})), exact for step paths.

    The result is a path on the full grid of the inputs: zero up to a,
    accumulating on (a, b], constant after b.
    """
    _check_integrand_pair(w, z)
    times = z.times
    if interval is None:
        a, b = float(times[0]), float(times[-1])
    else:
        a, b = float(interval[0]), float(interval[1])
        if a not in times or b not in times:
            raise ValueError("interval endpoints must be grid points")
        if not a < b:
            raise ValueError(f"empty interval [{a}, {b}]")
    dz = np.diff(z.values, axis=0)
    steps = np.einsum("nij,nj->ni", w.values[:-1], dz)
    inside = (times[1:] > a) & (times[1:] <= b)
    steps[~inside] = 0.0
    out = np.zeros_like(z.values)
    out[1:] = np.cumsum(steps, axis=0)
    return SampledPath(times, out)


def young_loeve_check(
    w: MatrixPath, z: SampledPath, p: float, q: float, interval=None
) -> tuple[float, YoungBound]:
    """Measured V_p of the integral path against its Young-Loeve bound.

    Returns (lhs, bound) where lhs = V_p(int w dz)_[a,b] and
    bound.bound = zeta(1/p + 1/q) * bar V_q(w)_[a,b) * V_p(z)_[a,b];
    the contract is lhs <= bound.bound.
    """
    _check_integrand_pair(w, z)
    times = z.times
    if interval is None:
        a, b = float(times[0]), float(times[-1])
    else:
        a, b = float(interval[0]), float(interval[1])
    c_pq = zeta_constant(p, q)
    integral = young_integral(w, z, (a, b))
    lhs = p_variation(integral, p, (a, b)).norm
    vq_w = _vbar_half_open(w, q, a, b)
    vp_z = p_variation(z, p, (a, b)).norm
    bound = YoungBound(p=p, q=q, c_pq=c_pq, vq_w=vq_w, vp_z=vp_z, bound=c_pq * vq_w * vp_z)
    return lhs, bound


def _vbar_half_open(w: MatrixPath, q: float, a: float, b: float) -> float:
    """bar V_q(w) over [a, b): grid points strictly below b plus the left
    limit at b (already a grid point for step paths)."""
    times = w.times
    lo = np.searchsorted(times, a, side="right")
    hi = np.searchsorted(times, b, side="left")
    pts = np.concatenate([w.eval(a)[None], w.values[lo:hi]], axis=0)
    if pts.shape[0] == 1:
        return operator_norm(pts[0])
    sub = MatrixPath(np.arange(pts.shape[0], dtype=float), pts)
    res = p_variation(sub, q)
    return res.bar_norm
