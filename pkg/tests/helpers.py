"""Shared test utilities: random instance generators and independent
brute-force oracles (enumeration, direct summation) for the exact
algorithms they cross-check."""
from __future__ import annotations

import functools
import itertools

import numpy as np

from sweeping import BarrierPair, SampledPath


@functools.lru_cache(maxsize=None)
def _chains(n: int, k: int) -> np.ndarray:
    """All strictly increasing index chains 0 < i_1 < ... < i_k < n-1."""
    combos = list(itertools.combinations(range(1, n - 1), k))
    return np.asarray(combos, dtype=np.intp).reshape(len(combos), k)


def pvar_bruteforce(values: np.ndarray, p: float, dist_matrix=None) -> float:
    """v_p over [t_0, t_{n-1}] by exhaustive enumeration of every subdivision
    containing both endpoints.  Independent of the DP implementation."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values.reshape(-1, 1)
    n = values.shape[0]
    if dist_matrix is None:
        dist_matrix = np.linalg.norm(values[:, None, :] - values[None, :, :], axis=2)
    dp = dist_matrix**p
    best = dp[0, n - 1]
    for k in range(1, n - 1):
        idx = _chains(n, k)
        full = np.concatenate(
            [
                np.zeros((idx.shape[0], 1), dtype=np.intp),
                idx,
                np.full((idx.shape[0], 1), n - 1, dtype=np.intp),
            ],
            axis=1,
        )
        sums = dp[full[:, :-1], full[:, 1:]].sum(axis=1)
        best = max(best, float(sums.max()))
    return float(best)


def random_step_path(rng: np.random.Generator, n: int, d: int = 1, scale: float = 1.0) -> SampledPath:
    times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.05, 1.0, n - 1))])
    values = np.cumsum(rng.normal(0.0, scale, (n, d)), axis=0)
    return SampledPath(times, values)


def random_esp_instance(
    rng: np.random.Generator,
    n_max: int = 50,
    d: int = 1,
    collapse_prob: float = 0.2,
    paired: bool = True,
):
    """Random step input(s) and barriers, including collapsed segments l = u.

    Returns (y1, y2, barriers) when paired, else (y1, barriers).  Both inputs
    satisfy l_0 <= y_0 <= u_0.
    """
    n = int(rng.integers(4, n_max + 1))
    times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.05, 1.0, n - 1))])
    base = np.cumsum(rng.normal(0.0, 0.6, (n, d)), axis=0)
    gap = rng.uniform(0.1, 2.0, (n, d))
    gap[rng.random((n, d)) < collapse_prob] = 0.0
    lower = SampledPath(times, base)
    upper = SampledPath(times, base + gap)
    witness = SampledPath(times, base + gap * rng.uniform(0.0, 1.0, (n, d)))
    barriers = BarrierPair(lower, upper, witness)

    def make_input():
        y = np.cumsum(rng.normal(0.0, 0.8, (n, d)), axis=0)
        y[0] = base[0] + gap[0] * rng.random(d)
        return SampledPath(times, y)

    y1 = make_input()
    if not paired:
        return y1, barriers
    y2 = make_input()
    return y1, y2, barriers
