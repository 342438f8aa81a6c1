"""Solvers for the reflected integral equation between two barriers,

    x_t = x_0 + int_0^t f(s, x_{s-}) da_s + int_0^t g(s, x_{s-}) dz_s + k_t,

where a is a scalar bounded-variation driver, z a d-dimensional driver of
bounded p-variation with 1 < p < 2, and (x, k) solves the extended Skorokhod
problem for the integral functional between the barriers.

Two schemes are provided.  ``picard_solve`` iterates the fixed-point map
x -> ESP(x_0 + integral(x)) on the merged grid of all inputs, stopping when
the bar V_p distance between consecutive iterates falls below a tolerance.
``euler_solve`` is the projected (catching-up) time stepper on the uniform
grid {k/n}: add the driver increment, project onto the current box.  On a
common grid with the same left-point increments the two schemes share their
fixed point, so they agree up to the Picard tolerance.

All integrals sample the integrand path as t_i -> phi(t_i, x_{t_i}) and use
left-point sums, so both the time and the state argument enter through the
previous grid point.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping

import numpy as np

from .drivers import FbmConfig, SigmaWeight, fbm_sample, weighted_fbm
from .paths import SampledPath, constant_path, p_variation, resample, uniform_grid, union_times
from .skorokhod import BarrierPair, EspSolution, esp_solve

__all__ = [
    "CoefficientPair",
    "ProblemSpec",
    "SolveReport",
    "ConvergenceError",
    "PerturbedProblem",
    "StabilityRow",
    "StochasticResult",
    "picard_solve",
    "euler_solve",
    "apriori_norm_check",
    "composed_variation_check",
    "stability_experiment",
    "stochastic_solve",
    "probe_declared_constants",
    "drift_from_config",
    "diffusion_from_config",
    "coefficients_from_config",
    "shifted_coefficients",
    "benchmark_problem",
    "BENCHMARK_PROBLEMS",
]


class ConvergenceError(RuntimeError):
    """Picard iteration failed to reach the tolerance within max_iter."""

    def __init__(self, message, residual_history=()):
        super().__init__(message)
        self.residual_history = tuple(residual_history)


@dataclass(frozen=True)
class CoefficientPair:
    """Drift f(t, x) -> d-vector and diffusion g(t, x) -> d x d matrix with
    the caller-declared regularity constants.

    L is the linear-growth constant of f; (beta, c_beta) the joint
    time/state regularity of g; local_constants optionally maps a radius N
    to (L_N, alpha_N, C_N): the Lipschitz constant of f and the Hoelder data
    of grad_x g on the ball of radius N.  The constants are trusted, not
    estimated; they only enter diagnostics and checkable bounds.

    Either callable may be None, meaning identically zero.
    """

    f: Callable[[float, np.ndarray], np.ndarray] | None
    g: Callable[[float, np.ndarray], np.ndarray] | None
    L: float = 1.0
    beta: float = 1.0
    c_beta: float = 1.0
    local_constants: Mapping[float, tuple[float, float, float]] | None = None

    def __post_init__(self):
        if self.L <= 0 or self.c_beta <= 0:
            raise ValueError("declared constants must be positive")
        if not (0.0 < self.beta <= 1.0):
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")

    def growth_bound_const(self, T: float, dim: int) -> float:
        """C^{beta,T} = c_beta (T^beta + 1) + |g(0, 0)|, the linear-growth
        constant of g on [0, T] implied by its regularity."""
        if self.g is None:
            return self.c_beta * (T**self.beta + 1.0)
        g00 = np.asarray(self.g(0.0, np.zeros(dim)), dtype=float)
        from .paths import operator_norm

        return self.c_beta * (T**self.beta + 1.0) + operator_norm(g00)


@dataclass(frozen=True)
class ProblemSpec:
    """A reflected-equation instance: initial point, coefficients, drivers,
    barriers and the variation order p.

    p must lie in (1, 2) (Young regime); p = 1 is accepted only for pure
    bounded-variation problems (g absent).  For fBm-driven z the caller is
    responsible for p > 1/H.
    """

    x0: np.ndarray
    coeffs: CoefficientPair
    a: SampledPath | None
    z: SampledPath | None
    barriers: BarrierPair
    p: float

    def __post_init__(self):
        x0 = np.atleast_1d(np.asarray(self.x0, dtype=float))
        d = self.barriers.dim
        if x0.shape != (d,):
            raise ValueError(f"x0 must be a {d}-vector, got shape {x0.shape}")
        l0 = self.barriers.lower.values[0]
        u0 = self.barriers.upper.values[0]
        if np.any(x0 < l0) or np.any(x0 > u0):
            raise ValueError(f"x0={x0} outside [l_0, u_0]=[{l0}, {u0}]")
        if self.coeffs.g is None:
            if not (1.0 <= self.p < 2.0):
                raise ValueError(f"p must lie in [1, 2) for pure-BV problems, got {self.p}")
        else:
            if not (1.0 < self.p < 2.0):
                raise ValueError(f"p must lie in (1, 2), got {self.p}")
            if self.z is None:
                raise ValueError("a diffusion g without a driver z makes no sense")
            if not (1.0 - 1.0 / self.p < self.coeffs.beta <= 1.0):
                raise ValueError(
                    f"beta={self.coeffs.beta} must lie in (1 - 1/p, 1] = "
                    f"({1.0 - 1.0 / self.p}, 1]"
                )
            if self.z.dim != d:
                raise ValueError("z must match the barrier dimension")
        if self.a is not None and self.a.dim != 1:
            raise ValueError("the bounded-variation driver a must be scalar")
        x0 = x0.copy()
        x0.flags.writeable = False
        object.__setattr__(self, "x0", x0)

    @property
    def dim(self) -> int:
        return self.barriers.dim

    @property
    def horizon(self) -> float:
        return float(self.barriers.times[-1])


@dataclass(frozen=True)
class SolveReport:
    """Solver output: the solution, the iteration count or grid level, the
    final residual (bar V_p distance of the last two Picard iterates; None
    for a single Euler run), and the a priori norm bar V_p(x)_T."""

    solution: EspSolution
    level: int
    residual: float | None
    vbar_norm: float
    residual_history: tuple[float, ...] = ()
    norm_history: tuple[float, ...] = ()


def _merged_grid(spec: ProblemSpec) -> np.ndarray:
    paths = [spec.barriers.lower, spec.barriers.upper]
    if spec.barriers.witness is not None:
        paths.append(spec.barriers.witness)
    if spec.a is not None:
        paths.append(spec.a)
    if spec.z is not None:
        paths.append(spec.z)
    return union_times(*paths)


def _integral_increments(spec: ProblemSpec, times: np.ndarray, x_vals: np.ndarray,
                         a_vals, z_vals) -> np.ndarray:
    """Left-point increments of the integral functional along the grid:
    step i -> f(t_{i-1}, x_{i-1}) da_i + g(t_{i-1}, x_{i-1}) dz_i."""
    n, d = x_vals.shape
    out = np.zeros((n - 1, d))
    f, g = spec.coeffs.f, spec.coeffs.g
    if f is not None and a_vals is not None:
        da = np.diff(a_vals[:, 0])
        fv = np.empty((n - 1, d))
        for i in range(n - 1):
            fv[i] = f(times[i], x_vals[i])
        out += fv * da[:, None]
    if g is not None and z_vals is not None:
        dz = np.diff(z_vals, axis=0)
        for i in range(n - 1):
            gv = np.asarray(g(times[i], x_vals[i]), dtype=float)
            out[i] += gv @ dz[i]
    return out


def picard_solve(spec: ProblemSpec, tol: float = 1e-8, max_iter: int = 200) -> SolveReport:
    """Fixed-point iteration for the reflected equation on the merged grid.

    Starts from the sweeping of the constant path x_0, then repeatedly maps
    the previous iterate through the integral functional and the Skorokhod
    solver, until bar V_p(x_new - x_old) < tol.  Raises ConvergenceError
    (carrying the residual history) if max_iter is exhausted.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    times = _merged_grid(spec)
    barriers = spec.barriers.resampled(times)
    a_vals = resample(spec.a, times).values if spec.a is not None else None
    z_vals = resample(spec.z, times).values if spec.z is not None else None

    sol = esp_solve(constant_path(times, spec.x0), barriers)
    norm = p_variation(sol.x, spec.p).bar_norm
    residuals: list[float] = []
    norms: list[float] = [norm]
    for it in range(1, max_iter + 1):
        incr = _integral_increments(spec, times, sol.x.values, a_vals, z_vals)
        y_vals = np.empty_like(sol.x.values)
        y_vals[0] = spec.x0
        y_vals[1:] = spec.x0 + np.cumsum(incr, axis=0)
        new_sol = esp_solve(SampledPath(times, y_vals), barriers)
        residual = p_variation(new_sol.x - sol.x, spec.p).bar_norm
        residuals.append(residual)
        norms.append(p_variation(new_sol.x, spec.p).bar_norm)
        sol = new_sol
        if residual < tol:
            return SolveReport(
                solution=sol,
                level=it,
                residual=residual,
                vbar_norm=norms[-1],
                residual_history=tuple(residuals),
                norm_history=tuple(norms),
            )
    raise ConvergenceError(
        f"Picard iteration did not reach tol={tol} in {max_iter} iterations "
        f"(last residual {residuals[-1]:.3e})",
        residual_history=residuals,
    )


def euler_solve(spec: ProblemSpec, n: int) -> SolveReport:
    """Projected Euler (catching-up) scheme on the uniform grid {k/n}.

    Each step adds the left-point driver increment and projects onto the
    current box:

        dy    = f(k/n, x_k) (a_{(k+1)/n} - a_{k/n}) + g(k/n, x_k) (z_{(k+1)/n} - z_{k/n})
        x_{k+1} = max(min(x_k + dy, u_{(k+1)/n}), l_{(k+1)/n})
        k_{k+1} = k_k + (x_{k+1} - x_k) - dy

    Drivers and barriers given on other grids are resampled by cadlag
    evaluation.  Convergence of the scheme assumes f continuous in time;
    this is not checkable for a black-box callable and is trusted.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    times = uniform_grid(n, spec.horizon)
    barriers = spec.barriers.resampled(times)
    a_vals = resample(spec.a, times).values if spec.a is not None else None
    z_vals = resample(spec.z, times).values if spec.z is not None else None
    L, U = barriers.lower.values, barriers.upper.values
    m = times.size
    d = spec.dim
    f, g = spec.coeffs.f, spec.coeffs.g

    x = np.empty((m, d))
    y = np.empty((m, d))
    x[0] = spec.x0
    y[0] = spec.x0
    for i in range(m - 1):
        dy = np.zeros(d)
        if f is not None and a_vals is not None:
            dy += np.asarray(f(times[i], x[i]), dtype=float) * (
                a_vals[i + 1, 0] - a_vals[i, 0]
            )
        if g is not None and z_vals is not None:
            gv = np.asarray(g(times[i], x[i]), dtype=float)
            dy += gv @ (z_vals[i + 1] - z_vals[i])
        x[i + 1] = np.maximum(np.minimum(x[i] + dy, U[i + 1]), L[i + 1])
        y[i + 1] = y[i] + dy
    k = x - y
    sol = EspSolution(
        x=SampledPath(times, x), k=SampledPath(times, k), y=SampledPath(times, y)
    )
    vbar_norm = p_variation(sol.x, spec.p).bar_norm
    return SolveReport(solution=sol, level=n, residual=None, vbar_norm=vbar_norm)


def apriori_norm_check(report: SolveReport, spec: ProblemSpec) -> tuple[float, bool]:
    """bar V_p(x)_T of a solve, plus a boundedness flag for iterate sequences.

    The flag is True when every recorded iterate norm is finite and the
    running maximum has stabilised (the last iterate did not raise it).
    """
    measured = report.vbar_norm
    norms = np.asarray(report.norm_history if report.norm_history else (measured,))
    finite = bool(np.all(np.isfinite(norms)))
    if norms.size >= 3:
        stabilized = norms[-1] <= np.max(norms[:-1]) * (1.0 + 1e-9)
    else:
        stabilized = True
    return float(measured), finite and stabilized


def composed_variation_check(
    g: Callable[[float, np.ndarray], float],
    x: SampledPath,
    y: SampledPath,
    *,
    c_beta: float,
    beta: float,
    c_n: float,
    alpha_n: float,
    p: float,
    T: float | None = None,
) -> tuple[float, float]:
    """Variation bound for a scalar coefficient composed with two paths.

    For g with joint regularity (c_beta, beta) and gradient Hoelder data
    (c_n, alpha_n) on a ball containing both paths, and r = max(p/alpha_n,
    1/beta), the composed difference satisfies

        V_r(g(., x) - g(., y))_T <= c_beta V_r(x - y)_T
            + c_n sup_{t<=T} |x_t - y_t| (T^beta + V_p(x)_T^alpha_n + V_p(y)_T^alpha_n).

    Returns (lhs, rhs); lhs <= rhs for conforming g.
    """
    if not np.array_equal(x.times, y.times):
        raise ValueError("x and y must share a grid")
    if T is None:
        T = float(x.times[-1])
    interval = (0.0, T)
    r = max(p / alpha_n, 1.0 / beta)
    hi = np.searchsorted(x.times, T, side="right")
    ts = x.times[:hi]
    gx = np.array([g(t, v) for t, v in zip(ts, x.values[:hi])], dtype=float)
    gy = np.array([g(t, v) for t, v in zip(ts, y.values[:hi])], dtype=float)
    composed = SampledPath(ts, gx - gy)
    lhs = p_variation(composed, r).norm
    vr_xy = p_variation(x - y, r, interval).norm
    sup_gap = float(np.abs(x.values[:hi] - y.values[:hi]).max())
    vpx = p_variation(x, p, interval).norm
    vpy = p_variation(y, p, interval).norm
    rhs = c_beta * vr_xy + c_n * sup_gap * (T**beta + vpx**alpha_n + vpy**alpha_n)
    return lhs, rhs


def probe_declared_constants(
    coeffs: CoefficientPair,
    radius: float,
    dim: int,
    *,
    t_max: float = 1.0,
    n_samples: int = 200,
    seed: int = 0,
) -> list[str]:
    """Finite-difference falsification probe for the declared constants.

    Samples point pairs in the ball of the given radius and measures the
    growth ratio |f(t,x)| / (1 + |x|) against L, the Lipschitz quotient of
    f against the declared local constant, and the joint quotient
    |g(t,x) - g(s,y)| / (|t-s|^beta + |x-y|) against c_beta.  A violated
    declaration produces a warning, never an error (the solvers keep
    trusting the caller); the warning messages are also returned.
    """
    import warnings

    from .paths import operator_norm

    rng = np.random.default_rng(seed)
    f, g = coeffs.f, coeffs.g
    local = None
    if coeffs.local_constants:
        balls = [k for k in coeffs.local_constants if k >= radius]
        if balls:
            local = coeffs.local_constants[min(balls)]
    worst = {"growth": 0.0, "lipschitz": 0.0, "diffusion": 0.0}
    for _ in range(n_samples):
        x = rng.uniform(-1, 1, size=dim) * radius
        y = rng.uniform(-1, 1, size=dim) * radius
        t, s = rng.uniform(0, t_max, size=2)
        if f is not None:
            worst["growth"] = max(
                worst["growth"],
                float(np.linalg.norm(f(t, x))) / (1.0 + float(np.linalg.norm(x))),
            )
            gap = float(np.linalg.norm(x - y))
            if local is not None and gap > 0:
                worst["lipschitz"] = max(
                    worst["lipschitz"],
                    float(np.linalg.norm(np.subtract(f(t, x), f(t, y)))) / gap,
                )
        if g is not None:
            denom = abs(t - s) ** coeffs.beta + float(np.linalg.norm(x - y))
            if denom > 0:
                diff = np.asarray(g(t, x), dtype=float) - np.asarray(g(s, y), dtype=float)
                worst["diffusion"] = max(worst["diffusion"], operator_norm(diff) / denom)
    slack = 1.0 + 1e-9
    problems: list[str] = []
    if f is not None and worst["growth"] > coeffs.L * slack:
        problems.append(
            f"drift growth ratio {worst['growth']:.4g} exceeds declared L={coeffs.L:.4g}"
        )
    if f is not None and local is not None and worst["lipschitz"] > local[0] * slack:
        problems.append(
            f"drift Lipschitz quotient {worst['lipschitz']:.4g} exceeds declared "
            f"L_N={local[0]:.4g} on the radius-{radius:g} ball"
        )
    if g is not None and worst["diffusion"] > coeffs.c_beta * slack:
        problems.append(
            f"diffusion regularity quotient {worst['diffusion']:.4g} exceeds "
            f"declared c_beta={coeffs.c_beta:.4g}"
        )
    for msg in problems:
        warnings.warn(msg, stacklevel=2)
    return problems


@dataclass(frozen=True)
class PerturbedProblem:
    eps: float
    coeffs: CoefficientPair
    x0: np.ndarray


@dataclass(frozen=True)
class StabilityRow:
    eps: float
    gap_x: float
    gap_k: float
    error: str | None = None


def stability_experiment(
    spec: ProblemSpec,
    perturbations: list[PerturbedProblem],
    tol: float = 1e-8,
    max_iter: int = 200,
) -> list[StabilityRow]:
    """Solve the base problem and each perturbed variant, reporting the
    bar V_p gaps of the solutions.  Per-instance solver failures are
    recorded in the row and the experiment continues."""
    base = picard_solve(spec, tol=tol, max_iter=max_iter)
    rows: list[StabilityRow] = []
    for pert in perturbations:
        try:
            pspec = replace(spec, coeffs=pert.coeffs, x0=pert.x0)
            rep = picard_solve(pspec, tol=tol, max_iter=max_iter)
            gx = p_variation(rep.solution.x - base.solution.x, spec.p).bar_norm
            gk = p_variation(rep.solution.k - base.solution.k, spec.p).bar_norm
            rows.append(StabilityRow(eps=pert.eps, gap_x=gx, gap_k=gk))
        except (ValueError, RuntimeError) as exc:
            rows.append(
                StabilityRow(eps=pert.eps, gap_x=np.nan, gap_k=np.nan, error=str(exc))
            )
    return rows


@dataclass(frozen=True)
class StochasticResult:
    reports: tuple[SolveReport | None, ...]
    gaps: np.ndarray
    mean_gap: float
    failures: tuple[tuple[int, str], ...] = ()


def stochastic_solve(
    spec: ProblemSpec, fbm_cfg: FbmConfig, sigma: SigmaWeight, n: int
) -> StochasticResult:
    """Pathwise Euler solves driven by weighted fBm.

    For each sampled fBm path, builds the weighted driver, runs the Euler
    scheme at levels n and 2n, and records the sup gap between the two
    levels on the coarse grid.  Per-path failures are isolated.  With the
    diffusion absent the result is the deterministic Euler solve repeated.
    """
    if spec.coeffs.g is not None and not (1.0 / fbm_cfg.hurst < spec.p < 2.0):
        raise ValueError(
            f"p={spec.p} must lie in (1/H, 2) = ({1.0 / fbm_cfg.hurst}, 2)"
        )
    b_paths = fbm_sample(fbm_cfg)
    reports: list[SolveReport | None] = []
    gaps = np.full(len(b_paths), np.nan)
    failures: list[tuple[int, str]] = []
    for i, b in enumerate(b_paths):
        try:
            z = weighted_fbm(b, sigma)
            pspec = replace(spec, z=z)
            rep_n = euler_solve(pspec, n)
            rep_2n = euler_solve(pspec, 2 * n)
            coarse = rep_n.solution.x
            fine_at_coarse = rep_2n.solution.x.eval(coarse.times)
            gaps[i] = float(np.abs(coarse.values - fine_at_coarse).max())
            reports.append(rep_n)
        except (ValueError, RuntimeError) as exc:
            failures.append((i, str(exc)))
            reports.append(None)
    ok = np.isfinite(gaps)
    mean_gap = float(gaps[ok].mean()) if ok.any() else np.nan
    return StochasticResult(
        reports=tuple(reports), gaps=gaps, mean_gap=mean_gap, failures=tuple(failures)
    )


# ---------------------------------------------------------------------------
# Coefficient registry: named drift/diffusion families with their declared
# regularity constants, so problems can be specified in JSON configs.
# ---------------------------------------------------------------------------

def drift_from_config(cfg: Mapping, dim: int):
    """Build (f, L, L_N) from {"name": ..., "scale": ..., "offset": ...}.

    Families: zero, constant (f = offset), linear (f = scale*x + offset),
    sin (f = scale*sin(x) + offset, componentwise).
    """
    name = cfg.get("name")
    scale = float(cfg.get("scale", 1.0))
    offset = float(cfg.get("offset", 0.0))
    if name == "zero":
        return None, 1e-12, 1e-12
    if name == "constant":
        return (lambda t, x: np.full(dim, offset)), max(abs(offset), 1e-12), 1e-12
    if name == "linear":
        f = lambda t, x: scale * x + offset
        bound = max(abs(scale), abs(offset), 1e-12)
        return f, bound, max(abs(scale), 1e-12)
    if name == "sin":
        f = lambda t, x: scale * np.sin(x) + offset
        bound = max(abs(scale) + abs(offset), 1e-12)
        return f, bound, max(abs(scale), 1e-12)
    raise ValueError(f"unknown drift family {name!r}")


def diffusion_from_config(cfg: Mapping, dim: int):
    """Build (g, c_beta, beta, C_N, alpha_N) from {"name": ..., "scale": ...}.

    Families: zero, constant (g = scale*I), cos (g = scale*diag(cos x)),
    sin (g = scale*diag(sin x)).
    """
    name = cfg.get("name")
    scale = float(cfg.get("scale", 1.0))
    eye = np.eye(dim)
    if name == "zero":
        return None, 1e-12, 1.0, 1e-12, 1.0
    if name == "constant":
        mat = scale * eye
        return (lambda t, x: mat), max(abs(scale), 1e-12), 1.0, 1e-12, 1.0
    if name == "cos":
        g = lambda t, x: scale * np.diag(np.cos(x)) if dim > 1 else scale * np.cos(x).reshape(1, 1)
        c = max(abs(scale), 1e-12)
        return g, c, 1.0, c, 1.0
    if name == "sin":
        g = lambda t, x: scale * np.diag(np.sin(x)) if dim > 1 else scale * np.sin(x).reshape(1, 1)
        c = max(abs(scale), 1e-12)
        return g, c, 1.0, c, 1.0
    raise ValueError(f"unknown diffusion family {name!r}")


def coefficients_from_config(f_cfg: Mapping, g_cfg: Mapping, dim: int) -> CoefficientPair:
    f, L, L_N = drift_from_config(f_cfg, dim)
    g, c_beta, beta, C_N, alpha_N = diffusion_from_config(g_cfg, dim)
    return CoefficientPair(
        f=f,
        g=g,
        L=L,
        beta=beta,
        c_beta=c_beta,
        local_constants={np.inf: (L_N, alpha_N, C_N)},
    )


def shifted_coefficients(base: CoefficientPair, eps: float) -> CoefficientPair:
    """Uniformly shifted coefficients f + eps and g + eps*I; for eps -> 0 the
    shifts converge uniformly on compacts with unchanged regularity constants.
    An absent coefficient stays absent (there is nothing to perturb against)."""
    f0, g0 = base.f, base.g

    def f_eps(t, x, _f=f0, _e=eps):
        return _f(t, x) + _e

    def g_eps(t, x, _g=g0, _e=eps):
        return _g(t, x) + _e * np.eye(np.atleast_1d(x).shape[0])

    return CoefficientPair(
        f=f_eps if f0 is not None else None,
        g=g_eps if g0 is not None else None,
        L=base.L + abs(eps),
        beta=base.beta,
        c_beta=base.c_beta,
        local_constants=base.local_constants,
    )


def _problem_bv_ramp() -> ProblemSpec:
    """Unit drift against a ramp clock, barriers [0, 0.5]: the solution ramps
    to the upper barrier and sticks, the regulator then decreases linearly."""
    from .skorokhod import constant_barriers

    grid = uniform_grid(256, 1.0)
    a = SampledPath(grid, grid.copy())
    coeffs = coefficients_from_config({"name": "constant", "offset": 1.0}, {"name": "zero"}, 1)
    barriers = constant_barriers(grid, [0.0], [0.5], witness=[0.25])
    return ProblemSpec(x0=np.array([0.0]), coeffs=coeffs, a=a, z=None, barriers=barriers, p=1.5)


def _problem_linear_bv() -> ProblemSpec:
    from .skorokhod import constant_barriers

    grid = uniform_grid(256, 1.0)
    a = SampledPath(grid, grid.copy())
    coeffs = coefficients_from_config({"name": "linear", "scale": -1.0}, {"name": "zero"}, 1)
    barriers = constant_barriers(grid, [0.0], [1.0], witness=[0.5])
    return ProblemSpec(x0=np.array([0.75]), coeffs=coeffs, a=a, z=None, barriers=barriers, p=1.5)


FBM_COS_SEED = 30
FBM_COS_LEVEL = 4096


def _problem_fbm_cos() -> ProblemSpec:
    """The cross-scheme benchmark: linear pullback drift, cosine diffusion
    scaled by 0.3, barriers [0, 1], driven by a fixed-seed fBm with H = 0.75
    sampled on the dyadic 4096-step grid."""
    from .skorokhod import constant_barriers

    grid = uniform_grid(FBM_COS_LEVEL, 1.0)
    a = SampledPath(grid, grid.copy())
    cfg = FbmConfig(hurst=0.75, dim=1, grid=grid, seed=FBM_COS_SEED, n_paths=1)
    z = fbm_sample(cfg)[0]
    coeffs = coefficients_from_config(
        {"name": "linear", "scale": -1.0}, {"name": "cos", "scale": 0.3}, 1
    )
    barriers = constant_barriers(grid, [0.0], [1.0], witness=[0.5])
    return ProblemSpec(x0=np.array([0.0]), coeffs=coeffs, a=a, z=z, barriers=barriers, p=1.5)


def _problem_sin_moving() -> ProblemSpec:
    """Sinusoidal drift and cosine diffusion between slowly moving barriers."""
    grid = uniform_grid(512, 1.0)
    a = SampledPath(grid, grid.copy())
    lower = SampledPath(grid, 0.2 * np.sin(2 * np.pi * grid) - 0.6)
    upper = SampledPath(grid, lower.values[:, 0] + 1.0)
    witness = SampledPath(grid, lower.values[:, 0] + 0.5)
    cfg = FbmConfig(hurst=0.8, dim=1, grid=grid, seed=9, n_paths=1)
    z = fbm_sample(cfg)[0]
    coeffs = coefficients_from_config(
        {"name": "sin", "scale": 0.5}, {"name": "cos", "scale": 0.2}, 1
    )
    barriers = BarrierPair(lower, upper, witness)
    return ProblemSpec(x0=np.array([0.0]), coeffs=coeffs, a=a, z=z, barriers=barriers, p=1.4)


BENCHMARK_PROBLEMS: dict[str, Callable[[], ProblemSpec]] = {
    "bv_ramp": _problem_bv_ramp,
    "linear_bv": _problem_linear_bv,
    "fbm_cos": _problem_fbm_cos,
    "sin_moving": _problem_sin_moving,
}


def benchmark_problem(name: str) -> ProblemSpec:
    """Built-in benchmark problems used by the experiments and the demos."""
    try:
        return BENCHMARK_PROBLEMS[name]()
    except KeyError:
        raise ValueError(
            f"unknown test problem {name!r}; available: {sorted(BENCHMARK_PROBLEMS)}"
        ) from None
