"""sweeping: reflected (sweeping) differential systems between two
time-dependent barriers, driven by bounded-variation and bounded
p-variation paths, including fractional Brownian motion.

The library provides exact p-variation functionals for step paths, Young
integration with the explicit zeta-constant bound, an exact solver and
verifier for the extended Skorokhod problem with two barriers, fBm and
weighted-fBm drivers, and Picard / projected-Euler solvers for the
reflected integral equation, together with the inequalities that certify
them.
"""

__version__ = "0.1.0"

from .paths import (
    MatrixPath,
    SampledPath,
    VariationResult,
    constant_path,
    interpolation_bound,
    operator_norm,
    oscillation,
    p_variation,
    read_path_csv,
    resample,
    uniform_grid,
    union_times,
    vbar,
    write_path_csv,
)
from .young import (
    YoungBound,
    merge_grids,
    young_integral,
    young_loeve_check,
    zeta_constant,
)
from .skorokhod import (
    BarrierPair,
    EspSolution,
    VerificationReport,
    constant_barriers,
    esp_lipschitz_gap,
    esp_solve,
    esp_supnorm_gap,
    projection_step,
    verify_esp,
)
from .drivers import (
    FbmConfig,
    SigmaWeight,
    bv_driver,
    fbm_covariance,
    fbm_sample,
    moment_check,
    weighted_fbm,
)
from .reflected import (
    BENCHMARK_PROBLEMS,
    CoefficientPair,
    ConvergenceError,
    PerturbedProblem,
    ProblemSpec,
    SolveReport,
    StabilityRow,
    StochasticResult,
    apriori_norm_check,
    benchmark_problem,
    coefficients_from_config,
    composed_variation_check,
    diffusion_from_config,
    drift_from_config,
    euler_solve,
    picard_solve,
    probe_declared_constants,
    shifted_coefficients,
    stability_experiment,
    stochastic_solve,
)
from .cli import convergence_report, run

__all__ = [
    "__version__",
    "BENCHMARK_PROBLEMS",
    "BarrierPair",
    "CoefficientPair",
    "ConvergenceError",
    "EspSolution",
    "FbmConfig",
    "MatrixPath",
    "PerturbedProblem",
    "ProblemSpec",
    "SampledPath",
    "SigmaWeight",
    "SolveReport",
    "StabilityRow",
    "StochasticResult",
    "VariationResult",
    "VerificationReport",
    "YoungBound",
    "apriori_norm_check",
    "benchmark_problem",
    "bv_driver",
    "coefficients_from_config",
    "composed_variation_check",
    "constant_barriers",
    "constant_path",
    "convergence_report",
    "diffusion_from_config",
    "drift_from_config",
    "esp_lipschitz_gap",
    "esp_solve",
    "esp_supnorm_gap",
    "euler_solve",
    "fbm_covariance",
    "fbm_sample",
    "interpolation_bound",
    "merge_grids",
    "moment_check",
    "operator_norm",
    "oscillation",
    "p_variation",
    "picard_solve",
    "probe_declared_constants",
    "projection_step",
    "read_path_csv",
    "resample",
    "run",
    "shifted_coefficients",
    "stability_experiment",
    "stochastic_solve",
    "uniform_grid",
    "union_times",
    "vbar",
    "verify_esp",
    "weighted_fbm",
    "write_path_csv",
    "young_integral",
    "young_loeve_check",
    "zeta_constant",
]
