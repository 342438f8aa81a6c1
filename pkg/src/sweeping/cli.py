"""Command-line front end: instance I/O, experiment orchestration,
reproducibility manifests, CSV emission.

Subcommands: esp, pvar, young, fbm, picard, euler, stability, mc, verify,
demo.  Every file-producing run writes a manifest JSON next to its outputs
recording the command, a stable hash of the canonicalised config, the seed,
tool versions, the output names and their SHA-256 digests, and the wall
time.  Identical config + seed reproduces byte-identical outputs.

Exit codes: 0 success, 1 validation/config error, 2 numerical failure,
64 unknown subcommand.  Plots are never rendered; runs emit tidy CSV for
external plotting (see demos/plot_results.py).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .drivers import FbmConfig, SigmaWeight, bv_driver, fbm_sample
from .paths import (
    MatrixPath,
    SampledPath,
    p_variation,
    read_path_csv,
    uniform_grid,
    write_path_csv,
)
from .reflected import (
    ConvergenceError,
    PerturbedProblem,
    ProblemSpec,
    benchmark_problem,
    coefficients_from_config,
    euler_solve,
    picard_solve,
    shifted_coefficients,
    stability_experiment,
    stochastic_solve,
)
from .skorokhod import BarrierPair, EspSolution, esp_solve, verify_esp
from .young import young_loeve_check

__all__ = ["run", "main", "convergence_report"]

COMMANDS = (
    "esp",
    "pvar",
    "young",
    "fbm",
    "picard",
    "euler",
    "stability",
    "mc",
    "verify",
    "demo",
)

USAGE = (
    "usage: sweeping <command> [options]\n"
    "commands: " + ", ".join(COMMANDS) + "\n"
    "run 'sweeping <command> --help' for the options of one command"
)


# ---------------------------------------------------------------------------
# config plumbing
# ---------------------------------------------------------------------------

def _config_hash(config) -> str:
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out_dir: Path, command: str, config, seed: int,
                    outputs: list[str], t_start: float, extra: dict | None = None) -> Path:
    manifest = {
        "command": command,
        "config_hash": _config_hash(config),
        "seed": int(seed),
        "versions": f"sweeping {__version__}; numpy {np.__version__}; "
        f"python {sys.version_info.major}.{sys.version_info.minor}",
        "outputs": outputs,
        "output_digests": {name: _file_digest(out_dir / name) for name in outputs},
        "wall_time_ms": int((time.monotonic() - t_start) * 1000),
    }
    if extra:
        manifest.update(extra)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _require(cfg: dict, name: str):
    if name not in cfg:
        raise ValueError(f"config missing field '{name}'")
    return cfg[name]


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValueError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {path}: {exc}") from None


def _vector(value, d: int, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.shape != (d,):
        raise ValueError(f"config field '{name}' must be a {d}-vector")
    return arr


def _path_values(raw, d: int, name: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != d:
        raise ValueError(f"config field '{name}' must be a list of {d}-vectors")
    return arr


def _barrier_path(cfg: dict, grid: np.ndarray, d: int, name: str) -> SampledPath:
    kind = _require(cfg, "kind")
    if kind == "constant":
        value = _vector(_require(cfg, "value"), d, f"{name}.value")
        return SampledPath(grid, np.tile(value, (grid.size, 1)))
    if kind == "sine":
        base = _vector(_require(cfg, "base"), d, f"{name}.base")
        amp = float(cfg.get("amp", 0.1))
        freq = float(cfg.get("freq", 1.0))
        wave = amp * np.sin(2 * np.pi * freq * grid)
        return SampledPath(grid, base[None, :] + wave[:, None])
    if kind == "csv":
        path = read_path_csv(_require(cfg, "file"))
        if path.dim != d:
            raise ValueError(f"config field '{name}': CSV has dimension {path.dim}, expected {d}")
        return path
    raise ValueError(f"config field '{name}.kind' unknown: {kind!r}")


def _driver_a(cfg: dict, grid: np.ndarray) -> SampledPath | None:
    kind = _require(cfg, "kind")
    if kind == "zero":
        return None
    if kind == "identity":
        return bv_driver("identity", grid=grid)[0]
    if kind == "jumps":
        return bv_driver(
            "jumps", grid=_require(cfg, "times"), values=_require(cfg, "values")
        )[0]
    if kind == "csv":
        return bv_driver("csv", file=_require(cfg, "file"))[0]
    raise ValueError(f"config field 'a.kind' unknown: {kind!r}")


def _driver_z(cfg: dict, d: int, t_max: float) -> SampledPath | None:
    kind = _require(cfg, "kind")
    if kind == "none":
        return None
    if kind == "zero":
        n = int(cfg.get("n", 2))
        grid = uniform_grid(n, t_max)
        return SampledPath(grid, np.zeros((grid.size, d)))
    if kind == "csv":
        z = read_path_csv(_require(cfg, "file"))
        if z.dim != d:
            raise ValueError(f"config field 'z': CSV has dimension {z.dim}, expected {d}")
        return z
    if kind == "fbm":
        hurst = float(_require(cfg, "hurst"))
        n = int(cfg.get("n", 256))
        seed = int(_require(cfg, "seed"))
        grid = uniform_grid(n, t_max)
        fc = FbmConfig(hurst=hurst, dim=d, grid=grid, seed=seed, n_paths=1)
        b = fbm_sample(fc)[0]
        sigma = cfg.get("sigma", 1.0)
        weight = SigmaWeight.constant(
            np.full(d, float(sigma)) if np.isscalar(sigma) else np.asarray(sigma, float),
            grid,
            hurst,
        )
        from .drivers import weighted_fbm

        return weighted_fbm(b, weight)
    raise ValueError(f"config field 'z.kind' unknown: {kind!r}")


def problem_from_config(cfg: dict) -> ProblemSpec:
    """Build a ProblemSpec from the JSON problem schema (see README)."""
    if "problem" in cfg and isinstance(cfg["problem"], str):
        return benchmark_problem(cfg["problem"])
    d = int(cfg.get("dim", 1))
    p = float(_require(cfg, "p"))
    t_max = float(cfg.get("t_max", 1.0))
    n_grid = int(cfg.get("grid_points", 256))
    grid = uniform_grid(n_grid, t_max)
    x0 = _vector(_require(cfg, "x0"), d, "x0")
    coeffs = coefficients_from_config(_require(cfg, "f"), _require(cfg, "g"), d)
    a = _driver_a(cfg.get("a", {"kind": "identity"}), grid)
    default_z = {"kind": "none"} if _require(cfg, "g").get("name") == "zero" else {"kind": "zero"}
    z = _driver_z(cfg.get("z", default_z), d, t_max)
    bcfg = _require(cfg, "barriers")
    lower = _barrier_path(_require(bcfg, "lower"), grid, d, "barriers.lower")
    upper = _barrier_path(_require(bcfg, "upper"), grid, d, "barriers.upper")
    witness = (
        _barrier_path(bcfg["witness"], grid, d, "barriers.witness")
        if "witness" in bcfg
        else None
    )
    barriers = BarrierPair(lower, upper, witness)
    return ProblemSpec(x0=x0, coeffs=coeffs, a=a, z=z, barriers=barriers, p=p)


def instance_from_json(cfg: dict) -> tuple[SampledPath, BarrierPair]:
    """Skorokhod instance format: {grid, y, l, u, optional h}."""
    grid = np.asarray(_require(cfg, "grid"), dtype=float)
    y_raw = np.asarray(_require(cfg, "y"), dtype=float)
    d = 1 if y_raw.ndim == 1 else y_raw.shape[1]
    y = SampledPath(grid, _path_values(y_raw, d, "y"))
    l = SampledPath(grid, _path_values(_require(cfg, "l"), d, "l"))
    u = SampledPath(grid, _path_values(_require(cfg, "u"), d, "u"))
    h = SampledPath(grid, _path_values(cfg["h"], d, "h")) if "h" in cfg else None
    return y, BarrierPair(l, u, h)


def _write_solution_csv(sol: EspSolution, path: Path) -> None:
    d = sol.x.dim
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        header = (
            "t,"
            + ",".join(f"x{i + 1}" for i in range(d))
            + ","
            + ",".join(f"k{i + 1}" for i in range(d))
        )
        fh.write(header + "\n")
        for t, xv, kv in zip(sol.times, sol.x.values, sol.k.values):
            row = [repr(float(t))]
            row += [repr(float(v)) for v in xv]
            row += [repr(float(v)) for v in kv]
            fh.write(",".join(row) + "\n")


def _read_solution_csv(path: str, y: SampledPath) -> EspSolution:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        d = (len(header) - 1) // 2
        rows = [line.strip().split(",") for line in fh if line.strip()]
    times = np.array([float(r[0]) for r in rows])
    x = np.array([[float(v) for v in r[1 : 1 + d]] for r in rows])
    k = np.array([[float(v) for v in r[1 + d :]] for r in rows])
    return EspSolution(x=SampledPath(times, x), k=SampledPath(times, k), y=y)


def _read_matrix_csv(path: str) -> MatrixPath:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        n_cols = len(header) - 1
        d = int(round(np.sqrt(n_cols)))
        if d * d != n_cols or header[0] != "t":
            raise ValueError(f"matrix CSV must have header t,w11,...,wdd; got {header}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    times = np.array([float(r[0]) for r in rows])
    vals = np.array([[float(v) for v in r[1:]] for r in rows]).reshape(-1, d, d)
    return MatrixPath(times, vals)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_esp(args) -> int:
    t0 = time.monotonic()
    cfg = _load_json(args.input)
    y, barriers = instance_from_json(cfg)
    sol = esp_solve(y, barriers)
    report = verify_esp(sol, barriers)
    if not report.passed:
        print(f"solver output failed verification at {report.first_violation}")
        return 2
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    _write_solution_csv(sol, out)
    _write_manifest(out.parent, "esp", cfg, 0, [out.name], t0)
    print(f"solved {y.dim}-d instance on {len(y)} points -> {out}")
    return 0


def _cmd_pvar(args) -> int:
    path = read_path_csv(args.path)
    interval = (args.a, args.b) if args.b is not None else None
    res = p_variation(path, args.p, interval)
    print(f"v_p = {res.value!r}")
    print(f"V_p = {res.norm!r}")
    print(f"bar_V_p = {res.bar_norm!r}")
    return 0


def _cmd_young(args) -> int:
    w = _read_matrix_csv(args.w)
    z = read_path_csv(args.z)
    lhs, bound = young_loeve_check(w, z, args.p, args.q)
    from .young import young_integral

    integral = young_integral(w, z)
    print(f"V_p(integral) = {lhs!r}")
    print(f"c_pq = {bound.c_pq!r}")
    print(f"bound = {bound.bound!r}")
    print(f"within_bound = {lhs <= bound.bound * (1 + 1e-12)}")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        write_path_csv(integral, out)
        print(f"integral path -> {out}")
    return 0


def _cmd_fbm(args) -> int:
    t0 = time.monotonic()
    grid_path = read_path_csv(args.grid_file) if args.grid_file else None
    grid = grid_path.times if grid_path is not None else uniform_grid(args.n, args.t_max)
    cfg = FbmConfig(hurst=args.hurst, dim=args.dim, grid=grid, seed=args.seed, n_paths=args.paths)
    paths = fbm_sample(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = []
    for i, path in enumerate(paths):
        name = f"path_{i:05d}.csv"
        write_path_csv(path, out_dir / name)
        names.append(name)
    config = {
        "hurst": args.hurst,
        "dim": args.dim,
        "seed": args.seed,
        "paths": args.paths,
        "grid_file": args.grid_file,
        "n": int(grid.size),
        "t_max": args.t_max,
    }
    grid_hash = hashlib.sha256(
        ",".join(repr(float(t)) for t in grid).encode()
    ).hexdigest()
    _write_manifest(
        out_dir,
        "fbm",
        config,
        args.seed,
        names,
        t0,
        extra={"hurst": args.hurst, "n": int(grid.size), "grid_hash": grid_hash},
    )
    print(f"wrote {len(names)} fBm paths (H={args.hurst}) to {out_dir}")
    return 0


def _cmd_picard(args) -> int:
    t0 = time.monotonic()
    cfg = _load_json(args.config)
    spec = problem_from_config(cfg)
    report = picard_solve(spec, tol=args.tol, max_iter=args.max_iter)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_solution_csv(report.solution, out_dir / "solution.csv")
    _write_manifest(out_dir, "picard", cfg, int(cfg.get("seed", 0)), ["solution.csv"], t0)
    print(
        f"picard converged in {report.level} iterations, residual "
        f"{report.residual:.3e}, bar_V_p(x) = {report.vbar_norm:.6g}"
    )
    return 0


def convergence_report(spec: ProblemSpec, levels: list[int], reference: str = "finest",
                       tol: float = 1e-8, max_iter: int = 200):
    """Table of Euler levels against a reference solution.

    reference is "finest" (the largest Euler level given) or "picard" (the
    fixed point on the finest uniform grid).  Rows are
    (n, sup_gap_x, sup_gap_k); a final flag says whether the x gaps are
    non-increasing down the listed levels.
    """
    levels = sorted(levels)
    finest = levels[-1]
    if reference == "finest":
        ref = euler_solve(spec, finest).solution
    elif reference == "picard":
        grid = uniform_grid(finest, spec.horizon)
        ref_spec = _respec_on_grid(spec, grid)
        ref = picard_solve(ref_spec, tol=tol, max_iter=max_iter).solution
    else:
        raise ValueError(f"unknown reference {reference!r}")
    rows = []
    for n in levels:
        sol = euler_solve(spec, n).solution
        ref_x = ref.x.eval(sol.times)
        ref_k = ref.k.eval(sol.times)
        gap_x = float(np.abs(sol.x.values - ref_x).max())
        gap_k = float(np.abs(sol.k.values - ref_k).max())
        rows.append((n, gap_x, gap_k))
    gaps = [r[1] for r in rows if r[0] != finest or reference != "finest"]
    monotone = all(b <= a * (1 + 1e-9) for a, b in zip(gaps, gaps[1:]))
    return rows, monotone


def _respec_on_grid(spec: ProblemSpec, grid: np.ndarray) -> ProblemSpec:
    from dataclasses import replace

    from .paths import resample

    return replace(
        spec,
        a=resample(spec.a, grid) if spec.a is not None else None,
        z=resample(spec.z, grid) if spec.z is not None else None,
        barriers=spec.barriers.resampled(grid),
    )


def _cmd_euler(args) -> int:
    t0 = time.monotonic()
    cfg = _load_json(args.config)
    spec = problem_from_config(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    if args.levels:
        levels = [int(v) for v in args.levels.split(",")]
        rows, monotone = convergence_report(spec, levels, reference=args.reference)
        with open(out_dir / "convergence.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,sup_gap_x,sup_gap_k,monotone\n")
            for n, gx, gk in rows:
                fh.write(f"{n},{gx!r},{gk!r},{monotone}\n")
        outputs.append("convergence.csv")
        print(f"levels {levels}: x gaps {'non-increasing' if monotone else 'NOT monotone'}")
    n = args.n or (max(int(v) for v in args.levels.split(",")) if args.levels else 256)
    report = euler_solve(spec, n)
    _write_solution_csv(report.solution, out_dir / "solution.csv")
    outputs.append("solution.csv")
    _write_manifest(out_dir, "euler", cfg, int(cfg.get("seed", 0)), outputs, t0)
    print(f"euler level n={n}: bar_V_p(x) = {report.vbar_norm:.6g}")
    return 0


def _cmd_stability(args) -> int:
    t0 = time.monotonic()
    cfg = _load_json(args.config)
    spec = problem_from_config(cfg)
    eps_list = [float(v) for v in args.eps.split(",")]
    perturbations = []
    for eps in eps_list:
        x0_eps = np.clip(
            spec.x0 + eps * np.eye(spec.dim)[0],
            spec.barriers.lower.values[0],
            spec.barriers.upper.values[0],
        )
        perturbations.append(
            PerturbedProblem(eps=eps, coeffs=shifted_coefficients(spec.coeffs, eps), x0=x0_eps)
        )
    rows = stability_experiment(spec, perturbations)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "stability.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("eps,gap_x,gap_k,error\n")
        for row in rows:
            err = row.error or ""
            fh.write(f"{row.eps!r},{row.gap_x!r},{row.gap_k!r},{err}\n")
    _write_manifest(out_dir, "stability", cfg, int(cfg.get("seed", 0)), ["stability.csv"], t0)
    for row in rows:
        print(f"eps={row.eps:g}: gap_x={row.gap_x:.6g} gap_k={row.gap_k:.6g}")
    return 0


def _cmd_mc(args) -> int:
    t0 = time.monotonic()
    cfg = _load_json(args.config)
    spec = problem_from_config(_require(cfg, "problem") if isinstance(cfg.get("problem"), dict) else cfg)
    hurst = float(_require(cfg, "hurst"))
    seed = int(_require(cfg, "seed"))
    n_paths = int(cfg.get("n_paths", 16))
    level = int(cfg.get("level", 64))
    grid = uniform_grid(2 * level, spec.horizon)
    fbm_cfg = FbmConfig(hurst=hurst, dim=spec.dim, grid=grid, seed=seed, n_paths=n_paths)
    sigma_val = cfg.get("sigma", 1.0)
    sigma = SigmaWeight.constant(np.full(spec.dim, float(sigma_val)), grid, hurst)
    result = stochastic_solve(spec, fbm_cfg, sigma, level)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "mc_stats.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("path,sup_gap,vbar_x\n")
        for i, (rep, gap) in enumerate(zip(result.reports, result.gaps)):
            vb = rep.vbar_norm if rep is not None else float("nan")
            fh.write(f"{i},{float(gap)!r},{float(vb)!r}\n")
    with open(out_dir / "mc_summary.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n_paths,level,mean_gap,failures\n")
        fh.write(f"{n_paths},{level},{result.mean_gap!r},{len(result.failures)}\n")
    _write_manifest(out_dir, "mc", cfg, seed, ["mc_stats.csv", "mc_summary.csv"], t0)
    print(
        f"mc: {n_paths} paths at levels {level}/{2 * level}, "
        f"mean sup gap {result.mean_gap:.6g}, {len(result.failures)} failures"
    )
    return 0


def _cmd_verify(args) -> int:
    cfg = _load_json(args.input)
    y, barriers = instance_from_json(cfg)
    sol = _read_solution_csv(args.solution, y)
    report = verify_esp(sol, barriers, tol=args.tol)
    if report.passed:
        print("verification PASSED")
        return 0
    idx, comp, check = report.first_violation
    print(
        f"verification FAILED: {report.n_violations} violations, first at "
        f"grid index {idx}, component {comp}, check '{check}'"
    )
    return 2


def _cmd_demo(args) -> int:
    from .skorokhod import constant_barriers

    print("end-to-end demo: reflected equation driven by fBm (H=0.75)")
    grid = uniform_grid(256, 1.0)
    fc = FbmConfig(hurst=0.75, dim=1, grid=grid, seed=42, n_paths=1)
    b = fbm_sample(fc)[0]
    sigma = SigmaWeight.constant([1.0], grid, 0.75)
    from .drivers import weighted_fbm

    z = weighted_fbm(b, sigma)
    a = SampledPath(grid, grid.copy())
    coeffs = coefficients_from_config(
        {"name": "linear", "scale": -1.0}, {"name": "cos", "scale": 0.3}, 1
    )
    barriers = constant_barriers(grid, [0.0], [1.0], witness=[0.5])
    spec = ProblemSpec(x0=np.array([0.5]), coeffs=coeffs, a=a, z=z, barriers=barriers, p=1.5)
    print("  euler self-convergence (sup gap between levels n and 2n):")
    for n in (16, 32, 64, 128):
        sol_n = euler_solve(spec, n).solution
        sol_2n = euler_solve(spec, 2 * n).solution
        gap = float(np.abs(sol_n.x.values - sol_2n.x.eval(sol_n.times)).max())
        print(f"    n={n:4d}: {gap:.6f}")
    report = picard_solve(spec, tol=1e-8)
    check = verify_esp(report.solution, barriers)
    print(
        f"  picard: {report.level} iterations, residual {report.residual:.2e}, "
        f"verify_esp {'PASSED' if check.passed else 'FAILED'}"
    )
    return 0 if check.passed else 2


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser(command: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"sweeping {command}", add_help=True)
    if command == "esp":
        p.add_argument("--input", required=True, help="instance JSON {grid, y, l, u, h?}")
        p.add_argument("--out", required=True, help="solution CSV (t, x*, k*)")
    elif command == "pvar":
        p.add_argument("--path", required=True, help="path CSV")
        p.add_argument("--p", type=float, required=True)
        p.add_argument("--a", type=float, default=None)
        p.add_argument("--b", type=float, default=None)
    elif command == "young":
        p.add_argument("--w", required=True, help="matrix path CSV (t,w11,...,wdd)")
        p.add_argument("--z", required=True, help="integrator path CSV")
        p.add_argument("--p", type=float, required=True)
        p.add_argument("--q", type=float, required=True)
        p.add_argument("--out", default=None, help="integral path CSV")
    elif command == "fbm":
        p.add_argument("--hurst", type=float, required=True)
        p.add_argument("--grid-file", default=None, help="CSV whose t column is the grid")
        p.add_argument("--n", type=int, default=256, help="uniform grid steps if no grid file")
        p.add_argument("--t-max", type=float, default=1.0)
        p.add_argument("--dim", type=int, default=1)
        p.add_argument("--paths", type=int, required=True)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--out", required=True, help="output directory")
    elif command == "picard":
        p.add_argument("--config", required=True, help="problem JSON")
        p.add_argument("--out", required=True)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--max-iter", type=int, default=200)
    elif command == "euler":
        p.add_argument("--config", required=True, help="problem JSON")
        p.add_argument("--out", required=True)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--levels", default=None, help="comma list for a convergence report")
        p.add_argument("--reference", default="finest", choices=("finest", "picard"))
    elif command == "stability":
        p.add_argument("--config", required=True)
        p.add_argument("--eps", default="0.1,0.01,0.001")
        p.add_argument("--out", required=True)
    elif command == "mc":
        p.add_argument("--config", required=True)
        p.add_argument("--out", required=True)
    elif command == "verify":
        p.add_argument("--input", required=True, help="instance JSON")
        p.add_argument("--solution", required=True, help="solution CSV")
        p.add_argument("--tol", type=float, default=1e-12)
    return p


_HANDLERS = {
    "esp": _cmd_esp,
    "pvar": _cmd_pvar,
    "young": _cmd_young,
    "fbm": _cmd_fbm,
    "picard": _cmd_picard,
    "euler": _cmd_euler,
    "stability": _cmd_stability,
    "mc": _cmd_mc,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def run(argv: list[str]) -> int:
    """Execute one subcommand; returns the process exit code."""
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0 if argv else 64
    command = argv[0]
    if command not in COMMANDS:
        print(f"unknown subcommand {command!r}", file=sys.stderr)
        print(USAGE, file=sys.stderr)
        return 64
    parser = _build_parser(command)
    try:
        args = parser.parse_args(argv[1:])
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return _HANDLERS[command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
