"""Plot the CSV outputs of the command-line runs.

The CLI itself never renders plots; it emits tidy CSV.  This script is the
reference recipe for turning those files into figures, e.g.

    sweeping fbm --hurst 0.75 --n 256 --paths 5 --seed 1 --out out/fbm
    sweeping euler --config problem.json --levels 64,128,256,512 --out out/conv
    python demos/plot_results.py out/fbm out/conv
"""
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def plot_paths(run_dir: Path, ax):
    for csv in sorted(run_dir.glob("path_*.csv")):
        data = np.genfromtxt(csv, delimiter=",", names=True)
        ax.plot(data["t"], data["x1"], lw=0.8)
    ax.set_title(f"paths from {run_dir.name}")
    ax.set_xlabel("t")


def plot_solution(run_dir: Path, ax):
    data = np.genfromtxt(run_dir / "solution.csv", delimiter=",", names=True)
    ax.plot(data["t"], data["x1"], label="x")
    ax.plot(data["t"], data["k1"], label="k")
    ax.legend()
    ax.set_title(f"solution from {run_dir.name}")


def plot_convergence(run_dir: Path, ax):
    data = np.genfromtxt(run_dir / "convergence.csv", delimiter=",", names=True,
                         usecols=(0, 1, 2))
    ax.loglog(data["n"], np.maximum(data["sup_gap_x"], 1e-16), "o-")
    ax.set_title("sup gap vs level")
    ax.set_xlabel("n")


def main(run_dirs):
    fig, axes = plt.subplots(1, max(len(run_dirs), 1), figsize=(5 * len(run_dirs), 4))
    if len(run_dirs) == 1:
        axes = [axes]
    for run_dir, ax in zip(map(Path, run_dirs), axes):
        if any(run_dir.glob("path_*.csv")):
            plot_paths(run_dir, ax)
        elif (run_dir / "convergence.csv").exists():
            plot_convergence(run_dir, ax)
        elif (run_dir / "solution.csv").exists():
            plot_solution(run_dir, ax)
        else:
            ax.set_title(f"nothing to plot in {run_dir}")
    fig.tight_layout()
    fig.savefig("sweeping_plots.png", dpi=150)
    print("wrote sweeping_plots.png")


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print(__doc__)
        sys.exit(1)
    main(sys.argv[1:])
