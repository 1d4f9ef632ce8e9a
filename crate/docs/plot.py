"""Quick plots of garch-boot CSV output.

    python docs/plot.py contour out/contour.csv
    python docs/plot.py convergence out/convergence.csv
    python docs/plot.py sae out/sae.csv
"""

import sys

import matplotlib.pyplot as plt
import pandas as pd


def contour(df):
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    for ax, col in zip(axes, ["var_omega", "cov", "var_alpha"]):
        grid = df.pivot(index="alpha0", columns="omega0", values=col)
        cs = ax.contour(grid.columns, grid.index, grid.values, levels=12)
        ax.clabel(cs, fontsize=7)
        ax.set_xlabel("omega0")
        ax.set_ylabel("alpha0")
        ax.set_title(col)
    return fig


def convergence(df):
    fig, ax = plt.subplots(figsize=(7, 4))
    for (method, elem), g in df.groupby(["method", "elem"]):
        ax.plot(g["n"], g["ratio"], marker="o", label=f"{method} {elem}")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("n cov / limiting cov")
    ax.legend(fontsize=7)
    return fig


def sae(df):
    fig, ax = plt.subplots(figsize=(8, 4))
    groups = list(df.groupby(["dist", "n"]))
    ax.boxplot([g["sae"] for _, g in groups], showfliers=False)
    ax.set_xticks(range(1, len(groups) + 1), [f"{d}\nn={n}" for (d, n), _ in groups], fontsize=7)
    ax.set_ylabel("SAE")
    return fig


if __name__ == "__main__":
    kind, path = sys.argv[1], sys.argv[2]
    fig = {"contour": contour, "convergence": convergence, "sae": sae}[kind](pd.read_csv(path))
    fig.tight_layout()
    fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=120)
