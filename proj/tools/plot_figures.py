#!/usr/bin/env python3
"""Plot the CSV files written by `softrgg figure`.

Not used by the build or tests. Needs matplotlib.

    softrgg figure fig3 --out data && python3 tools/plot_figures.py data
"""
import csv
import glob
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    return header, [[float(v) for v in r] for r in body]


def curve(path):
    header, rows = read(path)
    x = [r[0] for r in rows]
    y = [r[1] for r in rows]
    err = None
    if len(header) >= 4:
        err = [[r[1] - r[2] for r in rows], [r[3] - r[1] for r in rows]]
    return header[1], x, y, err


def plot_fig3(folder):
    for family in sorted({os.path.basename(p).split("_")[1] for p in glob.glob(os.path.join(folder, "fig3_*.csv"))}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for name, marker in (("p_dis", "o"), ("p_iso", "s"), ("p_ucg", "^"), ("p_iso_or_ucg", "x")):
            path = os.path.join(folder, f"fig3_{family}_{name}.csv")
            if not os.path.exists(path):
                continue
            label, x, y, err = curve(path)
            ax.errorbar(x, y, yerr=err, marker=marker, linestyle="-", capsize=2, label=label)
        ax.set_xlabel("mean degree")
        ax.set_ylabel("proportion of runs")
        ax.set_title(f"fig3, {family}")
        ax.legend()
        out = os.path.join(folder, f"fig3_{family}.png")
        fig.savefig(out, dpi=150, bbox_inches="tight")
        print("wrote", out)


def plot_fig5(folder):
    poisson = os.path.join(folder, "fig5_poisson.csv")
    if not os.path.exists(poisson):
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    _, x, y, _ = curve(poisson)
    ax.plot(x, y, "k-", label="1 - exp(-L e^-kbar)")
    for path in sorted(glob.glob(os.path.join(folder, "fig5_*_p_iso.csv"))):
        family = os.path.basename(path).split("_")[1]
        _, xs, ys, err = curve(path)
        ax.errorbar(xs, ys, yerr=err, marker="o", linestyle="none", capsize=2, label=family)
    ax.set_xlabel("mean degree")
    ax.set_ylabel("P(N_iso >= 1)")
    ax.legend()
    out = os.path.join(folder, "fig5.png")
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print("wrote", out)


if __name__ == "__main__":
    folder = sys.argv[1] if len(sys.argv) > 1 else "."
    plot_fig3(folder)
    plot_fig5(folder)
