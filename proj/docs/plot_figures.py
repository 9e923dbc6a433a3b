"""Plot the response sweeps written by `qnd reproduce-all`.

usage: python docs/plot_figures.py OUT_DIR
"""
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

FIGURES = [
    ("fig4a_two_sided.csv", "two-sided, V_s = 0"),
    ("fig4b_single_sided.csv", "single-sided, V_s = 0"),
    ("suppfig3a_two_sided_vs.csv", "two-sided, V_s = 0.15 meV"),
    ("suppfig3b_single_sided_vs.csv", "single-sided, V_s = 0.15 meV"),
]


def main(out):
    out = Path(out)
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    for ax, (name, title) in zip(axes.flat, FIGURES):
        df = pd.read_csv(out / name)
        d = df["delta_meV"]
        ax.plot(d, 1e3 * df["phase_up_rel_input"], label="phase, spin up")
        ax.plot(d, 1e3 * df["phase_down_rel_input"], "--", label="phase, spin down")
        ax.plot(d, 1e3 * df["intensity_up_rel_input"], label="intensity, spin up")
        ax.plot(d, 1e3 * df["intensity_down_rel_input"], "--", label="intensity, spin down")
        ax.set_title(title)
        ax.axhline(0.0, color="grey", lw=0.5)
    for ax in axes[1]:
        ax.set_xlabel("detuning (meV)")
    for ax in axes[:, 0]:
        ax.set_ylabel("signal (1e-3 of input)")
    axes[0, 0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "response_sweeps.png", dpi=150)
    print(out / "response_sweeps.png")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "out")
