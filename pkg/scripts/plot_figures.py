"""Plot the preset CSVs (companion convenience, not part of the library).

    pointheat run --preset fig-sphere --out fig-sphere.csv
    python scripts/plot_figures.py fig-sphere.csv
"""

import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    header = lines[0].strip().split(",")
    data = np.loadtxt(lines[1:], delimiter=",")
    return header, {name: data[:, i] for i, name in enumerate(header)}


def plot(path):
    header, cols = load(path)
    fig, ax = plt.subplots(figsize=(6, 4.2))
    if "radius_m" in header:  # sphere transfer figure
        for name, style in (("vacuum", "k-"), ("sic", "o-"), ("gold", "s-"),
                            ("mirror", "^-")):
            key = f"normalized_{name}"
            if key in cols:
                ax.loglog(cols["radius_m"], cols[key], style, ms=3, label=name)
        ax.set_xlabel("sphere radius (m)")
        ax.set_ylabel("transfer / particle volumes (W m$^{-6}$)")
    elif "hr_over_vacuum" in header:  # plate emission figure
        ax.semilogx(cols["distance_m"], cols["hr_over_vacuum"], "-")
        ax.axhline(1.0, color="k", lw=0.5)
        ax.axhline(2 / 3, color="r", ls="--", lw=0.8)
        ax.set_xlabel("distance to mirror plate (m)")
        ax.set_ylabel("emission / isolated emission")
    elif "l_max" in header:  # convergence figure
        ax.plot(cols["l_max"], cols["ht_partial_over_converged"], "o-", ms=3,
                label="transfer across sphere")
        ax.plot(cols["l_max"], cols["isolated_hr_partial_over_converged"], "s-",
                ms=3, label="isolated sphere emission")
        ax.axhline(1.0, color="k", lw=0.5)
        ax.set_xlabel("maximum multipole order")
        ax.set_ylabel("partial sum / converged value")
    else:
        raise SystemExit(f"unrecognized CSV layout: {header}")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(frameon=False)
    out = path.rsplit(".", 1)[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) < 2:
        raise SystemExit(__doc__)
    for p in sys.argv[1:]:
        plot(p)
