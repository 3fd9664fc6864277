#!/usr/bin/env python3
"""Plot sweep and Werner-curve CSV output from ghz-turb.

Three figures from one or more sweep CSVs (one line per arm set):
  entropy   linear entropy vs theta
  tangle    three-tangle estimate vs theta
  phase     linear entropy vs three-tangle estimate

A Werner reference CSV (p,linear_entropy,tangle) overlays as a dashed
entropy-vs-tangle curve on the phase plot.

Usage:
  ghz-turb sweep --out sweep.csv
  ghz-turb werner-curve --qubits 3 --out werner.csv
  scripts/plot_sweep.py sweep.csv --werner werner.csv --out figs/
"""

import argparse
import csv
import pathlib
import sys


def read_csv(path):
    """Return list of row dicts, skipping leading '#' manifest lines."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.DictReader(lines))
    if not rows:
        sys.exit(f"{path}: no records")
    return rows


def by_arms(rows):
    groups = {}
    for row in rows:
        groups.setdefault(row["arms"], []).append(row)
    return groups


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("sweep", nargs="+", help="sweep CSV file(s)")
    parser.add_argument("--werner", help="Werner reference CSV to overlay")
    parser.add_argument(
        "--entropy-column",
        default="linear_entropy",
        choices=["linear_entropy", "linear_entropy_generalized"],
    )
    parser.add_argument("--out", default=".", help="output directory for PNGs")
    args = parser.parse_args()

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    fig_entropy, ax_entropy = plt.subplots()
    fig_tangle, ax_tangle = plt.subplots()
    fig_phase, ax_phase = plt.subplots()

    for path in args.sweep:
        for arms, rows in sorted(by_arms(read_csv(path)).items()):
            theta = [float(r["theta"]) for r in rows]
            entropy = [float(r[args.entropy_column]) for r in rows]
            tangle = [float(r["three_tangle_estimate"]) for r in rows]
            label = f"arms {arms}" if len(args.sweep) == 1 else f"{path} arms {arms}"
            ax_entropy.plot(theta, entropy, label=label)
            ax_tangle.plot(theta, tangle, label=label)
            ax_phase.plot(tangle, entropy, label=label)

    if args.werner:
        rows = read_csv(args.werner)
        ax_phase.plot(
            [float(r["tangle"]) for r in rows],
            [float(r["linear_entropy"]) for r in rows],
            "k--",
            label="Werner",
        )

    for ax, xlabel, ylabel, fig, name in [
        (ax_entropy, r"$\theta$", "linear entropy", fig_entropy, "entropy"),
        (ax_tangle, r"$\theta$", "three-tangle estimate", fig_tangle, "tangle"),
        (ax_phase, "three-tangle estimate", "linear entropy", fig_phase, "phase"),
    ]:
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.legend()
        fig.tight_layout()
        target = out_dir / f"{name}.png"
        fig.savefig(target, dpi=150)
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
