#!/usr/bin/env python3
"""Bar chart of inner V-cycles per (nu, M) for SDC vs ISDC from a matrix CSV.

    cargo run --release -p isdc-bench -- matrix --all --out results.csv
    python3 scripts/plot_table.py results.csv -o cycles.png
"""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default="cycles.png")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    problems = sorted(df["problem"].unique())
    fig, axes = plt.subplots(1, len(problems), figsize=(6 * len(problems), 4), squeeze=False)

    for ax, problem in zip(axes[0], problems):
        sub = df[df["problem"] == problem]
        keys = sorted({(nu, m) for nu, m in zip(sub["nu"], sub["nodes"])})
        labels = [f"nu={nu:g}\nM={m}" for nu, m in keys]
        width = 0.4
        for offset, mode in ((-width / 2, "sdc"), (width / 2, "isdc")):
            heights, hatches = [], []
            for nu, m in keys:
                row = sub[(sub["nu"] == nu) & (sub["nodes"] == m) & (sub["mode"] == mode)]
                if row.empty:
                    heights.append(0)
                    hatches.append("")
                    continue
                r = row.iloc[0]
                heights.append(r["inner_cycles"] if pd.notna(r["inner_cycles"]) else 0)
                hatches.append("" if str(r["converged"]).lower() == "true" else "//")
            xs = [i + offset for i in range(len(keys))]
            bars = ax.bar(xs, heights, width, label=mode)
            for bar, hatch in zip(bars, hatches):
                bar.set_hatch(hatch)
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(labels, fontsize=8)
        ax.set_ylabel("multigrid V-cycles")
        ax.set_title(problem)
        ax.legend()

    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
