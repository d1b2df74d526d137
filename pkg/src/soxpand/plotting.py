"""Figure rendering for the report commands.

Everything draws straight to a file through the Agg backend, so these
work in headless runs.  Imported lazily by the CLI only when --plot is
given, keeping matplotlib out of plain invocations.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
from matplotlib import pyplot as plt

from .expand import Tower


def plot_tower_profile(tw: Tower, path: str) -> None:
    """Dimension staircase of a tower: step index against dimension."""
    dims = [tw.start.k] + [rep.output.k for rep in tw.steps]
    xs = list(range(len(dims)))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(xs, dims, where="post", color="tab:blue")
    ax.plot(xs, dims, "o", color="tab:blue", markersize=4)
    # dashed line at the self-dual ceiling n/2 for orientation
    ax.axhline(tw.start.n / 2, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xlabel("expansion step")
    ax.set_ylabel("dimension k")
    ax.set_title(f"tower over GF({tw.start.field.q}), n={tw.start.n}")
    ax.set_xticks(xs)
    ax.set_yticks(range(0, tw.start.n // 2 + 2))
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_weight_distribution(dist: dict[int, int], path: str, title: str = "") -> None:
    """Bar chart of codeword weight counts (log scale when spread is wide)."""
    weights = sorted(dist)
    counts = [dist[w] for w in weights]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(weights, counts, color="tab:blue", width=0.8)
    if max(counts) > 50 * max(1, min(c for c in counts if c)):
        ax.set_yscale("log")
    ax.set_xlabel("Hamming weight")
    ax.set_ylabel("codewords")
    if title:
        ax.set_title(title)
    ax.set_xticks(weights)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_distance_histogram(
    distances: list[int], path: str, best: int | None = None
) -> None:
    """Histogram of candidate minimum distances; optionally mark the best."""
    lo, hi = min(distances), max(distances)
    bins = list(range(lo, hi + 2))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(distances, bins=bins, align="left", rwidth=0.8, color="tab:blue")
    if best is not None:
        ax.axvline(best, color="tab:red", linestyle="--", label=f"best d={best}")
        ax.legend()
    ax.set_xlabel("minimum distance")
    ax.set_ylabel("expansions")
    ax.set_xticks(range(lo, hi + 1))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
