"""Figure rendering for analysis bundles.

Every function writes one PNG and returns its path. Rendering is
deterministic: fixed figure sizes and dpi, sorted iteration, the Agg backend
and no timestamps, so reruns produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import labels as lbl
from .bibliometrics import LogisticFit, OutputSeries, PopulationSeries, VenueRatioSeries
from .collab import Cluster, CollabMatrix

# One fixed color per label, shared by every figure.
LABEL_COLORS = {
    "ENG": "#000000",
    "GER": "#e41a1c",
    "FRN": "#377eb8",
    "SPA": "#4daf4a",
    "RUS": "#984ea3",
    "ITA": "#ff00ff",
    "IND": "#a65628",
    "CHI": "#000080",
    "JAP": "#ff7f00",
    "KOR": "#00bfbf",
    "VIE": "#808000",
    "ARA": "#bcbd22",
    "OTH": "#999999",
}

_DPI = 110


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_population(series: PopulationSeries, path: Path) -> Path:
    """Accumulated head counts (log scale) and yearly new authors."""
    fig, (ax_acc, ax_new) = plt.subplots(1, 2, figsize=(12, 4.5))
    for label in series.labels_present():
        years = series.years
        acc = [series.accumulated[label][y] for y in years]
        new = [series.new[label][y] for y in years]
        color = LABEL_COLORS.get(label, "#777777")
        ax_acc.plot(years, acc, label=label, color=color, linewidth=1.2)
        ax_new.plot(years, new, label=label, color=color, linewidth=1.2)
    ax_acc.set_yscale("log")
    ax_acc.set_title("Accumulated author population")
    ax_new.set_title("New authors per year")
    for ax in (ax_acc, ax_new):
        ax.set_xlabel("year")
        ax.grid(True, alpha=0.3)
    ax_acc.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    return _save(fig, path)


def plot_output(series: OutputSeries, path: Path) -> Path:
    """Fractional publication output: absolute lines and normalized shares."""
    fig, (ax_abs, ax_share) = plt.subplots(1, 2, figsize=(12, 4.5))
    labels = series.labels_present()
    years = list(series.years)
    values = np.array([[series.values[la].get(y, 0.0) for y in years] for la in labels])
    for row, label in zip(values, labels):
        ax_abs.plot(years, row, label=label, color=LABEL_COLORS.get(label, "#777777"), linewidth=1.2)
    totals = values.sum(axis=0)
    shares = np.divide(values, totals, out=np.zeros_like(values), where=totals > 0)
    ax_share.stackplot(
        years, shares, labels=labels, colors=[LABEL_COLORS.get(la, "#777777") for la in labels]
    )
    ax_abs.set_title("Fractional publication output")
    ax_share.set_title("Share of yearly output")
    ax_share.set_ylim(0, 1)
    for ax in (ax_abs, ax_share):
        ax.set_xlabel("year")
    ax_abs.grid(True, alpha=0.3)
    ax_abs.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    return _save(fig, path)


def plot_logistic_fits(
    series: PopulationSeries, fits: Mapping[str, LogisticFit], path: Path
) -> Path:
    """Accumulated counts with fitted growth curves, one panel per label."""
    fitted = [la for la in lbl.ALL_LABELS if la in fits]
    cols = 4
    rows = max(1, -(-len(fitted) // cols))
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.6 * rows), squeeze=False)
    for k, label in enumerate(fitted):
        ax = axes[k // cols][k % cols]
        fit = fits[label]
        years = list(series.years)
        ax.plot(
            years,
            [series.accumulated[label][y] for y in years],
            ".",
            color=LABEL_COLORS.get(label, "#777777"),
            markersize=3,
        )
        dense = np.linspace(years[0], years[-1], 200)
        ax.plot(dense, [fit.value(t) for t in dense], "-", color="#d62728", linewidth=1.0)
        ax.axhline(fit.pm / 2.0, color="#888888", linewidth=0.6, linestyle="--")
        ax.set_title(f"{label} (pm={fit.pm:.0f})", fontsize=8)
    for k in range(len(fitted), rows * cols):
        axes[k // cols][k % cols].axis("off")
    fig.suptitle("Logistic growth fits (dashed: inflection level pm/2)", fontsize=10)
    fig.tight_layout()
    return _save(fig, path)


def plot_venue_ratios(
    series: VenueRatioSeries, venues: Sequence[str], title: str, path: Path
) -> Path:
    """Bubble chart: x year, y ratio, bubble area proportional to venue size."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    palette = ["#2ca02c", "#000000", "#1f77b4", "#d62728", "#17becf", "#e377c2"]
    wanted = [v.upper() for v in venues]
    sizes = [row.venue_size for row in series.rows if row.ratio is not None]
    scale = 300.0 / max(sizes) if sizes else 1.0
    for k, venue in enumerate(wanted):
        rows = [r for r in series.rows if r.venue == venue and r.ratio is not None]
        if not rows:
            continue
        ax.scatter(
            [r.year for r in rows],
            [r.ratio for r in rows],
            s=[max(6.0, r.venue_size * scale) for r in rows],
            color=palette[k % len(palette)],
            alpha=0.55,
            label=venue,
            edgecolors="none",
        )
    ax.axhline(1.0, color="#888888", linewidth=0.8, linestyle="--")
    ax.set_xlabel("year")
    ax.set_ylabel("unique-name ratio")
    ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def plot_cluster_purity(clusters: Sequence[Cluster], path: Path) -> Path:
    """Bubble scatter of cluster purity per dominating label."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    order = {label: i for i, label in enumerate(lbl.ALL_LABELS)}
    sizes = [c.size for c in clusters]
    scale = 500.0 / max(sizes) if sizes else 1.0
    for cluster in sorted(clusters, key=lambda c: c.cluster_id):
        x = order[cluster.purity_label]
        ax.scatter(
            [x],
            [cluster.purity],
            s=[max(8.0, cluster.size * scale)],
            color=LABEL_COLORS.get(cluster.purity_label, "#777777"),
            alpha=0.55,
            edgecolors="none",
        )
    ax.set_xticks(range(len(lbl.ALL_LABELS)))
    ax.set_xticklabels(lbl.ALL_LABELS, fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("purity")
    ax.set_title("Cluster purity by dominating label (bubble area = cluster size)")
    fig.tight_layout()
    return _save(fig, path)


def plot_collab_matrices(matrices: Sequence[CollabMatrix], path: Path) -> Path:
    """Heatmap grid: collaboration strength per period, raw and normalized."""
    n = len(matrices)
    fig, axes = plt.subplots(2, n, figsize=(3.1 * n, 6.4), squeeze=False)
    ticks = range(len(lbl.ALL_LABELS))
    for k, matrix in enumerate(matrices):
        ax_cs, ax_ncs = axes[0][k], axes[1][k]
        # per-period scale for raw strength, shared [0, 1] for normalized
        ax_cs.imshow(matrix.cs, cmap="viridis")
        ax_ncs.imshow(matrix.ncs, cmap="viridis", vmin=0.0, vmax=1.0)
        ax_cs.set_title(f"CS {matrix.period[0]}-{matrix.period[1]}", fontsize=8)
        ax_ncs.set_title(f"NCS {matrix.period[0]}-{matrix.period[1]}", fontsize=8)
        for ax in (ax_cs, ax_ncs):
            ax.set_xticks(ticks)
            ax.set_yticks(ticks)
            ax.set_xticklabels(matrix.labels, fontsize=5, rotation=90)
            ax.set_yticklabels(matrix.labels, fontsize=5)
    fig.tight_layout()
    return _save(fig, path)
