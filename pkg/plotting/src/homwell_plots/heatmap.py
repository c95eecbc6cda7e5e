"""Joint-density heatmap panels: statistics across, times down."""

from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

from .io import STATISTICS_ORDER, FrameManifest, GridFrame, load_grid

_LABEL = {"boson": "B", "fermion": "F", "distinguishable": "D"}


def _ordered_tags(manifest: FrameManifest) -> list[str]:
    tags = manifest.statistics_tags()
    return [t for t in STATISTICS_ORDER if t in tags] or tags


def render_heatmap_panel(
    manifest: FrameManifest,
    times: list[float] | None,
    out_path: str | Path,
    cmap: str = "inferno",
    dpi: int = 150,
) -> Path:
    """One panel per (statistics, time), color scale shared within a row.

    Rows are times, columns the statistics, matching the side-by-side
    comparison the density grids are produced for.  All frames must share
    one grid shape.
    """
    if times is None:
        times = manifest.times()
    if not times:
        raise ValueError("no times to render")
    tags = _ordered_tags(manifest)
    frames: dict[tuple[float, str], GridFrame] = {}
    shape = None
    for tau in times:
        for tag in tags:
            frame = load_grid(manifest.entry(tau, tag).path)
            if shape is None:
                shape = frame.values.shape
            elif frame.values.shape != shape:
                raise ValueError(
                    f"grid shape {frame.values.shape} at tau={tau} ({tag}) "
                    f"differs from {shape}"
                )
            frames[(tau, tag)] = frame
    n_rows, n_cols = len(times), len(tags)
    fig, axes = plt.subplots(
        n_rows,
        n_cols,
        figsize=(3.1 * n_cols, 2.9 * n_rows),
        squeeze=False,
        constrained_layout=True,
    )
    for i, tau in enumerate(times):
        vmax = max(float(frames[(tau, tag)].values.max()) for tag in tags)
        for j, tag in enumerate(tags):
            ax = axes[i][j]
            frame = frames[(tau, tag)]
            extent = (frame.x2[0], frame.x2[-1], frame.x1[0], frame.x1[-1])
            ax.imshow(
                frame.values,
                origin="lower",
                extent=extent,
                vmin=0.0,
                vmax=vmax if vmax > 0 else 1.0,
                cmap=cmap,
                aspect="equal",
            )
            ax.axhline(0.0, color="w", lw=0.4, alpha=0.5)
            ax.axvline(0.0, color="w", lw=0.4, alpha=0.5)
            if i == 0:
                ax.set_title(_LABEL.get(tag, tag), fontsize=12)
            if j == 0:
                ax.set_ylabel(f"$\\tau$ = {tau:g}\n$x_1$")
            if i == n_rows - 1:
                ax.set_xlabel("$x_2$")
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path
