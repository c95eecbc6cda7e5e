"""GIF assembly from a frame manifest."""

from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
from PIL import Image

from .heatmap import _LABEL, _ordered_tags
from .io import FrameManifest, load_grid


def _compose_frame(frames, tags, tau, vmax, cmap, dpi) -> Image.Image:
    fig, axes = plt.subplots(
        1, len(tags), figsize=(2.6 * len(tags), 2.9), squeeze=False,
        constrained_layout=True,
    )
    for j, tag in enumerate(tags):
        frame = frames[tag]
        ax = axes[0][j]
        extent = (frame.x2[0], frame.x2[-1], frame.x1[0], frame.x1[-1])
        ax.imshow(
            frame.values,
            origin="lower",
            extent=extent,
            vmin=0.0,
            vmax=vmax,
            cmap=cmap,
            aspect="equal",
        )
        ax.set_title(_LABEL.get(tag, tag), fontsize=10)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.suptitle(f"$\\tau$ = {tau:.3f}", fontsize=10)
    fig.canvas.draw()
    rgba = np.asarray(fig.canvas.buffer_rgba())
    plt.close(fig)
    return Image.fromarray(rgba[:, :, :3])


def assemble_gif(
    manifest: FrameManifest,
    out_path: str | Path,
    fps: float = 12.0,
    cmap: str = "inferno",
    dpi: int = 100,
) -> Path:
    """Animate the joint densities: one composed image per time step.

    Needs at least two time steps; the color scale is shared across the
    whole animation so intensities stay comparable.
    """
    times = manifest.times()
    if len(times) < 2:
        raise ValueError(f"animation needs at least 2 frames, got {len(times)}")
    tags = _ordered_tags(manifest)
    loaded: dict[float, dict[str, "GridFrame"]] = {}
    vmax = 0.0
    for tau in times:
        loaded[tau] = {tag: load_grid(manifest.entry(tau, tag).path) for tag in tags}
        vmax = max(vmax, max(float(f.values.max()) for f in loaded[tau].values()))
    images = [
        _compose_frame(loaded[tau], tags, tau, vmax if vmax > 0 else 1.0, cmap, dpi)
        for tau in times
    ]
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    images[0].save(
        out_path,
        save_all=True,
        append_images=images[1:],
        duration=int(round(1000.0 / fps)),
        loop=0,
    )
    return out_path
