"""Batch figure rendering: plot <figure-name> --in <dir> --out <dir>.

Figure names mirror the simulator's catalog; each consumes the CSV
files a scenario run left in the input directory and writes PNGs (and a
GIF for 'animation') to the output directory.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from .curves import (
    render_coefficient_curves,
    render_packet_frames,
    render_pr_curves,
    render_separation_curves,
    render_transmission_curves,
)
from .gif import assemble_gif
from .heatmap import render_heatmap_panel
from .io import FrameManifest, ManifestError

SINGLE_FIGURES = {"fig1", "fig1d", "free"}
HEATMAP_FIGURES = {"fig3", "fig5a", "fig5b", "fig5c"}
SEPARATION_FIGURES = {"fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig6a", "fig6b", "fig6c"}
FIGURES = sorted(SINGLE_FIGURES | HEATMAP_FIGURES | SEPARATION_FIGURES | {"animation"})


def render_figure(name: str, in_dir: Path, out_dir: Path, fps: float) -> list[Path]:
    written: list[Path] = []
    if name == "animation":
        manifest = FrameManifest.load(in_dir / "manifest.csv")
        written.append(assemble_gif(manifest, out_dir / "animation.gif", fps=fps))
        return written
    if name in SINGLE_FIGURES:
        frames = sorted(in_dir.glob("frame_*.csv"))
        if frames:
            written.append(render_packet_frames(frames, out_dir))
        if (in_dir / "pr_table.csv").is_file():
            written.append(render_pr_curves(in_dir / "pr_table.csv", out_dir))
        if (in_dir / "transmission.csv").is_file():
            written.append(render_transmission_curves(in_dir / "transmission.csv", out_dir))
        if (in_dir / "coefficient.csv").is_file():
            written.append(render_coefficient_curves(in_dir / "coefficient.csv", out_dir))
        return written
    if name in HEATMAP_FIGURES:
        manifest = FrameManifest.load(in_dir / "manifest.csv")
        written.append(
            render_heatmap_panel(manifest, None, out_dir / f"{name}_panels.png")
        )
    if name in SEPARATION_FIGURES:
        tables = sorted(in_dir.glob("psep_*.csv"))
        written.extend(render_separation_curves(tables, out_dir))
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render homwell scenario outputs into figures"
    )
    parser.add_argument("figure", choices=FIGURES, help="figure to render")
    parser.add_argument("--in", dest="in_dir", required=True, help="scenario output directory")
    parser.add_argument("--out", dest="out_dir", required=True, help="directory for images")
    parser.add_argument("--fps", type=float, default=12.0, help="animation frame rate")
    args = parser.parse_args(argv)
    try:
        written = render_figure(
            args.figure, Path(args.in_dir), Path(args.out_dir), args.fps
        )
    except (ManifestError, ValueError, OSError) as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 1
    if not written:
        print("plot: no renderable inputs found", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
