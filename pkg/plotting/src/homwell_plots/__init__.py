"""Rendering for delta-well scattering simulator outputs.

Consumes the simulator's CSV contract (manifests, 2D density grids,
column tables) and produces heatmap panels, curve overlays and GIF
animations.  Batch-only: the matplotlib Agg backend is selected at
import time.
"""

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
from .io import FrameManifest, GridFrame, ManifestError, Table, load_grid, load_table

__all__ = [
    "FrameManifest",
    "GridFrame",
    "ManifestError",
    "Table",
    "assemble_gif",
    "load_grid",
    "load_table",
    "render_coefficient_curves",
    "render_heatmap_panel",
    "render_packet_frames",
    "render_pr_curves",
    "render_separation_curves",
    "render_transmission_curves",
]

__version__ = "0.1.0"
