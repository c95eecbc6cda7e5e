"""Line plots: separation distributions, transmission sweeps, packet frames."""

from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt

from .io import STATISTICS_ORDER, Table, load_table

_STYLE = {
    "boson": dict(color="tab:red", label="bosons"),
    "fermion": dict(color="tab:blue", label="fermions"),
    "distinguishable": dict(color="tab:green", ls="--", label="distinguishable"),
}


def render_separation_curves(
    table_paths: list[str | Path], out_dir: str | Path, dpi: int = 150
) -> list[Path]:
    """Overlay the three statistics' P_sep curves, one figure per table."""
    if not table_paths:
        raise ValueError("no separation tables given")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for path in table_paths:
        path = Path(path)
        table = load_table(path)
        fig, ax = plt.subplots(figsize=(6.0, 3.6), constrained_layout=True)
        for tag in STATISTICS_ORDER:
            ax.plot(table["r"], table[tag], lw=1.2, **_STYLE[tag])
        title = []
        if "tau" in table.header:
            title.append(f"$\\tau$ = {float(table.header['tau']):g}")
        if "value" in table.header:
            title.append(
                f"{table.header.get('sweep_parameter', 'value')} = "
                f"{float(table.header['value']):g}"
            )
        ax.set_title(", ".join(title))
        ax.set_xlabel("$|r|$")
        ax.set_ylabel("$P_\\mathrm{sep}$")
        ax.set_xlim(table["r"][0], table["r"][-1])
        ax.set_ylim(bottom=0.0)
        ax.legend(frameon=False, fontsize=9)
        out = out_dir / (path.stem + ".png")
        fig.savefig(out, dpi=dpi)
        plt.close(fig)
        written.append(out)
    return written


def render_transmission_curves(table_path: str | Path, out_dir: str | Path, dpi: int = 150) -> Path:
    """Wave-packet vs plane-wave transmission as a function of K0."""
    table = load_table(table_path)
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    ax.plot(table["k0"], table["t_wavepacket_exact"], "k-", lw=1.3, label="packet (exact)")
    ax.plot(table["k0"], table["t_wavepacket_approx"], "b*", ms=6, label="packet (approx)")
    ax.plot(table["k0"], table["t_plane"], "r:", lw=1.3, label="plane wave")
    ax.set_xlabel("$K_0$")
    ax.set_ylabel("$T$")
    ax.set_ylim(0.0, 1.0)
    ax.legend(frameon=False, fontsize=9)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / "transmission.png"
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out


def render_pr_curves(table_path: str | Path, out_dir: str | Path, dpi: int = 150) -> Path:
    """Time evolution of the right-side probability for each K0."""
    table = load_table(table_path)
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    k0s = sorted(set(table["k0"].tolist()))
    for k0 in k0s:
        mask = table["k0"] == k0
        ax.plot(table["tau"][mask], table["p_right"][mask], lw=1.2, label=f"$K_0$={k0:g}")
    ax.set_xlabel("$\\tau$")
    ax.set_ylabel("$P_R$")
    ax.set_ylim(0.0, 1.05)
    ax.legend(frameon=False, fontsize=8)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / "p_right.png"
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out


def render_packet_frames(
    frame_paths: list[str | Path], out_dir: str | Path, dpi: int = 150
) -> Path:
    """Overlay single-particle density snapshots |Phi(X, tau)|^2."""
    if not frame_paths:
        raise ValueError("no packet frames given")
    fig, ax = plt.subplots(figsize=(6.0, 3.6), constrained_layout=True)
    for path in frame_paths:
        table = load_table(path)
        tau = float(table.header.get("tau", "nan"))
        ax.plot(table["x"], table["density"], lw=1.1, label=f"$\\tau$ = {tau:g}")
    ax.axvline(0.0, color="k", lw=0.6, alpha=0.5)
    ax.set_xlabel("$X$")
    ax.set_ylabel("$|\\Phi|^2$")
    ax.legend(frameon=False, fontsize=8)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / "packet_evolution.png"
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out


def render_coefficient_curves(table_path: str | Path, out_dir: str | Path, dpi: int = 150) -> Path:
    """Exact vs truncated-Gaussian superposition coefficient density."""
    table = load_table(table_path)
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    ax.plot(table["k"], table["abs2_exact"], "k-", lw=1.2, label="exact")
    ax.plot(table["k"], table["abs2_approx"], "b:", lw=1.4, label="approximate")
    ax.set_xlabel("$K$")
    ax.set_ylabel("$|\\phi(K)|^2$")
    ax.legend(frameon=False, fontsize=9)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / "coefficient.png"
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out
