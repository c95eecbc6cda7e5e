"""Scenario runners: evaluate the physics and emit machine-readable CSV.

Every file starts with a commented header block of key=value pairs
echoing the configuration, followed by a plain CSV body.  Floats are
written with shortest round-trip repr, so re-running a scenario with the
same config produces byte-identical output regardless of thread count.
"""

from __future__ import annotations

import csv
import math
from dataclasses import replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import PacketConfig, SpinConfig, Statistics, ensure_valid
from .errors import NormDriftError
from .quadrature import Grid1D, Grid2D, integrate_1d, quadrant_sums
from .scattering import (
    WavePacket,
    completion_time,
    evolve,
    exact_coefficient,
    gaussian_coefficient,
    plane_wave_T,
    prob_right,
    wavepacket_T,
)
from .scenario import Scenario
from .twoparticle import (
    NUMERIC_COMPLETION_MASS_TOL,
    TwoParticleState,
    default_center_extent,
    joint_density,
    same_side_closed_form,
    same_side_numeric,
    separation_distributions,
)

NORM_TOL = 2e-3

_STAT_ORDER = (Statistics.BOSON, Statistics.FERMION, Statistics.DISTINGUISHABLE)


# -- formatting -----------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, complex):
        return repr(complex(value))
    return str(value)


def write_csv(
    path: Path,
    header: dict,
    columns: Sequence[str],
    rows: Iterable[Sequence],
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={_fmt(value)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_grid_csv(
    path: Path, header: dict, x1: np.ndarray, x2: np.ndarray, values: np.ndarray
) -> Path:
    """2D grid file: row-major, x1 as rows, x2 as columns.

    The first row holds (0, x2 coordinates...), the first column the x1
    coordinates; cell (0, 0) is a placeholder.  Densities are written
    with a fixed 9-significant-digit format (byte-deterministic, ample
    for rendering); coordinates keep full round-trip precision.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={_fmt(value)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([_fmt(0.0)] + [_fmt(v) for v in x2])
        for xi, row in zip(x1, values):
            writer.writerow([_fmt(xi)] + [f"{v:.9g}" for v in row])
    return path


def _scenario_header(scenario: Scenario, **extra) -> dict:
    head = {
        "name": scenario.name,
        "kind": scenario.kind,
        "mode": scenario.mode,
        "well.lambda": scenario.well.lam,
        "packet1.s0": scenario.packet1.s0,
        "packet1.k0": scenario.packet1.k0,
    }
    if scenario.packet2 is not None:
        head["packet2.s0"] = scenario.packet2.s0
        head["packet2.k0"] = scenario.packet2.k0
    head["spin.c"] = scenario.spin.c
    head["spin.d"] = scenario.spin.d
    head.update(extra)
    return head


# -- shared helpers -------------------------------------------------------


def _pow2_nodes(minimum: int) -> int:
    m = max(1, math.ceil(math.log2(max(minimum - 1, 1))))
    return 2**m + 1


def _auto_xgrid(packets: Sequence[WavePacket], tau_max: float, minimum_halfwidth: float) -> Grid1D:
    """Symmetric x grid wide enough for all lobes, sampled past Nyquist."""
    extent = default_center_extent(packets, tau_max)
    half = max(minimum_halfwidth, 5.0 * math.ceil(extent / 5.0))
    k_absmax = max(abs(p.packet.k0) + 8.5 for p in packets)
    h_target = math.pi / (2.0 * k_absmax + 8.0) / 1.3
    n = _pow2_nodes(int(math.ceil(2.0 * half / h_target)) + 1)
    return Grid1D(-half, half, max(n, 1025))


def _check_norm(norm: float, what: str, expected: float = 1.0) -> None:
    if abs(norm - expected) > NORM_TOL:
        raise NormDriftError(
            f"{what}: norm {norm!r} drifted outside {expected} +- {NORM_TOL}"
        )


def _packet_pair(scenario: Scenario) -> tuple[WavePacket, WavePacket]:
    p1 = WavePacket(scenario.well, scenario.packet1, scenario.mode, scenario.grid.n_k)
    p2 = WavePacket(scenario.well, scenario.packet2, scenario.mode, scenario.grid.n_k)
    return p1, p2


def _frame_times(scenario: Scenario) -> list[float]:
    count = scenario.frame_count
    if count <= 0:
        return []
    if count == 1:
        return [0.0]
    return [scenario.frame_tau_max * j / (count - 1) for j in range(count)]


def _same_side_tau(packets: Sequence[WavePacket], threads: int) -> float:
    tau = max(
        completion_time(p, mass_tol=NUMERIC_COMPLETION_MASS_TOL, threads=threads)
        for p in packets
    )
    return tau + 0.05


def _same_side_grid(packets: Sequence[WavePacket], tau_final: float) -> Grid2D:
    grid = _auto_xgrid(packets, tau_final, minimum_halfwidth=20.0)
    return Grid2D.square(grid)


# -- runners --------------------------------------------------------------


def run_single(scenario: Scenario, out_dir: str | Path, threads: int = 1) -> list[Path]:
    """Single-packet scattering run.

    Emits |Phi(X, tau)|^2 frames with a manifest, the P_R(tau) table, the
    transmission-vs-K0 sweep table (plane wave, approximate and exact
    packet averages), and the |phi(K)|^2 coefficient table.
    """
    ensure_valid(scenario.well, [scenario.packet1], scenario.spin, scenario.mode)
    out = Path(out_dir)
    written: list[Path] = []
    packet = WavePacket(
        scenario.well, scenario.packet1, scenario.mode, scenario.grid.n_k
    )
    xgrid = Grid1D(-scenario.grid.x_max, scenario.grid.x_max, scenario.grid.n_x)

    # density frames + manifest
    manifest_rows = []
    for idx, tau in enumerate(scenario.times):
        field = evolve(packet, xgrid, tau, threads)
        dens = (field.values * field.values.conj()).real
        _check_norm(float(integrate_1d(dens, xgrid)), f"frame tau={tau}")
        name = f"frame_{idx:04d}.csv"
        written.append(
            write_csv(
                out / name,
                _scenario_header(scenario, tau=tau, columns="x,density"),
                ("x", "density"),
                zip(xgrid.nodes, dens),
            )
        )
        manifest_rows.append((idx, tau, "single", name))
    written.append(
        write_csv(
            out / "manifest.csv",
            _scenario_header(scenario),
            ("index", "tau", "statistics", "file"),
            manifest_rows,
        )
    )

    # P_R(tau) curves for a set of central wave vectors
    pr_rows = []
    tab = scenario.single
    taus = [
        tab.pr_tau_max * j / (tab.pr_tau_count - 1) if tab.pr_tau_count > 1 else 0.0
        for j in range(tab.pr_tau_count)
    ]
    for k0 in tab.pr_k0_values:
        cfg = PacketConfig(s0=scenario.packet1.s0, k0=math.copysign(k0, scenario.packet1.k0))
        pk = WavePacket(scenario.well, cfg, scenario.mode, scenario.grid.n_k)
        pr_grid = _auto_xgrid([pk], tab.pr_tau_max, scenario.grid.x_max)
        for tau in taus:
            pr_rows.append((k0, tau, prob_right(pk, pr_grid, tau, threads)))
    written.append(
        write_csv(
            out / "pr_table.csv",
            _scenario_header(scenario, columns="k0,tau,p_right"),
            ("k0", "tau", "p_right"),
            pr_rows,
        )
    )

    # transmission sweep: plane wave vs wave-packet averages
    t_rows = []
    for k0 in tab.k0_values:
        k0s = math.copysign(k0, scenario.packet1.k0)
        cfg = PacketConfig(s0=scenario.packet1.s0, k0=k0s)
        t_plane = plane_wave_T(k0s, scenario.well.lam)
        t_approx = wavepacket_T(WavePacket(scenario.well, cfg, "approximate"))
        t_exact = wavepacket_T(WavePacket(scenario.well, cfg, "exact"))
        t_rows.append((k0, t_plane, t_approx, t_exact))
    written.append(
        write_csv(
            out / "transmission.csv",
            _scenario_header(scenario, columns="k0,t_plane,t_wavepacket_approx,t_wavepacket_exact"),
            ("k0", "t_plane", "t_wavepacket_approx", "t_wavepacket_exact"),
            t_rows,
        )
    )

    # superposition coefficient table around the central wave vector
    k_hi = abs(scenario.packet1.k0) + 8.5
    kgrid = np.linspace(-k_hi, k_hi, tab.phi_n)
    base = (
        scenario.packet1
        if scenario.packet1.k0 > 0
        else scenario.packet1.mirrored()
    )
    k_eval = kgrid if scenario.packet1.k0 > 0 else -kgrid
    phi_exact = exact_coefficient(k_eval, base.s0, base.k0, scenario.well.lam)
    phi_approx = np.where(
        k_eval * base.k0 > 0,
        gaussian_coefficient(k_eval, base.s0, base.k0),
        0.0,
    )
    written.append(
        write_csv(
            out / "coefficient.csv",
            _scenario_header(scenario, columns="k,abs2_exact,abs2_approx"),
            ("k", "abs2_exact", "abs2_approx"),
            zip(
                kgrid,
                (phi_exact * phi_exact.conj()).real,
                (phi_approx * phi_approx.conj()).real,
            ),
        )
    )
    return written


def _joint_frames(
    scenario: Scenario,
    packets: tuple[WavePacket, WavePacket],
    times: Sequence[float],
    out: Path,
    threads: int,
    prefix: str = "frame",
) -> tuple[list[Path], list[tuple]]:
    """Joint-density grids for each statistics at each time, with norms checked.

    Densities are computed on a refined grid (at least 2^11 + 1 nodes per
    axis, at least twice the emission resolution): the kink the delta
    well imprints at X = 0 costs the plain trapezoid an O(h^2) error
    while amplitude sits at the well, and the refined grid keeps the
    quadrant-sum drift inside the norm budget.  Emitted files carry a
    power-of-two stride of the computed nodes, i.e. exact samples at the
    configured resolution.
    """
    written: list[Path] = []
    manifest_rows: list[tuple] = []
    n_file = scenario.grid.n_x_2d
    k_file = (n_file - 1).bit_length() - 1
    fine_n = 2 ** max(k_file + 1, 11) + 1
    stride = (fine_n - 1) // (n_file - 1)
    fine = Grid2D.square(Grid1D(-scenario.grid.x_max, scenario.grid.x_max, fine_n))
    coarse_nodes = fine.x1.nodes[::stride]
    p1, p2 = packets
    expected = p1.k_norm() * p2.k_norm()
    for idx, tau in enumerate(times):
        for stat in _STAT_ORDER:
            state = TwoParticleState(p1, p2, scenario.spin, stat)
            field = joint_density(state, fine, tau, threads)
            total = sum(quadrant_sums(field).values())
            _check_norm(total, f"joint {stat.value} tau={tau}", expected)
            name = f"{prefix}_{idx:04d}_{stat.value}.csv"
            written.append(
                write_grid_csv(
                    out / name,
                    _scenario_header(
                        scenario, tau=tau, statistics=stat.value, layout="x1_rows_x2_cols"
                    ),
                    coarse_nodes,
                    coarse_nodes,
                    field.values[::stride, ::stride],
                )
            )
            manifest_rows.append((idx, tau, stat.value, name))
    return written, manifest_rows


def run_two_particle(scenario: Scenario, out_dir: str | Path, threads: int = 1) -> list[Path]:
    """Two-particle interference run.

    Emits joint-density frames per statistics, separation-distribution
    curves per sampled time, and the same-side probability table with
    closed-form and numeric values side by side.
    """
    ensure_valid(scenario.well, scenario.packets, scenario.spin, scenario.mode)
    out = Path(out_dir)
    p1, p2 = _packet_pair(scenario)
    written, manifest_rows = _joint_frames(
        scenario, (p1, p2), scenario.times, out, threads, prefix="joint"
    )
    written.append(
        write_csv(
            out / "manifest.csv",
            _scenario_header(scenario),
            ("index", "tau", "statistics", "file"),
            manifest_rows,
        )
    )

    rgrid = Grid1D(0.0, scenario.grid.r_max, scenario.grid.n_r)
    for idx, tau in enumerate(scenario.times):
        curves = separation_distributions(
            p1, p2, scenario.spin, rgrid, tau, threads=threads
        )
        expected = p1.k_norm() * p2.k_norm()
        for stat in _STAT_ORDER:
            _check_norm(curves[stat].total(), f"psep {stat.value} tau={tau}", expected)
        written.append(
            write_csv(
                out / f"psep_{idx:04d}.csv",
                _scenario_header(scenario, tau=tau, columns="r,boson,fermion,distinguishable"),
                ("r", "boson", "fermion", "distinguishable"),
                zip(
                    rgrid.nodes,
                    curves[Statistics.BOSON].values,
                    curves[Statistics.FERMION].values,
                    curves[Statistics.DISTINGUISHABLE].values,
                ),
            )
        )

    written.append(_same_side_table(scenario, (p1, p2), out, threads))
    return written


def _same_side_table(
    scenario: Scenario,
    packets: tuple[WavePacket, WavePacket],
    out: Path,
    threads: int,
) -> Path:
    p1, p2 = packets
    tau_final = _same_side_tau(packets, threads)
    grid = _same_side_grid(packets, tau_final)
    state = TwoParticleState(p1, p2, scenario.spin, Statistics.BOSON)
    numeric = same_side_numeric(state, grid, tau_final, threads)
    closed = same_side_closed_form(
        scenario.packet1, scenario.packet2, scenario.well, scenario.spin
    )
    rows = []
    for stat in _STAT_ORDER:
        pc = closed.same_side(stat)
        pn = numeric.same_side(stat)
        rows.append((stat.value, pc, pn, 1.0 - pc, 1.0 - pn))
    return write_csv(
        out / "same_side.csv",
        _scenario_header(scenario, tau_final=tau_final),
        (
            "statistics",
            "p_same_closed",
            "p_same_numeric",
            "coincidence_closed",
            "coincidence_numeric",
        ),
        rows,
    )


def _apply_sweep_value(scenario: Scenario, value: float) -> Scenario:
    param = scenario.sweep.parameter
    if param == "packet2.s0":
        return replace(scenario, packet2=replace(scenario.packet2, s0=value))
    if param == "packet2.k0":
        return replace(scenario, packet2=replace(scenario.packet2, k0=value))
    if param == "spin.c":
        return replace(scenario, spin=SpinConfig.from_overlap(value))
    raise ValueError(f"unsupported sweep parameter {param!r}")


def _later_packet_display_tau(packets: Sequence[PacketConfig], distance: float = 5.0) -> float:
    """Time at which the later outgoing packet center reaches ``distance``.

    Centers move ballistically; the outgoing center distance of packet j
    is 2 |k0j| tau - |s0j|, so tau_j = (|s0j| + distance) / (2 |k0j|).
    """
    return max((abs(p.s0) + distance) / (2.0 * abs(p.k0)) for p in packets)


def run_sweep(scenario: Scenario, out_dir: str | Path, threads: int = 1) -> list[Path]:
    """Parameter sweep over delay, energy or spin overlap.

    One row per grid point with closed-form and numeric same-side
    probabilities and their differences; each point also emits its
    separation curves at the Fig.6 timing convention (later outgoing
    packet at dimensionless distance 5 from the well).
    """
    out = Path(out_dir)
    written: list[Path] = []
    rows = []
    for idx, value in enumerate(scenario.sweep.values):
        point = _apply_sweep_value(scenario, value)
        ensure_valid(point.well, point.packets, point.spin, point.mode)
        p1, p2 = _packet_pair(point)
        closed = same_side_closed_form(point.packet1, point.packet2, point.well, point.spin)
        tau_final = _same_side_tau((p1, p2), threads)
        grid = _same_side_grid((p1, p2), tau_final)
        state = TwoParticleState(p1, p2, point.spin, Statistics.BOSON)
        numeric = same_side_numeric(state, grid, tau_final, threads)
        rows.append(
            (
                idx,
                scenario.sweep.parameter,
                value,
                closed.p_plus,
                numeric.p_plus,
                abs(numeric.p_plus - closed.p_plus),
                closed.p_minus,
                numeric.p_minus,
                abs(numeric.p_minus - closed.p_minus),
                closed.p_d,
                numeric.p_d,
                abs(numeric.p_d - closed.p_d),
                tau_final,
            )
        )
        tau_disp = _later_packet_display_tau(point.packets)
        rgrid = Grid1D(0.0, point.grid.r_max, point.grid.n_r)
        curves = separation_distributions(
            p1, p2, point.spin, rgrid, tau_disp, threads=threads
        )
        written.append(
            write_csv(
                out / f"psep_point_{idx:04d}.csv",
                _scenario_header(
                    point, sweep_parameter=scenario.sweep.parameter, value=value, tau=tau_disp
                ),
                ("r", "boson", "fermion", "distinguishable"),
                zip(
                    rgrid.nodes,
                    curves[Statistics.BOSON].values,
                    curves[Statistics.FERMION].values,
                    curves[Statistics.DISTINGUISHABLE].values,
                ),
            )
        )
    written.append(
        write_csv(
            out / "sweep.csv",
            _scenario_header(scenario, parameter=scenario.sweep.parameter),
            (
                "index",
                "parameter",
                "value",
                "p_plus_closed",
                "p_plus_numeric",
                "p_plus_diff",
                "p_minus_closed",
                "p_minus_numeric",
                "p_minus_diff",
                "p_d_closed",
                "p_d_numeric",
                "p_d_diff",
                "tau_final",
            ),
            rows,
        )
    )
    return written


def export_frames(scenario: Scenario, out_dir: str | Path, threads: int = 1) -> list[Path]:
    """Numbered joint-density frames for animation plus a manifest.

    frame_count nodes spread uniformly over [0, tau_max]; a count of 0
    emits the manifest only.
    """
    ensure_valid(scenario.well, scenario.packets, scenario.spin, scenario.mode)
    out = Path(out_dir)
    times = _frame_times(scenario)
    p1, p2 = _packet_pair(scenario)
    written, manifest_rows = _joint_frames(
        scenario, (p1, p2), times, out, threads, prefix="frame"
    )
    written.append(
        write_csv(
            out / "manifest.csv",
            _scenario_header(scenario, frame_count=scenario.frame_count),
            ("index", "tau", "statistics", "file"),
            manifest_rows,
        )
    )
    return written


RUNNERS = {
    "single": run_single,
    "two_particle": run_two_particle,
    "sweep": run_sweep,
    "frames": export_frames,
}


def run_scenario(scenario: Scenario, out_dir: str | Path, threads: int = 1) -> list[Path]:
    return RUNNERS[scenario.kind](scenario, out_dir, threads)
