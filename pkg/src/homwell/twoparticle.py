"""Two-particle states, joint densities, and same-side probabilities.

Two non-interacting packets, incident from opposite sides of the well,
are combined into the symmetrized (boson), antisymmetrized (fermion) or
product (distinguishable) composition.  With particle 1 in spin |u> and
particle 2 in c|u> + d|v>, tracing the spin out reduces every
position-space density to

    rho_± = (|A|^2 + |B|^2)/2 ± |c|^2 Re(A* B),      rho_D = |A|^2,

with A = Phi1(x1) Phi2(x2), B = Phi1(x2) Phi2(x1): the exchange cross
term is simply weighted by the spin overlap |c|^2.  All probabilities
are deterministic trapezoidal quadratures of those densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import PacketConfig, SpinConfig, Statistics, WellConfig
from .errors import DomainLeakageError, ScatteringIncompleteError
from .quadrature import (
    Field2D,
    Grid1D,
    Grid2D,
    chunked_sum,
    map_row_chunks,
    side_weights,
)
from .scattering import (
    LEAKAGE_TOL,
    WavePacket,
    is_scattering_complete,
)

ALL_STATISTICS = (Statistics.BOSON, Statistics.FERMION, Statistics.DISTINGUISHABLE)


@dataclass(frozen=True)
class TwoParticleState:
    """Two incident packets plus spin configuration and statistics tag."""

    packet1: WavePacket
    packet2: WavePacket
    spin: SpinConfig
    statistics: Statistics

    def __post_init__(self):
        if self.packet1.packet.k0 <= 0 or self.packet2.packet.k0 >= 0:
            raise ValueError(
                "packet1 must be the left-incident packet (K0 > 0) and "
                "packet2 the right-incident one (K0 < 0)"
            )

    def joint_amplitude(self, x1, x2, tau: float) -> np.ndarray:
        """Two-particle wave function Psi(x1, x2, tau) for pure spin overlap.

        Defined for distinguishable particles or identical spins (|c|=1);
        mixed spin overlaps have no single position wave function and are
        handled at density level.
        """
        sign = self.statistics.exchange_sign
        if sign != 0 and abs(abs(self.spin.c) - 1.0) > 1e-12:
            raise ValueError(
                "joint_amplitude needs |c| = 1 for identical particles; "
                "use joint_density for mixed spin overlaps"
            )
        x1 = np.asarray(x1, dtype=np.float64)
        x2 = np.asarray(x2, dtype=np.float64)
        f1_x1 = self.packet1.amplitude(x1, tau)
        f2_x2 = self.packet2.amplitude(x2, tau)
        a = f1_x1 * f2_x2
        if sign == 0:
            return a
        f1_x2 = self.packet1.amplitude(x2, tau)
        f2_x1 = self.packet2.amplitude(x1, tau)
        b = f1_x2 * f2_x1
        return (a + sign * b) / math.sqrt(2.0)


def _pair_products(f1: np.ndarray, f2: np.ndarray, rows: slice):
    """A = Phi1(x1) Phi2(x2) and B = Phi1(x2) Phi2(x1) for a block of x1 rows.

    B is built with the same operand order as A (Phi1 times Phi2), so on
    the diagonal x1 = x2 the two arrays are bitwise identical and the
    fermion density vanishes exactly.
    """
    a = np.outer(f1[rows], f2)
    b = np.ascontiguousarray(np.multiply.outer(f1, f2[rows]).T)
    return a, b


def _density_rows(
    f1: np.ndarray,
    f2: np.ndarray,
    rows: slice,
    sign: int,
    c2: float,
) -> np.ndarray:
    """Spin-traced joint density for a block of x1 rows on a square grid."""
    a, b = _pair_products(f1, f2, rows)
    aa = (a * a.conj()).real
    if sign == 0:
        return aa
    bb = (b * b.conj()).real
    cross = (a.conj() * b).real
    return 0.5 * (aa + bb) + (sign * c2) * cross


def joint_density(
    state: TwoParticleState, grid: Grid2D, tau: float, threads: int = 1
) -> Field2D:
    """Sample the spin-summed joint density |Psi|^2 on the grid.

    Guards against domain leakage by comparing the total against the
    product of the packets' conserved K-space norms.
    """
    if grid.x1 != grid.x2:
        raise ValueError("joint_density expects a Cartesian-square grid")
    x = grid.x1.nodes
    f1 = state.packet1.amplitude(x, tau, threads)
    f2 = state.packet2.amplitude(x, tau, threads)
    sign = state.statistics.exchange_sign
    c2 = state.spin.overlap_weight
    values = map_row_chunks(
        lambda lo, hi: _density_rows(f1, f2, slice(lo, hi), sign, c2),
        grid.x1.n,
        threads,
    )
    field2d = Field2D(grid, values)
    total = float(chunked_sum(chunked_sum(values * grid.x2.weights) * grid.x1.weights))
    expected = state.packet1.k_norm() * state.packet2.k_norm()
    if expected - total > LEAKAGE_TOL:
        raise DomainLeakageError(
            f"two-particle domain leakage {expected - total:.3e} at tau={tau} "
            f"exceeds {LEAKAGE_TOL}"
        )
    return field2d


@dataclass(frozen=True)
class SeparationDistribution:
    """P_sep(|r|, tau): inter-particle distance density, CoM integrated."""

    r_grid: Grid1D
    values: np.ndarray
    statistics: Statistics
    tau: float

    def total(self) -> float:
        """Integral over |r|; equals the two-particle norm up to truncation."""
        return float(chunked_sum(self.values * self.r_grid.weights))


def _separation_curves(
    packet1: WavePacket,
    packet2: WavePacket,
    spin: SpinConfig,
    r_grid: Grid1D,
    tau: float,
    r_max_center: float,
    threads: int = 1,
) -> dict[Statistics, np.ndarray]:
    """One-pass evaluation of all three separation curves.

    Uses a shared fine grid with spacing h_r/2 so every (R +- r/2) lands
    exactly on precomputed packet samples; no interpolation.
    """
    if r_grid.lo != 0.0:
        raise ValueError("separation grid must start at |r| = 0")
    h_half = r_grid.h / 2.0
    shift_max = r_grid.n - 1  # r_max/2 in units of h_half
    m_center = int(math.ceil(r_max_center / h_half))
    n_center = 2 * m_center + 1
    n_fine = n_center + 2 * shift_max
    lo = -(m_center + shift_max) * h_half
    fine = Grid1D(lo, -lo, n_fine)
    center_grid = Grid1D(-m_center * h_half, m_center * h_half, n_center)
    w_center = center_grid.weights
    f1 = packet1.amplitude(fine.nodes, tau, threads)
    f2 = packet2.amplitude(fine.nodes, tau, threads)
    c2 = spin.overlap_weight
    j0 = shift_max

    def curve_block(lo_j: int, hi_j: int) -> np.ndarray:
        out = np.empty((hi_j - lo_j, 2))
        for idx, j in enumerate(range(lo_j, hi_j)):
            up = slice(j0 + j, j0 + j + n_center)
            dn = slice(j0 - j, j0 - j + n_center)
            a = f1[up] * f2[dn]  # x1 = R + r/2, x2 = R - r/2
            b = f1[dn] * f2[up]
            aa = (a * a.conj()).real
            bb = (b * b.conj()).real
            cross = (a.conj() * b).real
            out[idx, 0] = chunked_sum((aa + bb) * w_center)
            out[idx, 1] = chunked_sum(cross * w_center)
        return out

    parts = map_row_chunks(curve_block, r_grid.n, threads)
    sym = parts[:, 0]
    cross = parts[:, 1]
    return {
        Statistics.BOSON: sym + (2.0 * c2) * cross,
        Statistics.FERMION: sym - (2.0 * c2) * cross,
        Statistics.DISTINGUISHABLE: sym.copy(),
    }


def default_center_extent(
    packets: tuple[WavePacket, ...] | list[WavePacket], tau: float, pad_sigmas: float = 6.0
) -> float:
    """Window needed to hold every incident/reflected/transmitted lobe at tau.

    Lobe centers move ballistically to +-(2|K0| tau - |S|); dispersion
    widens each lobe to sigma(tau) = sqrt(1 + 16 tau^2)/2.
    """
    sigma = math.sqrt(1.0 + 16.0 * tau * tau) / 2.0
    extent = 0.0
    for p in packets:
        cfg = p.packet
        extent = max(extent, abs(2.0 * abs(cfg.k0) * tau - abs(cfg.s0)))
    return extent + pad_sigmas * sigma


def separation_distribution(
    state: TwoParticleState,
    r_grid: Grid1D,
    tau: float,
    r_max_center: float | None = None,
    threads: int = 1,
) -> SeparationDistribution:
    """Distance distribution P_sep(|r|, tau) for the state's statistics.

    For each |r| this sums the joint density at relative coordinate +|r|
    and -|r| and integrates over the center of mass (unit Jacobian).
    """
    curves = separation_distributions(
        state.packet1, state.packet2, state.spin, r_grid, tau, r_max_center, threads
    )
    return curves[state.statistics]


def separation_distributions(
    packet1: WavePacket,
    packet2: WavePacket,
    spin: SpinConfig,
    r_grid: Grid1D,
    tau: float,
    r_max_center: float | None = None,
    threads: int = 1,
) -> dict[Statistics, SeparationDistribution]:
    """All three statistics' separation curves from one field evaluation."""
    if r_max_center is None:
        r_max_center = default_center_extent((packet1, packet2), tau)
    values = _separation_curves(
        packet1, packet2, spin, r_grid, tau, r_max_center, threads
    )
    return {
        stat: SeparationDistribution(r_grid, vals, stat, tau)
        for stat, vals in values.items()
    }


@dataclass(frozen=True)
class SameSideResult:
    """Probabilities of both particles emerging on the same side of the well."""

    p_plus: float
    p_minus: float
    p_d: float
    source: str  # "closed_form" | "numeric"
    tau: float | None = None
    quadrants: dict | None = None

    def same_side(self, statistics: Statistics) -> float:
        if statistics is Statistics.BOSON:
            return self.p_plus
        if statistics is Statistics.FERMION:
            return self.p_minus
        return self.p_d


def coincidence_probability(result: SameSideResult) -> dict[Statistics, float]:
    """Opposite-side (coincidence) probability 1 - P for each statistics."""
    return {stat: 1.0 - result.same_side(stat) for stat in ALL_STATISTICS}


def same_side_closed_form(
    packet1: PacketConfig,
    packet2: PacketConfig,
    well: WellConfig,
    spin: SpinConfig,
) -> SameSideResult:
    """Narrow-band closed form of the same-side probabilities.

    P_D = T1 R2 + R1 T2 and
    P_± = P_D ± 2 |c|^2 sqrt(T1 R1 T2 R2) e^{-(s1+s2)^2} e^{-(k01+k02)^2/4}
    with the plane-wave coefficients T_j = 1/(1 + (Lambda/k0j)^2) taken at
    the central wave vectors.
    """
    t1 = packet1.k0**2 / (packet1.k0**2 + well.lam**2)
    t2 = packet2.k0**2 / (packet2.k0**2 + well.lam**2)
    r1, r2 = 1.0 - t1, 1.0 - t2
    p_d = t1 * r2 + r1 * t2
    delay = packet1.s0 + packet2.s0
    detune = packet1.k0 + packet2.k0
    cross = (
        2.0
        * spin.overlap_weight
        * math.sqrt(t1 * r1 * t2 * r2)
        * math.exp(-delay * delay)
        * math.exp(-detune * detune / 4.0)
    )
    return SameSideResult(
        p_plus=p_d + cross, p_minus=p_d - cross, p_d=p_d, source="closed_form"
    )


# Relaxed completion gate for the numeric route: the strict default
# (mass 1e-4 inside |X|<=3) is unreachable at practical times for
# gate-minimal packets (|K0| ~ 3) whose slow spectral tail empties the
# well region only like 1/tau.  1e-3 keeps the quadrant attribution
# error an order of magnitude below the closed-form agreement target.
NUMERIC_COMPLETION_MASS_TOL = 1e-3


def same_side_numeric(
    state: TwoParticleState,
    grid: Grid2D,
    tau_final: float,
    threads: int = 1,
    completion_mass_tol: float = NUMERIC_COMPLETION_MASS_TOL,
) -> SameSideResult:
    """Quadrant integration of the final joint density, all statistics.

    Requires scattering of both packets to be complete at tau_final.
    The density is accumulated row block by row block (memory stays flat
    on large grids) with the deterministic reduction, which reproduces
    the full-field quadrant integrals.
    """
    for packet in (state.packet1, state.packet2):
        if not is_scattering_complete(packet, tau_final, completion_mass_tol, threads):
            raise ScatteringIncompleteError(
                f"scattering not complete at tau={tau_final} "
                f"(packet K0={packet.packet.k0}, S={packet.packet.s0}, "
                f"mass_tol={completion_mass_tol})"
            )
    if grid.x1 != grid.x2:
        raise ValueError("same_side_numeric expects a Cartesian-square grid")
    xg = grid.x1
    x = xg.nodes
    f1 = state.packet1.amplitude(x, tau_final, threads)
    f2 = state.packet2.amplitude(x, tau_final, threads)
    w_pos = side_weights(xg, 1)
    w_neg = side_weights(xg, -1)

    def row_integrals(lo: int, hi: int) -> np.ndarray:
        rows = slice(lo, hi)
        a, b = _pair_products(f1, f2, rows)
        aa = (a * a.conj()).real
        bb = (b * b.conj()).real
        cross = (a.conj() * b).real
        out = np.empty((hi - lo, 6))
        for col, w in ((0, w_pos), (3, w_neg)):
            out[:, col + 0] = chunked_sum(aa * w)
            out[:, col + 1] = chunked_sum(bb * w)
            out[:, col + 2] = chunked_sum(cross * w)
        return out

    ri = map_row_chunks(row_integrals, xg.n, threads)
    c2 = state.spin.overlap_weight
    quadrants: dict[tuple[str, str], float] = {}
    for stat in ALL_STATISTICS:
        sign = stat.exchange_sign
        for quad, w1, col in (
            ("++", w_pos, 0),
            ("--", w_neg, 3),
            ("+-", w_pos, 3),
            ("-+", w_neg, 0),
        ):
            aa_ri, bb_ri, cross_ri = ri[:, col], ri[:, col + 1], ri[:, col + 2]
            if sign == 0:
                rho_ri = aa_ri
            else:
                rho_ri = 0.5 * (aa_ri + bb_ri) + (sign * c2) * cross_ri
            quadrants[(stat.value, quad)] = float(chunked_sum(rho_ri * w1))
    totals = {
        stat: sum(quadrants[(stat.value, q)] for q in ("++", "--", "+-", "-+"))
        for stat in ALL_STATISTICS
    }
    expected = state.packet1.k_norm() * state.packet2.k_norm()
    for stat, total in totals.items():
        if expected - total > LEAKAGE_TOL:
            raise DomainLeakageError(
                f"quadrant sum {total:.9f} short of norm {expected:.9f} "
                f"({stat.value}) at tau={tau_final}"
            )
    return SameSideResult(
        p_plus=quadrants[("boson", "++")] + quadrants[("boson", "--")],
        p_minus=quadrants[("fermion", "++")] + quadrants[("fermion", "--")],
        p_d=quadrants[("distinguishable", "++")] + quadrants[("distinguishable", "--")],
        source="numeric",
        tau=tau_final,
        quadrants=quadrants,
    )
