import math

import numpy as np
import pytest
from scipy import integrate

from homwell import (
    PacketConfig,
    ScatteringIncompleteError,
    SpinConfig,
    Statistics,
    TwoParticleState,
    WavePacket,
    WellConfig,
    coincidence_probability,
    completion_time,
    integrate_2d,
    integrate_2d_quadrant,
    joint_density,
    same_side_closed_form,
    same_side_numeric,
    separation_distribution,
    separation_distributions,
)
from homwell.quadrature import Grid1D, Grid2D, integrate_1d
from homwell.twoparticle import NUMERIC_COMPLETION_MASS_TOL

WELL = WellConfig(10.0)
P1 = PacketConfig(-5.0, 10.0)
P2 = PacketConfig(5.0, -10.0)
SPIN_ALIGNED = SpinConfig(1.0, 0.0)


def make_state(stat, spin=SPIN_ALIGNED, well=WELL, p1=P1, p2=P2):
    return TwoParticleState(
        WavePacket(well, p1), WavePacket(well, p2), spin, stat
    )


# -- exchange symmetry -------------------------------------------------------


def test_exchange_symmetry_pointwise():
    rng = np.random.default_rng(5)
    x1 = rng.uniform(-8.0, 8.0, size=24)
    x2 = rng.uniform(-8.0, 8.0, size=24)
    boson = make_state(Statistics.BOSON)
    fermion = make_state(Statistics.FERMION)
    for tau in (0.0, 0.25):
        bp = boson.joint_amplitude(x1, x2, tau)
        bq = boson.joint_amplitude(x2, x1, tau)
        assert np.max(np.abs(bp - bq)) <= 1e-12
        fp = fermion.joint_amplitude(x1, x2, tau)
        fq = fermion.joint_amplitude(x2, x1, tau)
        assert np.max(np.abs(fp + fq)) <= 1e-12


def test_fermion_vanishes_on_diagonal():
    x = np.linspace(-6.0, 6.0, 101)
    fermion = make_state(Statistics.FERMION)
    for tau in (0.0, 0.25, 0.5):
        assert np.max(np.abs(fermion.joint_amplitude(x, x, tau))) <= 1e-12


def test_joint_amplitude_requires_pure_spin():
    state = make_state(Statistics.FERMION, spin=SpinConfig.from_overlap(0.6))
    with pytest.raises(ValueError):
        state.joint_amplitude(np.zeros(1), np.zeros(1), 0.0)


def test_packet_order_validation():
    with pytest.raises(ValueError):
        TwoParticleState(
            WavePacket(WELL, P2), WavePacket(WELL, P1), SPIN_ALIGNED, Statistics.BOSON
        )


# -- joint densities ---------------------------------------------------------


def test_initial_blobs():
    grid = Grid2D.square(Grid1D(-12.0, 12.0, 241))
    x = grid.x1.nodes
    dens_d = joint_density(make_state(Statistics.DISTINGUISHABLE), grid, 0.0).values
    i, j = np.unravel_index(np.argmax(dens_d), dens_d.shape)
    assert (x[i], x[j]) == pytest.approx((-5.0, 5.0), abs=0.2)
    # distinguishable: single blob, nothing at the exchanged position
    assert dens_d[np.argmin(np.abs(x - 5.0)), np.argmin(np.abs(x + 5.0))] <= 1e-12

    dens_b = joint_density(make_state(Statistics.BOSON), grid, 0.0).values
    at_direct = dens_b[np.argmin(np.abs(x + 5.0)), np.argmin(np.abs(x - 5.0))]
    at_swapped = dens_b[np.argmin(np.abs(x - 5.0)), np.argmin(np.abs(x + 5.0))]
    assert at_direct == pytest.approx(at_swapped, rel=1e-10)
    assert at_direct == pytest.approx(np.max(dens_b), rel=1e-6)


def test_fermion_density_diagonal_zero_exact():
    grid = Grid2D.square(Grid1D(-10.0, 10.0, 201))
    dens = joint_density(make_state(Statistics.FERMION), grid, 0.25).values
    assert np.max(np.abs(np.diagonal(dens))) == 0.0


def test_two_particle_norms_at_all_times():
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 2049))
    for stat in Statistics:
        state = make_state(stat)
        for tau in (0.0, 0.25, 0.5):
            total = integrate_2d(joint_density(state, grid, tau))
            assert total == pytest.approx(1.0, abs=2e-3)


# -- separation distributions ------------------------------------------------


def test_pre_arrival_curves_identical():
    rgrid = Grid1D(0.0, 30.0, 1025)
    curves = separation_distributions(
        WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, 0.05
    )
    b = curves[Statistics.BOSON].values
    f = curves[Statistics.FERMION].values
    d = curves[Statistics.DISTINGUISHABLE].values
    assert np.max(np.abs(b - d)) <= 1e-9
    assert np.max(np.abs(f - d)) <= 1e-9


def test_fermion_contact_value():
    rgrid = Grid1D(0.0, 30.0, 1025)
    for tau in (0.1, 0.25, 0.5, 0.9):
        curves = separation_distributions(
            WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, tau
        )
        assert curves[Statistics.FERMION].values[0] == 0.0
    mixed = separation_distributions(
        WavePacket(WELL, P1),
        WavePacket(WELL, P2),
        SpinConfig.from_overlap(0.6),
        rgrid,
        0.25,
    )
    assert mixed[Statistics.FERMION].values[0] > 0.0


def test_boson_contact_maximal_during_overlap():
    rgrid = Grid1D(0.0, 20.0, 2049)
    curves = separation_distributions(
        WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, 0.25
    )
    b = curves[Statistics.BOSON].values
    assert np.argmax(b) == 0


def test_hom_peak_structure_at_return():
    # packets back at +-5: bosons pile up at r = 0, fermions at r = 2|S1|,
    # distinguishable particles show both peaks
    rgrid = Grid1D(0.0, 30.0, 2049)
    r = rgrid.nodes
    curves = separation_distributions(
        WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, 0.5
    )
    assert r[np.argmax(curves[Statistics.BOSON].values)] <= 1.0
    assert r[np.argmax(curves[Statistics.FERMION].values)] == pytest.approx(10.0, abs=1.0)
    d = curves[Statistics.DISTINGUISHABLE].values
    split = np.argmin(np.abs(r - 5.0))
    near = np.max(d[:split])
    far = np.max(d[split:])
    assert near > 0.25 * np.max(d) and far > 0.25 * np.max(d)


def test_distinguishable_peak_areas():
    # post-scattering the same-side and opposite-side peaks each hold half
    # of the probability
    rgrid = Grid1D(0.0, 60.0, 4097)
    tau = 0.9
    curves = separation_distributions(
        WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, tau
    )
    d = curves[Statistics.DISTINGUISHABLE]
    r = rgrid.nodes
    # outgoing lobes sit at distance 13 from the well: valley at r = 13
    split = np.argmin(np.abs(r - 13.0))
    w = rgrid.weights
    near = float(np.sum((d.values * w)[:split]))
    far = float(np.sum((d.values * w)[split:]))
    assert near == pytest.approx(0.5, abs=1e-2)
    assert far == pytest.approx(0.5, abs=1e-2)


def test_separation_totals_conserved():
    rgrid = Grid1D(0.0, 60.0, 4097)
    for tau in (0.0, 0.25, 0.9):
        curves = separation_distributions(
            WavePacket(WELL, P1), WavePacket(WELL, P2), SPIN_ALIGNED, rgrid, tau
        )
        for stat in Statistics:
            assert curves[stat].total() == pytest.approx(1.0, abs=2e-3)


def test_separation_single_statistics_view():
    rgrid = Grid1D(0.0, 30.0, 513)
    state = make_state(Statistics.FERMION)
    dist = separation_distribution(state, rgrid, 0.25)
    assert dist.statistics is Statistics.FERMION
    assert dist.values.shape == (513,)


# -- same-side probabilities -------------------------------------------------


def test_closed_form_optimum():
    result = same_side_closed_form(P1, P2, WELL, SPIN_ALIGNED)
    assert result.p_plus == pytest.approx(1.0, abs=1e-15)
    assert result.p_minus == pytest.approx(0.0, abs=1e-15)
    assert result.p_d == pytest.approx(0.5, abs=1e-15)
    comp = coincidence_probability(result)
    assert comp[Statistics.BOSON] == pytest.approx(0.0, abs=1e-15)
    assert comp[Statistics.FERMION] == pytest.approx(1.0, abs=1e-15)
    assert comp[Statistics.DISTINGUISHABLE] == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("k0", [5.0, 10.0, 20.0, 99.498743710662])
def test_closed_form_matched_energy_law(k0):
    t = k0 * k0 / (k0 * k0 + 100.0)
    result = same_side_closed_form(
        PacketConfig(-5.0, k0), PacketConfig(5.0, -k0), WELL, SPIN_ALIGNED
    )
    assert result.p_plus == pytest.approx(4.0 * t * (1.0 - t), rel=1e-12)
    assert result.p_minus == pytest.approx(0.0, abs=1e-15)
    assert result.p_d == pytest.approx(result.p_plus / 2.0, rel=1e-12)


def test_closed_form_splitting_ratio_series():
    # T = 0.2, 0.8, 0.99 give P+ = 0.64, 0.64, 0.0396
    for k0, expected in ((5.0, 0.64), (20.0, 0.64), (99.498743710662, 0.0396)):
        r = same_side_closed_form(
            PacketConfig(-5.0, k0), PacketConfig(5.0, -k0), WELL, SPIN_ALIGNED
        )
        assert r.p_plus == pytest.approx(expected, abs=1e-10)


def test_closed_form_orthogonal_spins():
    result = same_side_closed_form(P1, P2, WELL, SpinConfig(0.0, 1.0))
    assert result.p_plus == result.p_minus == result.p_d


def test_closed_form_reciprocal_splitting():
    low = same_side_closed_form(
        PacketConfig(-5.0, 5.0), PacketConfig(5.0, -5.0), WELL, SPIN_ALIGNED
    )
    high = same_side_closed_form(
        PacketConfig(-5.0, 20.0), PacketConfig(5.0, -20.0), WELL, SPIN_ALIGNED
    )
    assert low.p_plus == pytest.approx(high.p_plus, abs=1e-12)
    assert low.p_d == pytest.approx(high.p_d, abs=1e-12)


def test_closed_form_ordering():
    for k0 in (5.0, 10.0, 15.0):
        r = same_side_closed_form(
            PacketConfig(-5.0, k0), PacketConfig(6.0, -k0 - 1.0), WELL, SPIN_ALIGNED
        )
        assert r.p_plus >= r.p_d >= r.p_minus


def test_closed_form_spin_quadratic():
    base = same_side_closed_form(P1, P2, WELL, SPIN_ALIGNED)
    for c in (0.0, 0.3, 0.6, 0.9):
        r = same_side_closed_form(P1, P2, WELL, SpinConfig.from_overlap(c))
        expected = c * c * (base.p_plus - base.p_d)
        assert r.p_plus - r.p_d == pytest.approx(expected, abs=1e-10)
        assert r.p_minus - r.p_d == pytest.approx(-expected, abs=1e-10)


def test_closed_form_exponential_decay_slopes():
    # ln(P+ - P_D) drops linearly with slope -1 in (s1+s2)^2 and in
    # (k01+k02)^2/4.  The delay slope is exact; the energy slope picks up
    # a small correction because the splitting ratios move with k0
    # (symmetric offsets cancel it to first order, leaving ~ -1.01).
    deltas = np.array([0.0, 1.0, 2.0])
    logs = []
    for d in deltas:
        r = same_side_closed_form(P1, PacketConfig(5.0 + d, -10.0), WELL, SPIN_ALIGNED)
        logs.append(math.log(r.p_plus - r.p_d))
    slope = np.polyfit(deltas**2, logs, 1)[0]
    assert slope == pytest.approx(-1.0, abs=1e-9)
    logs = []
    for e in deltas:
        r = same_side_closed_form(
            PacketConfig(-5.0, 10.0 + e / 2.0),
            PacketConfig(5.0, -10.0 + e / 2.0),
            WELL,
            SPIN_ALIGNED,
        )
        logs.append(math.log(r.p_plus - r.p_d))
    slope = np.polyfit(deltas**2 / 4.0, logs, 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.05)


# -- numeric quadrant integration --------------------------------------------


def same_side_kspace_oracle(p1, p2, well, c2):
    """Independent momentum-space evaluation of the same-side probabilities.

    Post-scattering the quadrant integrals factorize into spectral
    averages: P_D = T1 R2 + R1 T2 over |phi|^2, and the exchange term is
    the squared overlap of the co-moving outgoing components.
    """
    lam = well.lam

    def avg(weight, k0):
        val, _ = integrate.quad(
            lambda z: math.exp(-z * z / 2.0) / math.sqrt(2 * math.pi) * weight(abs(k0) + z),
            max(-12.0, -abs(k0) + 1e-9),
            12.0,
            limit=400,
        )
        return val

    t1 = avg(lambda q: q * q / (q * q + lam * lam), p1.k0)
    t2 = avg(lambda q: q * q / (q * q + lam * lam), p2.k0)

    def overlap_integrand(q):
        g = lam * q / (q * q + lam * lam)
        phi1 = math.exp(-((q - p1.k0) ** 2) / 4.0)
        phi2 = math.exp(-((q + p2.k0) ** 2) / 4.0)
        phase = (p1.k0 - q) * p1.s0 - (p2.k0 + q) * p2.s0
        amp = g * phi1 * phi2 / math.sqrt(2 * math.pi)
        return amp * complex(math.cos(phase), -math.sin(phase))

    re, _ = integrate.quad(lambda q: overlap_integrand(q).real, 1e-9, 40.0, limit=600)
    im, _ = integrate.quad(lambda q: overlap_integrand(q).imag, 1e-9, 40.0, limit=600)
    u2 = re * re + im * im
    p_d = t1 * (1 - t2) + (1 - t1) * t2
    return p_d + 2 * c2 * u2, p_d - 2 * c2 * u2, p_d


def test_numeric_matches_kspace_oracle_at_optimum():
    state = make_state(Statistics.BOSON)
    tau = completion_time(state.packet1, NUMERIC_COMPLETION_MASS_TOL) + 0.05
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 1025))
    result = same_side_numeric(state, grid, tau)
    plus, minus, p_d = same_side_kspace_oracle(P1, P2, WELL, 1.0)
    assert result.p_plus == pytest.approx(plus, abs=2e-3)
    assert result.p_minus == pytest.approx(minus, abs=2e-3)
    assert result.p_d == pytest.approx(p_d, abs=2e-3)
    # sanity against the frozen oracle values
    assert result.p_plus == pytest.approx(0.994928, abs=2e-3)
    assert result.p_minus == pytest.approx(0.005048, abs=2e-3)
    assert result.p_d == pytest.approx(0.5, abs=2e-3)


def test_numeric_requires_completed_scattering():
    state = make_state(Statistics.BOSON)
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 257))
    with pytest.raises(ScatteringIncompleteError):
        same_side_numeric(state, grid, 0.3)


def test_numeric_quadrants_match_field_integration():
    # the chunked accumulation must reproduce quadrant integrals of the
    # sampled joint density
    state = make_state(Statistics.BOSON)
    tau = 0.75
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 513))
    result = same_side_numeric(state, grid, tau)
    field = joint_density(state, grid, tau)
    for quad in ("++", "--", "+-", "-+"):
        direct = integrate_2d_quadrant(field, quad)
        assert result.quadrants[("boson", quad)] == pytest.approx(direct, abs=1e-12)


def test_numeric_spin_interpolation():
    taus = {}
    results = {}
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 513))
    for c in (1.0, 0.6, 0.0):
        state = make_state(Statistics.BOSON, spin=SpinConfig.from_overlap(c))
        results[c] = same_side_numeric(state, grid, 0.75)
    base = results[1.0]
    for c in (0.6, 0.0):
        expected = c * c * (base.p_plus - base.p_d)
        assert results[c].p_plus - results[c].p_d == pytest.approx(expected, abs=1e-10)


def test_coincidence_complements():
    state = make_state(Statistics.BOSON)
    grid = Grid2D.square(Grid1D(-25.0, 25.0, 513))
    result = same_side_numeric(state, grid, 0.75)
    comp = coincidence_probability(result)
    assert comp[Statistics.BOSON] == pytest.approx(1.0 - result.p_plus, abs=1e-15)
    assert comp[Statistics.FERMION] == pytest.approx(1.0 - result.p_minus, abs=1e-15)


def test_initial_single_particle_overlap_is_negligible():
    # Eq.(14)'s 1/sqrt(2) prefactor presumes orthogonal packets; verify
    # the overlap gate at tau = 0
    grid = Grid1D(-25.0, 25.0, 2049)
    f1 = WavePacket(WELL, P1).amplitude(grid.nodes, 0.0)
    f2 = WavePacket(WELL, P2).amplitude(grid.nodes, 0.0)
    overlap = integrate_1d(f1.conj() * f2, grid)
    assert abs(overlap) <= 1e-6
