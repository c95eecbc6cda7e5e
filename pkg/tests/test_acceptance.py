"""Acceptance criteria, one test per criterion, each printing a
PASS/FAIL line at its stated tolerance.

Run with:  pytest tests/test_acceptance.py -v -s

Heavy numeric evaluations (the closed-form/numeric sweep) are shared
across criteria through a cached table keyed by splitting ratio, delay
offset and energy offset; spin overlap enters both the closed form and
the quadrant integrals purely as a |c|^2 weight on the exchange term,
so per-point results at c = 1 determine every other c exactly (verified
directly in test_twoparticle.py and re-checked at one point here).
"""

import math
from functools import lru_cache

import numpy as np
import pytest

from homwell import (
    PacketConfig,
    SpinConfig,
    Statistics,
    TwoParticleState,
    WavePacket,
    WellConfig,
    coincidence_probability,
    completion_time,
    evolve,
    free_packet,
    plane_wave_T,
    same_side_closed_form,
    same_side_numeric,
    separation_distributions,
    wavepacket_T,
)
from homwell.quadrature import Grid1D, Grid2D
from homwell.runners import _auto_xgrid, run_scenario
from homwell.scenario import catalog_names, load_catalog_scenario

THREADS = 4
WELL = WellConfig(10.0)
SPIN_ALIGNED = SpinConfig(1.0, 0.0)
K_FOR_T = {0.2: 5.0, 0.5: 10.0, 0.8: 20.0}

_passed = []


def report(criterion: str, ok: bool, detail: str) -> None:
    state = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {state} [{criterion}] {detail}")
    _passed.append((criterion, ok))
    assert ok, f"{criterion}: {detail}"


def sweep_packets(t: float, delta: float, eps: float):
    k = K_FOR_T[t]
    return PacketConfig(-5.0, k + eps / 2.0), PacketConfig(5.0 + delta, -k + eps / 2.0)


@lru_cache(maxsize=None)
def numeric_point(t: float, delta: float, eps: float):
    """Quadrant-integrated same-side result at spin overlap c = 1."""
    cfg1, cfg2 = sweep_packets(t, delta, eps)
    p1 = WavePacket(WELL, cfg1)
    p2 = WavePacket(WELL, cfg2)
    tau = max(
        completion_time(p, mass_tol=1e-3, threads=THREADS) for p in (p1, p2)
    ) + 0.3
    grid = Grid2D.square(_auto_xgrid((p1, p2), tau, minimum_halfwidth=20.0))
    state = TwoParticleState(p1, p2, SPIN_ALIGNED, Statistics.BOSON)
    return same_side_numeric(state, grid, tau, threads=THREADS)


def numeric_with_overlap(result, c: float):
    """Same-side triple at spin overlap c from the c = 1 quadrants."""
    cross = result.p_plus - result.p_d
    return (
        result.p_d + c * c * cross,
        result.p_d - c * c * cross,
        result.p_d,
    )


def test_c01_plane_wave_5050_point():
    t_plane = plane_wave_T(10.0, 10.0)
    t_packet = wavepacket_T(WavePacket(WELL, PacketConfig(-5.0, 10.0)))
    ok = t_plane == 0.5 and 0.5 <= t_packet <= 0.51 and t_packet >= t_plane
    report(
        "C1 plane-wave 50:50 point",
        ok,
        f"plane_wave_T=0.5 exact: {t_plane == 0.5}; "
        f"wavepacket_T={t_packet:.6f} required in [0.5, 0.51] and >= plane value "
        "(finite momentum spread makes the spectral average of the concave "
        "T_p(K) sit ~2.5e-3 BELOW the plane-wave value at this point)",
    )


def test_c02_free_packet_oracle():
    packet = WavePacket(WellConfig(0.0), PacketConfig(-5.0, 10.0))
    grid = Grid1D(-25.0, 25.0, 2049)
    worst = 0.0
    for tau in (0.0, 0.25, 0.5):
        field = evolve(packet, grid, tau, threads=THREADS)
        oracle = free_packet(grid.nodes, tau, -5.0, 10.0)
        worst = max(worst, float(np.max(np.abs(field.values - oracle))))
    report(
        "C2 free-packet oracle",
        worst <= 1e-8,
        f"max |Phi_numeric - Phi_analytic| = {worst:.3e} <= 1e-8 "
        "over X in [-25,25], tau in {0, 0.25, 0.5}",
    )


def test_c03_norm_conservation_catalog(tmp_path):
    # Every runner enforces the 1 +- 2e-3 norm budget (single-particle
    # norms, two-particle quadrant sums, separation totals) at every
    # sampled time and raises NormDriftError/DomainLeakageError on any
    # violation, so a clean catalog pass is the check.
    failures = []
    for name in catalog_names():
        scenario = load_catalog_scenario(name)
        try:
            run_scenario(scenario, tmp_path / name, threads=THREADS)
        except Exception as exc:  # noqa: BLE001 - report any guard trip
            failures.append(f"{name}: {exc}")
    report(
        "C3 norm conservation",
        not failures,
        "full catalog ran with all norm guards green"
        if not failures
        else "; ".join(failures),
    )


def hom_optimum_numeric():
    return numeric_point(0.5, 0.0, 0.0)


def test_c04_hom_optimum():
    res = hom_optimum_numeric()
    boson_ok = abs(res.p_plus - 1.0) <= 1e-2
    fermion_ok = res.p_minus <= 1e-3
    disting_ok = abs(res.p_d - 0.5) <= 1e-2
    comp = coincidence_probability(res)
    comp_ok = (
        comp[Statistics.BOSON] == 1.0 - res.p_plus
        and comp[Statistics.FERMION] == 1.0 - res.p_minus
        and comp[Statistics.DISTINGUISHABLE] == 1.0 - res.p_d
    )
    ok = boson_ok and fermion_ok and disting_ok and comp_ok
    report(
        "C4 HOM optimum",
        ok,
        f"boson P_same={res.p_plus:.5f} (1.00+-0.01: {boson_ok}); "
        f"fermion P_same={res.p_minus:.5f} (<=0.001: {fermion_ok}, the "
        "momentum-dependent splitting ratio leaves a ~5e-3 coincidence "
        "floor for sigma_K/K0 = 0.1); "
        f"distinguishable P_same={res.p_d:.5f} (0.50+-0.01: {disting_ok})",
    )


def test_c05_splitting_ratio_law():
    details = []
    ok = True
    plus = {}
    for t in (0.2, 0.5, 0.8):
        res = numeric_point(t, 0.0, 0.0)
        plus[t] = res.p_plus
        boson_ok = abs(res.p_plus - 4.0 * t * (1.0 - t)) <= 1e-2
        fermion_ok = res.p_minus <= 1e-2
        disting_ok = abs(res.p_d - 2.0 * t * (1.0 - t)) <= 1e-2
        ok = ok and boson_ok and fermion_ok and disting_ok
        details.append(
            f"T={t}: P+={res.p_plus:.4f} vs 4T(1-T)={4*t*(1-t):.4f} ({boson_ok}), "
            f"P-={res.p_minus:.4f} (<=1e-2: {fermion_ok}), "
            f"P_D={res.p_d:.4f} vs 2T(1-T)={2*t*(1-t):.4f} ({disting_ok})"
        )
    recip = abs(plus[0.2] - plus[0.8])
    recip_ok = recip <= 1e-2
    ok = ok and recip_ok
    details.append(f"|P+(0.2)-P+(0.8)|={recip:.4f} (<=1e-2: {recip_ok})")
    report("C5 splitting-ratio law", ok, "; ".join(details))


def test_c06_closed_vs_numeric_sweep():
    worst = 0.0
    worst_at = ""
    for t in (0.2, 0.5, 0.8):
        for delta in (0.0, 1.0, 2.0):
            for eps in (0.0, 1.0, 2.0):
                res = numeric_point(t, delta, eps)
                cfg1, cfg2 = sweep_packets(t, delta, eps)
                for c in (0.0, 0.6, 1.0):
                    closed = same_side_closed_form(
                        cfg1, cfg2, WELL, SpinConfig.from_overlap(c)
                    )
                    n_plus, n_minus, n_d = numeric_with_overlap(res, c)
                    for label, diff in (
                        ("P+", abs(n_plus - closed.p_plus)),
                        ("P-", abs(n_minus - closed.p_minus)),
                        ("P_D", abs(n_d - closed.p_d)),
                    ):
                        if diff > worst:
                            worst = diff
                            worst_at = f"{label} at T={t}, delta={delta}, eps={eps}, c={c}"
    report(
        "C6 closed-form/numeric equivalence sweep",
        worst <= 1e-2,
        f"max |numeric - closed| = {worst:.4f} at {worst_at} (<= 1e-2); "
        "narrow-band closed form carries O((T'(K0) sigma_K)^2) corrections, "
        "largest at the T=0.2 matched point",
    )


def test_c07_pauli_property():
    rgrid = Grid1D(0.0, 30.0, 1025)
    p1 = WavePacket(WELL, PacketConfig(-5.0, 10.0))
    p2 = WavePacket(WELL, PacketConfig(5.0, -10.0))
    worst = 0.0
    for tau in (0.1, 0.25, 0.5, 0.9):
        curves = separation_distributions(p1, p2, SPIN_ALIGNED, rgrid, tau, threads=THREADS)
        worst = max(worst, abs(curves[Statistics.FERMION].values[0]))
    mixed = separation_distributions(
        p1, p2, SpinConfig.from_overlap(0.6), rgrid, 0.25, threads=THREADS
    )
    contact = float(mixed[Statistics.FERMION].values[0])
    ok = worst <= 1e-10 and contact > 0.0
    report(
        "C7 Pauli property",
        ok,
        f"fermion P_sep(0) <= {worst:.1e} at all sampled times for c=1; "
        f"c=0.6 contact value {contact:.3e} > 0",
    )


def _slope(xs, logs):
    return float(np.polyfit(np.asarray(xs), np.asarray(logs), 1)[0])


def test_c08_exponential_sensitivity():
    deltas = (0.0, 1.0, 2.0)
    # closed form
    closed_delay = [
        math.log(
            same_side_closed_form(*sweep_packets(0.5, d, 0.0), WELL, SPIN_ALIGNED).p_plus
            - same_side_closed_form(*sweep_packets(0.5, d, 0.0), WELL, SPIN_ALIGNED).p_d
        )
        for d in deltas
    ]
    closed_energy = [
        math.log(
            same_side_closed_form(*sweep_packets(0.5, 0.0, e), WELL, SPIN_ALIGNED).p_plus
            - same_side_closed_form(*sweep_packets(0.5, 0.0, e), WELL, SPIN_ALIGNED).p_d
        )
        for e in deltas
    ]
    numeric_delay = [
        math.log(numeric_point(0.5, d, 0.0).p_plus - numeric_point(0.5, d, 0.0).p_d)
        for d in deltas
    ]
    numeric_energy = [
        math.log(numeric_point(0.5, 0.0, e).p_plus - numeric_point(0.5, 0.0, e).p_d)
        for e in deltas
    ]
    sq = [d * d for d in deltas]
    quarter = [d * d / 4.0 for d in deltas]
    slopes = {
        "closed delay": _slope(sq, closed_delay),
        "closed energy": _slope(quarter, closed_energy),
        "numeric delay": _slope(sq, numeric_delay),
        "numeric energy": _slope(quarter, numeric_energy),
    }
    ok = all(abs(s + 1.0) <= 0.05 for s in slopes.values())
    report(
        "C8 exponential sensitivity",
        ok,
        "; ".join(f"{k} slope={v:.4f}" for k, v in slopes.items())
        + " (all within -1 +- 0.05)",
    )


def test_c09_spin_quadratic_law():
    base = same_side_closed_form(*sweep_packets(0.5, 0.0, 0.0), WELL, SPIN_ALIGNED)
    worst_closed = 0.0
    for c in (0.0, 0.6, 1.0):
        r = same_side_closed_form(
            *sweep_packets(0.5, 0.0, 0.0), WELL, SpinConfig.from_overlap(c)
        )
        worst_closed = max(
            worst_closed, abs((r.p_plus - r.p_d) - c * c * (base.p_plus - base.p_d))
        )
    # direct numeric run at c = 0.6 against the quadratic prediction from c = 1
    res1 = numeric_point(0.5, 0.0, 0.0)
    cfg1, cfg2 = sweep_packets(0.5, 0.0, 0.0)
    p1, p2 = WavePacket(WELL, cfg1), WavePacket(WELL, cfg2)
    state = TwoParticleState(p1, p2, SpinConfig.from_overlap(0.6), Statistics.BOSON)
    direct = same_side_numeric(state, Grid2D.square(Grid1D(-25.0, 25.0, 1025)),
                               res1.tau, threads=THREADS)
    predicted = 0.36 * (res1.p_plus - res1.p_d)
    worst_numeric = abs((direct.p_plus - direct.p_d) - predicted)
    ok = worst_closed <= 1e-10 and worst_numeric <= 1e-2
    report(
        "C9 spin quadratic law",
        ok,
        f"closed-form deviation {worst_closed:.2e} <= 1e-10; "
        f"numeric deviation {worst_numeric:.2e} <= 1e-2",
    )


def test_c10_determinism(tmp_path):
    scenario = load_catalog_scenario("fig3")
    out = [tmp_path / f"run{i}" for i in range(3)]
    run_scenario(scenario, out[0], threads=1)
    run_scenario(scenario, out[1], threads=1)
    run_scenario(scenario, out[2], threads=THREADS)
    mismatched = []
    for ref in sorted(out[0].iterdir()):
        data = ref.read_bytes()
        if (out[1] / ref.name).read_bytes() != data:
            mismatched.append(f"{ref.name} (rerun)")
        if (out[2] / ref.name).read_bytes() != data:
            mismatched.append(f"{ref.name} (threads)")
    report(
        "C10 determinism",
        not mismatched,
        "fig3 outputs byte-identical across repeated runs and thread counts 1 vs 4"
        if not mismatched
        else "mismatches: " + ", ".join(mismatched),
    )
