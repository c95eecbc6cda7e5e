import math

import numpy as np
import pytest

from homwell import UnitSystem


@pytest.mark.parametrize("delta", [1.0, 0.25, 7.3, 1e-4, 1e4])
def test_round_trip_identity(delta):
    units = UnitSystem(delta=delta, mass=1.7, hbar=0.9)
    rng = np.random.default_rng(42)
    for value in rng.uniform(-50.0, 50.0, size=20):
        pairs = [
            (units.position_to_dimensionless, units.position_to_physical),
            (units.wavevector_to_dimensionless, units.wavevector_to_physical),
            (units.time_to_dimensionless, units.time_to_physical),
            (units.well_strength_to_dimensionless, units.well_strength_to_physical),
        ]
        for fwd, back in pairs:
            out = back(fwd(value))
            assert out == pytest.approx(value, rel=1e-12)


def test_dimensionless_composites():
    units = UnitSystem(delta=4.0)
    # X = sqrt(delta) x, K = k/sqrt(delta)
    assert units.position_to_dimensionless(3.0) == pytest.approx(6.0)
    assert units.wavevector_to_dimensionless(6.0) == pytest.approx(3.0)
    # tau = delta hbar t / (2 m)
    assert units.time_to_dimensionless(1.0) == pytest.approx(2.0)
    # Lambda = m alpha / (hbar^2 sqrt(delta))
    assert units.well_strength_to_dimensionless(5.0) == pytest.approx(2.5)
    assert units.length_unit == pytest.approx(0.5)


def test_delta_must_be_positive():
    with pytest.raises(ValueError):
        UnitSystem(delta=0.0)
    with pytest.raises(ValueError):
        UnitSystem(delta=-1.0)


def test_delta_one_is_identity_map():
    units = UnitSystem()
    for v in (-2.0, 0.3, 11.0):
        assert units.position_to_dimensionless(v) == v
        assert units.wavevector_to_dimensionless(v) == v
        assert units.well_strength_to_dimensionless(v) == v
    assert units.time_to_dimensionless(2.0) == 1.0
