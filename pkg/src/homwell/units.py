"""Dimensionless unit system for the delta-well scattering problem.

All core math runs in the dimensionless variables

    X = sqrt(delta) * x          position
    K = k / sqrt(delta)          wave vector
    tau = delta * hbar * t / (2 m)   time
    Lambda = m * alpha / (hbar^2 sqrt(delta))   well depth

where ``delta`` is the Gaussian width parameter of the incident packet
(units 1/length^2).  With these choices a packet center moves
ballistically as X(tau) = S + 2 K0 tau and the plane-wave phase is
exp(i K X - i K^2 tau).  Physical-unit input/output is a pure
presentation-layer conversion handled here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class UnitSystem:
    """Conversion bundle between physical and dimensionless quantities.

    ``delta`` must be positive; ``mass`` and ``hbar`` default to 1 so the
    dimensionless and physical pictures coincide for delta = 1.
    """

    delta: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.delta > 0.0):
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not (self.mass > 0.0):
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if not (self.hbar > 0.0):
            raise ValueError(f"hbar must be > 0, got {self.hbar}")

    @property
    def length_unit(self) -> float:
        """Physical length corresponding to X = 1 (i.e. 1/sqrt(delta))."""
        return 1.0 / math.sqrt(self.delta)

    def position_to_dimensionless(self, x: float) -> float:
        return math.sqrt(self.delta) * x

    def position_to_physical(self, X: float) -> float:
        return X / math.sqrt(self.delta)

    def wavevector_to_dimensionless(self, k: float) -> float:
        return k / math.sqrt(self.delta)

    def wavevector_to_physical(self, K: float) -> float:
        return K * math.sqrt(self.delta)

    def time_to_dimensionless(self, t: float) -> float:
        return self.delta * self.hbar * t / (2.0 * self.mass)

    def time_to_physical(self, tau: float) -> float:
        return 2.0 * self.mass * tau / (self.delta * self.hbar)

    def well_strength_to_dimensionless(self, alpha: float) -> float:
        """Depth parameter alpha of V(x) = -alpha * delta(x) -> Lambda."""
        return self.mass * alpha / (self.hbar**2 * math.sqrt(self.delta))

    def well_strength_to_physical(self, lam: float) -> float:
        return lam * self.hbar**2 * math.sqrt(self.delta) / self.mass
