"""Run configuration types and scenario validation.

Everything downstream consumes only dimensionless quantities: the well
depth Lambda, packet centers S (sign encodes side) and central wave
vectors K0 (sign encodes direction), spin overlap amplitudes (c, d) and
the particle-statistics tag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import ScenarioValidationError

# Concrete stand-in for the packet validity conditions |s| >> 1/sqrt(delta)
# and |k0| >> sqrt(delta): three standard deviations push tail effects to
# the e^-18 scale, small against every tolerance used here.
APPROX_MIN_CENTER = 3.0
APPROX_MIN_WAVEVECTOR = 3.0

SPIN_NORM_TOL = 1e-12

Mode = Literal["exact", "approximate"]


class Statistics(enum.Enum):
    """Exchange-symmetry tag for the two-particle composition."""

    BOSON = "boson"
    FERMION = "fermion"
    DISTINGUISHABLE = "distinguishable"

    @property
    def exchange_sign(self) -> int:
        """+1 for bosons, -1 for fermions, 0 for no symmetrization."""
        if self is Statistics.BOSON:
            return 1
        if self is Statistics.FERMION:
            return -1
        return 0

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        key = text.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown statistics tag {text!r}")


@dataclass(frozen=True)
class WellConfig:
    """Delta well V(X) = -Lambda delta(X) in dimensionless form.

    lam = 0 means free propagation (no well).
    """

    lam: float = 10.0

    def __post_init__(self):
        if not (self.lam >= 0.0):
            raise ValueError(f"well depth must be >= 0, got {self.lam}")

    def beta(self, k):
        """Dimensionless scattering strength beta(K) = Lambda / K."""
        return self.lam / k


@dataclass(frozen=True)
class PacketConfig:
    """One incident Gaussian packet: center s0 and wave vector k0.

    An incoming packet needs s0 * k0 < 0 (left packet: S < 0, K0 > 0;
    right packet: S > 0, K0 < 0).
    """

    s0: float
    k0: float

    @property
    def incidence_side(self) -> int:
        """-1 for a packet starting on the left, +1 on the right."""
        return -1 if self.s0 < 0 else 1

    @property
    def direction(self) -> int:
        return 1 if self.k0 > 0 else -1

    def mirrored(self) -> "PacketConfig":
        return PacketConfig(-self.s0, -self.k0)


@dataclass(frozen=True)
class SpinConfig:
    """Spin state of the second particle in the {|u>, |v>} basis.

    Particle 1 carries |u>, particle 2 carries c|u> + d|v>, so |c|^2 is
    the spin overlap weighting the exchange interference term.
    """

    c: complex = 1.0
    d: complex = 0.0

    @property
    def overlap_weight(self) -> float:
        return abs(self.c) ** 2

    @property
    def norm_sq(self) -> float:
        return abs(self.c) ** 2 + abs(self.d) ** 2

    @classmethod
    def from_overlap(cls, c: float) -> "SpinConfig":
        """Spin pair with real overlap c and the remaining weight on |v>."""
        if not -1.0 <= c <= 1.0:
            raise ValueError(f"overlap must lie in [-1, 1], got {c}")
        return cls(c=c, d=(1.0 - c * c) ** 0.5)


def validate_scenario(
    well: WellConfig,
    packets: Iterable[PacketConfig],
    spin: SpinConfig | None = None,
    mode: Mode = "approximate",
) -> list[str]:
    """Check every configuration invariant; return the violation report.

    An empty list means the scenario is valid.  Validation is pure: it
    never mutates its inputs and the same input yields the same report.
    """
    errors: list[str] = []
    if mode not in ("exact", "approximate"):
        errors.append(f"mode: expected 'exact' or 'approximate', got {mode!r}")
    if not (well.lam >= 0.0):
        errors.append(f"well.lambda: must be >= 0, got {well.lam}")
    for i, p in enumerate(packets, start=1):
        tag = f"packet{i}"
        if p.k0 == 0.0:
            errors.append(f"{tag}.k0: must be nonzero")
            continue
        if p.s0 * p.k0 >= 0.0:
            errors.append(
                f"{tag}: moves away from the well (s0={p.s0}, k0={p.k0}; "
                "an incoming packet needs s0*k0 < 0)"
            )
        if mode == "approximate":
            if abs(p.s0) < APPROX_MIN_CENTER:
                errors.append(
                    f"{tag}.s0: |s0|={abs(p.s0)} below the localization gate "
                    f"{APPROX_MIN_CENTER} required in approximate mode"
                )
            if abs(p.k0) < APPROX_MIN_WAVEVECTOR:
                errors.append(
                    f"{tag}.k0: |k0|={abs(p.k0)} below the narrow-band gate "
                    f"{APPROX_MIN_WAVEVECTOR} required in approximate mode"
                )
    if spin is not None and abs(spin.norm_sq - 1.0) > SPIN_NORM_TOL:
        errors.append(
            f"spin: |c|^2 + |d|^2 = {spin.norm_sq!r} must equal 1 "
            f"within {SPIN_NORM_TOL}"
        )
    return errors


def ensure_valid(
    well: WellConfig,
    packets: Iterable[PacketConfig],
    spin: SpinConfig | None = None,
    mode: Mode = "approximate",
) -> None:
    """Raise ScenarioValidationError if validate_scenario reports anything."""
    errors = validate_scenario(well, packets, spin, mode)
    if errors:
        raise ScenarioValidationError(errors)
