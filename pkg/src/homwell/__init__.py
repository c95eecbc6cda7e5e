"""Wave-packet scattering and two-particle interference at a 1D delta well.

The delta potential well acts as a matter-wave beam splitter; this
package evolves Gaussian wave packets through it, symmetrizes pairs of
packets for bosons/fermions/distinguishable particles, and computes the
interference observables (joint densities, separation distributions,
same-side probabilities) both numerically and in closed form.
"""

from .config import (
    PacketConfig,
    SpinConfig,
    Statistics,
    WellConfig,
    ensure_valid,
    validate_scenario,
)
from .errors import (
    DomainLeakageError,
    GridError,
    HomwellError,
    NormDriftError,
    ScatteringIncompleteError,
    ScenarioValidationError,
)
from .quadrature import (
    Field1D,
    Field2D,
    Grid1D,
    Grid2D,
    integrate_1d,
    integrate_2d,
    integrate_2d_quadrant,
    quadrant_sums,
)
from .scattering import (
    DecomposedPacket,
    WavePacket,
    completion_time,
    decompose,
    evolve,
    exact_coefficient,
    free_packet,
    gaussian_coefficient,
    is_scattering_complete,
    plane_wave_R,
    plane_wave_T,
    prob_right,
    prob_side,
    wavepacket_T,
)
from .twoparticle import (
    SameSideResult,
    SeparationDistribution,
    TwoParticleState,
    coincidence_probability,
    joint_density,
    same_side_closed_form,
    same_side_numeric,
    separation_distribution,
    separation_distributions,
)
from .units import UnitSystem

__all__ = [
    "DecomposedPacket",
    "DomainLeakageError",
    "Field1D",
    "Field2D",
    "Grid1D",
    "Grid2D",
    "GridError",
    "HomwellError",
    "NormDriftError",
    "PacketConfig",
    "SameSideResult",
    "ScatteringIncompleteError",
    "ScenarioValidationError",
    "SeparationDistribution",
    "SpinConfig",
    "Statistics",
    "TwoParticleState",
    "UnitSystem",
    "WavePacket",
    "WellConfig",
    "coincidence_probability",
    "completion_time",
    "decompose",
    "ensure_valid",
    "evolve",
    "exact_coefficient",
    "free_packet",
    "gaussian_coefficient",
    "integrate_1d",
    "integrate_2d",
    "integrate_2d_quadrant",
    "is_scattering_complete",
    "joint_density",
    "plane_wave_R",
    "plane_wave_T",
    "prob_right",
    "prob_side",
    "quadrant_sums",
    "same_side_closed_form",
    "same_side_numeric",
    "separation_distribution",
    "separation_distributions",
    "validate_scenario",
    "wavepacket_T",
]

__version__ = "0.1.0"
