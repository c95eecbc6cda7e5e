"""Exception types shared across the package.

Runner exit codes map onto these: validation failures exit with 2,
numerical-guard failures (norm drift, domain leakage, incomplete
scattering) with 3, and I/O problems with 4.
"""

from __future__ import annotations


class HomwellError(Exception):
    """Base class for all package errors."""


class ScenarioValidationError(HomwellError):
    """A scenario violated one or more configuration invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class GridError(HomwellError):
    """A grid is malformed or too coarse for the requested evaluation."""


class DomainLeakageError(HomwellError):
    """Probability mass beyond the sampled domain exceeded the guard."""


class NormDriftError(HomwellError):
    """Sampled norm drifted outside the conservation budget."""


class ScatteringIncompleteError(HomwellError):
    """An operation requiring completed scattering was called too early."""
