"""Exception hierarchy for the analysis engine."""

from __future__ import annotations


class LVError(Exception):
    """Base class for all engine errors."""


class SignError(LVError):
    """Coefficient sign pattern rules out the requested reduction."""


class DivisionError(LVError):
    """Truncated polynomial division is ill-conditioned (pivot below floor)."""


class DiskError(LVError):
    """Parameter point lies outside the configured smallness disk."""


class NewtonDivergence(LVError):
    """Newton refinement failed to converge within the iteration budget."""


class AmbiguousLabel(LVError):
    """Two distinct roots claim the same seed basin."""


class UnsupportedCase(LVError):
    """Sign pattern or degeneracy class outside the analyzed cases."""


class NotApplicable(LVError):
    """Requested curve kind does not exist for this degeneracy class."""


class DegenerateJacobian(LVError):
    """Zero eigenvalue of the Jacobian is not simple."""


class HypothesisViolation(LVError):
    """A nondegeneracy quantity required by the genericity check vanishes."""


class CollisionMismatch(LVError):
    """The colliding equilibrium pair differs from the expected assignment."""


class SectorTooThin(LVError):
    """Two sector boundary angles are too close to place a representative."""


class OnCurve(LVError):
    """Query point lies on (or too close to) a bifurcation curve."""


class StepFailure(LVError):
    """Integrator reached its minimum step size."""
