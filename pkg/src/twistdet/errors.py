"""Typed errors shared across the library.

Every precondition failure raises a subclass of TwistdetError so the CLI can
map domain problems to a single exit code without string matching.
"""

from __future__ import annotations


class TwistdetError(Exception):
    """Base class for all domain errors raised by this package."""


class RingMismatch(TwistdetError):
    """Operands live in different (or structurally unequal) rings."""


class NotAUnit(TwistdetError):
    """Inversion was requested for a non-unit coefficient or matrix."""


class AugmentationNotUnit(TwistdetError):
    """A series inverse needs the constant coefficient to be a unit."""


class AugmentationNotOne(TwistdetError):
    """The operation needs a series with constant coefficient exactly 1."""


class AugmentationNotIdentity(TwistdetError):
    """The operation needs a matrix whose constant part is the identity."""


class NotInvertible(TwistdetError):
    """A series matrix with non-invertible constant part cannot be inverted."""


class NeedsRationalCoefficients(TwistdetError):
    """Formal log/exp divide by integers; the coefficient ring must contain Q."""


class NeedsTrace(TwistdetError):
    """The coefficient ring does not provide a rational-valued trace."""


class FlavorViolated(TwistdetError):
    """The pair (a, b) does not satisfy the requested generator flavor."""


class CommutationFailed(TwistdetError):
    """The transform parameter c does not commute with a as required."""


class NotInWOne(TwistdetError):
    """The Novikov element is not of the form 1 + (positive z-degree terms)."""


class LeadingCoeffNotUnit(TwistdetError):
    """A Novikov inverse needs the lowest-degree coefficient to be a unit."""


class WindowUnderflow(TwistdetError):
    """A Novikov operation needs more negative z-room than configured."""


class DimensionMismatch(TwistdetError):
    """Matrix shapes do not fit the requested operation."""


class ClassRegroupIncompatible(TwistdetError):
    """Plain conjugacy classes straddle twisted classes; regrouping undefined."""


class LiteralSyntaxError(TwistdetError):
    """A series or coefficient literal could not be parsed."""
