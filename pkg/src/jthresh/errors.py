"""Exception hierarchy.

Every domain failure raises a subclass of :class:`JThreshError`; the class
name doubles as the machine-readable diagnostic code printed by the CLI.
"""

from __future__ import annotations


class JThreshError(Exception):
    """Base class for all input/domain errors (CLI exit code 2)."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- numeric core ---

class ZeroPolynomial(JThreshError):
    """Root extraction was asked for the zero polynomial."""


class MixedRadicands(JThreshError):
    """Arithmetic tried to combine two distinct irrational radicands."""


# --- lattice / classes ---

class DimensionMismatch(JThreshError):
    """Coordinate vector length does not match the ambient rank."""


class BadSignature(JThreshError):
    """Pairing matrix is not of hyperbolic signature (1, rank-1)."""


class ZeroVolume(JThreshError):
    """Self-pairing of the polarization vanishes."""


# --- cone model ---

class BadConeModel(JThreshError):
    """Cone description is inconsistent (no constraints, bad reference class)."""


class OmegaNotKahler(JThreshError):
    """The polarization class is not in the interior of the cone model."""


class ThetaNotKahler(JThreshError):
    """The twist class is required to be in the cone interior but is not."""


class ANotOnBoundary(JThreshError):
    """Expected a boundary class: in the cone but not in its interior."""


class NegativeSelfIntersection(JThreshError):
    """Boundary class has negative self-pairing."""


# --- fans ---

class FanInvalid(JThreshError):
    """Fan data fails validation; base of the specific fan errors."""


class NotSmooth(FanInvalid):
    """A maximal cone is not unimodular."""


class NotComplete(FanInvalid):
    """The fan's support does not cover the whole space."""


class BadFace(FanInvalid):
    """Cones do not intersect along common faces / overlap."""


class NonPrimitiveRay(FanInvalid):
    """A ray generator is not primitive (or is zero)."""


class WrongArity(JThreshError):
    """Intersection product called with the wrong number of classes."""


class OmegaNotAmpleOnOrbit(JThreshError):
    """Restriction of the polarization to an orbit closure has non-positive degree."""


# --- catalog / CLI ---

class UnknownName(JThreshError):
    """Catalog family name not recognized."""


class BadParams(JThreshError):
    """Parameters outside the admissible range."""


class OutOfDomain(JThreshError):
    """Closed-form evaluation requested outside its domain of validity."""


class BadDocument(JThreshError):
    """Input document is malformed or references unknown labels."""
