"""Surface-level threshold computations.

The central quantity is the formula value c = C(theta,omega) - sigma, the
optimal coercivity constant of the twisted energy against the reference
norm functional.  Positivity of c is equivalent to solvability; when the
twist class is interior the value is certified exactly, otherwise the
result is only conditional and the status says so.  Everything is exact:
rationals in, rationals or quadratic irrationals out.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .cones import NefConeModel, is_kahler, is_nef, seshadri_T, sigma_inf
from .errors import (ANotOnBoundary, BadParams, NegativeSelfIntersection,
                     OmegaNotKahler, ThetaNotKahler, ZeroVolume)
from .exactnum import QuadNum, RatPoly, as_rat, poly_roots_quadratic, rat_sqrt
from .lattice import DivClass, IntersectionLattice, segment

CSCK_CAVEAT = "requires discrete automorphism group"


class Status(str, enum.Enum):
    """What the computed value certifies.

    ExactUnstable    interior twist, value <= 0: the threshold equals the value.
    Solvable         interior twist, value > 0: the equation is solvable.
    ConditionalExact non-interior twist, value < T: consistent, not certified.
    Indeterminate    non-interior twist, value >= T: nothing is certified.
    """

    EXACT_UNSTABLE = "ExactUnstable"
    SOLVABLE = "Solvable"
    CONDITIONAL_EXACT = "ConditionalExact"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Audit:
    """The constants every result carries so statuses can be re-derived."""

    C: Fraction
    sigma: QuadNum
    T: QuadNum
    theta_kahler: bool
    binding_facet_sigma: str
    binding_facet_T: str


@dataclass(frozen=True)
class ThresholdResult:
    value: QuadNum
    status: Status
    audit: Audit


@dataclass(frozen=True)
class Interval:
    """Subset of (0, 1]: lower endpoint always excluded, upper optional."""

    lo: QuadNum
    hi: QuadNum
    hi_closed: bool

    def contains(self, t) -> bool:
        if not self.lo < t:
            return False
        return t <= self.hi if self.hi_closed else t < self.hi

    def __repr__(self) -> str:
        close = "]" if self.hi_closed else ")"
        return f"({self.lo}, {self.hi}{close}"


@dataclass(frozen=True)
class PathAnalysis:
    """Sign analysis of the value along omega_t = (1-t)a + t*theta."""

    numerator: RatPoly
    a_selfint: Fraction
    theta_selfint: Fraction
    solvable_set: tuple[Interval, ...]


@dataclass(frozen=True)
class StableSubcone:
    """Solvable polarizations between the twist and a positive boundary class."""

    boundary_t: Fraction
    normalization: QuadNum
    boundary_ray: DivClass


@dataclass(frozen=True)
class PerfectCone:
    """Distinguished outcome: every interior pair is solvable.

    Returned instead of a subcone when the boundary class has zero square,
    i.e. the model has no positive-square boundary directions to obstruct.
    """

    note: str = "boundary class has zero square: every interior pair is solvable"


@dataclass(frozen=True)
class CsckReport:
    holds: bool
    lhs: QuadNum
    rhs: Fraction
    caveat: str = CSCK_CAVEAT


def c_constant(lattice: IntersectionLattice, theta: DivClass,
               omega: DivClass) -> Fraction:
    """The topological constant 2 (theta.omega) / omega^2."""
    vol = as_rat(lattice.self_int(omega))
    if vol == 0:
        raise ZeroVolume("omega^2 = 0")
    return 2 * as_rat(lattice.pair(theta, omega)) / vol


def surface_gamma(lattice: IntersectionLattice, cone: NefConeModel,
                  theta: DivClass, omega: DivClass) -> ThresholdResult:
    """Formula value C - sigma with its certification status and audit data."""
    if not is_kahler(lattice, cone, omega):
        raise OmegaNotKahler("omega is not interior to the cone model")
    c = c_constant(lattice, theta, omega)
    sigma, facet_sigma = sigma_inf(lattice, cone, theta, omega)
    t_const, facet_t = seshadri_T(lattice, cone, theta, omega)
    value = QuadNum(c) - sigma
    theta_kahler = is_kahler(lattice, cone, theta)
    if theta_kahler:
        status = Status.SOLVABLE if value > 0 else Status.EXACT_UNSTABLE
    else:
        status = Status.CONDITIONAL_EXACT if value < t_const else Status.INDETERMINATE
    audit = Audit(C=c, sigma=sigma, T=t_const, theta_kahler=theta_kahler,
                  binding_facet_sigma=facet_sigma, binding_facet_T=facet_t)
    return ThresholdResult(value=value, status=status, audit=audit)


def is_solvable(lattice: IntersectionLattice, cone: NefConeModel,
                theta: DivClass, omega: DivClass) -> bool:
    """Solvability criterion: C*omega - theta interior to the cone.

    Agrees with the sign of the formula value; both classes must be interior.
    """
    if not is_kahler(lattice, cone, theta):
        raise ThetaNotKahler("theta is not interior to the cone model")
    if not is_kahler(lattice, cone, omega):
        raise OmegaNotKahler("omega is not interior to the cone model")
    c = c_constant(lattice, theta, omega)
    return is_kahler(lattice, cone, omega.scale(c) - theta)


def _check_boundary_class(lattice: IntersectionLattice, cone: NefConeModel,
                          a: DivClass) -> Fraction:
    """Validate a nef-but-not-interior class; returns its self-intersection."""
    if not is_nef(lattice, cone, a) or is_kahler(lattice, cone, a):
        raise ANotOnBoundary("class must be nef but not interior")
    a2 = as_rat(lattice.self_int(a))
    if a2 < 0:
        raise NegativeSelfIntersection(f"a^2 = {a2} < 0")
    return a2


def path_R(lattice: IntersectionLattice, cone: NefConeModel,
           theta: DivClass, a: DivClass) -> PathAnalysis:
    """Numerator of the value along omega_t = (1-t)a + t*theta, and its sign set.

    The numerator is (theta^2 - a^2) t^2 + 2 a^2 t - a^2; the set where the
    equation is solvable is {t in (0,1] : numerator > 0}.
    """
    if not is_kahler(lattice, cone, theta):
        raise ThetaNotKahler("theta must be interior to the cone model")
    a2 = _check_boundary_class(lattice, cone, a)
    t2 = as_rat(lattice.self_int(theta))
    numerator = RatPoly([-a2, 2 * a2, t2 - a2])
    return PathAnalysis(numerator=numerator, a_selfint=a2, theta_selfint=t2,
                        solvable_set=tuple(_positive_set(numerator)))


def _positive_set(poly: RatPoly) -> list[Interval]:
    """{t in (0,1] : poly(t) > 0} as exact intervals with QuadNum endpoints."""
    if poly.is_zero:
        return []
    zero, one = QuadNum(0), QuadNum(1)
    cuts = [zero] + [r for r in poly_roots_quadratic(poly) if 0 < r < 1] + [one]
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        if poly(mid) > 0:
            hi_closed = hi == one and poly(Fraction(1)) > 0
            out.append(Interval(lo=lo, hi=hi, hi_closed=hi_closed))
    return out


def stable_subcone(lattice: IntersectionLattice, cone: NefConeModel,
                   theta: DivClass, a: DivClass) -> StableSubcone | PerfectCone:
    """Boundary data of the solvable subcone spanned between theta and a.

    After rescaling a so that (lambda*a)^2 = theta^2, the solvable segment is
    t in (1/2, 1]; the returned ray is the class at t = 1/2.  A boundary
    class with zero square yields the distinguished PerfectCone outcome.
    """
    if not is_kahler(lattice, cone, theta):
        raise ThetaNotKahler("theta must be interior to the cone model")
    a2 = _check_boundary_class(lattice, cone, a)
    if a2 == 0:
        return PerfectCone()
    t2 = as_rat(lattice.self_int(theta))
    lam = rat_sqrt(t2 / a2)
    half = Fraction(1, 2)
    ray = (a.scale(lam) + theta).scale(half)
    return StableSubcone(boundary_t=half, normalization=lam, boundary_ray=ray)


def csck_criterion(lattice: IntersectionLattice, cone: NefConeModel,
                   minus_c1: DivClass, omega: DivClass,
                   alpha: Fraction) -> CsckReport:
    """Numerical existence criterion min(C - sigma, T) > -(3/2)*alpha.

    alpha is the user-supplied integrability exponent of the polarization;
    it is never computed here.  The report carries the discrete-automorphism
    caveat verbatim.
    """
    if not alpha > 0:
        raise BadParams("alpha must be positive")
    if not is_kahler(lattice, cone, omega):
        raise OmegaNotKahler("omega is not interior to the cone model")
    c = c_constant(lattice, minus_c1, omega)
    sigma, _ = sigma_inf(lattice, cone, minus_c1, omega)
    t_const, _ = seshadri_T(lattice, cone, minus_c1, omega)
    candidate = QuadNum(c) - sigma
    lhs = candidate if candidate < t_const else t_const
    rhs = -Fraction(3, 2) * alpha
    return CsckReport(holds=lhs > rhs, lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class PathSample:
    """One row of a path sweep at rational t."""

    t: Fraction
    r_numerator: Fraction
    gamma: QuadNum
    solvable: bool


def sample_path(lattice: IntersectionLattice, cone: NefConeModel,
                theta: DivClass, a: DivClass, samples: int) -> list[PathSample]:
    """Evaluate the path at t = k/samples, k = 1..samples, in order.

    Each gamma value goes through the full pipeline on omega_t; the
    numerator column is the closed-form polynomial at the same t.
    """
    if samples < 1:
        raise BadParams("samples must be >= 1")
    analysis = path_R(lattice, cone, theta, a)
    rows = []
    for k in range(1, samples + 1):
        t = Fraction(k, samples)
        omega_t = segment(a, theta, t)
        result = surface_gamma(lattice, cone, theta, omega_t)
        num = as_rat(analysis.numerator(t))
        rows.append(PathSample(t=t, r_numerator=num, gamma=result.value,
                               solvable=num > 0))
    return rows
