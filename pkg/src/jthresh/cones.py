"""Nef/ample cone models and the boundary constants T and sigma.

A cone is cut out by finitely many linear facets (classes paired through
the lattice) plus an optional quadratic "light-cone" facet D.D >= 0 with a
reference interior class fixing the forward component.  T(theta, omega) is
the largest delta with theta - delta*omega still in the cone; sigma is the
smallest delta making delta*omega - theta interior.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadConeModel, BadSignature, OmegaNotKahler
from .exactnum import QuadNum, Scalar, as_rat, rat_sqrt
from .lattice import DivClass, IntersectionLattice

LIGHT_CONE = "light-cone"


@dataclass(frozen=True)
class LightConeFacet:
    """Quadratic facet D.D >= 0, forward component fixed by a reference class."""

    reference_kahler: DivClass


@dataclass(frozen=True)
class NefConeModel:
    facets: tuple[DivClass, ...]
    light_cone: LightConeFacet | None = None
    facet_labels: tuple[str, ...] = ()

    def __init__(self, facets: Sequence[DivClass],
                 light_cone: LightConeFacet | None = None,
                 facet_labels: Sequence[str] | None = None):
        facets = tuple(facets)
        if facet_labels is None:
            facet_labels = tuple(f"f{i}" for i in range(len(facets)))
        else:
            facet_labels = tuple(facet_labels)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "light_cone", light_cone)
        object.__setattr__(self, "facet_labels", facet_labels)


@dataclass(frozen=True)
class ConeConstants:
    """The pair (T, sigma) together with the facets attaining them."""

    T: QuadNum
    sigma: QuadNum
    binding_facet_T: str
    binding_facet_sigma: str


def validate_cone(lattice: IntersectionLattice, cone: NefConeModel) -> None:
    """Consistency of the model itself (not of any particular class)."""
    if not cone.facets and cone.light_cone is None:
        raise BadConeModel("no facets and no light-cone facet")
    if len(cone.facet_labels) != len(cone.facets):
        raise BadConeModel("one label per facet required")
    for f in cone.facets:
        lattice.check_class(f)
    if cone.light_cone is not None:
        h = cone.light_cone.reference_kahler
        lattice.check_class(h)
        if not lattice.self_int(h) > 0:
            raise BadConeModel("light-cone reference class has non-positive square")
        for f, name in zip(cone.facets, cone.facet_labels):
            if not lattice.pair(f, h) > 0:
                raise BadConeModel(f"light-cone reference not strictly inside facet {name}")


def _constraints(lattice: IntersectionLattice, cone: NefConeModel,
                 d: DivClass) -> list[Scalar]:
    vals: list[Scalar] = [lattice.pair(f, d) for f in cone.facets]
    if cone.light_cone is not None:
        vals.append(lattice.self_int(d))
        vals.append(lattice.pair(d, cone.light_cone.reference_kahler))
    return vals


def is_nef(lattice: IntersectionLattice, cone: NefConeModel, d: DivClass) -> bool:
    """Closed-cone membership: every constraint non-negative."""
    return all(v >= 0 for v in _constraints(lattice, cone, d))


def is_kahler(lattice: IntersectionLattice, cone: NefConeModel, d: DivClass) -> bool:
    """Interior membership: every constraint strictly positive."""
    return all(v > 0 for v in _constraints(lattice, cone, d))


def _require_kahler(lattice: IntersectionLattice, cone: NefConeModel,
                    omega: DivClass) -> None:
    """Polarizations are rejected, never coerced: interior with omega^2 > 0."""
    if not is_kahler(lattice, cone, omega):
        raise OmegaNotKahler("omega is not in the interior of the cone model")
    if not lattice.self_int(omega) > 0:
        raise OmegaNotKahler("omega^2 <= 0")


def _light_cone_roots(lattice: IntersectionLattice, theta: DivClass,
                      omega: DivClass) -> tuple[QuadNum, QuadNum]:
    """Roots of (theta - delta*omega)^2 = 0 in delta, smaller first.

    Requires omega^2 > 0; the discriminant is non-negative for every
    validated hyperbolic lattice (Hodge index), so a negative value means
    the lattice was never validated.
    """
    tw = as_rat(lattice.pair(theta, omega))
    ww = as_rat(lattice.self_int(omega))
    tt = as_rat(lattice.self_int(theta))
    disc = tw * tw - tt * ww
    if disc < 0:
        raise BadSignature("negative light-cone discriminant; lattice signature is not (1, r-1)")
    root = rat_sqrt(disc)
    lo = (QuadNum(tw) - root) / ww
    hi = (QuadNum(tw) + root) / ww
    return lo, hi


def _linear_bounds(lattice: IntersectionLattice, cone: NefConeModel,
                   theta: DivClass, omega: DivClass) -> list[tuple[QuadNum, str]]:
    """Critical delta of theta - delta*omega per linear facet, in facet order."""
    return [(QuadNum(as_rat(lattice.pair(theta, f)) / as_rat(lattice.pair(omega, f))), name)
            for f, name in zip(cone.facets, cone.facet_labels)]


def seshadri_T(lattice: IntersectionLattice, cone: NefConeModel,
               theta: DivClass, omega: DivClass) -> tuple[QuadNum, str]:
    """sup{delta : theta - delta*omega in the closed cone}, with binding facet.

    The light-cone facet contributes the smaller root of the delta-quadratic:
    the feasible component is the one containing delta -> -infinity, where
    theta - delta*omega is deep inside the forward cone.  Ties break to the
    lowest facet index, light-cone last.
    """
    _require_kahler(lattice, cone, omega)
    bounds = _linear_bounds(lattice, cone, theta, omega)
    if cone.light_cone is not None:
        lo, _ = _light_cone_roots(lattice, theta, omega)
        bounds.append((lo, LIGHT_CONE))
    best, best_name = bounds[0]
    for bound, name in bounds[1:]:
        if bound < best:
            best, best_name = bound, name
    return best, best_name


def sigma_inf(lattice: IntersectionLattice, cone: NefConeModel,
              theta: DivClass, omega: DivClass) -> tuple[QuadNum, str]:
    """inf{delta : delta*omega - theta in the open cone}, with binding facet.

    Mirror image of seshadri_T: largest linear bound against the larger
    light-cone root (the feasible component containing delta -> +infinity).
    """
    _require_kahler(lattice, cone, omega)
    bounds = _linear_bounds(lattice, cone, theta, omega)
    if cone.light_cone is not None:
        _, hi = _light_cone_roots(lattice, theta, omega)
        bounds.append((hi, LIGHT_CONE))
    best, best_name = bounds[0]
    for bound, name in bounds[1:]:
        if bound > best:
            best, best_name = bound, name
    return best, best_name


def cone_constants(lattice: IntersectionLattice, cone: NefConeModel,
                   theta: DivClass, omega: DivClass) -> ConeConstants:
    t_val, t_facet = seshadri_T(lattice, cone, theta, omega)
    s_val, s_facet = sigma_inf(lattice, cone, theta, omega)
    return ConeConstants(T=t_val, sigma=s_val,
                         binding_facet_T=t_facet, binding_facet_sigma=s_facet)
