"""Smooth complete fans and exact intersection numbers of invariant divisors.

A :class:`Fan` is given by primitive integer rays and the index sets of its
maximal cones.  Validation checks unimodularity of every maximal cone, the
wall condition (every ridge shared by exactly two maximal cones, lying on
opposite sides) and that a generic point is covered exactly once; together
these certify a smooth complete fan with compatible faces.

The intersection engine evaluates products of invariant divisors by the
standard recursion: distinct rays spanning a cone contribute 1, distinct
rays not spanning a cone kill the term, and a repeated ray is rewritten
through a character that is -1 on it and 0 on the other rays of an ambient
maximal cone.  Orbit-closure integrals seed the recursion at the orbit's cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from random import Random
from typing import Iterable, Sequence

from .errors import (BadFace, FanInvalid, NonPrimitiveRay, NotComplete,
                     NotSmooth, OmegaNotAmpleOnOrbit, OmegaNotKahler, WrongArity)
from .exactnum import RatLike
from .surface import Status


def _det(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    m = [row[:] for row in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_linear(rows: Sequence[Sequence[RatLike]],
                 rhs: Sequence[RatLike]) -> list[Fraction] | None:
    """Solve the square system rows * x = rhs exactly; None if singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            return None
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k] / pk
                for j in range(k, n + 1):
                    aug[i][j] -= f * aug[k][j]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def _dot(m: Sequence[Fraction], u: Sequence[int]) -> Fraction:
    return sum((c * x for c, x in zip(m, u)), Fraction(0))


class Fan:
    """Rays and maximal cones of a (purportedly) smooth complete fan.

    Ray indices are 0-based everywhere, including in documents.  Call
    :func:`validate_fan` (or rely on the engine, which validates lazily)
    before trusting any intersection number.
    """

    def __init__(self, dim: int, rays: Sequence[Sequence[int]],
                 max_cones: Sequence[Sequence[int]]):
        self.dim = int(dim)
        self.rays = tuple(tuple(int(x) for x in ray) for ray in rays)
        self.max_cones = tuple(tuple(sorted(int(i) for i in cone))
                               for cone in max_cones)
        self._validated = False
        self._max_cone_sets = tuple(frozenset(c) for c in self.max_cones)
        self._rewrite_cache: dict[tuple[tuple[int, ...], int], tuple[tuple[int, Fraction], ...]] = {}

    # -- structure queries -------------------------------------------------

    def is_face(self, rays: frozenset[int]) -> bool:
        """True if the index set spans a cone of the fan (simplicial faces)."""
        return any(rays <= mc for mc in self._max_cone_sets)

    def faces(self) -> list[tuple[int, ...]]:
        """All positive-dimension faces, by (dimension, lex ray indices)."""
        seen: set[tuple[int, ...]] = set()
        for cone in self.max_cones:
            for mask in range(1, 1 << len(cone)):
                face = tuple(cone[i] for i in range(len(cone)) if mask >> i & 1)
                seen.add(face)
        return sorted(seen, key=lambda f: (len(f), f))

    def _ambient_max_cone(self, sigma: frozenset[int]) -> tuple[int, ...]:
        """Deterministic choice: lex-least maximal cone containing sigma."""
        best = min((c for c, s in zip(self.max_cones, self._max_cone_sets)
                    if sigma <= s), default=None)
        if best is None:
            raise BadFace(f"rays {sorted(sigma)} do not span a cone of the fan")
        return best

    def rewrite_terms(self, sigma: frozenset[int], i: int) -> tuple[tuple[int, Fraction], ...]:
        """Replacement of divisor i, repeated inside sigma, by outside divisors.

        Uses the character m with <m, u_i> = -1 and <m, u_k> = 0 for the
        other rays of the ambient maximal cone; the relation sum_j <m,u_j> D_j
        then expresses D_i through rays outside that cone.
        """
        smax = self._ambient_max_cone(sigma)
        key = (smax, i)
        cached = self._rewrite_cache.get(key)
        if cached is None:
            rows = [self.rays[k] for k in smax]
            rhs = [-1 if k == i else 0 for k in smax]
            m = solve_linear(rows, rhs)
            assert m is not None  # maximal cones are unimodular
            outside = [j for j in range(len(self.rays)) if j not in smax]
            cached = tuple((j, _dot(m, self.rays[j])) for j in outside
                           if _dot(m, self.rays[j]) != 0)
            self._rewrite_cache[key] = cached
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return (self.dim == other.dim and self.rays == other.rays
                and self.max_cones == other.max_cones)

    def __repr__(self) -> str:
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


@dataclass(frozen=True)
class ToricClass:
    """Invariant divisor class as one rational coefficient per ray."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence[RatLike]):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __add__(self, other: "ToricClass") -> "ToricClass":
        return ToricClass([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "ToricClass") -> "ToricClass":
        return ToricClass([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: RatLike) -> "ToricClass":
        return ToricClass([Fraction(c) * a for a in self.coeffs])

    def __rmul__(self, c: RatLike) -> "ToricClass":
        return self.scale(c)


def validate_fan(fan: Fan) -> None:
    """Smoothness, completeness and face compatibility; raises on failure."""
    if fan._validated:
        return
    n = fan.dim
    if n < 1:
        raise FanInvalid("dimension must be positive")
    if len(set(fan.rays)) != len(fan.rays):
        raise FanInvalid("duplicate rays")
    for ray in fan.rays:
        if len(ray) != n:
            raise FanInvalid(f"ray {ray} has wrong length")
        if all(x == 0 for x in ray):
            raise NonPrimitiveRay("zero ray")
        g = 0
        for x in ray:
            g = gcd(g, abs(x))
        if g != 1:
            raise NonPrimitiveRay(f"ray {ray} has content {g}")
    used: set[int] = set()
    for cone in fan.max_cones:
        if len(cone) != n or len(set(cone)) != n:
            raise NotSmooth(f"maximal cone {cone} does not have {n} distinct rays")
        if not all(0 <= i < len(fan.rays) for i in cone):
            raise FanInvalid(f"cone {cone} references missing rays")
        used.update(cone)
        if abs(_det([list(fan.rays[i]) for i in cone])) != 1:
            raise NotSmooth(f"maximal cone {cone} is not unimodular")
    if len(set(fan.max_cones)) != len(fan.max_cones):
        raise FanInvalid("duplicate maximal cones")
    if used != set(range(len(fan.rays))):
        raise FanInvalid("unused rays")

    # Wall condition: every ridge in exactly two maximal cones, opposite sides.
    ridges: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
    for cone in fan.max_cones:
        for drop in cone:
            ridge = tuple(i for i in cone if i != drop)
            ridges.setdefault(ridge, []).append((cone, drop))
    for ridge, owners in ridges.items():
        if len(owners) == 1:
            raise NotComplete(f"ridge {ridge} lies on the boundary of the support")
        if len(owners) > 2:
            raise BadFace(f"ridge {ridge} shared by {len(owners)} maximal cones")
        sides = []
        for _, extra in owners:
            rows = [list(fan.rays[i]) for i in ridge] + [list(fan.rays[extra])]
            sides.append(_det(rows))
        if sides[0] * sides[1] >= 0:
            raise BadFace(f"maximal cones at ridge {ridge} are on the same side")

    _generic_cover_check(fan)
    fan._validated = True


def _generic_cover_check(fan: Fan) -> None:
    """A generic point must lie in the interior of exactly one maximal cone.

    Combined with the wall condition this pins down degree one everywhere:
    crossing any wall preserves the covering count, so one generic sample
    certifies global completeness and pairwise disjoint interiors.
    """
    rng = Random(164207)
    cols = [[list(fan.rays[i]) for i in cone] for cone in fan.max_cones]
    for _ in range(64):
        point = [Fraction(rng.randrange(-10**6, 10**6 + 1), rng.randrange(1, 1000))
                 for _ in range(fan.dim)]
        inside = 0
        degenerate = False
        for cone_rows in cols:
            coords = solve_linear(list(map(list, zip(*cone_rows))), point)
            assert coords is not None
            if any(c == 0 for c in coords) and all(c >= 0 for c in coords):
                degenerate = True
                break
            if all(c > 0 for c in coords):
                inside += 1
        if degenerate:
            continue
        if inside == 0:
            raise NotComplete("generic point not covered by any maximal cone")
        if inside > 1:
            raise BadFace("maximal cones overlap in their interiors")
        return
    raise FanInvalid("could not find a generic sample point")  # pragma: no cover


def _eval_product(fan: Fan, sigma: frozenset[int],
                  classes: tuple[ToricClass, ...]) -> Fraction:
    """Product of the remaining classes against the fixed distinct rays sigma."""
    if not classes:
        return Fraction(1)
    head, tail = classes[0], classes[1:]
    total = Fraction(0)
    for j, coeff in enumerate(head.coeffs):
        if coeff != 0:
            total += coeff * _eval_ray(fan, sigma, j, tail)
    return total


def _eval_ray(fan: Fan, sigma: frozenset[int], i: int,
              tail: tuple[ToricClass, ...]) -> Fraction:
    if i not in sigma:
        grown = sigma | {i}
        if not fan.is_face(grown):
            return Fraction(0)
        return _eval_product(fan, grown, tail)
    total = Fraction(0)
    for j, c in fan.rewrite_terms(sigma, i):
        total += c * _eval_ray(fan, sigma, j, tail)
    return total


def _integral(fan: Fan, sigma: Iterable[int],
              classes: Sequence[ToricClass]) -> Fraction:
    """Integral over the orbit closure of sigma of the product of classes."""
    sigma = frozenset(sigma)
    for cls in classes:
        if len(cls.coeffs) != len(fan.rays):
            raise WrongArity("one coefficient per ray required")
    if len(sigma) + len(classes) != fan.dim:
        raise WrongArity(f"need {fan.dim - len(sigma)} classes on this orbit")
    if sigma and not fan.is_face(sigma):
        raise BadFace(f"rays {sorted(sigma)} do not span a cone of the fan")
    return _eval_product(fan, sigma, tuple(classes))


def intersection_number(fan: Fan, classes: Sequence[ToricClass]) -> Fraction:
    """Exact top intersection product of dim-many invariant divisor classes."""
    validate_fan(fan)
    if len(classes) != fan.dim:
        raise WrongArity(f"expected {fan.dim} classes, got {len(classes)}")
    return _integral(fan, (), classes)


def canonicalize(fan: Fan, cls: ToricClass) -> ToricClass:
    """Canonical representative: zero on the first dim-many independent rays."""
    validate_fan(fan)
    basis: list[int] = []
    rows: list[list[int]] = []
    for i, ray in enumerate(fan.rays):
        cand = rows + [list(ray)]
        if len(cand) <= fan.dim and _rank(cand) == len(cand):
            basis.append(i)
            rows.append(list(ray))
        if len(basis) == fan.dim:
            break
    m = solve_linear(rows, [-cls.coeffs[i] for i in basis])
    assert m is not None
    return ToricClass([cls.coeffs[j] + _dot(m, fan.rays[j])
                       for j in range(len(fan.rays))])


def _rank(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                for j in range(col, ncols):
                    m[i][j] -= f * m[rank][j]
        rank += 1
        col += 1
    return rank


def classes_equivalent(fan: Fan, x: ToricClass, y: ToricClass) -> bool:
    """Linear equivalence of invariant divisor classes."""
    return canonicalize(fan, x) == canonicalize(fan, y)


def enumerate_orbits(fan: Fan) -> list[tuple[int, ...]]:
    """Every positive-dimension cone, once, ordered by (dim, lex ray indices)."""
    validate_fan(fan)
    return fan.faces()


def invariant_curves(fan: Fan) -> list[tuple[int, ...]]:
    """Cones of dimension dim-1 (the invariant curves of the variety)."""
    validate_fan(fan)
    return [f for f in fan.faces() if len(f) == fan.dim - 1]


def is_ample(fan: Fan, d: ToricClass) -> bool:
    """Strict positivity against every invariant curve (toric Kleiman)."""
    validate_fan(fan)
    return all(_integral(fan, tau, [d]) > 0 for tau in invariant_curves(fan))


def is_nef_toric(fan: Fan, d: ToricClass) -> bool:
    validate_fan(fan)
    return all(_integral(fan, tau, [d]) >= 0 for tau in invariant_curves(fan))


def toric_seshadri_T(fan: Fan, theta: ToricClass, omega: ToricClass) -> Fraction:
    """sup{delta : theta - delta*omega nef}, from the invariant-curve bounds."""
    validate_fan(fan)
    if not is_ample(fan, omega):
        raise OmegaNotKahler("omega is not ample")
    bounds = [_integral(fan, tau, [theta]) / _integral(fan, tau, [omega])
              for tau in invariant_curves(fan)]
    return min(bounds)


@dataclass(frozen=True)
class SubvarietyScore:
    """Normalized obstruction of one orbit closure V(sigma).

    value = (C * int_V omega^p - p * int_V theta wedge omega^(p-1))
            / ((n-p) * int_V omega^p),  p = dim V.
    """

    cone: tuple[int, ...]
    p: int
    numerator: Fraction
    denominator: Fraction
    value: Fraction


AUTOMORPHISM_CAVEAT = ("toric manifolds have non-discrete automorphism groups; "
                       "twisted-equation statuses are unaffected but cscK "
                       "interpretations do not apply verbatim")


@dataclass(frozen=True)
class ToricGammaResult:
    value: Fraction
    minimizer: tuple[int, ...]
    scores: tuple[SubvarietyScore, ...]
    status: Status
    C: Fraction
    T: Fraction | None
    caveat: str = AUTOMORPHISM_CAVEAT


def _c_constant_toric(fan: Fan, theta: ToricClass, omega: ToricClass) -> Fraction:
    vol = _integral(fan, (), [omega] * fan.dim)
    if vol <= 0:
        raise OmegaNotKahler(f"omega^n = {vol} <= 0")
    mixed = _integral(fan, (), [theta] + [omega] * (fan.dim - 1))
    return fan.dim * mixed / vol


def subvariety_score(fan: Fan, theta: ToricClass, omega: ToricClass,
                     sigma: Sequence[int]) -> SubvarietyScore:
    """Exact score of the orbit closure of sigma, seeding the recursion there."""
    validate_fan(fan)
    sigma = tuple(sorted(sigma))
    if not (1 <= len(sigma) <= fan.dim) or not fan.is_face(frozenset(sigma)):
        raise BadFace(f"rays {list(sigma)} do not span a positive-dimension cone")
    p = fan.dim - len(sigma)
    vol = _integral(fan, sigma, [omega] * p)
    if vol <= 0:
        raise OmegaNotAmpleOnOrbit(f"int_V omega^{p} = {vol} on orbit {sigma}")
    c = _c_constant_toric(fan, theta, omega)
    mixed = _integral(fan, sigma, [theta] + [omega] * (p - 1)) if p >= 1 else Fraction(0)
    numerator = c * vol - p * mixed
    denominator = (fan.dim - p) * vol
    return SubvarietyScore(cone=sigma, p=p, numerator=numerator,
                           denominator=denominator, value=numerator / denominator)


def toric_gamma(fan: Fan, theta: ToricClass, omega: ToricClass) -> ToricGammaResult:
    """Minimum orbit score, its minimizer and a certification status.

    The minimizer tie-break follows the orbit enumeration order (dimension
    of the cone, then lex ray indices), so results are deterministic.
    For a non-ample twist the value is compared against the Seshadri-type
    bound computed from the fan's own invariant curves.
    """
    validate_fan(fan)
    if not is_ample(fan, omega):
        raise OmegaNotKahler("omega is not ample")
    scores = tuple(subvariety_score(fan, theta, omega, sigma)
                   for sigma in enumerate_orbits(fan))
    best = scores[0]
    for s in scores[1:]:
        if s.value < best.value:
            best = s
    c = _c_constant_toric(fan, theta, omega)
    if is_ample(fan, theta):
        status = Status.SOLVABLE if best.value > 0 else Status.EXACT_UNSTABLE
        t_bound: Fraction | None = None
    else:
        t_bound = toric_seshadri_T(fan, theta, omega)
        status = (Status.CONDITIONAL_EXACT if best.value < t_bound
                  else Status.INDETERMINATE)
    return ToricGammaResult(value=best.value, minimizer=best.cone, scores=scores,
                            status=status, C=c, T=t_bound)
