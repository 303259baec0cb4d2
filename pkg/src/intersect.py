"""
Intersection numbers: weighted Bezout counts, curve tests and toric products
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Union

import sympy as sp

from .cones2d import Weight, det
from .coxring import CoxData, Embedding
from .errors import IntersectError
from .models import ChartSpec, CurveNumbers, CurveSpec

Number = Union[int, str, Fraction]


def _rational(value: Number) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise IntersectError(f"not a rational number: {value!r} ({e})")


def weighted_bezout(degrees: Sequence[Number], weights: Sequence[int]) -> Fraction:
    """
    Degree of a zero-dimensional complete intersection in P(weights)

    Args:
        degrees: Equation degrees, one fewer than the weights
        weights: Weights of the ambient weighted projective space

    Returns:
        prod(degrees) / prod(weights), not necessarily an integer
    """
    if len(degrees) != len(weights) - 1:
        raise IntersectError(
            f"{len(degrees)} equations in P^{len(weights) - 1} do not cut out points",
            code="DimensionMismatch",
        )
    value = Fraction(1)
    for d in degrees:
        q = _rational(d)
        if q <= 0:
            raise IntersectError(f"degree {d} is not positive")
        value *= q
    for w in weights:
        if w <= 0:
            raise IntersectError(f"weight {w} is not positive")
        value /= w
    return value


def count_on_wall(
    base_degrees: Sequence[int], wall_multiplicities: Sequence[int]
) -> Optional[Fraction]:
    """Number of flipping curves: points of the base cut in P(wall multiplicities)"""
    if len(wall_multiplicities) == 1:
        return Fraction(1)
    if len(base_degrees) != len(wall_multiplicities) - 1:
        return None
    return weighted_bezout(base_degrees, wall_multiplicities)


def chart_number(chart: ChartSpec) -> Fraction:
    if chart.zero_class:
        return Fraction(0)
    if not chart.weights or not chart.degrees:
        raise IntersectError("chart needs weights and degrees", code="ChartUnderspecified")
    return weighted_bezout(chart.degrees, chart.weights)


def curve_divisor_numbers(curve: CurveSpec) -> CurveNumbers:
    """C.E and C.D on their charts, C.(-K) from k(-K) ~ dD + eE"""
    c_e = chart_number(curve.e_chart)
    c_d = chart_number(curve.d_chart)
    rel = curve.relation
    c_k = (rel.d * c_d + rel.e * c_e) / rel.k
    return CurveNumbers(
        c_e=str(c_e),
        c_d=str(c_d),
        c_k=str(c_k),
        excluded=family_mobility_exclusion(c_e, c_k, curve.moving),
    )


def family_mobility_exclusion(c_e: Number, c_k: Number, moving: bool = True) -> bool:
    """A moving family with C.E > 0 and C.(-K) <= 0 rules the centre out"""
    return moving and _rational(c_e) > 0 and _rational(c_k) <= 0


def toric_intersection(
    cox: CoxData, classes: Sequence[Weight], chamber: Optional[int] = None
) -> Fraction:
    """
    Top intersection of divisor classes on the toric model of a chamber

    The Chow ring is Q[H1, H2] modulo the products over the two irrelevant
    components; the degree functional is normalised at a torus fixed point.

    Args:
        cox: Cox data of T
        classes: Exactly dim T = n - 2 classes
        chamber: Chamber index in the clockwise walk, default the first

    Returns:
        The intersection number
    """
    dim = cox.n - 2
    if len(classes) != dim:
        raise IntersectError(
            f"{len(classes)} classes on a {dim}-dimensional variety", code="DimensionMismatch"
        )
    if chamber is None:
        left, right = cox.irrelevant
    else:
        left, right = cox.chamber_irrelevant(chamber)

    h1, h2 = sp.symbols("H1 H2")

    def form(w: Weight) -> sp.Expr:
        return w.a * h1 + w.b * h2

    def product(weights: Sequence[Weight]) -> sp.Expr:
        return sp.expand(sp.Mul(*[form(w) for w in weights]))

    monomials = [h1 ** i * h2 ** (dim - i) for i in range(dim + 1)]

    def row(expr: sp.Expr) -> List[sp.Expr]:
        poly = sp.Poly(expr, h1, h2)
        return [poly.coeff_monomial(m) for m in monomials]

    relations = []
    for side in (left, right):
        rel = product([cox.weight(name) for name in side])
        extra = dim - len(side)
        for i in range(extra + 1):
            relations.append(row(rel * h1 ** i * h2 ** (extra - i)))

    kernel = sp.Matrix(relations).nullspace()
    if len(kernel) != 1:
        raise IntersectError(f"degree functional is not unique ({len(kernel)} solutions)")
    functional = kernel[0]

    pivot = next(
        ((l, r) for l in left for r in right if det(cox.weight(l), cox.weight(r)) != 0), None
    )
    if pivot is None:
        raise IntersectError("chamber has no torus fixed point")
    l, r = pivot
    others = [cox.weight(name) for name in cox.names if name not in (l, r)]
    scale = sum(c * f for c, f in zip(row(product(others)), functional))
    if scale == 0:
        raise IntersectError(f"fixed point of {l}, {r} has zero degree")
    target = sp.Rational(1, abs(det(cox.weight(l), cox.weight(r))))
    functional = functional * (target / scale)

    value = sum(c * f for c, f in zip(row(product(list(classes))), functional))
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def fano_degree(weights: Sequence[int], degrees: Sequence[int]) -> Fraction:
    """(-K_X)^3 of a quasi-smooth weighted complete intersection"""
    value = Fraction(sum(weights) - sum(degrees)) ** (len(weights) - 1 - len(degrees))
    for d in degrees:
        value *= d
    for w in weights:
        value /= w
    return value


def anticanonical_degree(emb: Embedding) -> Optional[Fraction]:
    """(-K_Y)^3 as (-K_Y)^3 . [Y] on T, for threefold complete intersections"""
    if emb.dimension != 3 or emb.dimension != emb.cox.n - 2 - len(emb.equations):
        return None
    k = emb.anticanonical
    return toric_intersection(emb.cox, [k, k, k] + list(emb.degrees().values()))
