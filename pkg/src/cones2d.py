"""
Exact two-dimensional cone geometry for rank-2 gradings

Rays are integer weights (a, b).  "Clockwise order" means decreasing slope
starting from the most counterclockwise ray of a pointed configuration.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import List, Sequence, Tuple

from .errors import ConeError
from .models import Position


@dataclass(frozen=True, order=True)
class Weight:
    """An integer bidegree / divisor class"""
    a: int
    b: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Weight":
        return Weight(-self.a, -self.b)

    def scale(self, k: int) -> "Weight":
        return Weight(k * self.a, k * self.b)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def multiplicity(self) -> int:
        """The k with self = k * primitive(self)"""
        return gcd(abs(self.a), abs(self.b))

    def primitive(self) -> "Weight":
        if self.is_zero:
            raise ConeError("the zero weight has no ray", code="ZeroWeight")
        g = self.multiplicity
        return Weight(self.a // g, self.b // g)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.a, self.b)

    @classmethod
    def of(cls, pair: Sequence[int]) -> "Weight":
        return cls(int(pair[0]), int(pair[1]))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def det(v: Weight, w: Weight) -> int:
    return v.a * w.b - v.b * w.a


def _dot(v: Weight, w: Weight) -> int:
    return v.a * w.a + v.b * w.b


def weight_sum(weights: Sequence[Weight]) -> Weight:
    total = Weight(0, 0)
    for w in weights:
        total = total + w
    return total


@dataclass(frozen=True)
class RayGroup:
    """Variables whose weights lie on one ray"""
    ray: Weight
    variables: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class Cone2:
    """Nonnegative span of two primitive rays; r1 comes first clockwise"""
    r1: Weight
    r2: Weight

    def __post_init__(self):
        if self.r1.is_zero or self.r2.is_zero:
            raise ConeError("cone generator is zero", code="ZeroWeight")
        if det(self.r1, self.r2) == 0 and _dot(self.r1, self.r2) < 0:
            raise ConeError(f"opposite generators {self.r1}, {self.r2}", code="NonConvexSpan")

    @classmethod
    def spanned(cls, r1: Weight, r2: Weight) -> "Cone2":
        return cls(r1.primitive(), r2.primitive())

    @property
    def is_ray(self) -> bool:
        return det(self.r1, self.r2) == 0

    def rays(self) -> Tuple[Weight, Weight]:
        return (self.r1, self.r2)

    def __str__(self) -> str:
        return f"<{self.r1},{self.r2}>"


@dataclass(frozen=True)
class LinearForm:
    """l(a, b) = p*a + q*b"""
    p: int
    q: int

    def __call__(self, w: Weight) -> int:
        return self.p * w.a + self.q * w.b


def _ccw_extreme(prims: List[Weight]) -> Weight:
    distinct = sorted(set(prims))
    for v in distinct:
        if -v in distinct:
            raise ConeError(f"weights {v} and {-v} are opposite", code="NonConvexSpan")
    for r in distinct:
        if all(det(r, v) <= 0 for v in distinct):
            return r
    raise ConeError("weights do not lie in a half-plane", code="NonConvexSpan")


def sort_rays_clockwise(weights: Sequence[Weight]) -> List[RayGroup]:
    """
    Group weights by ray and order the groups clockwise

    Args:
        weights: Variable weights, indexed by variable position

    Returns:
        Ray groups from the most counterclockwise ray, variables kept in input order
    """
    if not weights:
        return []
    for i, w in enumerate(weights):
        if w.is_zero:
            raise ConeError(f"variable {i} has weight (0,0)", code="ZeroWeight")

    prims = [w.primitive() for w in weights]
    _ccw_extreme(prims)

    def compare(v: Weight, w: Weight) -> int:
        d = det(v, w)
        return -1 if d < 0 else (1 if d > 0 else 0)

    order = sorted(set(prims), key=cmp_to_key(compare))
    return [
        RayGroup(ray=ray, variables=tuple(i for i, p in enumerate(prims) if p == ray))
        for ray in order
    ]


def classify_position(cone: Cone2, w: Weight) -> Position:
    """Locate w relative to the cone: Interior, Boundary or Outside"""
    if w.is_zero:
        raise ConeError("cannot classify the zero class", code="ZeroWeight")

    if cone.is_ray:
        if det(cone.r1, w) == 0 and _dot(cone.r1, w) > 0:
            return Position.BOUNDARY
        return Position.OUTSIDE

    d = det(cone.r1, cone.r2)
    x = Fraction(det(w, cone.r2), d)
    y = Fraction(det(cone.r1, w), d)
    if x > 0 and y > 0:
        return Position.INTERIOR
    if (x == 0 and y > 0) or (y == 0 and x > 0):
        return Position.BOUNDARY
    return Position.OUTSIDE


def wall_normal(ray: Weight) -> LinearForm:
    """Form vanishing on the ray, positive on rays sorted before it"""
    if ray.is_zero:
        raise ConeError("wall ray is zero", code="ZeroWeight")
    prim = ray.primitive()
    return LinearForm(p=-prim.b, q=prim.a)


def on_ray(ray: Weight, w: Weight) -> bool:
    """w is a positive multiple of the ray"""
    return det(ray, w) == 0 and _dot(ray, w) > 0
