"""
Bigraded Cox data for rank-2 toric varieties

Holds the ordered variables with their bidegrees, the anticanonical and
adjunction classes, the mobile cone and its GIT chambers, and the embedding
of a subvariety Y by bihomogeneous equations.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .cones2d import Cone2, RayGroup, Weight, det, sort_rays_clockwise, weight_sum
from .errors import CoxError
from .polynomial import Monomial, SparsePoly, mono_str


@dataclass(frozen=True)
class CoxData:
    """Ordered Cox variables of a rank-2 toric variety"""
    names: Tuple[str, ...]
    weights: Tuple[Weight, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise CoxError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise CoxError(f"duplicate variable names in {self.names}")
        # effective cone must be pointed
        sort_rays_clockwise(list(self.weights))

    @classmethod
    def from_columns(cls, columns: Iterable[Tuple[str, int, int]]) -> "CoxData":
        cols = list(columns)
        return cls(tuple(c[0] for c in cols), tuple(Weight(c[1], c[2]) for c in cols))

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CoxError(f"unknown variable {name}")

    def weight(self, name: str) -> Weight:
        return self.weights[self.index(name)]

    def weight_map(self) -> Dict[str, Weight]:
        return dict(zip(self.names, self.weights))

    def groups(self) -> List[RayGroup]:
        return sort_rays_clockwise(list(self.weights))

    def group_names(self, group: RayGroup) -> List[str]:
        return [self.names[i] for i in group.variables]

    def ordered_names(self) -> List[str]:
        return [name for g in self.groups() for name in self.group_names(g)]

    def rows(self) -> Tuple[List[int], List[int]]:
        return [w.a for w in self.weights], [w.b for w in self.weights]

    def monomial_degree(self, m: Monomial) -> Weight:
        total = Weight(0, 0)
        for name, e in m:
            total = total + self.weight(name).scale(e)
        return total

    def extend(self, name: str, weight: Weight) -> "CoxData":
        return CoxData(self.names + (name,), self.weights + (weight,))

    def drop(self, names: Iterable[str]) -> "CoxData":
        gone = set(names)
        kept = [(n, w) for n, w in zip(self.names, self.weights) if n not in gone]
        return CoxData(tuple(n for n, _ in kept), tuple(w for _, w in kept))

    def chamber_irrelevant(self, chamber: int) -> Tuple[List[str], List[str]]:
        """Irrelevant components (L, R) for the chamber after ray group `chamber`"""
        groups = self.groups()
        left = [name for g in groups[: chamber + 1] for name in self.group_names(g)]
        right = [name for g in groups[chamber + 1:] for name in self.group_names(g)]
        return left, right

    @property
    def irrelevant(self) -> Tuple[List[str], List[str]]:
        start, _ = mobile_cone_indices(self.groups())
        return self.chamber_irrelevant(start)

    def well_formed_gcd(self) -> int:
        """gcd of the nonzero 2x2 minors of the grading matrix"""
        g = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                g = gcd(g, abs(det(self.weights[i], self.weights[j])))
        return g

    def describe(self) -> str:
        cols = [f"{name}{w}" for name, w in zip(self.names, self.weights)]
        return " ".join(cols)


def normalize_stack_grading(
    row1: Sequence[int], row2: Sequence, r: int
) -> Tuple[List[int], List[int]]:
    """
    Well-formed grading from the stacky blow-up matrix

    Args:
        row1: First row, unchanged
        row2: Second row before normalization
        r: Index of the quotient point

    Returns:
        (row1, (row1 - row2) / r)
    """
    if len(row1) != len(row2):
        raise CoxError("grading rows differ in length")
    out: List[int] = []
    for i, (a, b) in enumerate(zip(row1, row2)):
        value = (Fraction(a) - Fraction(b)) / r
        if value.denominator != 1:
            raise CoxError(
                f"column {i}: ({a} - {b})/{r} = {value} is not integral", code="NonIntegralResult"
            )
        out.append(int(value))
    return list(row1), out


def bidegree(p: SparsePoly, cox: CoxData) -> Weight:
    """The common bidegree of a homogeneous polynomial"""
    if p.is_zero:
        raise CoxError("the zero polynomial has no degree", code="EmptyPolynomial")
    degrees: Dict[Weight, List[Monomial]] = {}
    for m in p.support():
        degrees.setdefault(cox.monomial_degree(m), []).append(m)
    if len(degrees) > 1:
        detail = "; ".join(
            f"{deg}: {', '.join(mono_str(m) for m in monos[:4])}"
            for deg, monos in sorted(degrees.items())
        )
        raise CoxError(f"terms of different bidegrees ({detail})", code="NotHomogeneous")
    return next(iter(degrees))


def anticanonical_class(cox: CoxData) -> Weight:
    return weight_sum(cox.weights)


def adjunction_class(cox: CoxData, equation_degrees: Sequence[Weight]) -> Weight:
    """-K_Y = -K_T - sum of equation degrees"""
    return anticanonical_class(cox) - weight_sum(equation_degrees)


def mobile_cone_indices(groups: Sequence[RayGroup]) -> Tuple[int, int]:
    """Indices of the ray groups bounding the mobile cone"""
    if len(groups) < 3:
        raise CoxError(f"only {len(groups)} ray groups", code="FewerThanThreeRayGroups")
    start = 0 if len(groups[0]) >= 2 else 1
    end = len(groups) - 1 if len(groups[-1]) >= 2 else len(groups) - 2
    if start >= end:
        raise CoxError("mobile cone is a single ray", code="DegenerateMobileCone")
    return start, end


def mobile_cone(cox: CoxData) -> Cone2:
    groups = cox.groups()
    start, end = mobile_cone_indices(groups)
    return Cone2(groups[start].ray, groups[end].ray)


def git_chambers(cox: CoxData) -> List[Cone2]:
    """Nef chambers of the small modifications, clockwise"""
    groups = cox.groups()
    start, end = mobile_cone_indices(groups)
    return [Cone2(groups[i].ray, groups[i + 1].ray) for i in range(start, end)]


@dataclass
class Embedding:
    """Y inside a rank-2 toric variety, cut out by named equations"""
    cox: CoxData
    equations: Dict[str, SparsePoly]
    anticanonical: Weight
    dimension: int = 3
    notes: List[str] = field(default_factory=list)

    def degrees(self) -> Dict[str, Weight]:
        return {name: bidegree(eq, self.cox) for name, eq in self.equations.items()}

    def adjunction(self) -> Weight:
        return adjunction_class(self.cox, list(self.degrees().values()))

    def render(self) -> Dict[str, str]:
        return {name: str(eq) for name, eq in self.equations.items()}


def embedding_from(cox: CoxData, equations: Mapping[str, SparsePoly]) -> Embedding:
    """Complete-intersection embedding with -K_Y by adjunction"""
    eqs = dict(equations)
    degrees = [bidegree(eq, cox) for eq in eqs.values()]
    return Embedding(
        cox=cox,
        equations=eqs,
        anticanonical=adjunction_class(cox, degrees),
        dimension=cox.n - 2 - len(eqs),
    )
