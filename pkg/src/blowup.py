"""
Kawamata blow-up of a terminal cyclic quotient point

The blow-up of p = p_v0 in 1/r(1, a, r-a) is the weighted blow-up that gives
each variable x_i a local weight w_i: 0 for the nonvanishing variable,
a_i mod r for the residue coordinates, and alpha_v for a tangent variable v
(the v in a monomial v0^k * v).  The toric blow-up T has the extra variable u
and the grading (a_i, (a_i - w_i)/r).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy as sp

from .cones2d import Weight
from .coxring import CoxData, Embedding, bidegree, embedding_from, normalize_stack_grading
from .errors import BlowupError
from .polynomial import Monomial, SparsePoly, mono_degree, mono_mul, monomial

EXCEPTIONAL = "u"


@dataclass(frozen=True)
class SingularPoint:
    """Coordinate point carrying the germ 1/r(1, a, r-a)"""
    variable: str
    r: int
    a: int

    def __post_init__(self):
        if self.r < 2 or not 0 < self.a < self.r:
            raise BlowupError(f"germ 1/{self.r}(1,{self.a},{self.r - self.a}) is not valid")
        if not is_terminal_cyclic(self.r, self.a):
            raise BlowupError(f"germ {self.germ} is not terminal", code="NonTerminalCentre")

    @property
    def germ(self) -> str:
        return f"1/{self.r}(1,{self.a},{self.r - self.a})"


@dataclass
class WeightedCI:
    """Weighted complete intersection X in P(a_0, ..., a_n)"""
    names: Tuple[str, ...]
    weights: Tuple[int, ...]
    equations: Dict[str, SparsePoly] = field(default_factory=dict)

    def weight_of(self, name: str) -> int:
        return self.weights[self.names.index(name)]


@dataclass(frozen=True)
class BlowupAssignment:
    """Local weights w_i of the blow-up, one per variable of X"""
    weights: Mapping[str, int]
    r: int

    def weight_sum(self, m: Monomial) -> int:
        return sum(self.weights[name] * e for name, e in m if name != EXCEPTIONAL)

    def valuation(self, m: Monomial) -> Fraction:
        return Fraction(self.weight_sum(m), self.r)


@dataclass
class BlowupResult:
    embedding: Embedding
    point: SingularPoint
    assignment: BlowupAssignment
    tangents: Dict[str, str]
    alphas: Dict[str, int]
    valuations: Dict[str, Fraction]
    exceptional: Weight
    discrepancy: Fraction
    germ_ok: Optional[bool]


def is_terminal_cyclic(r: int, a: int) -> bool:
    """1/r(1, a, r-a) is terminal iff gcd(a, r) = 1"""
    if r < 2:
        raise BlowupError(f"germ order {r} < 2")
    return gcd(a, r) == 1


def is_terminal_germ(n: int, weights: Sequence[int]) -> bool:
    """Terminal lemma for a 3-dimensional germ 1/n(w1, w2, w3)"""
    if n == 1:
        return True
    reduced = [w % n for w in weights]
    for wi, wj, wk in permutations(reduced, 3):
        if (wi + wj) % n == 0 and gcd(wk, n) == 1:
            a = (wi * pow(wk, -1, n)) % n
            if a and is_terminal_cyclic(n, a):
                return True
    return False


def find_tangent_variable(
    eq: SparsePoly, point: SingularPoint, designated: Optional[str] = None
) -> str:
    """
    The v of a monomial p^k * v in eq

    Args:
        eq: Equation of X
        point: The centre; its variable is the nonvanishing one
        designated: Variable named by the family file, validated rather than guessed

    Returns:
        Name of the tangent variable
    """
    candidates: List[str] = []
    for m in eq.support():
        if mono_degree(m, point.variable) < 1:
            continue
        rest = [(v, e) for v, e in m if v != point.variable]
        if len(rest) == 1 and rest[0][1] == 1 and rest[0][0] not in candidates:
            candidates.append(rest[0][0])

    if designated is not None:
        if designated in candidates:
            return designated
        raise BlowupError(
            f"no monomial {point.variable}^k*{designated} in the equation", code="NoTangentMonomial"
        )
    if not candidates:
        raise BlowupError(
            f"no monomial {point.variable}^k*v in the equation", code="NoTangentMonomial"
        )
    if len(candidates) > 1:
        raise BlowupError(
            f"several tangent candidates {candidates}; name one in the family file",
            code="AmbiguousTangent",
        )
    return candidates[0]


def blowup_valuation(eq: SparsePoly, assign: BlowupAssignment, r: int) -> Fraction:
    """m = min over monomials of sum(w_i e_i)/r"""
    if eq.is_zero:
        raise BlowupError("valuation of the zero polynomial", code="EmptyPolynomial")
    return min(Fraction(assign.weight_sum(m), r) for m in eq.support())


def solve_tangent_weights(
    ci: WeightedCI,
    point: SingularPoint,
    tangents: Mapping[str, str],
    fixed: Mapping[str, int],
    max_iterations: int = 50,
) -> Dict[str, int]:
    """alpha_v = r * (min valuation over the monomials of v's equation free of v)"""
    r = point.r
    alpha = {v: (ci.weight_of(v) % r) or r for v in tangents.values()}

    def local(name: str) -> int:
        if name == point.variable:
            return 0
        if name in alpha:
            return alpha[name]
        return fixed[name]

    for _ in range(max_iterations):
        updated: Dict[str, int] = {}
        for eq_name, v in tangents.items():
            others = [m for m in ci.equations[eq_name].support() if mono_degree(m, v) == 0]
            if not others:
                raise BlowupError(
                    f"every monomial of {eq_name} involves {v}", code="ReducibleExceptional"
                )
            updated[v] = min(sum(local(name) * e for name, e in m) for m in others)
        if updated == alpha:
            break
        alpha = updated
    else:
        raise BlowupError("tangent weights did not settle", code="ReducibleExceptional")

    for v, value in alpha.items():
        if value <= 0 or (value - ci.weight_of(v)) % r != 0:
            raise BlowupError(
                f"alpha_{v} = {value} is not a positive lift of {ci.weight_of(v)} mod {r}",
                code="ReducibleExceptional",
            )
    return alpha


def proper_transform(
    eq: SparsePoly, assign: BlowupAssignment, m: Fraction, r: int
) -> SparsePoly:
    """Each monomial gains the u-power val(monomial) - m"""
    out: Dict[Monomial, object] = {}
    for mono, c in eq:
        excess = Fraction(assign.weight_sum(mono)) - r * m
        if excess.denominator != 1 or excess < 0 or int(excess) % r != 0:
            raise BlowupError(
                f"u-exponent ({assign.weight_sum(mono)} - {r * m})/{r} is not a natural number",
                code="NonIntegralExponent",
            )
        e = int(excess) // r
        out[mono_mul(mono, monomial({EXCEPTIONAL: e}))] = c
    return SparsePoly(out)


def pullback(eq: SparsePoly, assign: BlowupAssignment, m: Fraction) -> sp.Expr:
    """Substitute x_i -> u^(w_i/r) x_i and divide by u^m"""
    u = sp.Symbol(EXCEPTIONAL)
    symbols = {name: sp.Symbol(name) for name in assign.weights}
    images = {
        symbols[name]: u ** sp.Rational(w, assign.r) * symbols[name]
        for name, w in assign.weights.items()
    }
    expr = eq.to_expr(symbols).subs(images, simultaneous=True)
    return sp.expand(sp.powsimp(expr * u ** sp.Rational(-m.numerator, m.denominator)))


def kawamata_grading(
    ci: WeightedCI,
    point: SingularPoint,
    tangent: Optional[Mapping[str, Optional[str]]] = None,
    local_weights: Optional[Mapping[str, int]] = None,
    max_iterations: int = 50,
) -> BlowupResult:
    """
    Toric blow-up T, proper transforms and -K_Y for the Kawamata blow-up

    Args:
        ci: The weighted complete intersection
        point: Centre of the blow-up
        tangent: Equation name -> tangent variable (None: no tangent monomial)
        local_weights: Explicit local weights, for centres outside the standard pattern
        max_iterations: Cap for the tangent weight iteration

    Returns:
        BlowupResult with the embedding of Y in T
    """
    tangent = dict(tangent or {})
    overrides = dict(local_weights or {})
    r = point.r

    if EXCEPTIONAL in ci.names:
        raise BlowupError(f"variable name {EXCEPTIONAL} is reserved")
    if point.variable not in ci.names:
        raise BlowupError(f"unknown centre variable {point.variable}")
    if ci.weight_of(point.variable) != r:
        raise BlowupError(
            f"p_{point.variable} has weight {ci.weight_of(point.variable)}, not {r}"
        )

    tangents: Dict[str, str] = {}
    for eq_name, eq in ci.equations.items():
        if eq_name in tangent:
            if tangent[eq_name] is not None:
                tangents[eq_name] = find_tangent_variable(eq, point, tangent[eq_name])
            continue
        try:
            tangents[eq_name] = find_tangent_variable(eq, point)
        except BlowupError as e:
            if e.code != "NoTangentMonomial":
                raise

    fixed: Dict[str, int] = {}
    for name in ci.names:
        if name == point.variable or name in tangents.values():
            continue
        if name in overrides:
            fixed[name] = overrides[name]
            continue
        residue = ci.weight_of(name) % r
        if residue == 0:
            raise BlowupError(
                f"{name} has weight divisible by {r}; supply overrides.local_weights",
                code="LocalWeightRequired",
            )
        fixed[name] = residue

    alphas = solve_tangent_weights(ci, point, tangents, fixed, max_iterations)
    for v, value in alphas.items():
        if v in overrides and overrides[v] != value:
            raise BlowupError(
                f"override {v}={overrides[v]} contradicts alpha_{v}={value}",
                code="ReducibleExceptional",
            )

    weights = {name: 0 if name == point.variable else alphas.get(name, fixed.get(name, 0))
               for name in ci.names}
    assign = BlowupAssignment(weights=weights, r=r)

    valuations: Dict[str, Fraction] = {}
    for eq_name, eq in ci.equations.items():
        valuations[eq_name] = blowup_valuation(eq, assign, r)
        v = tangents.get(eq_name)
        if v is not None and valuations[eq_name] != Fraction(alphas[v], r):
            raise BlowupError(
                f"m_{eq_name} = {valuations[eq_name]} but alpha_{v}/r = {Fraction(alphas[v], r)}",
                code="ReducibleExceptional",
            )

    names = (EXCEPTIONAL,) + tuple(ci.names)
    row1 = [0] + list(ci.weights)
    row2 = [-r] + [weights[name] for name in ci.names]
    row1, row2 = normalize_stack_grading(row1, row2, r)
    cox = CoxData(names, tuple(Weight(a, b) for a, b in zip(row1, row2)))

    transforms = {
        eq_name: proper_transform(eq, assign, valuations[eq_name], r)
        for eq_name, eq in ci.equations.items()
    }
    for eq in transforms.values():
        bidegree(eq, cox)
    embedding = embedding_from(cox, transforms)

    coords = [n for n in ci.names
              if n != point.variable and n not in tangents.values() and n not in overrides]
    germ_ok: Optional[bool] = None
    if len(coords) == 3:
        expected = sorted([1 % r, point.a % r, (r - point.a) % r])
        germ_ok = sorted(ci.weight_of(n) % r for n in coords) == expected

    return BlowupResult(
        embedding=embedding,
        point=point,
        assignment=assign,
        tangents=tangents,
        alphas=alphas,
        valuations=valuations,
        exceptional=cox.weight(EXCEPTIONAL),
        discrepancy=Fraction(1, r),
        germ_ok=germ_ok,
    )
