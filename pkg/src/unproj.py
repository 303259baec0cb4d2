"""
Fake divisors and unprojection

A fake divisor is a divisor of Y cut out by a component of the irrelevant
ideal of some chamber.  The ambient game then sees a divisorial contraction
where Y only has a small one, and Y must be re-embedded with a new Cox
variable: a ratio of parts of an equation (two-ratio) or of a relation and an
equation (triple).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cones2d import Weight
from .coxring import CoxData, Embedding, adjunction_class, bidegree, mobile_cone_indices
from .errors import EngineError, UnprojectionError
from .models import SubstitutionSpec, UnprojectionPlan, UnprojectionRecord
from .polynomial import Monomial, SparsePoly, mono_div, mono_vars, monomial


@dataclass(frozen=True)
class FakeDivisor:
    """Irrelevant component S of a chamber whose locus on Y is a divisor"""
    chamber: int
    wall: Weight
    ideal: Tuple[str, ...]
    equations: Tuple[str, ...]


@dataclass
class UnprojectionStep:
    variable: str
    weight: Weight
    ideal: Tuple[str, ...]
    kind: str
    replaced: str
    ratios: List[Tuple[SparsePoly, str]]
    embedding: Embedding
    new_equations: List[str] = field(default_factory=list)
    eliminated: List[str] = field(default_factory=list)
    power: int = 1

    def record(self) -> UnprojectionRecord:
        return UnprojectionRecord(
            variable=self.variable,
            weight=self.weight.as_tuple(),
            ideal=list(self.ideal),
            kind=self.kind,
            equation=self.replaced,
            equations=list(self.new_equations),
            eliminated=list(self.eliminated),
        )


def is_complete_intersection(emb: Embedding) -> bool:
    return emb.dimension == emb.cox.n - 2 - len(emb.equations)


def _vanishes_on(eq: SparsePoly, ideal: Sequence[str]) -> bool:
    """Every monomial is divisible by a variable of the ideal"""
    names = set(ideal)
    return all(names.intersection(mono_vars(m)) for m in eq.support())


def fake_divisor_equations(emb: Embedding, ideal: Sequence[str]) -> List[str]:
    return [name for name, eq in emb.equations.items() if _vanishes_on(eq, ideal)]


def _forces_wall_zero(emb: Embedding, side: Sequence[str], wall: Sequence[str]) -> bool:
    """On {side = 0} some equation is a power of the only wall variable"""
    if len(wall) != 1:
        return False
    for eq in emb.equations.values():
        rest = eq.restrict_zero(side)
        if not rest.is_zero and all(set(mono_vars(m)) <= set(wall) for m in rest.support()):
            return True
    return False


def _excess(emb: Embedding) -> int:
    """Equations beyond the codimension of Y"""
    return max(0, len(emb.equations) - (emb.cox.n - 2 - emb.dimension))


def detect_fake_divisor(emb: Embedding) -> Optional[FakeDivisor]:
    """
    First chamber of the walk with a fake divisor

    {S = 0} has codimension |S| in T; when |S| - 1 equations vanish on it,
    Y contains a divisor there.  The divisor only matters if it survives on
    the wall next to the chamber, so a side is skipped when the variables
    beyond that wall are absent (a fibration base) or when an equation
    restricted to {S = 0} kills the single wall variable.

    Args:
        emb: The current embedding of Y

    Returns:
        FakeDivisor or None; the left component is tested before the right one
    """
    cox = emb.cox
    groups = cox.groups()
    start, end = mobile_cone_indices(groups)
    excess = _excess(emb)
    for chamber in range(start, end):
        left, right = cox.chamber_irrelevant(chamber)
        sides = (
            (left, groups[chamber + 1], groups[chamber + 2:]),
            (right, groups[chamber], groups[:chamber]),
        )
        for side, wall_group, beyond in sides:
            if len(side) < 2 or not beyond:
                continue
            wall = cox.group_names(wall_group)
            vanishing = fake_divisor_equations(emb, side)
            if len(vanishing) < len(side) - 1 + excess:
                continue
            if _forces_wall_zero(emb, side, wall):
                continue
            return FakeDivisor(
                chamber=chamber,
                wall=wall_group.ray,
                ideal=tuple(side),
                equations=tuple(vanishing),
            )
    return None


def substitute_monomial(
    target: SparsePoly, m: Monomial, source: SparsePoly, depth: int = 2
) -> SparsePoly:
    """Rewrite target modulo source by replacing m with -(source - c*m)/c"""
    c = source.coefficient(m)
    if c == 0:
        raise UnprojectionError(f"substituted monomial {m} is not in the source equation")
    value = (source - SparsePoly({m: c})).scale(-1 / c)
    for _ in range(depth):
        rewritten = target.replace_monomial(m, value)
        if rewritten == target:
            break
        target = rewritten
    return target


def apply_substitutions(
    emb: Embedding, substitutions: Sequence[SubstitutionSpec], depth: int = 2
) -> Embedding:
    """The declared rewrites; the ideal of Y is unchanged"""
    equations = dict(emb.equations)
    for sub in substitutions:
        for name in (sub.target, sub.using):
            if name not in equations:
                raise UnprojectionError(f"substitution names unknown equation {name}")
        equations[sub.target] = substitute_monomial(
            equations[sub.target], monomial(sub.monomial), equations[sub.using], depth
        )
        bidegree(equations[sub.target], emb.cox)
    return Embedding(emb.cox, equations, emb.anticanonical, emb.dimension, list(emb.notes))


def split_by_ideal(eq: SparsePoly, ideal: Sequence[str]) -> List[SparsePoly]:
    """
    eq = sum ideal[i] * parts[i], each term going to the first listed variable dividing it
    """
    parts = [SparsePoly() for _ in ideal]
    for m, c in eq:
        for i, name in enumerate(ideal):
            q = mono_div(m, ((name, 1),))
            if q is not None:
                parts[i] = parts[i] + SparsePoly({q: c})
                break
        else:
            raise UnprojectionError(
                f"term {SparsePoly({m: c})} is not in the ideal ({','.join(ideal)})",
                code="NoValidSplit",
            )
    return parts


def _checked_embedding(
    old: Embedding, cox: CoxData, equations: Dict[str, SparsePoly]
) -> Embedding:
    degrees = [bidegree(eq, cox) for eq in equations.values()]
    emb = Embedding(cox, equations, old.anticanonical, old.dimension, list(old.notes))
    if is_complete_intersection(emb) and is_complete_intersection(old):
        if adjunction_class(cox, degrees) != old.anticanonical:
            raise UnprojectionError(
                f"-K changes from {old.anticanonical} to {adjunction_class(cox, degrees)}",
                code="InconsistentWeights",
            )
    return emb


def _split_power(eq: SparsePoly, u: str, m: str, power: int) -> Tuple[SparsePoly, SparsePoly]:
    """eq = m^power * A + u * B, terms divisible by m^power going to A"""
    lead = monomial({m: power})
    a_part, b_part = SparsePoly(), SparsePoly()
    for mono, c in eq:
        q = mono_div(mono, lead)
        if q is not None:
            a_part = a_part + SparsePoly({q: c})
            continue
        q = mono_div(mono, ((u, 1),))
        if q is None:
            raise UnprojectionError(
                f"term {SparsePoly({mono: c})} is not in the ideal ({u},{m}^{power})",
                code="NoValidSplit",
            )
        b_part = b_part + SparsePoly({q: c})
    return a_part, b_part


def unproject_two_ratio(
    emb: Embedding, equation: str, ideal: Sequence[str], variable: str, power: int = 1
) -> UnprojectionStep:
    """
    Replace E = M^k*A + u*B by u*rho = A and M^k*rho = -B

    Args:
        emb: Current embedding
        equation: Name of E
        ideal: (u, M); terms divisible by M^k go to A
        variable: Name of the new variable rho
        power: The exponent k

    Returns:
        UnprojectionStep with the new embedding
    """
    if len(ideal) != 2:
        raise UnprojectionError(f"two-ratio unprojection needs 2 ideal variables, got {ideal}")
    if power < 1:
        raise UnprojectionError(f"power {power} is not positive")
    if equation not in emb.equations:
        raise UnprojectionError(f"unknown equation {equation}")
    if variable in emb.cox.names:
        raise UnprojectionError(f"variable {variable} already exists")
    u, m = ideal
    a_part, b_part = _split_power(emb.equations[equation], u, m, power)
    if a_part.is_zero or b_part.is_zero:
        raise UnprojectionError(
            f"{equation} is not a combination of both {u} and {m}^{power}", code="NoValidSplit"
        )

    cox = emb.cox
    weight = bidegree(a_part, cox) - cox.weight(u)
    if bidegree(b_part, cox) - cox.weight(m).scale(power) != weight:
        raise UnprojectionError(
            f"ratios {a_part}/{u} and {b_part}/{m}^{power} differ in degree",
            code="InconsistentWeights",
        )
    try:
        new_cox = cox.extend(variable, weight)
    except EngineError as e:
        raise UnprojectionError(f"{variable}{weight} breaks the grading: {e}",
                                code="InconsistentWeights")

    rho = SparsePoly.variable(variable)
    with_u = SparsePoly.variable(u) * rho - a_part
    with_m = SparsePoly.variable(m) ** power * rho + b_part
    equations: Dict[str, SparsePoly] = {}
    for name, old in emb.equations.items():
        if name == equation:
            equations[f"{variable}{u}"] = with_u
            equations[f"{variable}{m}"] = with_m
        else:
            equations[name] = old

    return UnprojectionStep(
        variable=variable,
        weight=weight,
        ideal=(u, m),
        kind="two-ratio",
        replaced=equation,
        ratios=[(a_part, u), (-b_part, m)],
        embedding=_checked_embedding(emb, new_cox, equations),
        new_equations=[f"{variable}{u}", f"{variable}{m}"],
        power=power,
    )


def unproject_triple(
    emb: Embedding, equation: str, relation: str, ideal: Sequence[str], variable: str
) -> UnprojectionStep:
    """
    Triple-ratio unprojection from a relation a1*p1 = a2*p2 + a3*p3

    With the equation a1*F = a2*G + a3*H the new variable satisfies
    a1*eta = p2*H - p3*G, a2*eta = p1*H - p3*F, a3*eta = p2*F - p1*G.
    """
    if len(ideal) != 3:
        raise UnprojectionError(f"triple unprojection needs 3 ideal variables, got {ideal}")
    for name in (equation, relation):
        if name not in emb.equations:
            raise UnprojectionError(f"unknown equation {name}")
    if variable in emb.cox.names:
        raise UnprojectionError(f"variable {variable} already exists")

    p1, p2, p3 = split_by_ideal(emb.equations[relation], ideal)
    f, g, h = split_by_ideal(emb.equations[equation], ideal)
    p2, p3, g, h = -p2, -p3, -g, -h
    if any(part.is_zero for part in (p1, p2, p3, f, g, h)):
        raise UnprojectionError(
            f"{relation} and {equation} need terms in each of {','.join(ideal)}",
            code="NoValidSplit",
        )

    cox = emb.cox
    numerators = [p2 * h - p3 * g, p1 * h - p3 * f, p2 * f - p1 * g]
    weights = set()
    for a, num in zip(ideal, numerators):
        if num.is_zero:
            raise UnprojectionError(f"ratio over {a} vanishes", code="NoValidSplit")
        weights.add(bidegree(num, cox) - cox.weight(a))
    if len(weights) != 1:
        raise UnprojectionError(
            f"ratios give different weights {sorted(weights)}", code="InconsistentWeights"
        )
    weight = weights.pop()
    expected = (bidegree(emb.equations[relation], cox) + bidegree(emb.equations[equation], cox)
                - cox.weight(ideal[0]) - cox.weight(ideal[1]) - cox.weight(ideal[2]))
    if weight != expected:
        raise UnprojectionError(f"weight {weight} is not {expected}", code="InconsistentWeights")
    try:
        new_cox = cox.extend(variable, weight)
    except EngineError as e:
        raise UnprojectionError(f"{variable}{weight} breaks the grading: {e}",
                                code="InconsistentWeights")

    eta = SparsePoly.variable(variable)
    equations = dict(emb.equations)
    names = []
    for a, num in zip(ideal, numerators):
        name = f"{variable}{a}"
        equations[name] = SparsePoly.variable(a) * eta - num
        names.append(name)

    return UnprojectionStep(
        variable=variable,
        weight=weight,
        ideal=tuple(ideal),
        kind="triple",
        replaced=equation,
        ratios=list(zip(numerators, ideal)),
        embedding=_checked_embedding(emb, new_cox, equations),
        new_equations=names,
    )


def recover_equation(step: UnprojectionStep) -> SparsePoly:
    """M^k*(u*rho - A) - u*(M^k*rho + B) = -(M^k*A + u*B)"""
    if step.kind != "two-ratio":
        raise UnprojectionError("projection back is defined for two-ratio steps")
    u, m = step.ideal
    with_u, with_m = (step.embedding.equations[name] for name in step.new_equations)
    return -(SparsePoly.variable(m) ** step.power * with_u - SparsePoly.variable(u) * with_m)


def eliminate_linear(emb: Embedding, variable: str) -> Embedding:
    """Solve the equation where variable is a lone linear term and substitute"""
    lone = ((variable, 1),)
    for name, eq in emb.equations.items():
        c = eq.coefficient(lone)
        if c == 0:
            continue
        others = [m for m in eq.support() if m != lone and variable in mono_vars(m)]
        if others:
            continue
        value = (eq - SparsePoly({lone: c})).scale(-1 / c)
        equations = {
            other: poly.substitute(variable, value)
            for other, poly in emb.equations.items()
            if other != name
        }
        cox = emb.cox.drop([variable])
        for poly in equations.values():
            bidegree(poly, cox)
        return Embedding(cox, equations, emb.anticanonical, emb.dimension, list(emb.notes))
    raise UnprojectionError(
        f"{variable} is not a lone linear term of any equation", code="NotLinearlySolvable"
    )


def apply_plan(emb: Embedding, plan: UnprojectionPlan) -> UnprojectionStep:
    """Run one declared unprojection and its planned eliminations"""
    if plan.relation:
        step = unproject_triple(emb, plan.equation, plan.relation, plan.ideal, plan.variable)
    else:
        step = unproject_two_ratio(emb, plan.equation, plan.ideal, plan.variable, plan.power)
    for name in plan.eliminate:
        step.embedding = eliminate_linear(step.embedding, name)
        step.eliminated.append(name)
    return step

