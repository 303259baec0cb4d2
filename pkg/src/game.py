"""
The 2-ray game on the toric blow-up T and its restriction to Y

The ambient game walks the GIT chambers of T clockwise.  Each interior wall
is a flip of T over the wall; on Y it is an isomorphism, a flip, flop or
antiflip with fewer local weights, or it breaks down.  The two ends are a
divisorial contraction or a fibration.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .blowup import BlowupResult, is_terminal_germ, kawamata_grading
from .cones2d import LinearForm, RayGroup, Weight, classify_position, det, on_ray, wall_normal
from .config import EngineConfig
from .coxring import CoxData, Embedding, bidegree, mobile_cone, mobile_cone_indices
from .errors import EngineError, GameError, IntersectError, UnprojectionError
from .family import singular_point, weighted_ci
from .intersect import anticanonical_degree, count_on_wall, curve_divisor_numbers, fano_degree
from .logger import logger
from .models import (
    CurveNumbers, FamilySpec, FlipDirection, GameStep, Position, StepKind, Verdict, VerdictTag,
)
from .polynomial import SparsePoly, mono_str
from .unproj import (
    FakeDivisor, UnprojectionStep, apply_plan, apply_substitutions, detect_fake_divisor,
    eliminate_linear,
)
from .verdicts import GameContext, decide


def _names(cox: CoxData, groups: Sequence[RayGroup]) -> List[str]:
    return [name for g in groups for name in cox.group_names(g)]


def _end_step(cox: CoxData, groups: List[RayGroup], index: int, outer: int) -> GameStep:
    group = groups[index]
    if index == outer:
        names = cox.group_names(group)
        return GameStep(
            wall=group.ray.as_tuple(),
            kind=StepKind.FIBRATION,
            base_variables=names,
            base_weights=[cox.weight(n).multiplicity for n in names],
            base_dimension=len(names) - 1,
        )
    return GameStep(
        wall=group.ray.as_tuple(),
        kind=StepKind.DIVISORIAL_CONTRACTION,
        contracted=cox.group_names(groups[outer]),
    )


def play_ambient(cox: CoxData) -> List[GameStep]:
    """
    The clockwise walk on T

    Args:
        cox: Cox data of T

    Returns:
        Start end step, one FlipType step per interior wall, end step
    """
    groups = cox.groups()
    start, end = mobile_cone_indices(groups)
    steps = [_end_step(cox, groups, start, 0)]
    for i in range(start + 1, end):
        form = wall_normal(groups[i].ray)
        outside = _names(cox, groups[:i]) + _names(cox, groups[i + 1:])
        steps.append(GameStep(
            wall=groups[i].ray.as_tuple(),
            kind=StepKind.FLIP,
            local_weights=[(n, form(cox.weight(n))) for n in outside],
            base_dimension=len(groups[i]) - 1,
        ))
    steps.append(_end_step(cox, groups, end, len(groups) - 1))
    return steps


def wall_split(cox: CoxData, wall) -> Tuple[List[str], List[str], List[str], LinearForm]:
    """Variables before, on and after a wall, and its normal form"""
    ray = Weight.of(wall)
    groups = cox.groups()
    for i, g in enumerate(groups):
        if g.ray == ray:
            return (_names(cox, groups[:i]), cox.group_names(g),
                    _names(cox, groups[i + 1:]), wall_normal(ray))
    raise GameError(f"no ray group on the wall {ray}")


def _match(equations: Sequence[str], candidates: Dict[str, List[str]]) -> Dict[str, str]:
    """Maximum matching of equations to the variables they can eliminate"""
    owner: Dict[str, str] = {}

    def augment(eq: str, seen: set) -> bool:
        for v in candidates[eq]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = eq
                return True
        return False

    for eq in equations:
        augment(eq, set())
    return {eq: v for v, eq in owner.items()}


def _direction(value: int) -> FlipDirection:
    if value > 0:
        return FlipDirection.FLIP
    if value < 0:
        return FlipDirection.ANTIFLIP
    return FlipDirection.FLOP


def _witness(pure: SparsePoly) -> str:
    return mono_str(min(pure.support(), key=lambda m: (len(m), m)))


def restrict_wall(step: GameStep, emb: Embedding) -> GameStep:
    """Restrict an ambient flip to Y"""
    cox = emb.cox
    before, on_wall, after, form = wall_split(cox, step.wall)
    k = len(on_wall)
    outside = before + after

    conditions: List[Tuple[str, SparsePoly, int]] = []
    moving: List[str] = []
    for name, eq in emb.equations.items():
        d = bidegree(eq, cox)
        if form(d) == 0:
            pure = eq.only_in(on_wall)
            if not pure.is_zero:
                conditions.append((name, pure, d.multiplicity))
        else:
            moving.append(name)

    if len(conditions) >= k:
        name, pure, _ = conditions[0]
        return GameStep(wall=step.wall, kind=StepKind.ISOMORPHISM,
                        witness=f"{_witness(pure)} in {name}")

    candidates: Dict[str, List[str]] = {}
    for name in moving:
        found = []
        for m in emb.equations[name].support():
            free = [(v, e) for v, e in m if v not in on_wall]
            if len(free) == 1 and free[0][1] == 1 and free[0][0] not in found:
                found.append(free[0][0])
        candidates[name] = sorted(found, key=outside.index)

    matching = _match(moving, candidates)
    eliminated = [matching[n] for n in moving if n in matching]
    residual = [form(bidegree(emb.equations[n], cox)) for n in moving if n not in matching]
    local = [(v, form(cox.weight(v))) for v in outside if v not in eliminated]
    if not any(w > 0 for _, w in local) or not any(w < 0 for _, w in local):
        raise GameError(
            f"wall {Weight.of(step.wall)}: local weights {local} after eliminating "
            f"{eliminated} have one sign",
            code="UnresolvedRestriction",
        )

    direction = _direction(form(emb.anticanonical))
    count = None
    if k == 1 or len(conditions) == k - 1:
        count = count_on_wall([c[2] for c in conditions],
                              [cox.weight(v).multiplicity for v in on_wall])

    terminal = None
    if direction == FlipDirection.ANTIFLIP and not residual and len(local) == 4:
        terminal = all(
            is_terminal_germ(abs(w), [x for other, x in local if other != v])
            for v, w in local
            if v in after and abs(w) >= 2
        )

    return GameStep(
        wall=step.wall,
        kind=StepKind.FLIP,
        local_weights=local,
        eliminated=eliminated,
        residual_degrees=residual,
        base_dimension=k - 1 - len(conditions),
        direction=direction,
        flipping_count=str(count) if count is not None else None,
        terminal=terminal,
    )


def fibration_label(fibre_dimension: int, k_trivial: bool) -> str:
    if fibre_dimension <= 0:
        return "DoubleCoverCandidate"
    if fibre_dimension == 1:
        return "elliptic fibration" if k_trivial else "conic bundle"
    if fibre_dimension == 2:
        return "K3 fibration" if k_trivial else "del Pezzo fibration"
    return "fibration"


def restrict_fibration(step: GameStep, emb: Embedding) -> GameStep:
    group = set(step.base_variables)
    on_base = [n for n, eq in emb.equations.items() if set(eq.variables()) <= group]
    base = len(group) - 1 - len(on_base)
    fibre = emb.dimension - base
    return step.model_copy(update={
        "base_dimension": base,
        "fibre_dimension": fibre,
        "ending": fibration_label(fibre, on_ray(Weight.of(step.wall), emb.anticanonical)),
    })


def restrict_to_Y(steps: Sequence[GameStep], emb: Embedding) -> List[GameStep]:
    """
    The game on Y; stops at the first wall that cannot be resolved

    Args:
        steps: Output of play_ambient
        emb: Embedding of Y in T

    Returns:
        Restricted steps, possibly ending with an Error step
    """
    out: List[GameStep] = []
    for step in steps:
        if step.kind == StepKind.FIBRATION:
            out.append(restrict_fibration(step, emb))
        elif step.kind == StepKind.FLIP:
            try:
                out.append(restrict_wall(step, emb))
            except GameError as e:
                out.append(GameStep(wall=step.wall, kind=StepKind.ERROR, reason=str(e)))
                break
        else:
            out.append(step)
    return out


def fake_divisor_trail(steps: Sequence[GameStep], emb: Embedding, fake: FakeDivisor) -> List[GameStep]:
    """Restricted steps up to the chamber of the fake divisor, which replaces its wall"""
    start, _ = mobile_cone_indices(emb.cox.groups())
    index = fake.chamber + 1 - start
    trail = restrict_to_Y(steps[:index], emb)
    trail.append(GameStep(wall=fake.wall.as_tuple(), kind=StepKind.FAKE_DIVISOR,
                          ideal=list(fake.ideal)))
    return trail


def final_model(emb: Embedding, step: GameStep) -> Optional[Embedding]:
    """
    Endpoint of a divisorial contraction of one variable x

    Sets x = 1, grades by l_x(w) = det(w_x, w) and eliminates every lone
    linear variable.  The result lives in a weighted projective space,
    stored as a grading on the (1,0) ray.
    """
    if step.kind != StepKind.DIVISORIAL_CONTRACTION or len(step.contracted) != 1:
        return None
    x = step.contracted[0]
    cox = emb.cox
    wx = cox.weight(x)
    names = [n for n in cox.names if n != x]
    grades = {n: det(wx, cox.weight(n)) for n in names}
    if any(g <= 0 for g in grades.values()):
        return None
    target = CoxData(tuple(names), tuple(Weight(grades[n], 0) for n in names))
    equations = {name: eq.set_one(x) for name, eq in emb.equations.items()}
    model = Embedding(target, equations, Weight(det(wx, emb.anticanonical), 0), emb.dimension)
    for poly in equations.values():
        bidegree(poly, target)

    reduced = True
    while reduced:
        reduced = False
        for v in model.cox.names:
            try:
                model = eliminate_linear(model, v)
            except UnprojectionError:
                continue
            reduced = True
            break
    return model


def describe_model(model: Embedding) -> str:
    eqs = "; ".join(f"{eq} = 0" for eq in model.equations.values())
    pairs = sorted(zip((w.a for w in model.cox.weights), model.cox.names))
    weights = ",".join(str(w) for w, _ in pairs)
    names = ",".join(n for _, n in pairs)
    return f"{{{eqs}}} in P({weights}) with coordinates {names}"


@dataclass
class CaseOutcome:
    """Everything run_case learned about one family"""
    spec: FamilySpec
    verdict: Optional[Verdict] = None
    steps: List[GameStep] = field(default_factory=list)
    blowup: Optional[BlowupResult] = None
    embedding: Optional[Embedding] = None
    position: Optional[Position] = None
    unprojections: List[UnprojectionStep] = field(default_factory=list)
    final: Optional[Embedding] = None
    curve: Optional[CurveNumbers] = None
    anticanonical_degree: Optional[Fraction] = None
    warnings: List[str] = field(default_factory=list)

    def warn(self, message: str):
        self.warnings.append(message)
        logger.discrepancy_warning(self.spec.id, message)


def _check_degree(outcome: CaseOutcome, result: BlowupResult):
    spec = outcome.spec
    p = result.point
    try:
        degree = anticanonical_degree(result.embedding)
    except IntersectError as e:
        outcome.warn(f"(-K_Y)^3 not computed: {e}")
        return
    if degree is None:
        return
    outcome.anticanonical_degree = degree
    expected = fano_degree(spec.ambient_weights, spec.degrees) - Fraction(1, p.r * p.a * (p.r - p.a))
    if degree != expected:
        outcome.warn(f"(-K_Y)^3 = {degree} on T, but (-K_X)^3 - 1/(r a (r-a)) = {expected}")


def _unproject(outcome: CaseOutcome, emb: Embedding, engine: EngineConfig
               ) -> Tuple[Embedding, Optional[FakeDivisor]]:
    """Unprojection loop; returns the final embedding and a fake divisor left over"""
    spec = outcome.spec
    plans = spec.unprojections
    while True:
        done = len(outcome.unprojections)
        plan = plans[done] if done < len(plans) else None
        candidate = emb
        if plan is not None:
            candidate = apply_substitutions(emb, plan.substitutions, engine.substitution_depth)
        fake = detect_fake_divisor(candidate)
        if fake is None:
            if plan is not None:
                outcome.warn(f"declared unprojection of {plan.variable} is not needed")
            return emb, None
        logger.fake_divisor_found(spec.id, fake.ideal)
        if plan is None or done >= engine.max_unprojections:
            return candidate, fake
        if not set(plan.ideal) <= set(fake.ideal):
            raise GameError(
                f"declared ideal ({','.join(plan.ideal)}) is not inside the fake divisor "
                f"({','.join(fake.ideal)}) in chamber {fake.chamber}"
            )
        step = apply_plan(candidate, plan)
        logger.unprojection_applied(spec.id, step.variable, step.weight)
        outcome.unprojections.append(step)
        emb = step.embedding


def _play(outcome: CaseOutcome, engine: EngineConfig):
    spec = outcome.spec
    point = singular_point(spec)
    result = kawamata_grading(weighted_ci(spec), point, spec.tangent,
                              spec.overrides.local_weights, engine.alpha_iterations)
    outcome.blowup = result
    if result.germ_ok is False:
        outcome.warn(f"residues of the local coordinates do not give {point.germ}")
    printed = spec.annotations.printed_point
    if printed and printed != point.variable:
        outcome.warn(f"catalog names the centre p_{printed}, "
                     f"the grading makes {point.variable} nonvanishing")
    _check_degree(outcome, result)

    emb, fake = _unproject(outcome, result.embedding, engine)
    outcome.embedding = emb
    printed_k = spec.annotations.printed_anticanonical
    if printed_k is not None and Weight.of(printed_k) != emb.anticanonical:
        outcome.warn(f"-K_Y = {emb.anticanonical} by adjunction, catalog prints {Weight.of(printed_k)}")

    cone = mobile_cone(emb.cox)
    outcome.position = classify_position(cone, emb.anticanonical)
    if spec.curve is not None:
        outcome.curve = curve_divisor_numbers(spec.curve)

    ambient = play_ambient(emb.cox)
    if fake is not None:
        outcome.steps = fake_divisor_trail(ambient, emb, fake)
        evidence = [f"fake divisor ({','.join(fake.ideal)}) in chamber {fake.chamber}"]
        if outcome.curve is not None:
            verdict = "excluded" if outcome.curve.excluded else "not excluded"
            evidence.append(f"curve test: C.E = {outcome.curve.c_e}, "
                            f"C.(-K) = {outcome.curve.c_k}, {verdict}")
        outcome.verdict = Verdict(tag=VerdictTag.REQUIRES_UNPROJECTION,
                                  position=outcome.position, evidence=evidence)
        return

    outcome.steps = restrict_to_Y(ambient, emb)
    for step in outcome.steps:
        logger.step_resolved(spec.id, step)
    errors = [s for s in outcome.steps if s.kind == StepKind.ERROR]
    if errors:
        outcome.verdict = Verdict(tag=VerdictTag.GAME_ERROR, position=outcome.position,
                                  evidence=[s.reason for s in errors])
        return

    outcome.final = final_model(emb, outcome.steps[-1])
    outcome.verdict = decide(GameContext(
        case_id=spec.id,
        steps=outcome.steps,
        position=outcome.position,
        anticanonical=emb.anticanonical,
        mobile_cone=cone,
        flip_terminal=spec.annotations.flip_terminal,
    ))


def run_case(spec: FamilySpec, engine: Optional[EngineConfig] = None) -> CaseOutcome:
    """
    Blow up, unproject, play and judge one family

    Args:
        spec: Validated family file
        engine: Engine bounds, defaults when omitted

    Returns:
        CaseOutcome; any engine error becomes a GameError verdict
    """
    engine = engine or EngineConfig()
    outcome = CaseOutcome(spec=spec)
    logger.case_started(spec.id)
    try:
        _play(outcome, engine)
    except EngineError as e:
        logger.error_occurred(e, f"case {spec.id}")
        outcome.verdict = Verdict(
            tag=VerdictTag.GAME_ERROR,
            position=outcome.position,
            evidence=[s.describe() for s in outcome.steps] + [str(e)],
        )
    logger.verdict_reached(spec.id, outcome.verdict.label, spec.annotations.expected_verdict)
    return outcome
