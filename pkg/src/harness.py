"""
Batch runner, case reports and chamber diagrams
"""

import io
import re
from collections import Counter
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cones2d import Weight
from .config import EngineConfig
from .coxring import Embedding, git_chambers, mobile_cone
from .errors import EngineError, HarnessError
from .family import parse_family
from .game import CaseOutcome, describe_model, run_case
from .models import (
    BatchSummary, BlowupSummary, CaseReport, ConeData, FamilySpec, GameStep, PrintedFlip,
    Position, RayRecord, StepKind,
)

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def load_family(path) -> FamilySpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise HarnessError(f"cannot read {path}: {e}", code="SchemaError")
    return parse_family(text)


def load_catalog(directory: Optional[Path] = None) -> List[FamilySpec]:
    """Every fixture of the catalog, sorted by id"""
    directory = Path(directory) if directory else FIXTURE_DIR
    specs = [load_family(p) for p in sorted(directory.glob("*.json"))]
    return sorted(specs, key=lambda s: s.id)


# Printed flip labels

_LABEL = re.compile(r"^\s*(?:(\d+)\s*[x×]\s*)?\((.*)\)\s*$")


def parse_flip_label(label: str) -> Tuple[Optional[int], List[int], List[int]]:
    """'3x(-3,-1,1,5)' or '(2,1,-5,-3,-2;-8)' as (count, weights, residual degrees)"""
    match = _LABEL.match(label.replace("−", "-"))
    if not match:
        raise HarnessError(f"unreadable flip label {label!r}", code="SchemaError")
    count = int(match.group(1)) if match.group(1) else None
    body, _, tail = match.group(2).partition(";")

    def ints(text: str) -> List[int]:
        return [int(t) for t in text.split(",") if t.strip()]

    return count, ints(body), ints(tail)


def compare_flip_labels(steps: Sequence[GameStep], printed: Iterable[PrintedFlip]) -> List[str]:
    """Advisory comparison of printed labels with the negated derived signatures"""
    notes: List[str] = []
    for entry in printed:
        ray = Weight.of(entry.wall).primitive()
        step = next((s for s in steps if Weight.of(s.wall).primitive() == ray), None)
        if step is None or step.kind != StepKind.FLIP:
            found = step.describe() if step else "nothing"
            notes.append(f"printed flip {entry.label} at {ray}, engine has {found}")
            continue
        count, weights, residual = parse_flip_label(entry.label)
        derived = Counter(-w for w in step.weight_values)
        derived_residual = Counter(-d for d in step.residual_degrees)
        if Counter(weights) != derived or Counter(residual) != derived_residual:
            notes.append(f"printed flip {entry.label} at {ray}, engine derives {step.signature()}")
        if count is not None and step.flipping_count not in (None, str(count)):
            notes.append(f"printed {count} flipping curves at {ray}, engine counts "
                         f"{step.flipping_count}")
    return notes


# Reports

def _cone_data(outcome: CaseOutcome) -> Optional[ConeData]:
    if outcome.embedding is None or outcome.position is None:
        return None
    return cone_data(outcome.embedding, outcome.position)


def cone_data(emb: Embedding, position: Position) -> ConeData:
    """Rays, mobile cone, chambers and -K_Y of an embedding"""
    cox = emb.cox
    cone = mobile_cone(cox)
    return ConeData(
        rays=[
            RayRecord(
                ray=g.ray.as_tuple(),
                variables=cox.group_names(g),
                weights=[cox.weight(n).as_tuple() for n in cox.group_names(g)],
            )
            for g in cox.groups()
        ],
        mobile_cone=(cone.r1.as_tuple(), cone.r2.as_tuple()),
        chambers=[(c.r1.as_tuple(), c.r2.as_tuple()) for c in git_chambers(cox)],
        anticanonical=emb.anticanonical.as_tuple(),
        position=position,
    )


def _blowup_summary(outcome: CaseOutcome) -> Optional[BlowupSummary]:
    result = outcome.blowup
    if result is None:
        return None
    cox = result.embedding.cox
    return BlowupSummary(
        point=f"p_{result.point.variable}",
        germ=result.point.germ,
        discrepancy=str(result.discrepancy),
        local_weights=dict(result.assignment.weights),
        tangent_weights=dict(result.alphas),
        valuations={name: str(m) for name, m in result.valuations.items()},
        grading={name: w.as_tuple() for name, w in cox.weight_map().items()},
        well_formed_gcd=cox.well_formed_gcd(),
        anticanonical_degree=(str(outcome.anticanonical_degree)
                              if outcome.anticanonical_degree is not None else None),
    )


def build_report(outcome: CaseOutcome) -> CaseReport:
    spec = outcome.spec
    notes = spec.annotations
    verdict = outcome.verdict
    ending = outcome.steps[-1].ending if outcome.steps else None
    advisories = compare_flip_labels(outcome.steps, notes.printed_flips)
    if notes.ending and ending and notes.ending != ending:
        advisories.append(f"catalog ending {notes.ending}, engine ends with {ending}")
    if outcome.curve is not None:
        for key, printed in notes.printed_curve_numbers.items():
            computed = getattr(outcome.curve, key, None)
            if computed is not None and computed != printed:
                outcome.warn(f"{key} = {computed}, catalog prints {printed}")

    emb = outcome.embedding
    return CaseReport(
        case_id=spec.id,
        title=spec.title,
        verdict=verdict,
        expected=notes.expected_verdict,
        matches=verdict.label == notes.expected_verdict,
        ending=ending,
        steps=outcome.steps,
        cone=_cone_data(outcome),
        blowup=_blowup_summary(outcome),
        unprojections=[u.record() for u in outcome.unprojections],
        equations=emb.render() if emb is not None else {},
        final_model=describe_model(outcome.final) if outcome.final is not None else None,
        curve=outcome.curve,
        warnings=list(outcome.warnings),
        advisories=advisories,
    )


def run_batch(specs: Sequence[FamilySpec], engine: Optional[EngineConfig] = None,
              errors: Sequence[str] = ()) -> BatchSummary:
    """
    Run every family and compare with the catalog annotations

    Args:
        specs: Parsed family files, in any order
        engine: Engine bounds
        errors: Input errors collected while loading

    Returns:
        BatchSummary with reports sorted by case id
    """
    engine = engine or EngineConfig()
    summary = BatchSummary(strict=engine.strict, errors=list(errors))
    for spec in sorted(specs, key=lambda s: s.id):
        report = build_report(run_case(spec, engine))
        summary.reports.append(report)
        if not report.matches:
            summary.mismatches.append(f"{report.case_id}: {report.verdict.label}, "
                                      f"expected {report.expected}")
        summary.advisory_mismatches.extend(f"{report.case_id}: {a}" for a in report.advisories)
    return summary


def run_files(paths: Sequence, engine: Optional[EngineConfig] = None) -> BatchSummary:
    specs: List[FamilySpec] = []
    errors: List[str] = []
    for path in paths:
        try:
            specs.append(load_family(path))
        except EngineError as e:
            errors.append(f"{path}: {e}")
    return run_batch(specs, engine, errors)


# Diagrams

def _wall_label(report: CaseReport, ray: Tuple[int, int]) -> Optional[str]:
    prim = Weight.of(ray).primitive()
    for step in report.steps:
        if Weight.of(step.wall).primitive() == prim:
            return step.describe()
    return None


def emit_diagram(report: CaseReport) -> str:
    """Line-oriented chamber diagram, stable across runs"""
    if report.cone is None:
        raise HarnessError(f"{report.case_id}: report has no cone data")
    cone = report.cone
    lines = [f"case {report.case_id}"]
    lines.append("rays (clockwise):")
    for ray in cone.rays:
        cols = " ".join(f"{n}{Weight.of(w)}" for n, w in zip(ray.variables, ray.weights))
        label = _wall_label(report, ray.ray)
        lines.append(f"  {Weight.of(ray.ray)}  {cols}" + (f"  | {label}" if label else ""))
    r1, r2 = cone.mobile_cone
    lines.append(f"mobile cone: <{Weight.of(r1)},{Weight.of(r2)}>")
    lines.append(f"chambers: {len(cone.chambers)}")
    for i, (c1, c2) in enumerate(cone.chambers):
        lines.append(f"  {i + 1}: <{Weight.of(c1)},{Weight.of(c2)}>")
    lines.append(f"-K_Y: {Weight.of(cone.anticanonical)} {cone.position.value}")
    lines.append(f"verdict: {report.verdict.label}")
    return "\n".join(lines) + "\n"


def _unit(ray: Tuple[int, int]) -> Tuple[float, float]:
    a, b = ray
    norm = (a * a + b * b) ** 0.5
    return a / norm, b / norm


def render_svg(report: CaseReport) -> str:
    """Chamber diagram as an SVG document"""
    if report.cone is None:
        raise HarnessError(f"{report.case_id}: report has no cone data")
    cone = report.cone
    fig, ax = plt.subplots(figsize=(6, 6))
    try:
        for i, (c1, c2) in enumerate(cone.chambers):
            (x1, y1), (x2, y2) = _unit(c1), _unit(c2)
            ax.fill([0, x1, x2], [0, y1, y2], color="tab:blue" if i % 2 == 0 else "tab:cyan",
                    alpha=0.35, linewidth=0)
        for ray in cone.rays:
            x, y = _unit(ray.ray)
            ax.annotate("", xy=(x, y), xytext=(0, 0),
                        arrowprops=dict(arrowstyle="->", color="black"))
            names = ",".join(ray.variables)
            ax.text(1.08 * x, 1.08 * y, f"{names} {Weight.of(ray.ray)}", ha="center", fontsize=8)
        kx, ky = _unit(cone.anticanonical)
        ax.plot([0.6 * kx], [0.6 * ky], marker="*", color="tab:red", markersize=12)
        ax.text(0.6 * kx, 0.6 * ky - 0.08, "-K_Y", color="tab:red", ha="center", fontsize=9)
        ax.set_xlim(-1.3, 1.3)
        ax.set_ylim(-1.3, 1.3)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title(f"{report.case_id}: {report.verdict.label}")
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    return buffer.getvalue()
