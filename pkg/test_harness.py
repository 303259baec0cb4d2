#!/usr/bin/env python3
"""
Catalog regression and report tests

Every builtin fixture must reach the verdict its annotations print.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cones2d import Weight, classify_position
from src.config import EngineConfig
from src.coxring import CoxData, Embedding, mobile_cone
from src.errors import HarnessError
from src.game import play_ambient, restrict_to_Y, run_case
from src.harness import (
    FIXTURE_DIR, build_report, compare_flip_labels, cone_data, emit_diagram, load_catalog,
    load_family, parse_flip_label, render_svg, run_batch, run_files,
)
from src.intersect import curve_divisor_numbers
from src.models import CaseReport, FlipDirection, GameStep, Position, PrintedFlip, StepKind
from src.verdicts import GameContext, decide

FIXTURES = sorted(FIXTURE_DIR.glob("*.json"))


def report_for(name: str):
    return build_report(run_case(load_family(FIXTURE_DIR / name)))


def test_catalog_loads():
    specs = load_catalog()
    ids = [s.id for s in specs]
    assert len(specs) == len(FIXTURES) == 21
    assert ids == sorted(ids)
    assert len(set(ids)) == len(ids)


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_fixture_verdict(path):
    """🎯 engine verdict equals the catalog verdict"""
    spec = load_family(path)
    report = build_report(run_case(spec))
    assert report.verdict.label == spec.annotations.expected_verdict, report.verdict.evidence
    assert report.matches


def test_quintic_unprojects_once():
    report = report_for("x5_general.json")
    assert [(u.variable, u.weight) for u in report.unprojections] == [("r", (3, -1))]
    assert report.unprojections[0].ideal == ["u", "s"]
    assert report.blowup.discrepancy == "1/2"
    assert report.blowup.anticanonical_degree == "2"


def test_quintic_flop_and_final_model():
    """🔄 15 flopping curves, then a quintic-type hypersurface"""
    report = report_for("x5_general.json")
    flops = [s for s in report.steps if s.direction == FlipDirection.FLOP]
    assert len(flops) == 1
    assert flops[0].flipping_count == "15"
    assert "in P(1,1,1,1,2)" in report.final_model
    assert report.final_model.count("= 0") == 1


def test_special_quintic_sits_on_the_boundary():
    report = report_for("x5_special.json")
    assert report.cone.position == Position.BOUNDARY
    assert not report.unprojections


def test_outside_case():
    report = report_for("f47.json")
    assert report.cone.position == Position.OUTSIDE
    assert any("p_z" in w for w in report.warnings)


def test_fake_divisor_left_over():
    report = report_for("f37_half.json")
    last = report.steps[-1]
    assert last.kind == StepKind.FAKE_DIVISOR
    assert last.ideal == ["u", "y"]
    assert report.curve.excluded


def test_curve_numbers():
    spec = load_family(FIXTURE_DIR / "f37_half.json")
    numbers = curve_divisor_numbers(spec.curve)
    assert (numbers.c_e, numbers.c_d, numbers.c_k) == ("2", "7/5", "-3/10")
    assert numbers.excluded


def test_batch_exit_codes():
    summary = run_batch(load_catalog())
    assert not summary.mismatches
    assert summary.exit_code == 0

    strict = run_batch(load_catalog(), EngineConfig(strict=True))
    assert strict.advisory_mismatches
    assert strict.exit_code == 1


def test_unreadable_file_is_an_input_error(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    summary = run_files([broken, tmp_path / "missing.json", FIXTURE_DIR / "x5_general.json"])
    assert len(summary.errors) == 2
    assert len(summary.reports) == 1
    assert summary.exit_code == 2


def test_load_family_missing_file(tmp_path):
    with pytest.raises(HarnessError) as e:
        load_family(tmp_path / "absent.json")
    assert e.value.code == "SchemaError"


def test_parse_flip_label():
    assert parse_flip_label("3x(-3,-1,1,5)") == (3, [-3, -1, 1, 5], [])
    assert parse_flip_label("(2,1,-5,-3,-2;-8)") == (None, [2, 1, -5, -3, -2], [-8])
    assert parse_flip_label("15×(1,1,−1,−1)") == (15, [1, 1, -1, -1], [])
    with pytest.raises(HarnessError):
        parse_flip_label("flip")


def test_compare_flip_labels():
    step = GameStep(wall=(1, 0), kind=StepKind.FLIP, direction=FlipDirection.ANTIFLIP,
                    local_weights=[("a", 1), ("d", -2)], flipping_count="1")
    assert compare_flip_labels([step], [PrintedFlip(wall=(2, 0), label="(-1,2)")]) == []
    assert len(compare_flip_labels([step], [PrintedFlip(wall=(1, 0), label="(1,-2)")])) == 1
    assert len(compare_flip_labels([step], [PrintedFlip(wall=(1, 0), label="3x(-1,2)")])) == 1
    missing = compare_flip_labels([step], [PrintedFlip(wall=(1, 1), label="(1,-1)")])
    assert "nothing" in missing[0]


def test_diagram_text_is_stable():
    report = report_for("x5_general.json")
    text = emit_diagram(report)
    assert text.startswith("case x5-general\n")
    assert "mobile cone:" in text
    assert "verdict: LinkCandidate" in text
    assert emit_diagram(report) == text


def test_svg_diagram():
    report = report_for("x5_general.json")
    svg = render_svg(report)
    assert "<svg" in svg


def test_report_serializes():
    report = report_for("f71_quarter.json")
    data = report.model_dump_json()
    assert '"case_id":"71-quarter"' in data


# Per-family values the catalog prints

UNPROJECTION_WEIGHTS = {
    "x5_general.json": [("r", (3, -1))],
    "f20_I_mg1.json": [("r", (4, 0))],
    "f20_II_mg1_st.json": [("r", (6, 1)), ("eta", (4, 0))],
    "f31_star.json": [("r", (5, 0))],
    "f37_third_zxs2.json": [("r", (6, 0))],
    "f51_star.json": [("r", (6, 0)), ("eta", (7, 0))],
    "f59_mg_half.json": [("r", (10, 1))],
    "f71_quarter.json": [("r", (10, 1)), ("eta", (12, 1))],
}

MOBILE_CONES = {
    "x5_special.json": ((2, 1), (1, 0)),
    "f31_main.json": ((3, 1), (1, 0)),
    "f51.json": ((4, 1), (1, 0)),
    "f64.json": ((5, 1), (1, 0)),
}


@pytest.mark.parametrize("name, expected", sorted(UNPROJECTION_WEIGHTS.items()))
def test_unprojection_weights(name, expected):
    report = report_for(name)
    assert [(u.variable, u.weight) for u in report.unprojections] == expected


@pytest.mark.parametrize("name, expected", sorted(MOBILE_CONES.items()))
def test_mobile_cone_on_the_boundary(name, expected):
    report = report_for(name)
    r1, r2 = report.cone.mobile_cone
    assert (Weight.of(r1).primitive().as_tuple(), Weight.of(r2).primitive().as_tuple()) == expected
    assert report.cone.anticanonical == (1, 0)
    assert report.cone.position == Position.BOUNDARY


def test_family_64_game():
    """🎯 1/5(1,2,3) on X_{12,16}: iso, antiflip, iso, then a divisorial contraction"""
    report = report_for("f64.json")
    assert report.blowup.grading == {
        "u": (0, 1), "z": (5, 1), "s": (6, 1), "t": (7, 1), "w": (8, 1), "y": (2, 0), "x": (1, -1),
    }
    assert report.blowup.valuations == {"f": "2/5", "g": "6/5"}

    first, *walls = report.steps
    assert first.kind == StepKind.DIVISORIAL_CONTRACTION
    assert first.contracted == ["u"]
    assert [s.kind for s in walls] == [
        StepKind.ISOMORPHISM, StepKind.FLIP, StepKind.ISOMORPHISM, StepKind.DIVISORIAL_CONTRACTION,
    ]
    assert walls[0].witness == "s^2 in f"
    assert walls[1].direction == FlipDirection.ANTIFLIP
    assert sorted(walls[1].weight_values) == [-8, -1, 1, 7]
    assert walls[2].witness == "w^2 in g"
    assert walls[3].contracted == ["x"]
    assert report.verdict.label == "BadLink"


def test_family_71_fifth_game():
    report = report_for("f71_fifth.json")
    walls = report.steps[1:]
    assert [s.kind for s in walls] == [
        StepKind.FLIP, StepKind.ISOMORPHISM, StepKind.ISOMORPHISM, StepKind.DIVISORIAL_CONTRACTION,
    ]
    assert walls[0].direction == FlipDirection.ANTIFLIP
    assert walls[1].witness == "t^2 in f"
    assert walls[2].witness == "w^2 in g"


def test_family_20_case_two_ending_is_advisory():
    """📎 elliptic ending where the catalog prints K3; the verdict still matches"""
    report = report_for("f20_II_mg2.json")
    assert report.ending == "elliptic fibration"
    assert "catalog ending K3 fibration, engine ends with elliptic fibration" in report.advisories
    assert report.matches
    assert report.verdict.label == "BadLink"


# Batch behaviour

def test_corrupted_expectation_fails_the_batch():
    spec = load_family(FIXTURE_DIR / "f64.json")
    wrong = spec.model_copy(update={
        "annotations": spec.annotations.model_copy(update={"expected_verdict": "LinkCandidate"}),
    })
    summary = run_batch([wrong, load_family(FIXTURE_DIR / "x5_special.json")])
    assert summary.exit_code == 1
    assert summary.mismatches == ["64: BadLink, expected LinkCandidate"]
    assert [r.matches for r in summary.reports] == [False, True]


def test_batch_ignores_input_order():
    specs = [load_family(FIXTURE_DIR / n) for n in
             ("f64.json", "x5_special.json", "f47.json", "f71_fifth.json", "f51.json")]
    shuffled = list(specs)
    random.Random(5).shuffle(shuffled)
    first = run_batch(specs)
    second = run_batch(list(reversed(shuffled)))
    assert [r.case_id for r in first.reports] == ["47", "51", "64", "71-fifth", "x5-special"]
    assert first.model_dump_json() == second.model_dump_json()


# Golden diagrams

GOLDEN_DIR = Path(__file__).parent / "golden"


def test_family_64_diagram_matches_golden():
    report = report_for("f64.json")
    assert len(report.cone.chambers) == 4
    assert emit_diagram(report) == (GOLDEN_DIR / "64.txt").read_text(encoding="utf-8")


def test_toric_antiflip_diagram_matches_golden():
    cox = CoxData.from_columns([
        ("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, -2), ("e", 1, -2),
    ])
    emb = Embedding(cox, {}, Weight(3, -2), 3)
    steps = restrict_to_Y(play_ambient(cox), emb)
    cone = mobile_cone(cox)
    position = classify_position(cone, emb.anticanonical)
    verdict = decide(GameContext(
        case_id="toric-antiflip", steps=steps, position=position,
        anticanonical=emb.anticanonical, mobile_cone=cone,
    ))
    report = CaseReport(case_id="toric-antiflip", verdict=verdict, steps=steps,
                        cone=cone_data(emb, position))
    assert len(report.cone.chambers) == 2
    expected = (GOLDEN_DIR / "toric_antiflip.txt").read_text(encoding="utf-8")
    assert emit_diagram(report) == expected
