#!/usr/bin/env python3
"""
Tests for the 2-ray game on T and its restriction to Y
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cones2d import Weight, classify_position
from src.coxring import CoxData, Embedding, embedding_from, mobile_cone
from src.errors import GameError
from src.game import fibration_label, play_ambient, restrict_to_Y, restrict_wall, wall_split
from src.models import (
    FlipDirection, FlipTerminality, GameStep, Position, StepKind, VerdictTag,
)
from src.polynomial import SparsePoly
from src.verdicts import DOUBLE_COVER, GameContext, decide


def poly(*terms) -> SparsePoly:
    return SparsePoly.from_terms([(1, t) for t in terms])


def antiflip_cox() -> CoxData:
    return CoxData.from_columns([
        ("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, -2), ("e", 1, -2),
    ])


def flop_cox() -> CoxData:
    return CoxData.from_columns([
        ("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, -1), ("e", 1, -1),
    ])


def test_play_ambient_walk():
    steps = play_ambient(antiflip_cox())
    assert [s.kind for s in steps] == [StepKind.FIBRATION, StepKind.FLIP, StepKind.FIBRATION]
    start, flip, end = steps
    assert start.wall == (0, 1)
    assert start.base_variables == ["a", "b"]
    assert flip.wall == (1, 0)
    assert flip.local_weights == [("a", 1), ("b", 1), ("d", -2), ("e", -2)]
    assert end.base_variables == ["d", "e"]


def test_single_variable_end_is_a_divisorial_contraction():
    cox = CoxData.from_columns([
        ("u", 0, 1), ("s", 2, 1), ("y", 1, 0), ("z", 1, 0), ("x", 1, -1), ("t", 1, -1),
    ])
    steps = play_ambient(cox)
    assert steps[0].kind == StepKind.DIVISORIAL_CONTRACTION
    assert steps[0].wall == (2, 1)
    assert steps[0].contracted == ["u"]
    assert steps[-1].kind == StepKind.FIBRATION


def test_toric_antiflip_is_not_terminal():
    """🔴 the antiflip (1,1,-2,-2) leaves a 1/2(1,1,0) point"""
    cox = antiflip_cox()
    emb = Embedding(cox, {}, Weight(3, -2), 3)
    steps = restrict_to_Y(play_ambient(cox), emb)
    flip = steps[1]
    assert flip.direction == FlipDirection.ANTIFLIP
    assert flip.terminal is False
    assert flip.flipping_count == "1"
    assert flip.signature() == "(1,1,-2,-2)"
    assert steps[0].base_dimension == 1
    assert steps[0].fibre_dimension == 2
    assert steps[0].ending == "del Pezzo fibration"

    position = classify_position(mobile_cone(cox), emb.anticanonical)
    assert position == Position.INTERIOR
    verdict = decide(GameContext(
        case_id="toric", steps=steps, position=position,
        anticanonical=emb.anticanonical, mobile_cone=mobile_cone(cox),
    ))
    assert verdict.tag == VerdictTag.NON_TERMINAL_ANTIFLIP


def test_flop_across_a_wall():
    emb = embedding_from(flop_cox(), {"f": poly({"a": 1, "d": 1}, {"b": 1, "e": 1})})
    assert emb.anticanonical == Weight(2, 0)
    step = restrict_wall(play_ambient(emb.cox)[1], emb)
    assert step.kind == StepKind.FLIP
    assert step.direction == FlipDirection.FLOP
    assert step.weight_values == [1, 1, -1, -1]
    assert step.terminal is None


def test_wall_condition_gives_isomorphism():
    emb = embedding_from(flop_cox(), {
        "g": poly({"c": 2}, {"a": 1, "c": 1, "d": 1}, {"b": 1, "c": 1, "e": 1}),
    })
    step = restrict_wall(play_ambient(emb.cox)[1], emb)
    assert step.kind == StepKind.ISOMORPHISM
    assert step.witness == "c^2 in g"


def test_wall_split():
    before, on_wall, after, form = wall_split(flop_cox(), (1, 0))
    assert before == ["a", "b"]
    assert on_wall == ["c"]
    assert after == ["d", "e"]
    assert form(Weight(1, -1)) == -1
    with pytest.raises(GameError):
        wall_split(flop_cox(), (2, 1))


def test_fibration_labels():
    assert fibration_label(0, False) == DOUBLE_COVER
    assert fibration_label(1, True) == "elliptic fibration"
    assert fibration_label(1, False) == "conic bundle"
    assert fibration_label(2, True) == "K3 fibration"
    assert fibration_label(2, False) == "del Pezzo fibration"


def _fibration(wall, fibre: int) -> GameStep:
    return GameStep(wall=wall, kind=StepKind.FIBRATION, base_weights=[1, 2],
                    fibre_dimension=fibre, ending=fibration_label(fibre, False))


def _context(steps, position, anticanonical, flip_terminal=()):
    cox = flop_cox()
    return GameContext(case_id="case", steps=list(steps), position=position,
                       anticanonical=anticanonical, mobile_cone=mobile_cone(cox),
                       flip_terminal=list(flip_terminal))


FLIP = GameStep(wall=(1, 0), kind=StepKind.FLIP, direction=FlipDirection.FLIP,
                local_weights=[("a", 1), ("d", -1)])


def test_bad_link_takes_precedence_over_boundary():
    steps = [_fibration((0, 1), 2), FLIP, _fibration((1, -1), 1)]
    verdict = decide(_context(steps, Position.BOUNDARY, Weight(2, -2)))
    assert verdict.tag == VerdictTag.BAD_LINK
    assert verdict.position == Position.BOUNDARY


def test_boundary_without_interior_steps():
    steps = [_fibration((0, 1), 2), _fibration((1, -1), 1)]
    verdict = decide(_context(steps, Position.BOUNDARY, Weight(2, -2)))
    assert verdict.label == "MobilityObstruction(Boundary)"


def test_outside_position():
    steps = [_fibration((0, 1), 2), FLIP, _fibration((1, -1), 1)]
    verdict = decide(_context(steps, Position.OUTSIDE, Weight(1, -3)))
    assert verdict.label == "MobilityObstruction(Outside)"


def test_finite_final_map_is_a_double_cover():
    steps = [_fibration((0, 1), 2), FLIP, _fibration((1, -1), 0)]
    verdict = decide(_context(steps, Position.INTERIOR, Weight(2, -1)))
    assert verdict.tag == VerdictTag.LINK_CANDIDATE
    assert verdict.evidence[0] == DOUBLE_COVER


def test_link_candidate_when_nothing_fires():
    steps = [_fibration((0, 1), 2), FLIP, _fibration((1, -1), 1)]
    verdict = decide(_context(steps, Position.INTERIOR, Weight(2, -1)))
    assert verdict.label == "LinkCandidate"


def test_catalog_terminality_flag():
    steps = [_fibration((0, 1), 2), FLIP, _fibration((1, -1), 1)]
    flags = [FlipTerminality(wall=(2, 0), terminal=False, source="catalog")]
    verdict = decide(_context(steps, Position.INTERIOR, Weight(2, -1), flags))
    assert verdict.tag == VerdictTag.NON_TERMINAL_ANTIFLIP
