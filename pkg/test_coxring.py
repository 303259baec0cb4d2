#!/usr/bin/env python3
"""
Tests for bigraded Cox data and embeddings
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cones2d import Cone2, Weight
from src.coxring import (
    CoxData, Embedding, anticanonical_class, bidegree, embedding_from, git_chambers, mobile_cone,
    mobile_cone_indices, normalize_stack_grading,
)
from src.errors import CoxError
from src.polynomial import SparsePoly


def toric_cox() -> CoxData:
    return CoxData.from_columns([
        ("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, -2), ("e", 1, -2),
    ])


def test_groups_and_mobile_cone():
    cox = toric_cox()
    groups = cox.groups()
    assert [cox.group_names(g) for g in groups] == [["a", "b"], ["c"], ["d", "e"]]
    assert mobile_cone_indices(groups) == (0, 2)
    assert mobile_cone(cox) == Cone2(Weight(0, 1), Weight(1, -2))
    assert git_chambers(cox) == [
        Cone2(Weight(0, 1), Weight(1, 0)),
        Cone2(Weight(1, 0), Weight(1, -2)),
    ]


def test_single_variable_end_rays_are_not_mobile():
    cox = CoxData.from_columns([
        ("u", 0, 1), ("s", 2, 1), ("y", 1, 0), ("z", 1, 0), ("x", 1, -1),
    ])
    assert mobile_cone_indices(cox.groups()) == (1, 2)
    assert mobile_cone(cox) == Cone2(Weight(2, 1), Weight(1, 0))


def test_too_few_ray_groups():
    cox = CoxData.from_columns([("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, 0)])
    with pytest.raises(CoxError) as e:
        mobile_cone_indices(cox.groups())
    assert e.value.code == "FewerThanThreeRayGroups"


def test_degenerate_mobile_cone():
    cox = CoxData.from_columns([("a", 0, 1), ("b", 1, 0), ("c", 1, -1)])
    with pytest.raises(CoxError) as e:
        mobile_cone_indices(cox.groups())
    assert e.value.code == "DegenerateMobileCone"


def test_duplicate_names_rejected():
    with pytest.raises(CoxError):
        CoxData.from_columns([("a", 0, 1), ("a", 1, 0)])


def test_chamber_irrelevant_components():
    cox = toric_cox()
    assert cox.chamber_irrelevant(0) == (["a", "b"], ["c", "d", "e"])
    assert cox.chamber_irrelevant(1) == (["a", "b", "c"], ["d", "e"])
    assert cox.irrelevant == (["a", "b"], ["c", "d", "e"])


def test_anticanonical_class_and_adjunction():
    cox = toric_cox()
    assert anticanonical_class(cox) == Weight(3, -2)
    f = SparsePoly.from_terms([(1, {"a": 1, "d": 1}), (1, {"b": 1, "e": 1})])
    emb = embedding_from(cox, {"f": f})
    assert emb.degrees() == {"f": Weight(1, -1)}
    assert emb.anticanonical == Weight(2, -1)
    assert emb.dimension == 2
    assert emb.adjunction() == emb.anticanonical


def test_bidegree_rejects_mixed_terms():
    cox = toric_cox()
    p = SparsePoly.from_terms([(1, {"a": 1}), (1, {"c": 1})])
    with pytest.raises(CoxError) as e:
        bidegree(p, cox)
    assert e.value.code == "NotHomogeneous"


def test_normalize_stack_grading():
    row1, row2 = normalize_stack_grading([0, 1, 1, 2], [-2, 3, 1, 0], 2)
    assert row1 == [0, 1, 1, 2]
    assert row2 == [1, -1, 0, 1]
    with pytest.raises(CoxError) as e:
        normalize_stack_grading([0, 1], [-2, 0], 2)
    assert e.value.code == "NonIntegralResult"


def test_well_formed_gcd():
    assert toric_cox().well_formed_gcd() == 1
    cox = CoxData.from_columns([("a", 0, 2), ("b", 2, 0), ("c", 2, -2)])
    assert cox.well_formed_gcd() == 4


def test_embedding_render():
    cox = toric_cox()
    emb = Embedding(cox, {"f": SparsePoly.variable("c")}, Weight(1, 0))
    assert emb.render() == {"f": "c"}
