#!/usr/bin/env python3
"""
Tests for the rank-2 cone geometry
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cones2d import (
    Cone2, LinearForm, Weight, classify_position, det, on_ray, sort_rays_clockwise, wall_normal,
)
from src.errors import ConeError
from src.models import Position


def test_primitive_and_multiplicity():
    w = Weight(4, -2)
    assert w.multiplicity == 2
    assert w.primitive() == Weight(2, -1)
    assert Weight(0, 3).primitive() == Weight(0, 1)


def test_zero_weight_has_no_ray():
    with pytest.raises(ConeError) as e:
        Weight(0, 0).primitive()
    assert e.value.code == "ZeroWeight"


def test_sort_groups_by_ray_clockwise():
    weights = [Weight(1, 0), Weight(0, 1), Weight(1, -1), Weight(2, 0)]
    groups = sort_rays_clockwise(weights)
    assert [g.ray for g in groups] == [Weight(0, 1), Weight(1, 0), Weight(1, -1)]
    assert [g.variables for g in groups] == [(1,), (0, 3), (2,)]


def test_sort_rejects_opposite_rays():
    with pytest.raises(ConeError) as e:
        sort_rays_clockwise([Weight(1, 0), Weight(0, 1), Weight(-2, 0)])
    assert e.value.code == "NonConvexSpan"


def test_sort_rejects_zero_column():
    with pytest.raises(ConeError) as e:
        sort_rays_clockwise([Weight(1, 0), Weight(0, 0)])
    assert e.value.code == "ZeroWeight"


def test_classify_position():
    cone = Cone2(Weight(0, 1), Weight(1, -1))
    assert classify_position(cone, Weight(1, 0)) == Position.INTERIOR
    assert classify_position(cone, Weight(0, 2)) == Position.BOUNDARY
    assert classify_position(cone, Weight(3, -3)) == Position.BOUNDARY
    assert classify_position(cone, Weight(-1, 0)) == Position.OUTSIDE
    assert classify_position(cone, Weight(1, -2)) == Position.OUTSIDE


def test_classify_on_a_ray_cone():
    cone = Cone2(Weight(1, 0), Weight(1, 0))
    assert cone.is_ray
    assert classify_position(cone, Weight(5, 0)) == Position.BOUNDARY
    assert classify_position(cone, Weight(1, 1)) == Position.OUTSIDE


def test_wall_normal_sign_convention():
    form = wall_normal(Weight(4, 2))
    assert form == LinearForm(p=-1, q=2)
    assert form(Weight(2, 1)) == 0
    # positive before the wall, negative after
    assert form(Weight(0, 1)) > 0
    assert form(Weight(1, 0)) < 0


def test_on_ray():
    assert on_ray(Weight(1, 0), Weight(3, 0))
    assert not on_ray(Weight(1, 0), Weight(-3, 0))
    assert not on_ray(Weight(1, 0), Weight(3, 1))


def _random_weights(rng: random.Random, n: int):
    # a > 0 keeps every configuration in an open half-plane
    return [Weight(rng.randint(1, 6), rng.randint(-6, 6)) for _ in range(n)]


def test_sorted_groups_turn_clockwise():
    rng = random.Random(7)
    for _ in range(200):
        weights = _random_weights(rng, rng.randint(1, 8))
        groups = sort_rays_clockwise(weights)
        for g, h in zip(groups, groups[1:]):
            assert det(g.ray, h.ray) < 0
        assert sorted(i for g in groups for i in g.variables) == list(range(len(weights)))


def test_sort_is_scale_invariant():
    rng = random.Random(11)
    for _ in range(100):
        weights = _random_weights(rng, rng.randint(1, 8))
        k = rng.randint(2, 5)
        assert sort_rays_clockwise(weights) == sort_rays_clockwise([w.scale(k) for w in weights])


def test_chambers_cover_the_cone():
    """📐 every class of the span lies in some chamber between consecutive rays"""
    rng = random.Random(3)
    for _ in range(100):
        weights = _random_weights(rng, rng.randint(3, 7))
        groups = sort_rays_clockwise(weights)
        if len(groups) < 2:
            continue
        outer = Cone2(groups[0].ray, groups[-1].ray)
        chambers = [Cone2(g.ray, h.ray) for g, h in zip(groups, groups[1:])]
        for _ in range(20):
            w = Weight(rng.randint(1, 12), rng.randint(-12, 12))
            if classify_position(outer, w) == Position.OUTSIDE:
                continue
            assert any(classify_position(c, w) != Position.OUTSIDE for c in chambers)
