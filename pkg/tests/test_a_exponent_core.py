import itertools

import pytest

from MonomialReductionBounds.a_exponent_core import (
    AmbientRing,
    add,
    enumerate_box,
    graded_lex_key,
    semigroup_contains,
    semigroup_subtract,
)
from MonomialReductionBounds.helpers import DimensionMismatch, NonMemberExponent


def test_free_contains_everything(free2):
    assert semigroup_contains(free2, (3, 5))
    assert semigroup_contains(free2, (0, 0))


def test_veronese_membership_is_degree_rule():
    A = AmbientRing.veronese(3)
    assert semigroup_contains(A, (2, 1))
    assert not semigroup_contains(A, (2, 2))
    assert semigroup_contains(A, (6, 0))


def test_affine_membership():
    A = AmbientRing.affine([(2, 0), (1, 1)])
    assert semigroup_contains(A, (3, 1))
    assert not semigroup_contains(A, (0, 1))
    assert not semigroup_contains(A, (1, 0))
    assert semigroup_contains(A, (4, 2))


def test_negative_coordinates_are_never_members(free2):
    assert not semigroup_contains(free2, (-1, 2))


def test_dimension_mismatch(free2):
    with pytest.raises(DimensionMismatch):
        semigroup_contains(free2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        semigroup_subtract(free2, (1, 2), (1,))


def test_affine_generators_validated():
    with pytest.raises(NonMemberExponent):
        AmbientRing.affine([(0, 0), (1, 1)])
    with pytest.raises(NonMemberExponent):
        AmbientRing.affine([(1, 1), (1, 1)])


def test_subtract(free2):
    assert semigroup_subtract(free2, (4, 2), (1, 1)) == (3, 1)
    V3 = AmbientRing.veronese(3)
    assert semigroup_subtract(V3, (4, 2), (3, 0)) == (1, 2)
    assert semigroup_subtract(V3, (4, 2), (5, 1)) is None
    V4 = AmbientRing.veronese(4)
    assert semigroup_subtract(V4, (4, 4), (3, 1)) == (1, 3)
    assert semigroup_subtract(V4, (4, 4), (2, 0)) is None


def test_enumerate_box_examples(free2):
    assert list(enumerate_box(free2, (1, 1))) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    V2 = AmbientRing.veronese(2)
    assert list(enumerate_box(V2, (2, 2))) == [(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)]
    assert list(enumerate_box(V2, (0, 0))) == [(0, 0)]


@pytest.mark.parametrize("ambient", [
    AmbientRing.free(2),
    AmbientRing.free(3),
    AmbientRing.veronese(3),
    AmbientRing.affine([(2, 0), (1, 1), (0, 3)]),
])
def test_enumerate_box_matches_filtered_box(ambient):
    bound = (4,) * ambient.dim
    got = list(enumerate_box(ambient, bound))
    expected = [e for e in itertools.product(*(range(5) for _ in range(ambient.dim)))
                if semigroup_contains(ambient, e)]
    assert sorted(got) == sorted(expected)
    keys = [graded_lex_key(e) for e in got]
    assert keys == sorted(keys)
    assert len(set(got)) == len(got)


@pytest.mark.parametrize("ambient", [
    AmbientRing.veronese(4),
    AmbientRing.affine([(3, 0), (1, 1), (0, 2)]),
])
def test_membership_closed_under_addition(ambient, rng):
    members = list(enumerate_box(ambient, (8, 8)))
    for _ in range(200):
        e, f = rng.choice(members), rng.choice(members)
        assert semigroup_contains(ambient, add(e, f))


def test_subtract_witness(rng):
    A = AmbientRing.veronese(3)
    members = list(enumerate_box(A, (6, 6)))
    for _ in range(200):
        e, g = rng.choice(members), rng.choice(members)
        d = semigroup_subtract(A, e, g)
        if d is not None:
            assert add(d, g) == e
            assert semigroup_contains(A, d)


def test_graded_lex_order():
    points = [(0, 2), (1, 1), (2, 0), (0, 0), (3, 0)]
    assert sorted(points, key=graded_lex_key) == [(0, 0), (2, 0), (1, 1), (0, 2), (3, 0)]


def test_maximal_ideal_generators():
    assert AmbientRing.veronese(3).maximal_ideal_gens == ((3, 0), (2, 1), (1, 2), (0, 3))
    assert AmbientRing.free(2).maximal_ideal_gens == ((1, 0), (0, 1))
    assert AmbientRing.veronese(3).generator_span == 3


def test_ambient_config():
    assert AmbientRing.veronese(5).to_config() == {"kind": "veronese", "degree": 5}
    assert AmbientRing.free(2).describe() == "Free(2)"
