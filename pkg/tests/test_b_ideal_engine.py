import pytest

from MonomialReductionBounds.a_exponent_core import AmbientRing, add, enumerate_box, graded_lex_key
from MonomialReductionBounds.b_ideal_engine import (
    PowerLadder,
    RingElement,
    element_in_ideal,
    ideal_colon,
    ideal_contains_monomial,
    ideal_eq,
    ideal_intersection,
    ideal_leq,
    ideal_power,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimalize,
    one_element,
    power_ladder,
    unit_ideal,
    zero_ideal,
)
from MonomialReductionBounds.helpers import (
    AmbientMismatch,
    NonMemberExponent,
    UnsupportedAmbient,
    ZeroIdealError,
)

from conftest import make_ideal, random_mprimary, veronese_part1


def test_minimalize_drops_multiples_and_sorts(free2):
    I = make_ideal(free2, (0, 3), (2, 2), (3, 0), (3, 3), (1, 4))
    assert I.gens == ((3, 0), (0, 3), (2, 2))


def test_minimalize_general_path():
    A = AmbientRing.free(3)
    I = make_ideal(A, (1, 1, 1), (1, 0, 0), (0, 2, 0), (0, 2, 1))
    assert I.gens == ((1, 0, 0), (0, 2, 0))


def test_minimalize_rejects_non_members():
    with pytest.raises(NonMemberExponent):
        make_ideal(AmbientRing.veronese(3), (1, 0))


def test_special_ideals(free2):
    assert zero_ideal(free2).is_zero
    assert unit_ideal(free2).is_unit
    assert maximal_ideal(free2).gens == ((1, 0), (0, 1))
    assert maximal_ideal(AmbientRing.veronese(3)).num_gens == 4


def test_product_example(free2):
    Q = make_ideal(free2, (2, 0), (0, 2))
    m = maximal_ideal(free2)
    assert ideal_product(Q, m).gens == ((3, 0), (2, 1), (1, 2), (0, 3))


def test_veronese_products():
    A, I, Q = veronese_part1(3)
    assert ideal_product(Q, I).gens == ((6, 0), (5, 1), (3, 3), (2, 4), (0, 6))
    I2 = ideal_power(I, 2)
    assert I2.gens == ((6, 0), (5, 1), (4, 2), (3, 3), (2, 4), (0, 6))
    assert ideal_contains_monomial(I2, (4, 2))
    assert not ideal_contains_monomial(ideal_product(Q, I), (4, 2))


def test_power_zero_is_unit(free2):
    I = make_ideal(free2, (2, 0), (1, 1))
    assert ideal_power(I, 0) == unit_ideal(free2)
    assert power_ladder(I, 2)[1] == I
    with pytest.raises(ValueError):
        power_ladder(I, -1)


def test_power_ladder_matches_direct_powers(free2):
    I = make_ideal(free2, (3, 0), (1, 1), (0, 2))
    ladder = PowerLadder(I)
    assert ladder[4] == ideal_power(I, 4)
    assert ladder[2] == ideal_product(I, I)


def test_powers_add(free2, rng):
    for _ in range(10):
        I = random_mprimary(rng, free2, max_exp=3)
        for a in range(3):
            for b in range(3):
                assert ideal_product(ideal_power(I, a), ideal_power(I, b)) == ideal_power(I, a + b)


def test_sum_and_order(free2):
    I = make_ideal(free2, (2, 0))
    J = make_ideal(free2, (0, 2), (3, 0))
    S = ideal_sum(I, J)
    assert S.gens == ((2, 0), (0, 2))
    assert ideal_leq(I, S) and ideal_leq(J, S)
    assert not ideal_leq(S, J)


def test_equality_agrees_with_generators(free2, rng):
    for _ in range(30):
        I = random_mprimary(rng, free2)
        J = random_mprimary(rng, free2)
        assert ideal_eq(I, J) == (I == J)
        assert ideal_eq(I, I)


def test_ambient_mismatch(free2):
    V = AmbientRing.veronese(2)
    with pytest.raises(AmbientMismatch):
        ideal_sum(maximal_ideal(free2), maximal_ideal(V))


def test_colon_example(free2):
    Q = make_ideal(free2, (2, 0), (0, 2))
    assert ideal_colon(Q, maximal_ideal(free2)).gens == ((2, 0), (1, 1), (0, 2))
    assert ideal_colon(Q, unit_ideal(free2)) == Q
    with pytest.raises(ZeroIdealError):
        ideal_colon(Q, zero_ideal(free2))


def test_colon_of_square_by_ideal_contains_middle(free2):
    I = make_ideal(free2, (4, 0), (3, 1), (1, 3), (0, 4))
    C = ideal_colon(ideal_power(I, 2), I)
    assert ideal_contains_monomial(C, (2, 2))
    assert not ideal_contains_monomial(I, (2, 2))


def test_free_colon_matches_brute_force(free2, rng):
    for _ in range(20):
        I = random_mprimary(rng, free2)
        J = random_mprimary(rng, free2, max_exp=3)
        C = ideal_colon(I, J)
        for a in enumerate_box(free2, (7, 7)):
            expected = all(ideal_contains_monomial(I, add(a, g)) for g in J.gens)
            assert ideal_contains_monomial(C, a) == expected
        assert ideal_leq(ideal_product(C, J), I)


def test_veronese_colon_exact_in_search_box():
    A, I, Q = veronese_part1(3)
    QI = ideal_product(Q, I)
    C = ideal_colon(QI, I)
    assert C.search_box is not None
    for a in enumerate_box(A, C.search_box):
        expected = all(ideal_contains_monomial(QI, add(a, g)) for g in I.gens)
        assert ideal_contains_monomial(C, a) == expected
    assert ideal_leq(Q, C)


def test_intersection(free2):
    I = make_ideal(free2, (1, 0), (0, 2))
    J = make_ideal(free2, (2, 0), (0, 1))
    assert ideal_intersection(I, J).gens == ((2, 0), (1, 1), (0, 2))
    A3 = AmbientRing.free(3)
    X = make_ideal(A3, (1, 0, 0))
    Y = make_ideal(A3, (0, 1, 0))
    assert ideal_intersection(X, Y).gens == ((1, 1, 0),)
    assert ideal_intersection(X, zero_ideal(A3)).is_zero


def test_intersection_matches_brute_force(free2, rng):
    for _ in range(20):
        I = random_mprimary(rng, free2)
        J = random_mprimary(rng, free2)
        K = ideal_intersection(I, J)
        for a in enumerate_box(free2, (6, 6)):
            assert ideal_contains_monomial(K, a) == (
                ideal_contains_monomial(I, a) and ideal_contains_monomial(J, a))


def test_intersection_refuses_non_free():
    V = AmbientRing.veronese(3)
    m = maximal_ideal(V)
    with pytest.raises(UnsupportedAmbient):
        ideal_intersection(m, m)


def test_generators_sorted_graded_lex(free2, rng):
    for _ in range(20):
        I = random_mprimary(rng, free2)
        keys = [graded_lex_key(g) for g in I.gens]
        assert keys == sorted(keys)


def test_element_arithmetic(free2):
    x = RingElement.monomial(free2, (1, 0))
    y = RingElement.monomial(free2, (0, 1))
    lhs = (x + y) * (x - y)
    rhs = x * x - y * y
    assert lhs == rhs
    assert lhs.as_dict() == {(2, 0): 1, (0, 2): -1}
    assert (x - x).is_zero
    assert (x * one_element(free2)) == x
    assert (-x + x).is_zero


def test_element_in_ideal_is_termwise(free2):
    Q = make_ideal(free2, (2, 0), (0, 2))
    f = RingElement.from_terms(free2, {(2, 1): 3, (0, 5): -1})
    g = RingElement.from_terms(free2, {(2, 1): 1, (1, 1): 1})
    assert element_in_ideal(f, Q)
    assert not element_in_ideal(g, Q)


def test_element_rejects_non_members():
    with pytest.raises(NonMemberExponent):
        RingElement.monomial(AmbientRing.veronese(2), (1, 0))


def _below(e, bound) -> bool:
    return all(x <= y for x, y in zip(e, bound))


@pytest.mark.slow
def test_operations_match_box_enumeration_on_hundred_instances(free2, rng):
    box = (19, 19)
    for _ in range(100):
        points = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(1, 5))]
        I = minimalize(free2, points)
        J = random_mprimary(rng, free2, max_exp=4)
        IJ = ideal_product(I, J)
        C = ideal_colon(I, J)
        for a in enumerate_box(free2, box):
            assert ideal_contains_monomial(I, a) == any(_below(p, a) for p in points)
            assert ideal_contains_monomial(IJ, a) == any(_below(add(g, h), a) for g in I.gens for h in J.gens)
            assert ideal_contains_monomial(C, a) == all(ideal_contains_monomial(I, add(a, h)) for h in J.gens)
