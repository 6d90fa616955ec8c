import pytest

from MonomialReductionBounds.b_ideal_engine import ideal_power, maximal_ideal, unit_ideal, zero_ideal
from MonomialReductionBounds.e_filtrations import (
    Filtration,
    BoundInstance,
    compute_v,
    expand_filtration_term,
    find_k,
)
from MonomialReductionBounds.helpers import ConfigError, HypothesisNotMet, UnresolvedBound

from conftest import make_ideal, veronese_part2


@pytest.fixture
def desk(free2):
    """Q = (x^2, y^2) inside I = m^2 of Free(2)."""
    return make_ideal(free2, (2, 0), (0, 2)), ideal_power(maximal_ideal(free2), 2)


def test_filtration_terms(free2):
    m = maximal_ideal(free2)
    F = Filtration("adic", m)
    assert F.term(0) == unit_ideal(free2)
    assert F.term(3) == ideal_power(m, 3)
    IC = Filtration("integral_closure", make_ideal(free2, (3, 0), (0, 3)))
    assert IC.term(2) == ideal_power(m, 6)
    assert F.is_power_filtration and not IC.is_power_filtration
    with pytest.raises(ValueError):
        F.term(-1)


def test_unknown_filtration_kind(free2):
    with pytest.raises(ConfigError):
        Filtration("symbolic", maximal_ideal(free2))


def test_check_invariants(free2, desk):
    Q, I = desk
    Filtration("integral_closure", Q).check_invariants(Q, 4)
    Filtration("ratliff_rush", I).check_invariants(I, 3)
    with pytest.raises(HypothesisNotMet):
        Filtration("powers", Q).check_invariants(I, 2)


def test_instance_hypotheses(free2, desk):
    Q, I = desk
    with pytest.raises(HypothesisNotMet):
        BoundInstance(Q, I, zero_ideal(free2), Filtration("adic", Q))
    with pytest.raises(HypothesisNotMet):
        BoundInstance(I, Q, zero_ideal(free2), Filtration("powers", Q))


def test_find_k(free2, desk):
    Q, I = desk
    assert find_k(BoundInstance(I, Q, zero_ideal(free2), Filtration("adic", I))) == 1
    assert find_k(BoundInstance(Q, Q, zero_ideal(free2), Filtration("integral_closure", Q))) == 0
    _, I5, Q5, J5 = veronese_part2(5)
    assert find_k(BoundInstance(I5, Q5, zero_ideal(I5.ambient), Filtration("powers", J5))) == 1


def test_pinned_k(free2, desk):
    Q, I = desk
    F = Filtration("integral_closure", I)
    assert find_k(BoundInstance(I, Q, zero_ideal(free2), F, k=2)) == 2
    with pytest.raises(HypothesisNotMet):
        find_k(BoundInstance(I, Q, zero_ideal(free2), F, k=0))


def test_k_search_exhausted(free2, desk):
    Q, I = desk
    inst = BoundInstance(I, Q, zero_ideal(free2), Filtration("adic", I), k_search=0)
    with pytest.raises(UnresolvedBound) as err:
        find_k(inst)
    assert err.value.bound == 0


def test_v_on_gap_filtration_short_circuits():
    _, I, Q, J = veronese_part2(5)
    vdata = compute_v(BoundInstance(I, Q, zero_ideal(I.ambient), Filtration("powers", J)))
    assert vdata.values == (0, 2, 0)
    assert vdata.v == 2
    assert vdata.short_circuit
    assert vdata.block_generators() == {1: ((3, 2), (2, 3))}


def test_v_vanishes_on_adic_filtration(free2, desk):
    Q, I = desk
    vdata = compute_v(BoundInstance(I, Q, zero_ideal(free2), Filtration("adic", I)))
    assert vdata.v == 0
    assert vdata.block_generators() == {}


def test_v_on_closure_filtration_uses_zero_window(free2, desk):
    Q, _ = desk
    vdata = compute_v(BoundInstance(Q, Q, zero_ideal(free2), Filtration("integral_closure", Q)))
    assert vdata.values == (0, 1, 0, 0, 0)
    assert vdata.v == 1
    assert not vdata.short_circuit
    assert vdata.stable_from == 2
    assert vdata.block_generators() == {1: ((1, 1),)}


def test_v_search_exhausted(free2, desk):
    Q, _ = desk
    inst = BoundInstance(Q, Q, zero_ideal(free2), Filtration("integral_closure", Q), v_search=2)
    with pytest.raises(UnresolvedBound):
        compute_v(inst)


def test_expand_filtration_term_rebuilds_terms(free2, desk):
    Q, _ = desk
    F = Filtration("integral_closure", Q)
    vdata = compute_v(BoundInstance(Q, Q, zero_ideal(free2), F))
    for n in range(vdata.budget + 1):
        assert expand_filtration_term(F, Q, Q, vdata.blocks, n) == F.term(n)
    with pytest.raises(UnresolvedBound):
        expand_filtration_term(F, Q, Q, vdata.blocks, vdata.budget + 1)


def test_expand_filtration_term_on_gap_filtration():
    _, I, Q, J = veronese_part2(6)
    F = Filtration("powers", J)
    vdata = compute_v(BoundInstance(I, Q, zero_ideal(I.ambient), F))
    assert expand_filtration_term(F, I, Q, vdata.blocks, 2) == ideal_power(J, 2)
    assert expand_filtration_term(None, I, Q, vdata.blocks, 1) == J
