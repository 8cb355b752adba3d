from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab_core.errors import GuardExceededError, ImpossibleOutcomeError, InvalidInstanceError
from clusterlab_core.events import (
    EventFamily,
    Outcome,
    check_symmetry,
    classify_indices,
    conditional_chain,
    is_possible,
    outcome_probability,
    realized_outcome,
    revealed_set,
)
from clusterlab_core.graphs import clique_family
from clusterlab_core.guards import GUARD_OVERRIDE_ENV, check_guard

HALF = Fraction(1, 2)


@pytest.fixture
def k4():
    return clique_family(4, 3)


@pytest.mark.unit
class TestEventFamily:
    def test_clique_family_shape(self, k4):
        assert k4.ground_size == 6
        assert k4.uniformity == 3
        assert k4.N == 4
        assert k4.members[0] == (0, 1, 3)

    def test_rejects_unsorted_members(self):
        with pytest.raises(InvalidInstanceError):
            EventFamily(4, 2, ((1, 0),))
        with pytest.raises(InvalidInstanceError):
            EventFamily(4, 2, ((2, 3), (0, 1)))

    def test_outcome_index_check(self, k4):
        with pytest.raises(InvalidInstanceError):
            Outcome(k4, (7,))


@pytest.mark.unit
def test_classification_and_revealed_set(k4):
    Y = Outcome(k4, (0,))
    assert revealed_set(k4, Y) == (0, 1, 3)
    classes = classify_indices(k4, Y)
    # every other triangle of K4 shares one pair with triangle 012
    assert classes.simple == (1, 2, 3)
    assert classes.neutral == () and classes.complex == ()
    Y2 = Outcome(k4, (0, 1))
    assert classify_indices(k4, Y2).complex == (2, 3)


@pytest.mark.unit
def test_possibility(k4):
    assert is_possible(k4, (0, 1))
    assert not is_possible(k4, (0, 1, 2))
    assert realized_outcome(k4, range(6)).indices == (0, 1, 2, 3)


@pytest.mark.unit
def test_single_triangle_chain():
    fam = clique_family(3, 3)
    empty = conditional_chain(fam, (), HALF)
    assert empty.pi_seq == (Fraction(1, 8),)
    assert empty.product_prob == Fraction(7, 8)
    full = conditional_chain(fam, (0,), HALF)
    assert full.pi_seq == ()
    assert full.revealed_size == 3
    assert full.product_prob == Fraction(1, 8)


@pytest.mark.unit
def test_chain_rejects_impossible_and_bad_orders(k4):
    with pytest.raises(ImpossibleOutcomeError):
        conditional_chain(k4, (0, 1, 2), HALF)
    with pytest.raises(InvalidInstanceError):
        conditional_chain(k4, (0,), HALF, order=(1, 2))


@pytest.mark.unit
def test_outcome_probabilities_sum_to_one(k4):
    total = sum(outcome_probability(k4, (i for i in range(4) if mask >> i & 1), HALF) for mask in range(16))
    assert total == 1


@pytest.mark.unit
@settings(max_examples=40, deadline=None)
@given(
    subset=st.sets(st.integers(0, 9)),
    p=st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)]),
    data=st.data(),
)
def test_chain_matches_brute_force_at_n5(subset, p, data):
    fam = clique_family(5, 3)
    if not is_possible(fam, subset):
        assert outcome_probability(fam, subset, p) == 0
        return
    Y = Outcome(fam, tuple(subset))
    expected = outcome_probability(fam, Y, p)
    assert conditional_chain(fam, Y, p).product_prob == expected
    order = data.draw(st.permutations(Y.complement()))
    assert conditional_chain(fam, Y, p, order=order).product_prob == expected


@pytest.mark.unit
def test_chain_is_independent_of_worker_count():
    fam = clique_family(5, 3)
    one = conditional_chain(fam, (0, 9), Fraction(1, 3), workers=1)
    two = conditional_chain(fam, (0, 9), Fraction(1, 3), workers=2)
    assert one == two


@pytest.mark.unit
def test_symmetry(k4):
    assert check_symmetry(k4)
    lopsided = EventFamily(4, 2, ((0, 1), (0, 2), (2, 3)))
    assert not check_symmetry(lopsided)


@pytest.mark.unit
def test_guard_and_override(monkeypatch):
    monkeypatch.delenv(GUARD_OVERRIDE_ENV, raising=False)
    with pytest.raises(GuardExceededError):
        check_guard("demo", 11, 10)
    monkeypatch.setenv(GUARD_OVERRIDE_ENV, "1")
    check_guard("demo", 11, 10)
