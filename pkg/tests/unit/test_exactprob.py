import math
from fractions import Fraction

import pytest

from clusterlab_core.errors import InexactProbabilityError, InvalidInstanceError
from clusterlab_core.exactprob import (
    exact_sqrt,
    exact_sum,
    format_number,
    format_real,
    log_value,
    parse_probability,
    require_exact,
)


@pytest.mark.unit
class TestParseProbability:
    def test_rational_literal_is_exact(self):
        assert parse_probability("3/4") == (Fraction(3, 4), True)

    def test_decimal_is_converted_exactly_but_flagged(self):
        p, exact = parse_probability("0.1")
        assert p == Fraction(1, 10)
        assert exact is False

    @pytest.mark.parametrize("text", ["1/0", "abc", "", "1/2/3"])
    def test_rejects_garbage(self, text):
        with pytest.raises(InvalidInstanceError):
            parse_probability(text)


@pytest.mark.unit
def test_exact_sqrt_stays_rational_on_perfect_squares():
    assert exact_sqrt(Fraction(1, 100)) == Fraction(1, 10)
    assert isinstance(exact_sqrt(Fraction(1, 2)), float)


@pytest.mark.unit
def test_log_value_handles_huge_fractions():
    x = Fraction(10**400, 3)
    assert log_value(x) == pytest.approx(400 * math.log(10) - math.log(3))
    assert log_value(0) == -math.inf


@pytest.mark.unit
def test_exact_sum_degrades_to_float_only_when_needed():
    assert exact_sum([Fraction(1, 3), Fraction(2, 3)]) == 1
    assert isinstance(exact_sum([Fraction(1, 2), 0.25]), float)


@pytest.mark.unit
def test_wire_formats():
    assert format_number(Fraction(15, 32)) == "15/32"
    assert format_number(7) == "7"
    assert format_real(Fraction(11, 100)) == "0.11"
    with pytest.raises(TypeError):
        format_number(True)


@pytest.mark.unit
def test_require_exact_rejects_floats():
    assert require_exact(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(InexactProbabilityError):
        require_exact(0.5)
