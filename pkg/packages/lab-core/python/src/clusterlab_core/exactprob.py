"""
Exact-or-float probability arithmetic.

An ``ExactProb`` is either a ``fractions.Fraction`` (exact mode) or a ``float``
(float mode). Every formula in the laboratory is written once against this
union: Fractions stay exact under +, -, *, / and integer powers, and mixing a
float in anywhere degrades the result to a float. Quantities that leave the
rationals (square roots, logarithms, exponentials) are computed here, exactly
when possible.
"""
import logging
import math
import re
from fractions import Fraction
from typing import Iterable, Tuple, Union

from clusterlab_core.errors import InexactProbabilityError, InvalidInstanceError

logger = logging.getLogger(__name__)

ExactProb = Union[Fraction, float]
Number = Union[int, Fraction, float]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")


def parse_probability(text: str) -> Tuple[Fraction, bool]:
    """
    Parse "a/b" or a decimal string into an exact rational.

    Returns the rational and a flag that is ``True`` when the input was a
    rational literal. Decimals are still converted exactly (``"0.1"`` is
    1/10), but callers treat them as float mode.
    """
    match = _RATIONAL.match(text)
    if match:
        den = int(match.group(2))
        if den == 0:
            raise InvalidInstanceError(f"zero denominator in probability '{text}'")
        return Fraction(int(match.group(1)), den), True
    if _DECIMAL.match(text):
        return Fraction(text.strip()), False
    raise InvalidInstanceError(f"cannot parse probability '{text}'")


def is_exact(x: Number) -> bool:
    return isinstance(x, (int, Fraction))


def require_exact(p: Number, what: str = "p") -> Fraction:
    if isinstance(p, float):
        raise InexactProbabilityError(f"{what} must be an exact rational in exact mode, got {p!r}")
    return Fraction(p)


def check_probability(p: Number, *, open_interval: bool = False) -> None:
    if open_interval and not 0 < p < 1:
        raise InvalidInstanceError(f"p must lie in (0, 1), got {p}")
    if not 0 <= p <= 1:
        raise InvalidInstanceError(f"p must lie in [0, 1], got {p}")


def exact_sqrt(x: Number) -> Number:
    """Square root that stays a Fraction when numerator and denominator are perfect squares."""
    if x < 0:
        raise InvalidInstanceError(f"square root of negative value {x}")
    if is_exact(x):
        q = Fraction(x)
        num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if num * num == q.numerator and den * den == q.denominator:
            return Fraction(num, den)
    return math.sqrt(x)


def log_value(x: Number) -> float:
    """Natural log that survives huge or tiny Fractions without overflowing a float."""
    if x <= 0:
        return -math.inf
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def to_float(x: Number) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def falling_factorial(x: Number, k: int) -> Number:
    out: Number = 1
    for i in range(k):
        out *= x - i
    return out


def exact_sum(values: Iterable[Number]) -> Number:
    """Sum whose result does not depend on the order of the terms when they are exact."""
    total: Number = 0
    floats = []
    for v in values:
        if isinstance(v, float):
            floats.append(v)
        else:
            total += v
    if floats:
        return math.fsum(floats) + float(total)
    return total


def format_number(x: Number) -> str:
    """Render a number for the wire: rationals as "num/den", reals as shortest round-trip decimals."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers on the wire")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def format_real(x: Number) -> str:
    """Render a number as a decimal even when it is held exactly (float-mode output)."""
    return repr(to_float(x))
