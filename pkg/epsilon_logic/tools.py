import re
from fractions import Fraction

from beartype import beartype

from . import config as CFG

_RATIONAL = re.compile(CFG.GRAMMAR.RATIONAL)


@beartype
def parse_rational(text: str) -> Fraction:
    """
    Parses an exact rational literal.

    Args:
        text: Integer or fraction literal such as "3", "-2" or "1/4". Decimal
            notation is rejected so that no value is ever rounded.

    Returns:
        The literal as a Fraction in lowest terms.
    """
    literal = text.strip()
    if not _RATIONAL.fullmatch(literal):
        raise ValueError(CFG.ERRORS.BAD_RATIONAL.format(text=text))
    return Fraction(literal)


@beartype
def parse_epsilon(text: str) -> Fraction:
    """Parses a rational and checks that it lies in [0, 1]."""
    value = parse_rational(text)
    check_epsilon(value)
    return value


@beartype
def check_epsilon(value: Fraction) -> None:
    if not 0 <= value <= 1:
        raise ValueError(CFG.ERRORS.EPSILON_RANGE.format(value=value))


@beartype
def format_rational(value: Fraction) -> str:
    # Fraction prints integers without a denominator: "1", "0", "3/4"
    return str(value)
