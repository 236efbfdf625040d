from fractions import Fraction
from itertools import count, islice
from typing import Iterator, List, Union

from .errors import ParseError


RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """
    Convert an exact value to :py:class:`fractions.Fraction`

    Floats are rejected, every number entering the geometry has to be exact.

    Args:
        value: integer, ``Fraction`` or a string such as ``"3/4"``
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expecting an exact rational value, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    "Serialize a rational as ``p/q``, or ``p`` when the denominator is one"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse ``p/q`` or ``p`` into a ``Fraction``

    Decimal notation is refused so documents stay in the canonical form.
    """
    token = text.strip().replace("−", "-")
    if not token or any(ch in token for ch in ".eE_ "):
        raise ParseError(f"not a rational of the form p/q: '{text}'")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational of the form p/q: '{text}'") from exc


def iter_primes() -> Iterator[int]:
    """
    Incremental sieve of Eratosthenes yielding 2, 3, 5, 7, ...

    Each composite is stored once, keyed by its next multiple to strike.
    """
    composites = {}
    for q in count(2):
        p = composites.pop(q, None)
        if p is None:
            composites[q * q] = q
            yield q
        else:
            x = q + p
            while x in composites:
                x += p
            composites[x] = p


def primes(n: int) -> List[int]:
    "Return the first ``n`` primes"
    if n < 0:
        raise ValueError(f"n should be non-negative, got {n}")
    return list(islice(iter_primes(), n))


def nth_prime(n: int) -> int:
    """
    Return the n-th prime, indexed from ``p_1 = 2``

    Args:
        n: positive index
    """
    if n < 1:
        raise ValueError(f"primes are indexed from 1, got {n}")
    return primes(n)[-1]
