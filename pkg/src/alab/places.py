"""Exact arithmetic of rationals at the places of Q.

Rationals are :class:`fractions.Fraction`.  A place is either a prime ``p``
(the p-adic absolute value, normalized so that ``|p|_p = 1/p``) or the single
infinite place (ordinary absolute value).  Everything here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from sympy import factorint, isprime

RationalLike = Union[Fraction, int, str]


class PlaceError(ValueError):
    pass


def as_rational(q: RationalLike) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise TypeError("bool is not a rational")
    if isinstance(q, (int, str)):
        return Fraction(q)
    raise TypeError(f"cannot interpret {q!r} as a rational")


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q.  ``prime is None`` is the infinite place."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not _is_prime(self.prime):
            raise PlaceError(f"{self.prime} is not a prime")

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "infinite"):
            return INFINITE
        return cls(int(t))

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


INFINITE = Place(None)


@lru_cache(maxsize=1024)
def _is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


def _check_prime(p: int) -> None:
    if not (isinstance(p, int) and _is_prime(p)):
        raise PlaceError(f"{p} is not a prime")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(q: RationalLike, p: int) -> int:
    """p-adic valuation: the exponent v with q = p^v * (unit at p)."""
    q = as_rational(q)
    _check_prime(p)
    if q == 0:
        raise PlaceError("valuation of zero undefined")
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def normalized_abs(q: RationalLike, place: Place | int | None) -> Fraction:
    """Normalized absolute value ``|q|_s``; exact at every place of Q.

    At the infinite place the value is the ordinary ``|q|``, still as a
    Fraction; call ``float()`` on it if a real number is wanted.
    """
    q = as_rational(q)
    if not isinstance(place, Place):
        place = Place(place)
    if q == 0:
        raise PlaceError("absolute value of zero is 0; nonzero input required")
    if place.is_infinite:
        return abs(q)
    p = place.prime
    return Fraction(p) ** (-valuation(q, p))


def relevant_places(q: RationalLike) -> list[Place]:
    """The infinite place followed by the primes dividing num or den, ascending."""
    q = as_rational(q)
    primes = set(factorint(abs(q.numerator))) | set(factorint(q.denominator))
    primes.discard(1)
    return [INFINITE] + [Place(p) for p in sorted(primes)]


def product_formula(q: RationalLike) -> Fraction:
    """Product of ``|q|_s`` over all places; every other place contributes 1."""
    q = as_rational(q)
    if q == 0:
        raise PlaceError("product formula needs a nonzero rational")
    result = Fraction(1)
    for place in relevant_places(q):
        result *= normalized_abs(q, place)
    return result


def s_integer_window_test(q: RationalLike, S: Iterable[int], c: RationalLike | float) -> bool:
    """True iff ``|q|_p <= 1`` for every prime p outside S and ``|q| <= c``.

    The window is a product of unit balls away from S and the interval
    ``[-c, c]`` at the infinite place.
    """
    q = as_rational(q)
    S = set(S)
    if not S:
        raise PlaceError("S must be nonempty")
    for p in S:
        _check_prime(p)
    if c <= 0:
        raise PlaceError("window radius must be positive")
    den = q.denominator
    for p in S:
        while den % p == 0:
            den //= p
    if den != 1:
        return False
    if isinstance(c, float):
        return abs(q) <= Fraction(c)
    return abs(q) <= as_rational(c)


def fmt_rational(q: Fraction) -> str:
    """``"num/den"``, or just ``"num"`` for integers."""
    q = as_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
