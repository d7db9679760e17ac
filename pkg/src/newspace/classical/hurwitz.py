"""Class numbers of positive definite binary quadratic forms by direct counting."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


def _reduced_forms(disc: int):
    """Reduced forms (a, b, c) with b^2 - 4ac = disc < 0.

    Reduced: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
    """
    n = -disc
    out = []
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            out.append((a, b, c))
        a += 1
    return out


def _weight(a, b, c):
    if a == c and b == 0:
        return Fraction(1, 2)
    if a == b == c:
        return Fraction(1, 3)
    return Fraction(1)


@lru_cache(maxsize=None)
def hurwitz_class_number(n: int) -> Fraction:
    """H(n), weighted over all (not only primitive) classes of discriminant -n."""
    if n == 0:
        return Fraction(-1, 12)
    if n < 0 or n % 4 in (1, 2):
        return Fraction(0)
    return sum((_weight(*f) for f in _reduced_forms(-n)), Fraction(0))


@lru_cache(maxsize=None)
def class_number_weighted(disc: int) -> Fraction:
    """h(D) / (w(D)/2) for a negative discriminant D, primitive classes only."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    return sum((_weight(*f) for f in _reduced_forms(disc) if gcd(gcd(*f[:2]), f[2]) == 1), Fraction(0))


def hurwitz_via_primitive(n: int) -> Fraction:
    """H(n) = sum over f^2 | n with -n/f^2 a discriminant of h_w(-n/f^2)."""
    total = Fraction(0)
    for f in range(1, isqrt(n) + 1):
        if n % (f * f) == 0 and (-n // (f * f)) % 4 in (0, 1):
            total += class_number_weighted(-n // (f * f))
    return total
