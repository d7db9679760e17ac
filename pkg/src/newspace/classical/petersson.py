"""Kloosterman sums, the Bessel kernel and Petersson sums with certified tails.

The harmonic bracket at level N is

    Dhat_N(m, n) = delta_{m=n} + 2 pi i^{-k} sum_{N | c} S(m, n; c) J_{k-1}(4 pi sqrt(mn) / c) / c,

and for cubefull q the newform bracket is

    D*(m, n; q) = sum_{d | (m, n, q), e | q} mu(d) mu(e) w(d, e) Dhat_{q/(de)}(m/d, n/d)

with w(d, e) = 1/e.  Omitted c are bounded using |S(m, n; c)| <= c and
|J_nu(x)| <= (x/2)^nu / nu!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np

from .arith import is_cubefull, mobius_pairs
from .traces import LevelError


class BudgetError(RuntimeError):
    pass


@lru_cache(maxsize=8192)
def _units_and_inverses(c: int):
    xs = [x for x in range(c) if gcd(x, c) == 1]
    inv = [pow(x, -1, c) if c > 1 else 0 for x in xs]
    return np.array(xs, dtype=np.int64), np.array(inv, dtype=np.int64)


def kloosterman(m: int, n: int, c: int) -> float:
    """S(m, n; c) as a real cosine sum."""
    if c < 1:
        raise ValueError(f"modulus must be >= 1, got {c}")
    if c == 1:
        return 1.0
    xs, inv = _units_and_inverses(c)
    phase = (m % c * xs + n % c * inv) % c
    return float(np.cos(2 * np.pi * phase / c).sum())


def kloosterman_naive(m: int, n: int, c: int) -> complex:
    """Complex exponential sum, written out term by term (test oracle)."""
    total = 0j
    for x in range(c):
        if gcd(x, c) == 1:
            xbar = pow(x, -1, c) if c > 1 else 0
            total += complex(mpmath.expjpi(2 * mpmath.mpf(m * x + n * xbar) / c))
    return total


def bessel_bound(nu: int, x: float) -> float:
    """|J_nu(x)| <= (x/2)^nu / nu! for x >= 0."""
    if x == 0:
        return 0.0
    return math.exp(nu * math.log(x / 2) - math.lgamma(nu + 1))


def bessel_j(nu: int, x: float, tol: float = 1e-15, max_terms: int = 100_000) -> float:
    """J_nu(x) by its power series with a certified truncation error.

    Once the terms decrease the series alternates, so the omitted tail is below
    the first omitted term.  The working precision covers the cancellation:
    the sum of |terms| is I_nu(x) <= e^x.
    """
    if nu < 1 or int(nu) != nu:
        raise ValueError(f"order must be an integer >= 1, got {nu}")
    if x < 0:
        raise ValueError(f"argument must be >= 0, got {x}")
    if x == 0:
        return 0.0
    dps = 20 + int(x / math.log(10)) + max(0, int(-math.log10(tol)))
    with mpmath.workdps(dps):
        h = mpmath.mpf(x) / 2
        h2 = h * h
        term = h**nu / mpmath.factorial(nu)
        total = term
        m = 0
        while True:
            nxt = -term * h2 / ((m + 1) * (m + 1 + nu))
            decreasing = abs(nxt) <= abs(term)
            if decreasing and abs(nxt) <= tol / 2:
                break
            total += nxt
            term = nxt
            m += 1
            if m > max_terms:
                raise BudgetError(f"J_{nu}({x}): tolerance {tol} not reached in {max_terms} terms")
        return float(total)


@dataclass
class PeterssonValue:
    value: float
    tail_bound: float
    cutoff: int = 0
    terms: list = field(default_factory=list)

    def __post_init__(self):
        if self.tail_bound < 0:
            raise ValueError("tail bound must be nonnegative")


def _tail(k, N, m, n, J):
    """Bound for the sum over c = N j with j > J."""
    nu = k - 1
    amp = 2 * math.pi * bessel_bound(nu, 4 * math.pi * math.sqrt(m * n) / N)
    # sum_{j > J} j^{-nu} <= J^{1 - nu} / (nu - 1)
    return amp * J ** (1 - nu) / (nu - 1)


def choose_cutoff(k, N, m, n, tol, start=1, budget=1 << 22):
    J = start
    while _tail(k, N, m, n, J) >= tol:
        J *= 2
        if J > budget:
            raise BudgetError(f"tail bound above {tol} at the cutoff budget (k={k}, N={N}, m={m}, n={n})")
    return J


def _kernel(nu, x):
    if x < 2.0:
        # argument small: terms shrink from the start, double precision is enough
        h2 = (x / 2) ** 2
        term = math.exp(nu * math.log(x / 2) - math.lgamma(nu + 1))
        total, j = term, 0
        while abs(term) > 1e-18 * abs(total):
            term *= -h2 / ((j + 1) * (j + 1 + nu))
            total += term
            j += 1
        return total
    return bessel_j(nu, x, tol=1e-17)


def petersson_delta(k: int, N: int, m: int, n: int, tol: float = 1e-8) -> PeterssonValue:
    if k % 2 or k < 4:
        raise ValueError(f"weight must be even and >= 4, got {k}")
    if N < 1 or m < 1 or n < 1:
        raise ValueError("N, m, n must be positive")
    nu = k - 1
    J = choose_cutoff(k, N, m, n, tol)
    sign = 1 if k % 4 == 0 else -1  # i^{-k}
    a = 4 * math.pi * math.sqrt(m * n)
    total = 0.0
    for j in range(1, J + 1):
        c = N * j
        total += kloosterman(m, n, c) * _kernel(nu, a / c) / c
    value = float(m == n) + 2 * math.pi * sign * total
    return PeterssonValue(value, _tail(k, N, m, n, J), cutoff=N * J)


def newform_weight(d: int, e: int) -> float:
    return 1.0 / e


def petersson_delta_new(k: int, q: int, m: int, n: int, tol: float = 1e-8) -> PeterssonValue:
    if not is_cubefull(q):
        raise LevelError(f"{q} is not cubefull")
    value, tail, cutoff = 0.0, 0.0, 0
    terms = []
    g = gcd(gcd(m, n), q)
    for mp in mobius_pairs(q):
        if not mp.weight or g % mp.d:
            continue
        w = newform_weight(mp.d, mp.e)
        part = petersson_delta(k, q // (mp.d * mp.e), m // mp.d, n // mp.d, tol)
        value += mp.weight * w * part.value
        tail += w * part.tail_bound
        cutoff = max(cutoff, part.cutoff)
        terms.append((mp.d, mp.e, mp.weight, part.value))
    return PeterssonValue(value, tail, cutoff, terms)
