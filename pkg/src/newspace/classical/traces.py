"""Traces of Hecke operators on S_k(Gamma_0(N)) and on cubefull newspaces.

``trace_hecke`` is the Eichler-Selberg trace formula in Cohen's form for
trivial character and even k >= 4 (so the k = 2 correction vanishes).
``dim_cusp`` is the genus-formula dimension, kept independent of the trace
formula so that Tr T_1 = dim is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import (
    divisors,
    dirichlet_mu_mu,
    euler_phi,
    factorize,
    is_cubefull,
    is_square,
    mobius_pairs,
    psi,
)
from .hurwitz import class_number_weighted


class WeightError(ValueError):
    pass


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class LevelWeight:
    k: int
    N: int

    def __post_init__(self):
        if self.k < 4 or self.k % 2:
            raise WeightError(f"weight must be even and >= 4, got {self.k}")
        if self.N < 1:
            raise LevelError(f"level must be >= 1, got {self.N}")


def _nu2(N):
    if N % 4 == 0:
        return 0
    out = 1
    for p, _ in factorize(N):
        if p == 2:
            continue
        out *= 2 if p % 4 == 1 else 0
    return out


def _nu3(N):
    if N % 9 == 0:
        return 0
    out = 1
    for p, _ in factorize(N):
        if p == 3:
            continue
        out *= 2 if p % 3 == 1 else 0
    return out


def num_cusps(N: int) -> int:
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


@lru_cache(maxsize=None)
def dim_cusp(k: int, N: int) -> int:
    """dim S_k(Gamma_0(N)) for even k >= 4 from genus and elliptic data."""
    LevelWeight(k, N)
    mu = psi(N)
    nu2, nu3, cusps = _nu2(N), _nu3(N), num_cusps(N)
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)
    d = (k - 1) * (g - 1) + (k // 2 - 1) * cusps + nu2 * (k // 4) + nu3 * (k // 3)
    assert d.denominator == 1 and d >= 0, (k, N, d)
    return int(d)


def _p_poly(t, n, k):
    """(rho^(k-1) - rhobar^(k-1)) / (rho - rhobar) for rho + rhobar = t, rho rhobar = n."""
    u0, u1 = 0, 1
    for _ in range(k - 2):
        u0, u1 = u1, t * u1 - n * u0
    return u1


def _local_count(t, f, n, N):
    """psi(N)/psi(N/N_f) * #{x mod N : x^2 - t x + n = 0 mod N N_f},  N_f = gcd(N, f)."""
    nf = gcd(N, f)
    mod = N * nf
    sols = sum(1 for x in range(N) if (x * x - t * x + n) % mod == 0)
    return Fraction(psi(N), psi(N // nf)) * sols


@lru_cache(maxsize=None)
def trace_hecke(k: int, N: int, n: int) -> Fraction:
    """Tr(T_n | S_k(Gamma_0(N))), exact; requires gcd(n, N) = 1."""
    LevelWeight(k, N)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if gcd(n, N) != 1:
        raise LevelError(f"gcd(n, N) = gcd({n}, {N}) != 1")

    a1 = Fraction(0)
    if is_square(n):
        a1 = Fraction(k - 1, 12) * psi(N) * Fraction(n) ** (k // 2 - 1)

    a2 = Fraction(0)
    tmax = isqrt(4 * n)
    for t in range(-tmax, tmax + 1):
        disc = t * t - 4 * n
        if disc >= 0:
            continue
        inner = Fraction(0)
        for f in range(1, isqrt(-disc) + 1):
            if disc % (f * f):
                continue
            d = disc // (f * f)
            if d % 4 not in (0, 1):
                continue
            inner += class_number_weighted(d) * _local_count(t, f, n, N)
        a2 += _p_poly(t, n, k) * inner
    a2 = -a2 / 2

    a3 = Fraction(0)
    for d in divisors(n):
        dd = n // d
        inner = 0
        for tau in divisors(N):
            g = gcd(tau, N // tau)
            if (dd - d) % g == 0:
                inner += euler_phi(g)
        a3 += Fraction(min(d, dd)) ** (k - 1) * inner
    a3 = -a3 / 2

    return a1 + a2 + a3


def _require_cubefull(q):
    if not is_cubefull(q):
        raise LevelError(f"{q} is not cubefull")


def trace_hecke_new_terms(k, q, n):
    """The nonzero terms (d, e, weight, level) of the Moebius expansion."""
    _require_cubefull(q)
    return [(mp.d, mp.e, mp.weight, q // (mp.d * mp.e)) for mp in mobius_pairs(q) if mp.weight]


def trace_hecke_new(k: int, q: int, n: int) -> Fraction:
    """Tr(T_n | newspace of level q) for cubefull q via the Moebius-pair sum."""
    _require_cubefull(q)
    if gcd(n, q) != 1:
        raise LevelError(f"gcd(n, q) = gcd({n}, {q}) != 1")
    return sum((w * trace_hecke(k, level, n) for _, _, w, level in trace_hecke_new_terms(k, q, n)), Fraction(0))


def dim_new(k: int, q: int) -> int:
    return int(trace_hecke_new(k, q, 1))


def dim_new_atkin_lehner(k: int, N: int) -> int:
    """sum over f | N of (mu*mu)(f) dim S_k(N/f); valid for every level N."""
    return sum(dirichlet_mu_mu(f) * dim_cusp(k, N // f) for f in divisors(N))
