"""Elementary arithmetic for levels: factorization, Moebius pairs, cubefull test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt


@lru_cache(maxsize=4096)
def factorize(n: int):
    """Prime factorization as a tuple of (p, e), by trial division."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int):
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def psi(n: int) -> int:
    """Index of Gamma_0(n) in SL2(Z): n * prod (1 + 1/p)."""
    out = n
    for p, _ in factorize(n):
        out = out // p * (p + 1)
    return out


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def is_cubefull(n: int) -> bool:
    return all(e >= 3 for _, e in factorize(n))


def cubefull_up_to(bound: int):
    return [n for n in range(1, bound + 1) if is_cubefull(n)]


def squarefree_divisors(n: int):
    primes = [p for p, _ in factorize(n)]
    out = [1]
    for p in primes:
        out += [d * p for d in out]
    return sorted(out)


@dataclass(frozen=True, order=True)
class MobiusPair:
    d: int
    e: int
    weight: int


def mobius_pairs(n: int):
    """(d, e, mu(d) mu(e)) over squarefree d, e dividing n."""
    sq = squarefree_divisors(n)
    return [MobiusPair(d, e, mobius(d) * mobius(e)) for d, e in product(sq, sq)]


def dirichlet_mu_mu(n: int) -> int:
    """(mu * mu)(n): multiplicative with -2 at p, 1 at p^2, 0 beyond."""
    out = 1
    for _, e in factorize(n):
        out *= {1: -2, 2: 1}.get(e, 0)
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
