import math
from fractions import Fraction

import mpmath
import pytest
import scipy.special
from hypothesis import given, settings, strategies as st

from newspace.classical import arith, hurwitz, petersson, traces
from newspace.classical import (
    bessel_j,
    dim_cusp,
    dim_new,
    dim_new_atkin_lehner,
    hurwitz_class_number,
    is_cubefull,
    kloosterman,
    mobius_pairs,
    petersson_delta,
    petersson_delta_new,
    squarefree_divisors,
    trace_hecke,
    trace_hecke_new,
)


def test_cubefull_examples():
    assert is_cubefull(8) and not is_cubefull(12) and is_cubefull(1)
    assert arith.cubefull_up_to(100) == [1, 8, 16, 27, 32, 64, 81]


def test_mobius_pairs_examples():
    pairs = {(m.d, m.e, m.weight) for m in mobius_pairs(8)}
    assert pairs == {(1, 1, 1), (1, 2, -1), (2, 1, -1), (2, 2, 1)}
    assert squarefree_divisors(216) == [1, 2, 3, 6]
    assert len(mobius_pairs(216)) == 16
    for q in arith.cubefull_up_to(1000):
        assert all(q % (m.d * m.e) == 0 for m in mobius_pairs(q))


def test_mu_mu_is_dirichlet_square():
    for n in range(1, 300):
        direct = sum(arith.mobius(d) * arith.mobius(n // d) for d in arith.divisors(n))
        assert arith.dirichlet_mu_mu(n) == direct


def test_hurwitz_examples():
    assert hurwitz_class_number(3) == Fraction(1, 3)
    assert hurwitz_class_number(4) == Fraction(1, 2)
    assert hurwitz_class_number(0) == Fraction(-1, 12)
    assert hurwitz_class_number(1) == hurwitz_class_number(2) == 0
    # small table values
    assert [hurwitz_class_number(n) for n in (7, 8, 11, 12, 15, 16, 23)] == [1, 1, 1, Fraction(4, 3), 2, Fraction(3, 2), 3]


def test_hurwitz_against_primitive_class_numbers():
    for n in range(1, 800):
        assert hurwitz_class_number(n) == hurwitz.hurwitz_via_primitive(n)


def test_hurwitz_generating_identity():
    # sum over t of H(4n - t^2) = 2 sigma(n) - sum over d | n of min(d, n/d)
    for n in range(1, 60):
        lhs = sum(hurwitz_class_number(4 * n - t * t) for t in range(-math.isqrt(4 * n), math.isqrt(4 * n) + 1))
        divs = arith.divisors(n)
        assert lhs == 2 * sum(divs) - sum(min(d, n // d) for d in divs)


def _eta_product(exps, terms):
    """Coefficients a_1..a_terms of prod eta(d z)^r, assuming the q-power is q^1."""
    shift = Fraction(sum(d * r for d, r in exps.items()), 24)
    assert shift == 1
    series = [0] * (terms + 1)
    series[0] = 1
    for d, r in exps.items():
        for n in range(1, terms // d + 1):
            for _ in range(r):
                for i in range(terms, d * n - 1, -1):
                    series[i] -= series[i - d * n]
    return {n: series[n - 1] for n in range(1, terms + 1)}


ETA = [
    (4, 5, {1: 4, 5: 4}),
    (4, 6, {1: 2, 2: 2, 3: 2, 6: 2}),
    (4, 8, {2: 4, 4: 4}),
    (6, 3, {1: 6, 3: 6}),
    (6, 4, {2: 12}),
    (8, 2, {1: 8, 2: 8}),
    (12, 1, {1: 24}),
]


@pytest.mark.parametrize("k,N,exps", ETA, ids=[f"k{k}N{N}" for k, N, _ in ETA])
def test_traces_match_eta_products(k, N, exps):
    assert dim_cusp(k, N) == 1
    coeffs = _eta_product(exps, 40)
    for n in range(1, 41):
        if math.gcd(n, N) == 1:
            assert trace_hecke(k, N, n) == coeffs[n], n


def test_trace_examples():
    assert trace_hecke(12, 1, 1) == 1
    assert trace_hecke(4, 1, 1) == 0
    assert trace_hecke(12, 1, 2) == -24


def test_trace_equals_dimension_small():
    for k in (4, 6, 8, 10):
        for N in range(1, 30):
            assert trace_hecke(k, N, 1) == dim_cusp(k, N)


def test_trace_errors():
    with pytest.raises(traces.LevelError):
        trace_hecke(12, 4, 2)
    with pytest.raises(traces.WeightError):
        trace_hecke(2, 11, 1)
    with pytest.raises(traces.WeightError):
        trace_hecke(5, 11, 1)
    with pytest.raises(traces.LevelError):
        trace_hecke_new(12, 12, 1)


def test_trace_new_p_cubed_expansion():
    terms = traces.trace_hecke_new_terms(8, 27, 1)
    assert sorted((w, lvl) for _, _, w, lvl in terms) == [(-1, 9), (-1, 9), (1, 3), (1, 27)]
    for k in (4, 8, 12):
        assert trace_hecke_new(k, 27, 1) == dim_cusp(k, 27) - 2 * dim_cusp(k, 9) + dim_cusp(k, 3)


def test_trace_new_against_oracle():
    assert trace_hecke_new(12, 8, 1) == dim_new_atkin_lehner(12, 8)
    for q in (8, 16, 27, 32, 64):
        for k in (4, 6, 12):
            assert dim_new(k, q) >= 0


def test_newspace_traces_are_integers():
    for n in (3, 5, 7, 9):
        assert trace_hecke_new(8, 16, n).denominator == 1


def test_kloosterman_examples():
    assert kloosterman(3, 5, 1) == 1
    assert abs(kloosterman(1, 1, 2) - 1) < 1e-14
    assert abs(kloosterman(1, 1, 3) + 1) < 1e-14


def test_kloosterman_weil_bound_and_symmetry():
    for p in range(2, 100):
        if arith.is_prime(p):
            assert abs(kloosterman(1, 1, p)) <= 2 * math.sqrt(p) + 1e-9
    for c in (7, 12, 30):
        for m, n in ((1, 2), (3, 5)):
            naive = petersson.kloosterman_naive(m, n, c)
            assert abs(naive.imag) < 1e-10
            assert abs(kloosterman(m, n, c) - naive.real) < 1e-10
            assert abs(kloosterman(m, n, c) - kloosterman(n, m, c)) < 1e-10


def test_bessel_examples():
    assert bessel_j(3, 0.0) == 0
    x = 1e-3
    assert abs(bessel_j(1, x) - (x / 2 - x**3 / 16)) < 1e-16
    with mpmath.workdps(40):
        ref = float(mpmath.besselj(11, 1))
    assert abs(bessel_j(11, 1.0) - ref) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25), st.floats(0.0, 400.0))
def test_bessel_against_scipy(nu, x):
    assert abs(bessel_j(nu, x, tol=1e-13) - scipy.special.jv(nu, x)) < 1e-10


def test_bessel_budget_and_bounds():
    with pytest.raises(petersson.BudgetError):
        bessel_j(1, 80.0, max_terms=10)
    with pytest.raises(ValueError):
        bessel_j(0, 1.0)
    for x in (0.5, 3.0, 12.0):
        assert abs(bessel_j(7, x)) <= petersson.bessel_bound(7, x)


def test_petersson_delta_diagonal_large_level():
    v = petersson_delta(8, 10**6, 3, 3)
    assert abs(v.value - 1) < 1e-10 and v.tail_bound < 1e-8


def test_petersson_cutoff_doubling_within_tail():
    v = petersson_delta(8, 3, 2, 5, tol=1e-6)
    J = v.cutoff // 3
    total = 0.0
    for j in range(1, 2 * J + 1):
        c = 3 * j
        total += kloosterman(2, 5, c) * petersson._kernel(7, 4 * math.pi * math.sqrt(10) / c) / c
    doubled = 2 * math.pi * total
    assert abs(doubled - v.value) <= v.tail_bound


def test_petersson_symmetric_real():
    a = petersson_delta(10, 4, 3, 7)
    b = petersson_delta(10, 4, 7, 3)
    assert isinstance(a.value, float)
    assert abs(a.value - b.value) <= a.tail_bound + b.tail_bound + 1e-12


def test_petersson_level_one_is_tau():
    d11 = petersson_delta(12, 1, 1, 1).value
    for m, tau in ((2, -24), (3, 252), (5, 4830)):
        assert abs(petersson_delta(12, 1, m, 1).value / d11 - tau / m**5.5) < 1e-8


def test_petersson_new_single_newform_level_8():
    # one newform at (k, q) = (6, 8): ratios are its normalized Hecke eigenvalues
    assert dim_new(6, 8) == 1
    d11 = petersson_delta_new(6, 8, 1, 1).value
    for m in (3, 5, 7):
        lam = float(trace_hecke_new(6, 8, m)) / m**2.5
        assert abs(petersson_delta_new(6, 8, m, 1).value / d11 - lam) < 1e-6


def test_petersson_new_rejects_non_cubefull():
    with pytest.raises(traces.LevelError):
        petersson_delta_new(8, 12, 1, 1)


def test_petersson_budget():
    with pytest.raises(petersson.BudgetError):
        petersson_delta(4, 1, 50, 50, tol=1e-30)
