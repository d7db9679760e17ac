import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from newspace import kirillov as kv
from newspace.segments import Segment, composition_hypothesis

S = Segment.parse


def tempered(theta, q):
    return kv.SatakeParam(cmath.exp(1j * theta), q)


def test_a1_examples():
    assert abs(kv.SatakeParam(1j, 5).a1) < 1e-15
    s = kv.SatakeParam(cmath.exp(1j * math.pi / 3), 4)
    assert abs(abs(s.a1) - 0.4) < 1e-14
    assert abs(s.a1) <= kv.tempered_bound(4) == 0.8


def test_satake_validation():
    for bad in (1, -1, 2.0, 0.5 + 0.5j):
        with pytest.raises(ValueError):
            kv.SatakeParam(bad, 2)
    with pytest.raises(ValueError):
        kv.SatakeParam(1j, 1)
    assert not kv.SatakeParam(1.2, 2).tempered


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, math.pi - 0.01), st.integers(2, 9))
def test_recurrence_matches_closed_form(theta, q):
    s = tempered(theta, q)
    seq, closed = kv.spherical_coeffs(s, 10), kv.macdonald_coeffs(s, 10)
    assert seq[0] == 1
    assert max(abs(seq[n] - closed[n]) for n in range(-10, 11)) < 1e-12
    assert abs(seq[1]) <= kv.tempered_bound(q) + 1e-15
    assert all(seq[n] == seq[-n] for n in range(11))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, math.pi - 0.01), st.integers(2, 9))
def test_gram_psd(theta, q):
    eig, herm = kv.gram_min_eigenvalue(kv.spherical_coeffs(tempered(theta, q), 10))
    assert eig >= -1e-10 and herm < 1e-14


def test_solve_b_examples():
    t = 0.37
    seq = kv.CoefficientSeq(3, {-2: t, -1: 0.0, 0: 1.0, 1: 0.0, 2: t})
    b0, b1 = kv.solve_b(seq)
    assert abs(b0 - t) < 1e-15 and abs(b1) < 1e-15
    for a1 in (1.0, -1.0):
        with pytest.raises(kv.DegenerateError):
            kv.solve_b(kv.CoefficientSeq(3, {-2: 1.0, -1: a1, 0: 1.0, 1: a1, 2: 1.0}))
    with pytest.raises(kv.DegenerateError):
        kv.exact_coeffs(1, 4, 6)


def test_solved_b_matches_hecke_relation():
    s = tempered(0.9, 3)
    seq = kv.spherical_coeffs(s, 8)
    b0, b1 = kv.solve_b(seq)
    assert abs(b1 - seq[1] * 4 / 3) < 1e-14 and abs(b0 + 1 / 3) < 1e-14
    lin1, lin2 = kv.linear_residuals(seq, b0, b1)
    assert lin1 < 1e-15 and lin2 < 1e-15


def test_recurrence_check_examples():
    const = kv.CoefficientSeq(2, {n: 1 for n in range(-8, 9)})
    assert kv.recurrence_check(const, 0, 1, range(-5, 6)) == 0
    seq = kv.spherical_coeffs(tempered(1.1, 2), 10)
    b0, b1 = kv.solve_b(seq)
    assert kv.recurrence_check(seq, b0, b1, range(-1, 9)) < 1e-14
    seq.values[3] += 1
    assert kv.recurrence_check(seq, b0, b1, range(-1, 9)) >= 1


def test_two_sided_relation_fails_below_minus_one():
    # the symmetric sequence obeys the constant-coefficient relation for n >= -1
    # only: for n = -2 it would require a_0 = b_1 a_1 + b_0 a_2
    seq = kv.exact_coeffs(Fraction(1, 3), 4, 8)
    b0, b1 = kv.solve_b(seq)
    assert kv.recurrence_check(seq, b0, b1, range(-1, 7)) == 0
    gap = kv.recurrence_check(seq, b0, b1, [-2])
    assert gap == abs(seq[0] - b1 * seq[1] - b0 * seq[2]) != 0


def test_project_examples():
    model = kv.GramModel(kv.spherical_coeffs(tempered(0.4, 3), 8), list(range(6)))
    inside = kv.project(model, 2, [1, 2, 3])
    assert max(abs(inside["coefficients"][k] - (k == 2)) for k in (1, 2, 3)) < 1e-12
    assert abs(inside["residual_norm_sq"]) < 1e-12
    empty = kv.project(model, 4, [])
    assert empty["coefficients"] == {} and empty["residual_norm_sq"] == 1
    s = kv.SatakeParam(cmath.exp(1j * math.pi / 5), 3)
    model = kv.GramModel(kv.spherical_coeffs(s, 8), list(range(6)))
    gap = kv.coefficient_gap(kv.project(model, 3, [1, 2]), kv.project(model, 3, [0, 1, 2]))
    assert gap <= 1e-10


def test_project_singular():
    seq = kv.CoefficientSeq(2, {n: 1.0 for n in range(-6, 7)})
    with pytest.raises(kv.DegenerateError):
        kv.project(kv.GramModel(seq, [0, 1, 2]), 2, [0, 1])


@pytest.mark.parametrize(
    "s",
    [kv.SatakeParam(cmath.exp(2j * math.pi / 7), 2), kv.SatakeParam(1.2, 2), kv.SatakeParam(1j, 9)],
    ids=["tempered", "complementary", "a1-zero"],
)
def test_verify_c0_examples(s):
    r = kv.verify_c0_case(s)
    assert r["status"] == "pass"
    assert all(v <= 1e-10 for v in r["checks"].values())
    assert r["w_matches_projection"] <= 1e-10


def test_verify_c0_b1_zero_for_alpha_i():
    assert abs(kv.verify_c0_case(kv.SatakeParam(1j, 9))["b1"]) < 1e-15


@pytest.mark.parametrize("a1,q", [(Fraction(1, 3), 4), (Fraction(-2, 7), 9), (Fraction(3, 5), 16)])
def test_exact_mode_residuals_zero(a1, q):
    r = kv.verify_c0_case(kv.exact_coeffs(a1, q, 10))
    assert r["status"] == "pass"
    assert all(v == 0 and isinstance(v, Fraction) for v in r["checks"].values())


def test_gram_model_compositions_c0():
    seq = kv.spherical_coeffs(tempered(0.7, 2), 12)
    amb = S("0..5")
    for a in amb.subsegments():
        for b in amb.subsegments():
            if composition_hypothesis(a, b):
                assert kv.gram_composition_residual(seq, amb, a, b) < 1e-10, (a, b)
    assert kv.gram_composition_residual(seq, amb, S("0..2"), S("2..4")) > 0.01


def test_gram_star_vanishes_for_c0():
    seq = kv.spherical_coeffs(tempered(0.7, 2), 12)
    for ell in (S("0..3"), S("0..4"), S("1..5")):
        assert np.abs(kv.gram_star(seq, S("0..5"), ell)).max() < 1e-10


def test_diagonal_examples():
    m = kv.DiagonalModel(2, S("0..4"))
    assert list(kv.diagonal_e(m, S("0..4"))) == [1, 1, 1]
    assert not kv.diagonal_e(m, S("1..2")).any()
    assert list(kv.diagonal_e(m, S("1..3"))) == [0, 1, 0]
    with pytest.raises(ValueError):
        kv.DiagonalModel(1, S("0..4"))
    with pytest.raises(ValueError):
        kv.diagonal_e(m, S("0..5"))


def test_diagonal_dimensions():
    for c in (2, 3, 4):
        m = kv.DiagonalModel(c, S("0..8"))
        assert len(m.basis) == max(0, 9 - c)
        for ell in m.ambient.subsegments():
            assert m.fixed_dim(ell) == max(0, ell.card - c)


def test_star_diagonal_examples():
    m3 = kv.DiagonalModel(3, S("0..8"))
    r = kv.star_diagonal(m3, S("0..3"))
    assert r["status"] == "pass" and r["rank"] == 1 and list(r["star"]).index(1) == 0
    m2 = kv.DiagonalModel(2, S("0..8"))
    r = kv.star_diagonal(m2, S("0..3"), compositions=False)
    assert r["rank"] == 0 and r["matches_expected"]
    e01, e12, e11 = (kv.diagonal_e(m2, S(x)) for x in ("0..1", "1..2", "1..1"))
    assert np.array_equal(e01 * e12, e11)
    with pytest.raises(ValueError):
        kv.star_diagonal(m2, S("0..1"))
