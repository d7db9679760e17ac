"""Gram-matrix and diagonal models of fixed vectors for GL2 representations.

Log-conductor 0.  With v_n the translate of a unit spherical vector by
diag(uniformizer^n, 1), the inner products <v_{m+n}, v_m> = a_n depend only on
n.  All projections below are computed from these numbers alone.  The a_n
come from the Hecke relation of the spherical function on the tree:

    a_0 = 1,  a_1 = (alpha + 1/alpha) / (q^(1/2) + q^(-1/2)),
    a_{n+2} = b_1 a_{n+1} + b_0 a_n  (n >= 0),  b_1 = a_1 (q + 1) / q,  b_0 = -1/q,

and a_{-n} = a_n.  Since b_1, b_0 are rational in a_1, a rational a_1 gives an
exact model in which every residual is a Fraction.

Log-conductor c >= 2.  The fixed space of a segment is spanned by the
indicators of the shells n with n..n+c inside the segment, and every standard
projector is diagonal in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from . import exact
from .segments import Segment, intersect, star_combo

TOL = 1e-10


class DegenerateError(ValueError):
    pass


@dataclass(frozen=True)
class SatakeParam:
    alpha: complex
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        a = complex(self.alpha)
        if abs(a - 1) < 1e-12 or abs(a + 1) < 1e-12:
            raise ValueError("alpha = +-1 is excluded")
        tempered = abs(abs(a) - 1) < 1e-12
        r = sqrt(self.q)
        complementary = abs(a.imag) < 1e-15 and 1 / r < abs(a.real) < r
        if not (tempered or complementary):
            raise ValueError(f"alpha = {a} is neither tempered nor in the complementary range for q = {self.q}")

    @property
    def tempered(self) -> bool:
        return abs(abs(complex(self.alpha)) - 1) < 1e-12

    @property
    def a1(self) -> complex:
        a = complex(self.alpha)
        r = sqrt(self.q)
        return (a + 1 / a) / (r + 1 / r)


def tempered_bound(q: int) -> float:
    r = sqrt(q)
    return 2 / (r + 1 / r)


@dataclass
class CoefficientSeq:
    q: int
    values: dict
    exact: bool = False

    def __getitem__(self, n):
        return self.values[n]

    @property
    def N(self) -> int:
        return max(self.values)


def _generate(a1, q, N, exact_mode):
    if N < 1:
        raise ValueError("N must be >= 1")
    if exact_mode:
        one, b1, b0 = Fraction(1), a1 * Fraction(q + 1, q), Fraction(-1, q)
    else:
        one, b1, b0 = 1.0 + 0j, a1 * (q + 1) / q, -1.0 / q
    vals = {0: one, 1: a1}
    for n in range(2, N + 1):
        vals[n] = b1 * vals[n - 1] + b0 * vals[n - 2]
    for n in range(1, N + 1):
        vals[-n] = vals[n]
    return CoefficientSeq(q, dict(sorted(vals.items())), exact_mode)


def spherical_coeffs(s: SatakeParam, N: int) -> CoefficientSeq:
    return _generate(complex(s.a1), s.q, N, False)


def exact_coeffs(a1, q: int, N: int) -> CoefficientSeq:
    """Exact sequence from a rational a_1 with |a_1| < 1 (unitary range)."""
    a1 = Fraction(a1)
    if abs(a1) >= 1:
        raise DegenerateError(f"|a_1| = {abs(a1)} >= 1 is outside the unitary generic range")
    return _generate(a1, q, N, True)


def macdonald_coeffs(s: SatakeParam, N: int) -> CoefficientSeq:
    """Closed form of the spherical function; an independent oracle."""
    a = complex(s.alpha)
    q = s.q
    r = sqrt(q)
    c1 = (1 - a**-2 / q) / (1 - a**-2)
    c2 = (1 - a**2 / q) / (1 - a**2)
    vals = {}
    for n in range(N + 1):
        vals[n] = (c1 * (a / r) ** n + c2 * (1 / (a * r)) ** n) / (1 + 1 / q)
        vals[-n] = vals[n]
    return CoefficientSeq(q, dict(sorted(vals.items())))


def solve_b(seq: CoefficientSeq):
    """(b_0, b_1) from a_1 = b_1 a_0 + b_0 a_{-1} and a_2 = b_1 a_1 + b_0 a_0."""
    a0, a1, am1, a2 = seq[0], seq[1], seq[-1], seq[2]
    det = a0 * a0 - a1 * am1
    if det == 0 or (not seq.exact and abs(det) < 1e-12):
        raise DegenerateError("a_1 = +-1: the system for (b_0, b_1) is singular")
    b1 = (a1 * a0 - am1 * a2) / det
    b0 = (a0 * a2 - a1 * a1) / det
    if not seq.exact:
        b0, b1 = complex(b0), complex(b1)
    return b0, b1


def linear_residuals(seq: CoefficientSeq, b0, b1):
    r1 = abs(seq[1] - b1 * seq[0] - b0 * seq[-1])
    r2 = abs(seq[2] - b1 * seq[1] - b0 * seq[0])
    return r1, r2


def recurrence_check(seq: CoefficientSeq, b0, b1, nrange):
    """max over n of |a_{n+2} - b_1 a_{n+1} - b_0 a_n|."""
    worst = Fraction(0) if seq.exact else 0.0
    for n in nrange:
        worst = max(worst, abs(seq[n + 2] - b1 * seq[n + 1] - b0 * seq[n]))
    return worst


@dataclass
class GramModel:
    seq: CoefficientSeq
    indices: list

    @property
    def gram(self):
        return [[self.seq[i - j] for j in self.indices] for i in self.indices]

    def inner(self, i, j):
        return self.seq[i - j]


def _solve(a, b, exact_mode):
    if exact_mode:
        try:
            return exact.solve(a, b)
        except ZeroDivisionError:
            raise DegenerateError("singular Gram submatrix") from None
    a = np.asarray(a, dtype=complex)
    if np.linalg.cond(a) > 1e12:
        raise DegenerateError("Gram submatrix is numerically singular")
    return list(np.linalg.solve(a, np.asarray(b, dtype=complex)))


def project(model: GramModel, target: int, span):
    """Orthogonal projection of v_target to the span of v_s, s in ``span``."""
    span = list(span)
    ex = model.seq.exact
    zero = Fraction(0) if ex else 0.0
    a0 = model.inner(target, target)
    if not span:
        return {"coefficients": {}, "residual_norm_sq": a0}
    g = [[model.inner(s, t) for t in span] for s in span]
    rhs = [model.inner(target, s) for s in span]
    # normal equations: sum_t c_t <v_t, v_s> = <v_target, v_s>
    gt = [[g[j][i] for j in range(len(span))] for i in range(len(span))]
    coeffs = _solve(gt, rhs, ex)
    proj_sq = sum((c * r.conjugate() if not ex else c * r for c, r in zip(coeffs, rhs)), zero)
    res = a0 - proj_sq
    if not ex:
        res = complex(res).real
    return {"coefficients": dict(zip(span, coeffs)), "residual_norm_sq": res}


def coefficient_gap(p1, p2):
    keys = set(p1["coefficients"]) | set(p2["coefficients"])
    gap = max(abs(p1["coefficients"].get(k, 0) - p2["coefficients"].get(k, 0)) for k in keys)
    return gap if isinstance(gap, Fraction) else float(gap)


def verify_c0_case(s, tol=TOL, N=12):
    """Checks of the log-conductor-0 argument for e_{0..2} e_{1..3} = e_{1..2}.

    ``s`` is a SatakeParam or an already built CoefficientSeq (exact mode).
    """
    seq = spherical_coeffs(s, N) if isinstance(s, SatakeParam) else s
    b0, b1 = solve_b(seq)
    model = GramModel(seq, list(range(-1, 5)))
    orth = [abs(seq[3 - j] - b1 * seq[2 - j] - b0 * seq[1 - j]) for j in (0, 1, 2)]
    if not seq.exact:
        orth = [float(x) for x in orth]
    p_small = project(model, 3, [1, 2])
    p_big = project(model, 3, [0, 1, 2])
    gap_v3 = coefficient_gap(p_small, p_big)
    m_small = project(model, 0, [1, 2])
    m_big = project(model, 0, [1, 2, 3])
    gap_v0 = coefficient_gap(m_small, m_big)
    w_gap = max(abs(p_small["coefficients"][2] - b1), abs(p_small["coefficients"][1] - b0))
    checks = {
        "orth_v0": orth[0],
        "orth_v1": orth[1],
        "orth_v2": orth[2],
        "projection_v3": gap_v3,
        "projection_v0": gap_v0,
    }
    if seq.exact:
        ok = all(v == 0 for v in checks.values())
    else:
        ok = all(v <= tol for v in checks.values())
    return {
        "status": "pass" if ok else "fail",
        "checks": checks,
        "b0": b0,
        "b1": b1,
        "w_matches_projection": w_gap,
    }


def gram_min_eigenvalue(seq: CoefficientSeq, size=8):
    g = np.array([[complex(seq[i - j]) for j in range(size)] for i in range(size)])
    herm = float(np.max(np.abs(g - g.conj().T)))
    return float(np.min(np.linalg.eigvalsh(g))), herm


# --------------------------------------------------------------------------
# log-conductor 0: standard projectors in the Gram model


def gram_projector(seq: CoefficientSeq, ambient: Segment, ell: Segment):
    """Matrix of e_ell on span{v_n : n in ambient}, in the basis v_n.

    e_ell is the orthogonal projection to span{v_n : n in ell}.
    """
    idx = list(ambient)
    sub = list(ell)
    n = len(idx)
    g_sub = np.array([[complex(seq[s - t]) for t in sub] for s in sub])
    cross = np.array([[complex(seq[j - s]) for j in idx] for s in sub])
    # coefficients c with G_sub^T c = <v_j, v_s>
    coef = np.linalg.solve(g_sub.T, cross)
    out = np.zeros((n, n), dtype=complex)
    for r, s in enumerate(sub):
        out[s - ambient.lo, :] = coef[r]
    return out


def gram_composition_residual(seq, ambient, a, b):
    ea = gram_projector(seq, ambient, a)
    eb = gram_projector(seq, ambient, b)
    common = intersect(a, b)
    ec = gram_projector(seq, ambient, common) if common else np.zeros_like(ea)
    return float(np.max(np.abs(ea @ eb - ec)))


def gram_star(seq, ambient, ell):
    total = None
    for coeff, s in star_combo(ell):
        term = coeff * gram_projector(seq, ambient, s)
        total = term if total is None else total + term
    return total


# --------------------------------------------------------------------------
# log-conductor >= 2: the diagonal model


@dataclass
class DiagonalModel:
    c: int
    ambient: Segment
    basis: list = field(init=False)

    def __post_init__(self):
        if self.c < 2:
            raise ValueError("the diagonal model needs log-conductor c >= 2")
        self.basis = [n for n in range(self.ambient.lo, self.ambient.hi - self.c + 1)]

    def fixed_dim(self, ell: Segment) -> int:
        return int(sum(diagonal_e(self, ell)))


def diagonal_e(model: DiagonalModel, ell):
    """0/1 diagonal of e_ell; ``ell = None`` (empty) gives the zero operator."""
    if ell is None:
        return np.zeros(len(model.basis), dtype=np.int64)
    if not ell.issubset(model.ambient):
        raise ValueError(f"{ell} is not inside {model.ambient}")
    return np.array([int(ell.lo <= n and n + model.c <= ell.hi) for n in model.basis], dtype=np.int64)


def diagonal_compositions(model: DiagonalModel):
    """e_a e_b == e_{a & b} for every ordered pair of subsegments."""
    subs = model.ambient.subsegments()
    failures = []
    checked = 0
    for a in subs:
        ea = diagonal_e(model, a)
        for b in subs:
            checked += 1
            if not np.array_equal(ea * diagonal_e(model, b), diagonal_e(model, intersect(a, b))):
                failures.append((a, b))
    return checked, failures


def star_diagonal(model: DiagonalModel, ell: Segment, compositions=True):
    if ell.card < 3:
        raise ValueError(f"{ell}: star combination needs card >= 3")
    if not ell.issubset(model.ambient):
        raise ValueError(f"{ell} is not inside {model.ambient}")
    star = sum(coeff * diagonal_e(model, s) for coeff, s in star_combo(ell))
    is_projector = bool(np.array_equal(star * star, star))
    rank = int(np.count_nonzero(star))
    if ell.length == model.c:
        expected = np.array([int(n == ell.lo) for n in model.basis], dtype=np.int64)
    else:
        expected = np.zeros(len(model.basis), dtype=np.int64)
    report = {
        "star": star,
        "rank": rank,
        "projector": is_projector,
        "matches_expected": bool(np.array_equal(star, expected)),
    }
    if compositions:
        checked, failures = diagonal_compositions(model)
        report["compositions_checked"] = checked
        report["composition_failures"] = failures
    ok = report["projector"] and report["matches_expected"] and not report.get("composition_failures")
    report["status"] = "pass" if ok else "fail"
    return report
