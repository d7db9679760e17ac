"""Segment-conditioned averaging of non-backtracking paths on the (q+1)-regular tree.

Only the finite part of the tree that a computation touches is ever
materialized.  A vertex is a word: the root is ``()``, its q + 1 neighbours
are ``(s,)`` for 0 <= s <= q, and every other vertex ``w`` has the parent
``w[:-1]`` and the q children ``w + (s,)`` for 0 <= s < q.

A path on the index range m..n' is a tuple of vertices.  The base path x has
x_t = (0,) * (t - m).  For reports, a path that agrees with x on a fixed
segment is written as a choice vector: the index of each outward step among
the q non-backtracking continuations, listed from the fixed segment outward.
"""

from __future__ import annotations

import zlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import sqrt

import numpy as np

from .segments import Segment


Path = tuple


@dataclass(frozen=True)
class WalkParams:
    q: int
    ambient: Segment

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"branching number q must be >= 2, got {self.q}")
        if self.ambient.card < 2:
            raise ValueError("paths need at least one edge")


@dataclass(frozen=True, order=True)
class NBPath:
    backward: tuple
    forward: tuple

    def __str__(self):
        b = ",".join(map(str, self.backward))
        f = ",".join(map(str, self.forward))
        return f"b[{b}]f[{f}]"


def neighbors(v, q):
    if v == ():
        return [(s,) for s in range(q + 1)]
    return [v[:-1]] + [v + (s,) for s in range(q)]


def continuations(here, previous, q):
    """The q neighbours of ``here`` other than ``previous``, in a fixed order."""
    out = [w for w in neighbors(here, q) if w != previous]
    assert len(out) == q
    return out


def base_path(params: WalkParams) -> Path:
    m = params.ambient.lo
    return tuple((0,) * (t - params.ambient.lo) for t in range(m, params.ambient.hi + 1))


def is_non_backtracking(path: Path, q: int) -> bool:
    for i in range(len(path) - 1):
        if path[i + 1] not in neighbors(path[i], q):
            return False
        if i + 2 < len(path) and path[i + 2] == path[i]:
            return False
    return True


def _check_fixed(params: WalkParams, fixed: Segment):
    if not fixed.issubset(params.ambient):
        raise ValueError(f"{fixed} is not inside the ambient range {params.ambient}")
    if fixed.card < 2:
        raise ValueError(f"conditioning segment {fixed} must keep at least one edge")


def _extend(core, back_depth, fwd_depth, q):
    """All non-backtracking extensions of ``core`` (a list of >= 2 vertices)."""
    for bchoice in product(range(q), repeat=back_depth):
        for fchoice in product(range(q), repeat=fwd_depth):
            yield _apply(core, bchoice, fchoice, q)


def _apply(core, bchoice, fchoice, q):
    path = list(core)
    fwd = []
    prev, here = path[-2], path[-1]
    for c in fchoice:
        nxt = continuations(here, prev, q)[c]
        fwd.append(nxt)
        prev, here = here, nxt
    back = []
    prev, here = path[1], path[0]
    for c in bchoice:
        nxt = continuations(here, prev, q)[c]
        back.append(nxt)
        prev, here = here, nxt
    return tuple(reversed(back)) + tuple(path) + tuple(fwd)


def cylinder(params: WalkParams, y: Path, ell: Segment):
    """All paths z on the ambient range with z|ell = y|ell."""
    _check_fixed(params, ell)
    m = params.ambient.lo
    core = y[ell.lo - m : ell.hi - m + 1]
    return list(_extend(core, ell.lo - m, params.ambient.hi - ell.hi, params.q))


def support_set(params: WalkParams, fixed: Segment):
    """Choice vectors of every path agreeing with the base path on ``fixed``."""
    _check_fixed(params, fixed)
    back = fixed.lo - params.ambient.lo
    fwd = params.ambient.hi - fixed.hi
    return [NBPath(b, f) for b in product(range(params.q), repeat=back) for f in product(range(params.q), repeat=fwd)]


def decode(params: WalkParams, fixed: Segment, nb: NBPath) -> Path:
    _check_fixed(params, fixed)
    x = base_path(params)
    m = params.ambient.lo
    core = x[fixed.lo - m : fixed.hi - m + 1]
    if len(nb.backward) != fixed.lo - m or len(nb.forward) != params.ambient.hi - fixed.hi:
        raise ValueError(f"choice vector {nb} does not match {fixed} in {params.ambient}")
    return _apply(core, nb.backward, nb.forward, params.q)


def encode(params: WalkParams, fixed: Segment, path: Path) -> NBPath:
    _check_fixed(params, fixed)
    m = params.ambient.lo
    x = base_path(params)
    lo, hi = fixed.lo - m, fixed.hi - m
    if path[lo : hi + 1] != x[lo : hi + 1]:
        raise ValueError("path does not agree with the base path on the fixed segment")
    q = params.q
    fwd = tuple(continuations(path[t], path[t - 1], q).index(path[t + 1]) for t in range(hi, len(path) - 1))
    back = tuple(continuations(path[t], path[t + 1], q).index(path[t - 1]) for t in range(lo, 0, -1))
    return NBPath(back, fwd)


class PathDistribution:
    """Finitely supported exact probability distribution over paths."""

    def __init__(self, support=None):
        self.support = {}
        for path, mass in (support or {}).items():
            mass = Fraction(mass)
            if mass < 0:
                raise ValueError("negative mass")
            if mass:
                self.support[path] = mass

    @classmethod
    def delta(cls, path):
        return cls({path: Fraction(1)})

    def total(self) -> Fraction:
        return sum(self.support.values(), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, PathDistribution) and self.support == other.support

    def __len__(self):
        return len(self.support)

    def discrepancy(self, other) -> Fraction:
        keys = set(self.support) | set(other.support)
        zero = Fraction(0)
        return max((abs(self.support.get(k, zero) - other.support.get(k, zero)) for k in keys), default=zero)

    def encoded(self, params: WalkParams, fixed: Segment):
        return {encode(params, fixed, path): mass for path, mass in self.support.items()}


def rho(ell: Segment, dist: PathDistribution, params: WalkParams) -> PathDistribution:
    """Spread each atom uniformly over the paths agreeing with it on ``ell``."""
    _check_fixed(params, ell)
    out = Counter()
    for path, mass in dist.support.items():
        cyl = cylinder(params, path, ell)
        share = mass / len(cyl)
        for z in cyl:
            out[z] += share
    return PathDistribution(dict(out))


def _check_indices(m, m2, n, n2):
    if not m < m2 < n < n2:
        raise ValueError(f"indices must satisfy m < m' < n < n', got {m}, {m2}, {n}, {n2}")


def verify_goal_paths(q, m, m2, n, n2):
    """Compare rho_{m..n} rho_{m'..n'} delta_x with rho_{m'..n} delta_x exactly."""
    _check_indices(m, m2, n, n2)
    params = WalkParams(q, Segment(m, n2))
    x = PathDistribution.delta(base_path(params))
    lhs = rho(Segment(m, n), rho(Segment(m2, n2), x, params), params)
    rhs = rho(Segment(m2, n), x, params)
    disc = lhs.discrepancy(rhs)
    return {
        "status": "pass" if disc == 0 and lhs.total() == 1 else "fail",
        "max_discrepancy": disc,
        "atoms": len(rhs),
        "lhs": lhs,
        "rhs": rhs,
        "params": params,
        "fixed": Segment(m2, n),
    }


def case_seed(global_seed: int, case_id: str) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(global_seed) & 0xFFFFFFFFFFFFFFFF, zlib.crc32(case_id.encode())])


def sample_two_stage(rng_seed, q, m, m2, n, n2, trials):
    """Empirical law of the two-stage generator keyed by choice vectors.

    Stage one picks a forward extension past n one uniform step at a time,
    stage two independently picks a backward extension before m'.
    """
    _check_indices(m, m2, n, n2)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(rng_seed)
    fwd = rng.integers(0, q, size=(trials, n2 - n))
    back = rng.integers(0, q, size=(trials, m2 - m))
    counts = Counter()
    for b, f in zip(map(tuple, back.tolist()), map(tuple, fwd.tolist())):
        counts[NBPath(b, f)] += 1
    return {k: v / trials for k, v in sorted(counts.items())}


def monte_carlo_check(freqs, exact, trials, sigmas=3.0, tv_tol=0.02):
    """Per-atom sigma test and total variation against an exact law."""
    worst = 0.0
    tv = 0.0
    stray = [k for k in freqs if k not in exact]
    for k, p in exact.items():
        p = float(p)
        f = freqs.get(k, 0.0)
        sd = sqrt(p * (1 - p) / trials)
        if sd > 0:
            worst = max(worst, abs(f - p) / sd)
        tv += abs(f - p)
    tv = 0.5 * (tv + sum(freqs[k] for k in stray))
    return {
        "status": "pass" if worst <= sigmas and tv < tv_tol and not stray else "fail",
        "max_sigma": worst,
        "total_variation": tv,
        "stray_atoms": len(stray),
    }
