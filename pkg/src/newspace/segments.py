"""Segment arithmetic.

A segment ``m..n`` is a nonempty run of consecutive integers.  Segments index
the congruence subgroups, the averaging idempotents and the conditioning sets
used everywhere else in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

_SEGMENT_RE = re.compile(r"^\s*([+-]?\d+)\.\.([+-]?\d+)\s*$")


@dataclass(frozen=True, order=True)
class Segment:
    lo: int
    hi: int

    def __post_init__(self):
        if not isinstance(self.lo, int) or not isinstance(self.hi, int):
            raise TypeError(f"segment endpoints must be integers, got {self.lo!r}, {self.hi!r}")
        if self.lo > self.hi:
            raise ValueError(f"empty segment {self.lo}..{self.hi}")

    @property
    def card(self) -> int:
        return self.hi - self.lo + 1

    @property
    def length(self) -> int:
        """Number of edges, i.e. the Eichler level ``card - 1``."""
        return self.hi - self.lo

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def issubset(self, other: "Segment") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def shift(self, t: int) -> "Segment":
        return Segment(self.lo + t, self.hi + t)

    def subsegments(self):
        """All subsegments, ordered by (lo, hi)."""
        return [Segment(a, b) for a in self for b in range(a, self.hi + 1)]

    def __str__(self):
        return f"{self.lo}..{self.hi}"

    @classmethod
    def parse(cls, text: str) -> "Segment":
        m = _SEGMENT_RE.match(text)
        if m is None:
            raise ValueError(f"not a segment: {text!r} (expected 'm..n')")
        return cls(int(m.group(1)), int(m.group(2)))


def seg(lo: int, hi: int) -> Segment:
    return Segment(lo, hi)


def intersect(a: Segment, b: Segment) -> Optional[Segment]:
    """Interval intersection; ``None`` when the segments are disjoint."""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return None
    return Segment(lo, hi)


def hull(a: Segment, b: Segment) -> Segment:
    return Segment(min(a.lo, b.lo), max(a.hi, b.hi))


def nested(a: Segment, b: Segment) -> bool:
    return a.issubset(b) or b.issubset(a)


def composition_hypothesis(a: Segment, b: Segment) -> bool:
    """True when the composition law e_a e_b = e_{a & b} is asserted:
    one segment contains the other, or they share at least two points."""
    if nested(a, b):
        return True
    common = intersect(a, b)
    return common is not None and common.card >= 2


UNDETERMINED = "undetermined"


def symbolic_compose(a: Segment, b: Segment):
    """Index of e_a e_b when the composition law applies, else ``UNDETERMINED``."""
    if composition_hypothesis(a, b):
        return intersect(a, b)
    return UNDETERMINED


@dataclass(frozen=True)
class SignedSegmentCombo:
    terms: tuple  # of (coefficient, Segment)

    @property
    def coefficient_sum(self) -> int:
        return sum(c for c, _ in self.terms)

    def segments(self):
        return [s for _, s in self.terms]

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        return " ".join(f"{'+' if c > 0 else '-'}e[{s}]" for c, s in self.terms)


def star_combo(ell: Segment) -> SignedSegmentCombo:
    """e_{m..n} - e_{m+1..n} - e_{m..n-1} + e_{m+1..n-1}.

    Needs ``card(ell) >= 3`` so the inner segment is nonempty.  Theorem-level
    hypotheses (length >= 3) are checked by the callers that need them.
    """
    if ell.card < 3:
        raise ValueError(f"star combination of {ell} needs card >= 3 (got {ell.card})")
    m, n = ell.lo, ell.hi
    return SignedSegmentCombo(
        (
            (+1, Segment(m, n)),
            (-1, Segment(m + 1, n)),
            (-1, Segment(m, n - 1)),
            (+1, Segment(m + 1, n - 1)),
        )
    )


def maximal_proper_subsegments(ell: Segment):
    if ell.card < 2:
        return []
    return [Segment(ell.lo + 1, ell.hi), Segment(ell.lo, ell.hi - 1)]
