"""Small algebra of subsets of the one-point extended line R u {inf}.

A set is a finite union of intervals (with open/closed endpoint flags),
finitely many isolated points, and optionally the point at infinity.  This
is rich enough to represent the one-sided accumulation sets sigma_left /
sigma_right of the half-line spectra and their intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """Real interval with endpoint inclusion flags; a == b only for points."""
    a: float
    b: float
    incl_a: bool = True
    incl_b: bool = True

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")
        if np.isinf(self.a) and self.incl_a:
            object.__setattr__(self, "incl_a", False)
        if np.isinf(self.b) and self.incl_b:
            object.__setattr__(self, "incl_b", False)

    def is_point(self):
        return self.a == self.b

    def contains(self, x):
        if x < self.a or x > self.b:
            return False
        if x == self.a and not self.incl_a:
            return False
        if x == self.b and not self.incl_b:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval | None":
        a = max(self.a, other.a)
        b = min(self.b, other.b)
        if a > b:
            return None
        incl_a = self.contains(a) and other.contains(a)
        incl_b = self.contains(b) and other.contains(b)
        if a == b and not (incl_a and incl_b):
            return None
        return Interval(a, b, incl_a, incl_b)


@dataclass
class RSet:
    """Finite union of intervals and points in R, plus optionally {inf}."""
    intervals: list[Interval] = field(default_factory=list)
    points: set[float] = field(default_factory=set)
    has_inf: bool = False

    def normalize(self) -> "RSet":
        ivs = sorted((i for i in self.intervals if not i.is_point()),
                     key=lambda i: (i.a, i.b))
        pts = set(self.points) | {i.a for i in self.intervals if i.is_point()}
        merged: list[Interval] = []
        for iv in ivs:
            if merged:
                last = merged[-1]
                touch = iv.a < last.b or (iv.a == last.b and (iv.incl_a or last.incl_b))
                if touch:
                    incl_a = last.incl_a or (iv.a == last.a and iv.incl_a)
                    if iv.b > last.b:
                        b, incl_b = iv.b, iv.incl_b
                    else:
                        b, incl_b = last.b, last.incl_b or (iv.b == last.b and iv.incl_b)
                    merged[-1] = Interval(last.a, b, incl_a, incl_b)
                    continue
            merged.append(iv)
        # absorb points lying in intervals; points at open endpoints close them
        out_pts = set()
        for p in pts:
            hit = False
            for k, iv in enumerate(merged):
                if iv.contains(p):
                    hit = True
                    break
                if p == iv.a and not iv.incl_a:
                    merged[k] = Interval(iv.a, iv.b, True, iv.incl_b)
                    hit = True
                    break
                if p == iv.b and not iv.incl_b:
                    merged[k] = Interval(iv.a, iv.b, iv.incl_a, True)
                    hit = True
                    break
            if not hit:
                out_pts.add(p)
        return RSet(merged, out_pts, self.has_inf)

    def is_empty(self) -> bool:
        n = self.normalize()
        return not n.intervals and not n.points and not n.has_inf

    def contains(self, x) -> bool:
        if x == "inf":
            return self.has_inf
        return any(iv.contains(x) for iv in self.intervals) or \
            any(abs(x - p) <= _TOL for p in self.points)

    def union(self, other: "RSet") -> "RSet":
        return RSet(self.intervals + other.intervals,
                    self.points | other.points,
                    self.has_inf or other.has_inf).normalize()

    def intersect(self, other: "RSet") -> "RSet":
        out = RSet(has_inf=self.has_inf and other.has_inf)
        for i in self.intervals:
            for j in other.intervals:
                r = i.intersect(j)
                if r is not None:
                    if r.is_point():
                        out.points.add(r.a)
                    else:
                        out.intervals.append(r)
        for p in self.points:
            if other.contains(p):
                out.points.add(p)
        for p in other.points:
            if self.contains(p):
                out.points.add(p)
        return out.normalize()

    def witness(self):
        """Some element, for error messages; None if empty."""
        n = self.normalize()
        if n.points:
            return min(n.points)
        if n.intervals:
            iv = n.intervals[0]
            if iv.incl_a and not np.isinf(iv.a):
                return iv.a
            if np.isinf(iv.a):
                return iv.b if not np.isinf(iv.b) else 0.0
            return 0.5 * (iv.a + min(iv.b, iv.a + 2.0))
        if n.has_inf:
            return "inf"
        return None

    def describe(self) -> str:
        n = self.normalize()
        parts = []
        for iv in n.intervals:
            lo = "-inf" if np.isinf(iv.a) else f"{iv.a:g}"
            hi = "+inf" if np.isinf(iv.b) else f"{iv.b:g}"
            parts.append(f"{'[' if iv.incl_a else '('}{lo}, {hi}{']' if iv.incl_b else ')'}")
        parts.extend(f"{{{p:g}}}" for p in sorted(n.points))
        if n.has_inf:
            parts.append("{inf}")
        return " u ".join(parts) if parts else "empty"

    def covers_extended_line(self) -> bool:
        n = self.normalize()
        return n.has_inf and any(
            np.isinf(iv.a) and np.isinf(iv.b) for iv in n.intervals)


def full_line() -> RSet:
    return RSet([Interval(-np.inf, np.inf, False, False)])
