"""Non-real eigenvalues of the sign-weighted operator.

A non-real lambda is an eigenvalue exactly when the two Titchmarsh-Weyl
coefficients agree, so everything here works with the dispersion function
D(lam) = M_+(lam) - M_-(lam): winding numbers of D along rectangle
boundaries count its zeros, subdivision plus Newton polishing locates them,
and for even potentials a scan of Re M_+ along the positive imaginary axis
finds the purely imaginary ones directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryError, EvennessError, SignSLError
from .potential import Potential
from .weyl import big_M

MIN_IM = 1e-3


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle in the open upper half-plane."""
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and 0 < self.im_lo < self.im_hi):
            raise ValueError(f"degenerate or lower-half-plane rectangle: {self}")

    def center(self) -> complex:
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    def diameter(self) -> float:
        return float(np.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo))

    def corners(self):
        return (complex(self.re_lo, self.im_lo), complex(self.re_hi, self.im_lo),
                complex(self.re_hi, self.im_hi), complex(self.re_lo, self.im_hi))


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    residual: float
    multiplicity: int = 1


@dataclass
class EigenvalueSet:
    points: list[Eigenvalue] = field(default_factory=list)
    region: Rect | None = None
    method: str = "contour"

    def values(self):
        return [p.value for p in self.points]

    def conjugation_closed(self, tol: float = 1e-8) -> bool:
        vals = self.values()
        return all(any(abs(np.conj(v) - w) <= tol * (1 + abs(v)) for w in vals)
                   for v in vals)


class _DispersionCache:
    """Memoizes D along a contour walk; boundary refinement revisits points."""

    def __init__(self, potential, tol, ode_tol):
        self.potential = potential
        self.tol = tol
        self.ode_tol = ode_tol
        self._cache = {}

    def __call__(self, lam: complex) -> complex:
        key = (lam.real, lam.imag)
        if key not in self._cache:
            mp = big_M(self.potential, "plus", lam, self.tol, self.ode_tol)
            mm = big_M(self.potential, "minus", lam, self.tol, self.ode_tol)
            self._cache[key] = mp.value - mm.value
        return self._cache[key]


def dispersion(potential: Potential, lam: complex, tol: float = 1e-8,
               ode_tol: float = 1e-10) -> complex:
    """D(lam) = M_+(lam) - M_-(lam); error at most 2 tol."""
    lam = complex(lam)
    if lam.imag == 0:
        raise ValueError("dispersion requires Im lam != 0")
    mp = big_M(potential, "plus", lam, tol, ode_tol)
    mm = big_M(potential, "minus", lam, tol, ode_tol)
    return mp.value - mm.value


def _boundary_winding(D, rect: Rect, min_abs: float):
    """Unwrapped phase increment of D around the rectangle boundary, with
    adaptive bisection until consecutive phase steps are below pi/2."""
    corners = list(rect.corners()) + [rect.corners()[0]]
    total = 0.0
    for a, b in zip(corners[:-1], corners[1:]):
        # pre-split each edge so a full phase turn cannot hide in one segment
        knots = np.linspace(0, 1, 9)
        for t0, t1 in zip(knots[:-1], knots[1:]):
            total += _edge_phase(D, a + t0 * (b - a), a + t1 * (b - a), min_abs)
    return int(round(total / (2 * np.pi)))


def _edge_phase(D, a: complex, b: complex, min_abs: float, depth: int = 0) -> float:
    fa, fb = D(a), D(b)
    if abs(fa) < min_abs or abs(fb) < min_abs:
        raise BoundaryError(
            f"|D| = {min(abs(fa), abs(fb)):.3g} below threshold {min_abs:.3g} on the "
            "boundary; shift the rectangle")
    mid = 0.5 * (a + b)
    fm = D(mid)
    if abs(fm) < min_abs:
        raise BoundaryError(
            f"|D| = {abs(fm):.3g} below threshold {min_abs:.3g} on the boundary; "
            "shift the rectangle")
    d1 = np.angle(fm / fa)
    d2 = np.angle(fb / fm)
    if abs(d1) + abs(d2) < np.pi / 2:
        return d1 + d2
    if depth >= 44:
        raise SignSLError("phase refinement did not converge on contour edge")
    return (_edge_phase(D, a, mid, min_abs, depth + 1)
            + _edge_phase(D, mid, b, min_abs, depth + 1))


def count_nonreal(potential: Potential, rect: Rect, tol: float = 1e-6,
                  ode_tol: float = 1e-10, min_abs: float = 1e-4) -> int:
    """Number of zeros of D inside rect (with multiplicity), by the argument
    principle along the boundary."""
    if rect.im_lo < MIN_IM:
        raise ValueError(f"rectangle must keep Im >= {MIN_IM}; use axis_scan near the real axis")
    D = _DispersionCache(potential, tol, ode_tol)
    return _boundary_winding(D, rect, min_abs)


def _newton_polish(D, z0: complex, tol: float, max_iter: int = 60):
    z = z0
    for _ in range(max_iter):
        f = D(z)
        if abs(f) <= tol:
            return z, abs(f)
        h = 1e-6 * (1 + abs(z))
        df = (D(z + h) - D(z - h)) / (2 * h)
        if df == 0:
            break
        step = f / df
        if abs(step) > 1.0:
            step *= 1.0 / abs(step)
        z = z - step
        if z.imag <= 0:
            z = complex(z.real, max(1e-6, z0.imag * 0.1))
    f = D(z)
    return z, abs(f)


def locate_nonreal(potential: Potential, rect: Rect, tol: float = 1e-8,
                   ode_tol: float = 1e-10, min_abs: float = 1e-4,
                   min_diameter: float = 1e-3) -> EigenvalueSet:
    """All zeros of D in rect, refined by subdivision plus Newton iteration;
    conjugates for the mirror rectangle are appended."""
    if rect.im_lo < MIN_IM:
        raise ValueError(f"rectangle must keep Im >= {MIN_IM}; use axis_scan near the real axis")
    D = _DispersionCache(potential, min(tol, 1e-8), ode_tol)
    found: list[Eigenvalue] = []
    stack = [rect]
    while stack:
        r = stack.pop()
        try:
            n = _boundary_winding(D, r, min_abs)
        except BoundaryError:
            # a zero sits (numerically) on the boundary; nudge the box
            pad_re = 0.017 * (r.re_hi - r.re_lo)
            pad_im = 0.013 * (r.im_hi - r.im_lo)
            r = Rect(r.re_lo - pad_re, r.re_hi + pad_re,
                     max(MIN_IM, r.im_lo - pad_im), r.im_hi + pad_im)
            n = _boundary_winding(D, r, min_abs)
        if n == 0:
            continue
        if n == 1 or r.diameter() <= min_diameter:
            z, res = _newton_polish(D, r.center(), tol)
            if res > tol:
                raise SignSLError(
                    f"Newton refinement stalled (|D| = {res:.3g}) in rectangle {r}")
            if not any(abs(z - e.value) < 1e-7 * (1 + abs(z)) for e in found):
                found.append(Eigenvalue(z, res, n))
            continue
        if (r.re_hi - r.re_lo) >= (r.im_hi - r.im_lo):
            mid = 0.5 * (r.re_lo + r.re_hi)
            stack.append(Rect(r.re_lo, mid, r.im_lo, r.im_hi))
            stack.append(Rect(mid, r.re_hi, r.im_lo, r.im_hi))
        else:
            mid = 0.5 * (r.im_lo + r.im_hi)
            stack.append(Rect(r.re_lo, r.re_hi, r.im_lo, mid))
            stack.append(Rect(r.re_lo, r.re_hi, mid, r.im_hi))
    points = sorted(found, key=lambda e: (e.value.real, e.value.imag))
    mirrored = [Eigenvalue(np.conj(e.value), e.residual, e.multiplicity)
                for e in points]
    return EigenvalueSet(points + mirrored, rect, "contour")


def axis_scan(potential: Potential, eps_range, n_grid: int = 200,
              tol: float = 1e-8, ode_tol: float = 1e-10) -> list[float]:
    """Roots of eps -> Re M_+(i eps) on [eps_lo, eps_hi] for an even potential.

    Each root eps gives the conjugate pair of eigenvalues +- i eps.
    Sign changes on the grid are refined by bisection to 1e-8.
    """
    eps_lo, eps_hi = eps_range
    if not (0 < eps_lo < eps_hi):
        raise ValueError("need 0 < eps_lo < eps_hi")
    if not potential.is_even():
        raise EvennessError("axis_scan requires an even potential")

    def f(eps):
        return big_M(potential, "plus", 1j * eps, tol, ode_tol).value.real

    grid = np.linspace(eps_lo, eps_hi, n_grid)
    vals = [f(e) for e in grid]
    roots = []
    for i in range(n_grid - 1):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb < 0:
            while b - a > 1e-8:
                m = 0.5 * (a + b)
                fm = f(m)
                if fm == 0.0:
                    a = b = m
                elif fa * fm < 0:
                    b, fb = m, fm
                else:
                    a, fa = m, fm
            roots.append(0.5 * (a + b))
    return roots
