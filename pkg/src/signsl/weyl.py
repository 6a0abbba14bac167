"""Titchmarsh-Weyl coefficients m+/- and the sign-weighted coefficients M+/-.

A truncation at X turns the set of admissible m-values into a disk: the
Moebius image of the real boundary-condition line under the transfer matrix
at X.  For a Moebius map z -> (a z + b)/(c z + d) the image of the real line
is the circle with center (a conj(d) - b conj(c)) / (c conj(d) - conj(c) d)
and radius |ad - bc| / |c conj(d) - conj(c) d|; with (a, b, c, d) =
(s, s', c, c') the Wronskian makes the numerator of the radius equal to 1.
In the limit point case the disks nest and shrink to m(lam), so the final
radius is a rigorous truncation error bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ToleranceError
from .ode import DEFAULT_TOL, fundamental_at
from .potential import Potential

X_START = 8.0
X_CAP = 2.0 ** 14
#: growth exponent at which solutions reach ~1e17; used to pick a safe first X
_SAFE_GROWTH = 40.0


def sqrt_cut(lam: complex) -> complex:
    """The square root with branch cut along the positive real axis,
    fixed by sqrt(-1) = i; its image is the closed upper half-plane."""
    w = complex(np.sqrt(complex(lam)))
    if lam.imag < 0:
        w = -w
    return w


@dataclass(frozen=True)
class WeylDisk:
    center: complex
    radius: float
    X: float


@dataclass(frozen=True)
class MValue:
    lam: complex
    value: complex
    error_bound: float
    side: str
    kind: str  # "little_m" or "big_M"


def _disk_from_state(st) -> WeylDisk:
    delta = st.c * np.conj(st.c_prime) - np.conj(st.c) * st.c_prime
    center = (st.s * np.conj(st.c_prime) - st.s_prime * np.conj(st.c)) / delta
    radius = 1.0 / abs(delta)
    return WeylDisk(complex(center), float(radius), st.x)


def weyl_disk(potential: Potential, side: str, lam: complex, X: float,
              tol: float = DEFAULT_TOL) -> WeylDisk:
    """Disk containing m_side(lam), from truncation at X."""
    lam = complex(lam)
    if lam.imag == 0:
        raise ValueError("weyl_disk requires Im lam != 0")
    if X <= 0:
        raise ValueError("X must be positive")
    p = potential if side == "plus" else potential.reflected()
    return _disk_from_state(fundamental_at(p, lam, X, tol))


def _x_schedule(lam: complex):
    # start low enough that exponential growth exp(Im sqrt(lam) X) stays
    # representable; for large |lam| the first disk is already tiny
    growth = sqrt_cut(lam).imag
    x0 = X_START
    if growth > 0:
        x0 = min(X_START, max(0.25, _SAFE_GROWTH / growth))
    x = x0
    while x <= X_CAP:
        yield x
        x *= 2.0


def m_coefficient(potential: Potential, side: str, lam: complex,
                  tol: float = 1e-8, ode_tol: float = DEFAULT_TOL) -> MValue:
    """m_side(lam) with the final disk radius as error bound."""
    lam = complex(lam)
    if lam.imag == 0:
        raise ValueError("m_coefficient requires Im lam != 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = potential if side == "plus" else potential.reflected()
    from .errors import IntegrationError

    last = None
    for X in _x_schedule(lam):
        try:
            disk = _disk_from_state(fundamental_at(p, lam, X, ode_tol))
        except IntegrationError:
            break  # solutions overflow before the disk reaches tol
        if disk.radius <= tol:
            return MValue(lam, disk.center, disk.radius, side, "little_m")
        if last is not None and disk.radius > 0.9 * last.radius:
            break
        last = disk
    raise ToleranceError(
        "Weyl disk radius not shrinking below tol; limit-point assumption "
        f"violated or tolerance unreachable (side={side}, lam={lam}, "
        f"last radius={last.radius if last else float('nan'):.3g})")


def big_M(potential: Potential, side: str, lam: complex,
          tol: float = 1e-8, ode_tol: float = DEFAULT_TOL) -> MValue:
    """The sign-weighted coefficient: M_+(lam) = m_+(lam), M_-(lam) = -m_-(-lam)."""
    sign = 1.0 if side == "plus" else -1.0
    m = m_coefficient(potential, side, sign * complex(lam), tol, ode_tol)
    return MValue(complex(lam), sign * m.value, m.error_bound, side, "big_M")


def weyl_solution_norm_check(potential: Potential, side: str, lam: complex,
                             tol: float = 1e-8, ode_tol: float = DEFAULT_TOL) -> float:
    """Relative error of || psi ||^2 against Im M_side(lam) / Im lam.

    psi is the decaying Weyl solution s - m c on the relevant half-line at the
    sign-adjusted spectral parameter; its squared norm is accumulated by
    quadrature within the integration, extending the interval until the tail
    contribution drops below tol relative to the total.
    """
    from .kernels import KERNELS, STATUS_OK
    from .errors import IntegrationError

    lam = complex(lam)
    if lam.imag == 0:
        raise ValueError("norm check requires Im lam != 0")
    M = big_M(potential, side, lam, tol=min(tol, 1e-8), ode_tol=ode_tol)
    expected = M.value.imag / lam.imag
    if expected <= 0:
        raise ToleranceError("Im M / Im lam not positive; M value unusable")

    sign = 1.0 if side == "plus" else -1.0
    mu = sign * lam          # spectral parameter of the half-line problem
    m_val = sign * M.value   # the little-m value at mu
    p = potential if side == "plus" else potential.reflected()

    psi, psip, norm = complex(-m_val), complex(1.0), 0.0
    x = 0.0
    seg = 4.0
    prev_gain = np.inf
    while True:
        psi, psip, norm_new, status, x_stop = KERNELS.integrate_weyl_norm(
            p.code, p.consts, complex(mu), complex(m_val), x, x + seg,
            psi, psip, norm, ode_tol)
        if status != STATUS_OK:
            raise IntegrationError("Weyl solution grows; wrong M value or overflow", x_stop)
        gain = norm_new - norm
        x += seg
        if gain < tol * max(norm_new, 1e-300) and x >= 8.0:
            norm = norm_new
            break
        if gain > prev_gain and x >= 8.0:
            # truncation error in m excites the growing mode; the true tail is
            # already below that noise floor, so stop without the last segment
            break
        norm = norm_new
        prev_gain = gain
        if x > X_CAP:
            raise ToleranceError("norm quadrature tail not decaying; wrong M value")
        seg = min(2 * seg, 32.0)
    return abs(norm - expected) / expected
