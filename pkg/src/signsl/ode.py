"""Fundamental solutions and oscillation counts for -y'' + q y = lam y.

The minus half-line is always handled by reflection: the substitution
u = -x turns the problem on (-inf, 0] into the plus-side problem for the
reflected potential, with c(x) = c~(u), c'(x) = -c~'(u), s(x) = -s~(u),
s'(x) = s~'(u).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IntegrationError
from .kernels import KERNELS, STATUS_OK, STATUS_OVERFLOW, STATUS_UNDERFLOW
from .potential import Potential

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SolutionState:
    """Values of the fundamental solutions at a point."""
    x: float
    c: complex
    c_prime: complex
    s: complex
    s_prime: complex
    n_steps: int = 0

    def wronskian(self) -> complex:
        return self.c * self.s_prime - self.c_prime * self.s


def _raise_status(status, x):
    if status == STATUS_UNDERFLOW:
        raise IntegrationError("step-size underflow; potential too stiff at this tolerance", x)
    if status == STATUS_OVERFLOW:
        raise IntegrationError("solution overflow; shorten the interval or rescale", x)


def integrate_fundamental(potential: Potential, side: str, lam: complex,
                          x_end: float, tol: float = DEFAULT_TOL) -> SolutionState:
    """Fundamental solutions c, s (and derivatives) at x_end on the given side."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if side == "plus":
        if x_end < 0:
            raise ValueError("x_end must be >= 0 for side=plus")
        p = potential
        length = x_end
    elif side == "minus":
        if x_end > 0:
            raise ValueError("x_end must be <= 0 for side=minus")
        p = potential.reflected()
        length = -x_end
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    if length == 0:
        return SolutionState(0.0, 1.0, 0.0, 0.0, 1.0, 0)
    y, n_steps, status, x_stop = KERNELS.integrate_fundamental(
        p.code, p.consts, complex(lam), float(length), float(tol))
    if status != STATUS_OK:
        _raise_status(status, x_stop if side == "plus" else -x_stop)
    if side == "plus":
        return SolutionState(x_end, y[0], y[1], y[2], y[3], n_steps)
    return SolutionState(x_end, y[0], -y[1], -y[2], y[3], n_steps)


def fundamental_at(potential: Potential, lam: complex, x_end: float,
                   tol: float = DEFAULT_TOL) -> SolutionState:
    """Plain plus-side integration of an already-reflected potential (internal)."""
    y, n_steps, status, x_stop = KERNELS.integrate_fundamental(
        potential.code, potential.consts, complex(lam), float(x_end), float(tol))
    if status != STATUS_OK:
        _raise_status(status, x_stop)
    return SolutionState(x_end, y[0], y[1], y[2], y[3], n_steps)


def oscillation_count(potential: Potential, side: str, lambda_real: float,
                      X: float, tol: float = 1e-9) -> int:
    """Number of zeros in (0, X) (mirrored for side=minus) of the solution
    with y(0) = 1, y'(0) = 0.

    Counted through the phase of the solution rather than through its values,
    so classically forbidden regions cannot overflow; zeros are the phase's
    crossings of multiples of pi, which are transversal, so double zeros
    cannot occur.
    """
    if X <= 0:
        raise ValueError("X must be positive")
    # side=minus counts zeros in (-X, 0) of the same equation; by reflection
    # that is the plus-side count for the reflected potential
    p = potential if side == "plus" else potential.reflected()
    theta, status, x_stop = KERNELS.prufer_theta(p.code, p.consts, float(lambda_real),
                                                 float(X), float(tol))
    if status != STATUS_OK:
        _raise_status(status, x_stop)
    return int(np.floor(theta / np.pi))
