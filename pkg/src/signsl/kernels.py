"""Hot numeric kernels: potential evaluation and adaptive ODE stepping.

Everything here exists in two flavors built from the same source by
:func:`build_kernels`: a numba ``@njit`` build (default) and a pure-Python
build used as fallback and as a cross-check in the benchmark.  The active
build is selected once at import time from the SIGNSL_BACKEND environment
variable (see :mod:`signsl._backend`).

The stepper is a Dormand-Prince 5(4) pair on the first-order system for the
fundamental solutions (c, c', s, s'); the local error per step is kept below
``tol * h`` so that ``tol`` acts per unit length.  Status codes returned by
the drivers: 0 ok, 1 step-size underflow, 2 overflow of the solution.
"""

from types import SimpleNamespace

import numpy as np

from ._backend import USE_NUMBA

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_OVERFLOW = 2

_HUGE = 1e150

# Dormand-Prince 5(4) tableau
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1 = 35 / 384 - 5179 / 57600
_E3 = 500 / 1113 - 7571 / 16695
_E4 = 125 / 192 - 393 / 640
_E5 = -2187 / 6784 + 92097 / 339200
_E6 = 11 / 84 - 187 / 2100
_E7 = -1 / 40


def build_kernels(use_numba: bool) -> SimpleNamespace:
    if use_numba:
        from numba import njit
        jit = njit(cache=False)
    else:
        def jit(f):
            return f

    @jit
    def eval_program(code, consts, x):
        """Run the postfix program from signsl.expr at a scalar x."""
        stack = np.empty(64, dtype=np.float64)
        top = -1
        for i in range(code.shape[0]):
            op = code[i]
            if op == 0:  # CONST
                top += 1
                stack[top] = consts[i]
            elif op == 1:  # X
                top += 1
                stack[top] = x
            elif op == 2:
                stack[top - 1] = stack[top - 1] + stack[top]
                top -= 1
            elif op == 3:
                stack[top - 1] = stack[top - 1] - stack[top]
                top -= 1
            elif op == 4:
                stack[top - 1] = stack[top - 1] * stack[top]
                top -= 1
            elif op == 5:
                stack[top - 1] = stack[top - 1] / stack[top]
                top -= 1
            elif op == 6:
                stack[top - 1] = stack[top - 1] ** stack[top]
                top -= 1
            elif op == 7:
                stack[top] = -stack[top]
            elif op == 8:
                stack[top] = abs(stack[top])
            elif op == 9:
                v = stack[top]
                stack[top] = 0.0 if v == 0.0 else (1.0 if v > 0.0 else -1.0)
            elif op == 10:
                stack[top] = np.exp(stack[top])
            elif op == 11:
                stack[top] = np.sin(stack[top])
            elif op == 12:
                stack[top] = np.cos(stack[top])
            elif op == 13:
                stack[top] = np.sqrt(stack[top])
            elif op == 14:
                stack[top - 1] = min(stack[top - 1], stack[top])
                top -= 1
            else:  # 15 MAX
                stack[top - 1] = max(stack[top - 1], stack[top])
                top -= 1
        return stack[0]

    @jit
    def _rhs4(code, consts, lam, x, y, out):
        w = eval_program(code, consts, x) - lam
        out[0] = y[1]
        out[1] = w * y[0]
        out[2] = y[3]
        out[3] = w * y[2]

    @jit
    def integrate_fundamental(code, consts, lam, x_end, tol):
        """Integrate (c, c', s, s') from 0 to x_end > 0 for -y'' + q y = lam y.

        Returns (y, n_steps, status, x_fail).
        """
        y = np.empty(4, dtype=np.complex128)
        y[0] = 1.0
        y[1] = 0.0
        y[2] = 0.0
        y[3] = 1.0
        k1 = np.empty(4, dtype=np.complex128)
        k2 = np.empty(4, dtype=np.complex128)
        k3 = np.empty(4, dtype=np.complex128)
        k4 = np.empty(4, dtype=np.complex128)
        k5 = np.empty(4, dtype=np.complex128)
        k6 = np.empty(4, dtype=np.complex128)
        k7 = np.empty(4, dtype=np.complex128)
        yt = np.empty(4, dtype=np.complex128)

        x = 0.0
        h = min(0.01, x_end)
        n_steps = 0
        _rhs4(code, consts, lam, x, y, k1)
        while x < x_end:
            if h > x_end - x:
                h = x_end - x
            _rhs4(code, consts, lam, x, y, k1)
            for j in range(4):
                yt[j] = y[j] + h * _A21 * k1[j]
            _rhs4(code, consts, lam, x + h / 5, yt, k2)
            for j in range(4):
                yt[j] = y[j] + h * (_A31 * k1[j] + _A32 * k2[j])
            _rhs4(code, consts, lam, x + 0.3 * h, yt, k3)
            for j in range(4):
                yt[j] = y[j] + h * (_A41 * k1[j] + _A42 * k2[j] + _A43 * k3[j])
            _rhs4(code, consts, lam, x + 0.8 * h, yt, k4)
            for j in range(4):
                yt[j] = y[j] + h * (_A51 * k1[j] + _A52 * k2[j] + _A53 * k3[j] + _A54 * k4[j])
            _rhs4(code, consts, lam, x + 8 / 9 * h, yt, k5)
            for j in range(4):
                yt[j] = y[j] + h * (_A61 * k1[j] + _A62 * k2[j] + _A63 * k3[j]
                                    + _A64 * k4[j] + _A65 * k5[j])
            _rhs4(code, consts, lam, x + h, yt, k6)
            for j in range(4):
                yt[j] = y[j] + h * (_B1 * k1[j] + _B3 * k3[j] + _B4 * k4[j]
                                    + _B5 * k5[j] + _B6 * k6[j])
            _rhs4(code, consts, lam, x + h, yt, k7)

            err = 0.0
            scale = 1.0
            for j in range(4):
                e = h * (_E1 * k1[j] + _E3 * k3[j] + _E4 * k4[j]
                         + _E5 * k5[j] + _E6 * k6[j] + _E7 * k7[j])
                if abs(e) > err:
                    err = abs(e)
                if abs(y[j]) > scale:
                    scale = abs(y[j])
            limit = tol * h * scale
            if err <= limit:
                x += h
                for j in range(4):
                    y[j] = yt[j]
                n_steps += 1
                if scale > _HUGE:
                    return y, n_steps, STATUS_OVERFLOW, x
            fac = 0.9 * (limit / (err + 1e-300)) ** 0.2
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
            h *= fac
            if h < 1e-13 * (1.0 + x):
                return y, n_steps, STATUS_UNDERFLOW, x
        return y, n_steps, STATUS_OK, x

    @jit
    def _rhs_norm(code, consts, lam, x, y, out):
        w = eval_program(code, consts, x) - lam
        out[0] = y[1]
        out[1] = w * y[0]
        out[2] = y[0].real * y[0].real + y[0].imag * y[0].imag

    @jit
    def integrate_weyl_norm(code, consts, lam, m, x_start, x_end, y0, y0p, n0, tol):
        """Advance the Weyl solution psi = s - m c together with int |psi|^2.

        At x_start = 0 the initial data psi(0) = -m, psi'(0) = 1 is implied by
        (y0, y0p); the third state accumulates the squared norm so a caller can
        continue from a previous segment.  Returns (psi, psi', norm, status, x).
        """
        y = np.empty(3, dtype=np.complex128)
        y[0] = y0
        y[1] = y0p
        y[2] = n0
        k1 = np.empty(3, dtype=np.complex128)
        k2 = np.empty(3, dtype=np.complex128)
        k3 = np.empty(3, dtype=np.complex128)
        k4 = np.empty(3, dtype=np.complex128)
        k5 = np.empty(3, dtype=np.complex128)
        k6 = np.empty(3, dtype=np.complex128)
        k7 = np.empty(3, dtype=np.complex128)
        yt = np.empty(3, dtype=np.complex128)

        x = x_start
        h = min(0.01, x_end - x_start)
        while x < x_end:
            if h > x_end - x:
                h = x_end - x
            _rhs_norm(code, consts, lam, x, y, k1)
            for j in range(3):
                yt[j] = y[j] + h * _A21 * k1[j]
            _rhs_norm(code, consts, lam, x + h / 5, yt, k2)
            for j in range(3):
                yt[j] = y[j] + h * (_A31 * k1[j] + _A32 * k2[j])
            _rhs_norm(code, consts, lam, x + 0.3 * h, yt, k3)
            for j in range(3):
                yt[j] = y[j] + h * (_A41 * k1[j] + _A42 * k2[j] + _A43 * k3[j])
            _rhs_norm(code, consts, lam, x + 0.8 * h, yt, k4)
            for j in range(3):
                yt[j] = y[j] + h * (_A51 * k1[j] + _A52 * k2[j] + _A53 * k3[j] + _A54 * k4[j])
            _rhs_norm(code, consts, lam, x + 8 / 9 * h, yt, k5)
            for j in range(3):
                yt[j] = y[j] + h * (_A61 * k1[j] + _A62 * k2[j] + _A63 * k3[j]
                                    + _A64 * k4[j] + _A65 * k5[j])
            _rhs_norm(code, consts, lam, x + h, yt, k6)
            for j in range(3):
                yt[j] = y[j] + h * (_B1 * k1[j] + _B3 * k3[j] + _B4 * k4[j]
                                    + _B5 * k5[j] + _B6 * k6[j])
            _rhs_norm(code, consts, lam, x + h, yt, k7)

            err = 0.0
            scale = 1.0
            for j in range(3):
                e = h * (_E1 * k1[j] + _E3 * k3[j] + _E4 * k4[j]
                         + _E5 * k5[j] + _E6 * k6[j] + _E7 * k7[j])
                if abs(e) > err:
                    err = abs(e)
                if abs(y[j]) > scale:
                    scale = abs(y[j])
            limit = tol * h * scale
            if err <= limit:
                x += h
                for j in range(3):
                    y[j] = yt[j]
                if scale > _HUGE:
                    return y[0], y[1], y[2].real, STATUS_OVERFLOW, x
            fac = 0.9 * (limit / (err + 1e-300)) ** 0.2
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
            h *= fac
            if h < 1e-13 * (1.0 + x):
                return y[0], y[1], y[2].real, STATUS_UNDERFLOW, x
        return y[0], y[1], y[2].real, STATUS_OK, x

    @jit
    def prufer_theta(code, consts, lam, x_end, tol):
        """Integrate the phase of the Neumann solution, theta(0) = pi/2.

        theta' = cos^2 theta + (lam - q) sin^2 theta; zeros of the solution in
        (0, X) are the multiples of pi passed by theta.  Never overflows, which
        is what makes oscillation counting safe in classically forbidden
        regions.  Returns (theta, status, x).
        """
        th = np.pi / 2
        x = 0.0
        h = min(0.01, x_end)
        while x < x_end:
            if h > x_end - x:
                h = x_end - x

            q1 = eval_program(code, consts, x)
            s = np.sin(th)
            c = np.cos(th)
            k1 = c * c + (lam - q1) * s * s

            tt = th + h * _A21 * k1
            q2 = eval_program(code, consts, x + h / 5)
            s = np.sin(tt)
            c = np.cos(tt)
            k2 = c * c + (lam - q2) * s * s

            tt = th + h * (_A31 * k1 + _A32 * k2)
            q3 = eval_program(code, consts, x + 0.3 * h)
            s = np.sin(tt)
            c = np.cos(tt)
            k3 = c * c + (lam - q3) * s * s

            tt = th + h * (_A41 * k1 + _A42 * k2 + _A43 * k3)
            q4 = eval_program(code, consts, x + 0.8 * h)
            s = np.sin(tt)
            c = np.cos(tt)
            k4 = c * c + (lam - q4) * s * s

            tt = th + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4)
            q5 = eval_program(code, consts, x + 8 / 9 * h)
            s = np.sin(tt)
            c = np.cos(tt)
            k5 = c * c + (lam - q5) * s * s

            tt = th + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5)
            q6 = eval_program(code, consts, x + h)
            s = np.sin(tt)
            c = np.cos(tt)
            k6 = c * c + (lam - q6) * s * s

            tt = th + h * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
            s = np.sin(tt)
            c = np.cos(tt)
            k7 = c * c + (lam - q6) * s * s

            e = h * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
            scale = 1.0 + abs(th)
            limit = tol * h * scale
            if abs(e) <= limit:
                x += h
                th = tt
            fac = 0.9 * (limit / (abs(e) + 1e-300)) ** 0.2
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
            h *= fac
            if h < 1e-13 * (1.0 + x):
                return th, STATUS_UNDERFLOW, x
        return th, STATUS_OK, x

    return SimpleNamespace(
        backend="numba" if use_numba else "numpy",
        eval_program=eval_program,
        integrate_fundamental=integrate_fundamental,
        integrate_weyl_norm=integrate_weyl_norm,
        prufer_theta=prufer_theta,
    )


def eval_program_vec(code, consts, x):
    """Vectorized numpy evaluation of a compiled program (plumbing path,
    used for validation grids and CLI scans; not performance critical)."""
    x = np.asarray(x, dtype=np.float64)
    stack = []
    for i in range(code.shape[0]):
        op = int(code[i])
        if op == 0:
            stack.append(np.broadcast_to(consts[i], x.shape).astype(np.float64))
        elif op == 1:
            stack.append(x)
        elif op == 7:
            stack.append(-stack.pop())
        elif op == 8:
            stack.append(np.abs(stack.pop()))
        elif op == 9:
            stack.append(np.sign(stack.pop()))
        elif op == 10:
            stack.append(np.exp(stack.pop()))
        elif op == 11:
            stack.append(np.sin(stack.pop()))
        elif op == 12:
            stack.append(np.cos(stack.pop()))
        elif op == 13:
            stack.append(np.sqrt(stack.pop()))
        else:
            b = stack.pop()
            a = stack.pop()
            if op == 2:
                stack.append(a + b)
            elif op == 3:
                stack.append(a - b)
            elif op == 4:
                stack.append(a * b)
            elif op == 5:
                stack.append(a / b)
            elif op == 6:
                with np.errstate(invalid="ignore"):
                    stack.append(a ** b)
            elif op == 14:
                stack.append(np.minimum(a, b))
            else:
                stack.append(np.maximum(a, b))
    return stack[0]


KERNELS = build_kernels(USE_NUMBA)
