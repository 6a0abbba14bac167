"""Full-line potentials: parsed expression plus tail-class annotations.

The tail classes drive the rule engine in :mod:`signsl.classify`; they are
asserted by the caller and only spot-checked here against sampled values at
|x| in {1e2, 1e3, 1e4}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from .errors import PotentialClassError, SignSLError
from .kernels import eval_program_vec

#: recognized tail-class kinds and their parameter counts
TAIL_KINDS = {
    "constant_limit": 1,      # q -> c
    "decaying_summable": 0,   # q -> 0, integrable negative part
    "power_decay": 2,         # q ~ coeff * |x|^(-alpha)
    "molchanov_growth": 0,    # running integrals of q diverge to +inf
    "titchmarsh_decline": 1,  # q -> -inf, smooth monotone decline
}


@dataclass(frozen=True)
class TailClass:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in TAIL_KINDS:
            raise PotentialClassError(f"unknown tail class {self.kind!r}")
        want = TAIL_KINDS[self.kind]
        if len(self.params) != want:
            raise PotentialClassError(
                f"tail class {self.kind} takes {want} parameter(s), got {len(self.params)}")

    @classmethod
    def parse(cls, text: str) -> "TailClass":
        parts = text.split(":")
        return cls(parts[0], tuple(float(p) for p in parts[1:]))

    def __str__(self):
        return ":".join([self.kind] + [repr(p) for p in self.params])


@dataclass
class Potential:
    """A real potential q on the line, given as an expression in x."""

    source: str
    left_class: TailClass | None = None
    right_class: TailClass | None = None
    ast: ex.Node = field(init=False, repr=False)
    code: np.ndarray = field(init=False, repr=False)
    consts: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.ast = ex.parse(self.source)
        self.code, self.consts = ex.compile_program(self.ast)

    @classmethod
    def from_ast(cls, ast, left_class=None, right_class=None):
        p = cls.__new__(cls)
        p.source = ex.unparse(ast)
        p.left_class = left_class
        p.right_class = right_class
        p.ast = ast
        p.code, p.consts = ex.compile_program(ast)
        return p

    def q(self, x):
        """Evaluate the potential at scalar or array x."""
        return eval_program_vec(self.code, self.consts, x)

    def reflected(self) -> "Potential":
        """The potential x -> q(-x); tail classes swap sides."""
        return Potential.from_ast(ex.substitute_neg_x(self.ast),
                                  left_class=self.right_class,
                                  right_class=self.left_class)

    def is_smooth_at_origin(self) -> bool:
        def uses_kink(n):
            if isinstance(n, ex.Unary):
                return n.op in ("abs", "sgn") or uses_kink(n.arg)
            if isinstance(n, ex.Binary):
                return uses_kink(n.left) or uses_kink(n.right)
            return False
        return not uses_kink(self.ast)

    def is_even(self, n_samples: int = 257, span: float = 25.0, rtol: float = 1e-10) -> bool:
        x = np.linspace(0.0, span, n_samples)
        a = self.q(x)
        b = self.q(-x)
        return bool(np.allclose(a, b, rtol=rtol, atol=1e-12))

    def tail_class(self, side: str) -> TailClass:
        tc = self.right_class if side == "plus" else self.left_class
        if tc is None:
            raise PotentialClassError(
                f"class annotation required on the {side} side of q = {self.source}")
        return tc

    def validate(self):
        """Check finiteness on dense grids and spot-check the tail classes."""
        for lo, hi, n in ((-50.0, 50.0, 4001), (-1.0, 1.0, 2001)):
            vals = self.q(np.linspace(lo, hi, n))
            if not np.all(np.isfinite(vals)) or np.iscomplexobj(vals):
                bad = np.linspace(lo, hi, n)[~np.isfinite(vals)][:1]
                raise SignSLError(f"potential not finite near x = {bad}")
        for side, sign in (("plus", 1.0), ("minus", -1.0)):
            tc = self.right_class if side == "plus" else self.left_class
            if tc is not None:
                self._spot_check(tc, sign, side)

    def _spot_check(self, tc: TailClass, sign: float, side: str):
        xs = sign * np.array([1e2, 1e3, 1e4])
        vals = self.q(xs)
        ok = True
        if tc.kind == "constant_limit":
            c = tc.params[0]
            ok = abs(vals[-1] - c) < 0.5 * (1.0 + abs(c)) and \
                abs(vals[-1] - c) <= abs(vals[0] - c) + 1e-9
        elif tc.kind in ("decaying_summable", "power_decay"):
            ok = np.all(np.abs(vals) <= np.abs(vals[0]) + 1e-12) and abs(vals[-1]) < 0.1
            if tc.kind == "power_decay":
                alpha, coeff = tc.params
                approx = coeff * np.abs(xs) ** (-alpha)
                ok = ok and np.allclose(vals, approx, rtol=0.5, atol=1e-12)
        elif tc.kind == "molchanov_growth":
            ok = vals[-1] > vals[0] and vals[-1] > 1.0
        elif tc.kind == "titchmarsh_decline":
            ok = vals[-1] < vals[0] and vals[-1] < -1.0
        if not ok:
            raise PotentialClassError(
                f"tail class {tc} inconsistent with sampled values of q on the {side} side")
