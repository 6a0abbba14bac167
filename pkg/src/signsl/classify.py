"""Definitizability analysis from the two half-line spectra.

The half-line operators are B+ = -d^2/dx^2 + q on [0, inf) and
B- = +d^2/dx^2 - q on (-inf, 0], both with a Neumann condition at 0.  Their
essential spectra come from the tail-class rule engine (never from
numerics); discrete eigenvalues outside the essential part are computed by
oscillation counting on growing truncations.  The obstruction set S is built
from the one-sided accumulation sets of the two spectra; its complement is
the maximal domain of definitizability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PotentialClassError, SignSLError
from .ode import oscillation_count
from .potential import Potential, TailClass
from .sets import Interval, RSet

EV_CAP = 64          # hard cap on enumerated discrete eigenvalues
EV_KEEP = 16         # eigenvalues listed when the count is infinite
EV_STABLE_TOL = 1e-6


@dataclass
class HalfLineSpectrumModel:
    side: str
    essential: list[Interval]
    essential_rule: str
    discrete: list[float]
    #: (limit point, "below"/"above"): the discrete list accumulates there
    accumulations: list[tuple[float, str]]
    n_neg_type: object          # int, "infinite", or None
    semibounded: tuple          # ("below", eta0) | ("above", eta0) | ("none", None)
    sup_infinite: bool
    inf_infinite: bool

    def sigma_left(self) -> RSet:
        out = RSet()
        for iv in self.essential:
            if not iv.is_point():
                out.intervals.append(Interval(iv.a, iv.b, False, iv.incl_b))
        for p, s in self.accumulations:
            if s == "below":
                out.points.add(p)
        out.has_inf = self.sup_infinite
        return out.normalize()

    def sigma_right(self) -> RSet:
        out = RSet()
        for iv in self.essential:
            if not iv.is_point():
                out.intervals.append(Interval(iv.a, iv.b, iv.incl_a, False))
        for p, s in self.accumulations:
            if s == "above":
                out.points.add(p)
        out.has_inf = self.inf_infinite
        return out.normalize()

    def spectrum_components(self):
        """(lo, hi) hulls of the spectrum for the separation sweep."""
        comps = [(iv.a, iv.b) for iv in self.essential]
        comps += [(p, p) for p in self.discrete
                  if not any(iv.contains(p) for iv in self.essential)]
        comps += [(p, p) for p, _ in self.accumulations]
        return comps

    def spectrum_rset(self) -> RSet:
        return RSet(list(self.essential),
                    {p for p in self.discrete} | {p for p, _ in self.accumulations}
                    ).normalize()


@dataclass(frozen=True)
class SeparationResult:
    separable: bool
    points: list | None = None    # alternating partition thresholds alpha_j
    witness: object = None        # obstruction point when not separable
    even_set: int | None = None   # which input (1 or 2) sits in the even blocks


@dataclass
class DefinitizabilityReport:
    verdict: str                  # definitizable | definitizable_over_only | nowhere_definitizable
    S: RSet
    omega_description: str
    critical_point_candidates: list
    decomposition_available: bool
    model_plus: HalfLineSpectrumModel
    model_minus: HalfLineSpectrumModel
    separation: SeparationResult
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------- numerics

def _count(p: Potential, lam: float, X: float) -> int:
    return oscillation_count(p, "plus", lam, X)


def _eigs_below(p: Potential, lam_hi: float, lam_lo: float, k_max: int, X: float):
    """First k_max eigenvalues below lam_hi of the truncated Neumann problem."""
    n = _count(p, lam_hi, X)
    evs = []
    for j in range(min(k_max, n)):
        a, b = lam_lo, lam_hi
        while b - a > 1e-9 * (1 + abs(a) + abs(b)):
            m = 0.5 * (a + b)
            if _count(p, m, X) <= j:
                a = m
            else:
                b = m
        evs.append(0.5 * (a + b))
    return evs, n


def neumann_discrete_below(p: Potential, edge: float, k_max: int = EV_CAP):
    """Discrete spectrum of the half-line Neumann operator below `edge`,
    by truncation with X-doubling until the lowest eigenvalues stabilize.

    Returns (eigenvalues, total_count_at_largest_X).
    """
    grid = p.q(np.linspace(0.0, 64.0, 1025))
    lam_lo = min(0.0, float(np.min(grid))) - 1.0
    lam_hi = edge - 1e-9
    prev = None
    X = 16.0
    while X <= 512.0:
        evs, n = _eigs_below(p, lam_hi, lam_lo, k_max, X)
        if prev is not None and len(prev) == len(evs):
            head = min(10, len(evs))
            if head == 0 or max(abs(a - b) for a, b in
                                zip(prev[:head], evs[:head])) < EV_STABLE_TOL:
                return evs, n
        prev = evs
        X *= 2.0
    return prev if prev is not None else [], 0


def neumann_lowest(p: Potential, k: int = 10):
    """Lowest k eigenvalues when the half-line spectrum is purely discrete."""
    grid = p.q(np.linspace(0.0, 64.0, 1025))
    lam_lo = min(0.0, float(np.min(grid))) - 1.0
    prev = None
    X = 16.0
    while X <= 512.0:
        lam_hi = lam_lo + 4.0
        while _count(p, lam_hi, X) < k:
            lam_hi = lam_lo + 2 * (lam_hi - lam_lo)
        evs, _ = _eigs_below(p, lam_hi, lam_lo, k, X)
        if prev is not None and len(prev) >= k and len(evs) >= k:
            if max(abs(a - b) for a, b in zip(prev[:k], evs[:k])) < EV_STABLE_TOL:
                return evs[:k]
        prev = evs
        X *= 2.0
    return prev[:k]


# ------------------------------------------------------------- rule engine

def _x2q_limit(tc: TailClass, p: Potential, sign: float):
    """liminf/limsup surrogate for x^2 q(x) along the tail (they coincide for
    the representable classes); from parameters when available, else sampled."""
    if tc.kind == "power_decay":
        alpha, coeff = tc.params
        if alpha > 2:
            return 0.0
        if alpha == 2:
            return coeff
        return np.inf * np.sign(coeff) if coeff != 0 else 0.0
    xs = sign * np.array([1e2, 1e3, 1e4])
    vals = np.asarray(p.q(xs)) * xs ** 2
    return float(vals[-1])


def _plus_type_model(p: Potential, tc: TailClass) -> HalfLineSpectrumModel:
    """Model of the Neumann operator -d^2/dx^2 + q on [0, inf) where the
    relevant tail class of q is `tc` (p already reflected if needed)."""
    if tc.kind == "constant_limit":
        c = tc.params[0]
        evs, _ = neumann_discrete_below(p, c)
        eta0 = min([c] + evs)
        return HalfLineSpectrumModel(
            "plus", [Interval(c, np.inf)], f"constant limit {c:g} at infinity",
            evs, [], None, ("below", eta0), True, False)

    if tc.kind in ("decaying_summable", "power_decay"):
        limit = _x2q_limit(tc, p, 1.0)
        infinite = limit < -0.25
        evs, n = neumann_discrete_below(p, 0.0, EV_CAP)
        accum = []
        if infinite:
            evs = evs[:EV_KEEP]
            accum = [(0.0, "below")]
            n_neg = "infinite"
        else:
            n_neg = len(evs)
        eta0 = min([0.0] + evs)
        rule = ("decay with x^2 q -> "
                f"{limit:g} vs -1/4 threshold" if tc.kind == "power_decay"
                else "summable negative part")
        return HalfLineSpectrumModel(
            "plus", [Interval(0.0, np.inf)], rule,
            evs, accum, n_neg, ("below", eta0), True, False)

    if tc.kind == "molchanov_growth":
        evs = neumann_lowest(p, 10)
        return HalfLineSpectrumModel(
            "plus", [], "running integrals of q diverge: purely discrete spectrum",
            evs, [], None, ("below", min(evs)), True, False)

    if tc.kind == "titchmarsh_decline":
        return HalfLineSpectrumModel(
            "plus", [Interval(-np.inf, np.inf)],
            "smooth monotone decline to -inf: spectrum fills the line",
            [], [], None, ("none", None), True, True)

    raise PotentialClassError(f"no rule for tail class {tc.kind}")


def _negate_model(m: HalfLineSpectrumModel) -> HalfLineSpectrumModel:
    flip = {"below": "above", "above": "below"}
    sb_kind, eta = m.semibounded
    sb = ("none", None) if sb_kind == "none" else \
        (flip[sb_kind] if sb_kind in flip else sb_kind, -eta)
    return HalfLineSpectrumModel(
        "minus",
        [Interval(-iv.b, -iv.a, iv.incl_b, iv.incl_a) for iv in m.essential],
        m.essential_rule,
        sorted(-e for e in m.discrete),
        [(-p, flip[s]) for p, s in m.accumulations],
        m.n_neg_type,
        sb,
        m.inf_infinite,
        m.sup_infinite)


def half_line_model(potential: Potential, side: str) -> HalfLineSpectrumModel:
    """Spectrum model of the half-line operator on the given side: the
    Neumann realization of -d^2/dx^2 + q on [0, inf) for side=plus, its
    sign-flipped mirror on (-inf, 0] for side=minus."""
    tc = potential.tail_class(side)
    if side == "plus":
        return _plus_type_model(potential, tc)
    # the minus-side operator is -( -d^2/du^2 + q(-u) ) under u = -x
    m = _plus_type_model(potential.reflected(), tc)
    return _negate_model(m)


# ------------------------------------------------------------- set machinery

def obstruction_set(sl1: RSet, sr1: RSet, sl2: RSet, sr2: RSet) -> RSet:
    return sl1.intersect(sl2).union(sr1.intersect(sr2))


def separation_check(spec1, spec2) -> SeparationResult:
    """Can the two spectra be separated by finitely many points, one set in
    the even closed blocks of an alternating partition and the other in the
    odd blocks?  Inputs are HalfLineSpectrumModel or (components, sigma_left,
    sigma_right)-shaped objects.
    """
    obs = obstruction_set(spec1.sigma_left(), spec1.sigma_right(),
                          spec2.sigma_left(), spec2.sigma_right())
    if not obs.is_empty():
        return SeparationResult(False, witness=obs.witness())

    comps = [(a, b, 1) for a, b in spec1.spectrum_components()] + \
            [(a, b, 2) for a, b in spec2.spectrum_components()]
    comps.sort(key=lambda c: (c[0], c[1]))
    if not comps:
        return SeparationResult(True, points=[], even_set=1)

    cuts: list[float] = []
    lo, hi, owner = comps[0]
    first_owner = owner
    for a, b, s in comps[1:]:
        if s == owner:
            hi = max(hi, b)
            continue
        if a > hi:
            cuts.append(0.5 * (hi + a) if np.isfinite(hi) else a - 1.0)
            lo, hi, owner = a, b, s
        elif a == hi and (a == b or b >= hi):
            cuts.append(a)
            lo, hi, owner = a, max(b, hi), s
        elif a == b and b < hi:
            # isolated point strictly inside the other set's hull: tie pair
            cuts.extend([a, a])
        else:
            raise SignSLError(
                "components overlap with positive length yet no accumulation "
                "obstruction was found; spectrum model is inconsistent")
    return SeparationResult(True, points=cuts, even_set=first_owner)


def compute_SA(model_plus: HalfLineSpectrumModel,
               model_minus: HalfLineSpectrumModel):
    """The obstruction set S and a description of its complement Omega."""
    S = obstruction_set(model_plus.sigma_left(), model_plus.sigma_right(),
                        model_minus.sigma_left(), model_minus.sigma_right())
    if S.is_empty():
        return S, "C-bar (the full extended plane)"
    if S.covers_extended_line():
        return S, "no admissible domain (Omega meets no real point)"
    n = S.normalize()
    if not n.intervals and not n.points and n.has_inf:
        return S, "C (the finite plane; inf excluded)"
    return S, f"C-bar minus ({S.describe()})"


def classify(potential: Potential) -> DefinitizabilityReport:
    """Full definitizability report for (sgn x)(-d^2/dx^2 + q)."""
    model_p = half_line_model(potential, "plus")
    model_m = half_line_model(potential, "minus")
    sep = separation_check(model_p, model_m)
    S, omega = compute_SA(model_p, model_m)

    if sep.separable:
        verdict = "definitizable"
    elif S.covers_extended_line():
        verdict = "nowhere_definitizable"
    else:
        verdict = "definitizable_over_only"

    sb_below = model_p.semibounded[0] == "below" and model_m.semibounded[0] == "above"
    notes = []
    if sep.separable != S.is_empty():
        raise SignSLError("separation check and obstruction set disagree")
    if sb_below == S.contains("inf"):
        raise SignSLError("semi-boundedness inconsistent with inf membership in S")

    candidates = []
    decaying = {"decaying_summable", "power_decay"}
    both_decaying = (potential.tail_class("plus").kind in decaying
                     and potential.tail_class("minus").kind in decaying)
    if both_decaying:
        n_p, n_m = model_p.n_neg_type, model_m.n_neg_type
        infinite = n_p == "infinite" or n_m == "infinite"
        if infinite:
            notes.append("infinitely many eigenvalues approach 0: definitizable "
                         "only away from 0; 0 is the only possible accumulation "
                         "point of non-real spectrum")
        else:
            candidates.append(0.0)
            notes.append(f"finitely many bound states (N+ = {n_p}, N- = {n_m}); "
                         "0 and inf are critical point candidates")
    if sb_below:
        candidates.append("inf")
        notes.append("lower semi-bounded: bounded-plus-similar decomposition "
                     "available; inf is a regular critical point")

    return DefinitizabilityReport(
        verdict=verdict,
        S=S,
        omega_description=omega,
        critical_point_candidates=candidates,
        decomposition_available=sb_below,
        model_plus=model_p,
        model_minus=model_m,
        separation=sep,
        notes=notes)
