"""Acceptance gate: every criterion prints one PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines inline.
"""

import time

import numpy as np

from signsl.classify import (HalfLineSpectrumModel, _negate_model, classify,
                             compute_SA)
from signsl.expr import parse as eparse, unparse
from signsl.construction import (build_measure, certify_theorem,
                                 find_zero_sequence, r_eval)
from signsl.ode import integrate_fundamental
from signsl.sets import Interval
from signsl.spectrum import Rect, axis_scan, count_nonreal, locate_nonreal
from signsl.weyl import big_M, m_coefficient, weyl_solution_norm_check
from conftest import make_potential


def _report(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
    print(line)
    assert ok, line


def test_criterion_1_free_m_function(q_zero):
    t0 = time.perf_counter()
    m = m_coefficient(q_zero, "plus", 1j, tol=1e-8)
    dt = time.perf_counter() - t0
    err = abs(m.value - np.exp(1j * np.pi / 4))
    ok = err <= 1e-6 and m.error_bound <= 1e-8 and dt < 1.0
    _report("criterion 1 (free m-function closed form)", ok,
            f"|m - e^(i pi/4)| = {err:.2e}, radius = {m.error_bound:.2e}, "
            f"t = {dt:.3f} s")


def test_criterion_2_norm_identity(q_zero, q_one):
    t0 = time.perf_counter()
    worst = 0.0
    for p in (q_zero, q_one):
        for lam in (1 + 1j, 2j, -1 + 1j):
            for side in ("plus", "minus"):
                worst = max(worst, weyl_solution_norm_check(p, side, lam))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-3 and dt < 10.0
    _report("criterion 2 (Weyl solution norm identity)", ok,
            f"max relative error = {worst:.2e}, t = {dt:.2f} s")


def test_criterion_3_large_lambda_asymptotics():
    bump = make_potential("max(1-x^2, 0)^2",
                          "decaying_summable", "decaying_summable")
    devs = []
    for R in (1e2, 1e3, 1e4):
        lam = 1j * R
        M = big_M(bump, "plus", lam, tol=1e-9)
        from signsl.weyl import sqrt_cut
        devs.append(abs(sqrt_cut(lam) * M.value / 1j - 1.0))
    ok = devs[0] > devs[1] > devs[2]
    _report("criterion 3 (M ~ i/sqrt(lambda) asymptotics)", ok,
            "deviations at R=1e2,1e3,1e4: " + ", ".join(f"{d:.2e}" for d in devs))


def test_criterion_4_constant_potential_classification():
    details = []
    ok = True
    for c in (0.0, 1.0, 5.0):
        r = classify(make_potential(repr(c), f"constant_limit:{c}",
                                    f"constant_limit:{c}"))
        ok &= r.verdict == "definitizable"
        details.append(f"c={c:g}: {r.verdict}")
    for c in (-1.0, -0.1):
        r = classify(make_potential(repr(c), f"constant_limit:{c}",
                                    f"constant_limit:{c}"))
        want = f"[{c:g}, {-c:g}]"
        ok &= r.verdict != "definitizable" and r.S.describe() == want
        details.append(f"c={c:g}: {r.verdict}, S = {r.S.describe()}")
    _report("criterion 4 (definitizable iff c >= 0, witness [c, -c])", ok,
            "; ".join(details))


def test_criterion_5_contour_vs_axis_scan(deep_well):
    roots = axis_scan(deep_well, (0.2, 12.0), n_grid=120)
    upper = count_nonreal(deep_well, Rect(-8, 8, 0.2, 12))
    located = locate_nonreal(deep_well, Rect(-8, 8, 0.2, 12))
    # full conjugate-closed count is twice the upper half-plane count
    ok = 2 * upper == 2 * len(roots) and len(located.points) == 2 * upper
    match = max(abs(e.value - 1j * r) for e, r in
                zip(located.points[:upper], roots)) if upper else 0.0
    ok &= match <= 1e-6
    _report("criterion 5 (contour count vs imaginary-axis scan)", ok,
            f"{upper} pair(s); location mismatch = {match:.2e}")


def test_criterion_6_no_nonreal_spectrum(q_zero, q_one):
    n0 = count_nonreal(q_zero, Rect(-10, 10, 0.1, 10))
    n1 = count_nonreal(q_one, Rect(-10, 10, 0.1, 10))
    _report("criterion 6 (no non-real spectrum for c >= 0)",
            n0 == 0 and n1 == 0, f"counts: q=0 -> {n0}, q=1 -> {n1}")


def test_criterion_7_construction():
    t0 = time.perf_counter()
    m = build_measure(5)
    masses = np.cumsum([h for _, h in m.atoms])
    a = bool(np.all(masses <= 2 / np.pi + 1e-15))
    vals = [r_eval(m, abs(s)) for s in m.positions()]
    b = all((v < 0) == (k % 2 == 1) for k, v in enumerate(vals, start=1))
    z = find_zero_sequence(m)
    c = (len(z.eps) == 4
         and all(z.eps[i] > z.eps[i + 1] for i in range(3))
         and all(lo < e < hi for e, (lo, hi) in zip(z.eps, z.brackets))
         and max(z.residuals) <= 1e-10)
    d = max(abs(m.cumulative_mass(s) - (2 / np.pi) * np.sqrt(s))
            for s in (2.0, 4.0, 9.0)) < 1e-8
    dt = time.perf_counter() - t0
    ok = a and b and c and d and dt < 5.0
    _report("criterion 7 (measure construction, K=5)", ok,
            f"mass bound {a}, sign pattern {b}, 4 bracketed roots {c}, "
            f"cumulative mass {d}, t = {dt:.2f} s")


def test_criterion_8_certificate_obstruction_set():
    m = build_measure(5)
    pos = m.positions()
    accum = [(0.0, "below"), (0.0, "above")]
    model_p = HalfLineSpectrumModel(
        "plus", [Interval(1.0, np.inf)], "constructed support", list(pos),
        accum, "infinite", ("below", min(pos)), True, False)
    S, omega = compute_SA(model_p, _negate_model(model_p))
    ok = S.describe() == "{0}"
    cert = certify_theorem(m, find_zero_sequence(m))
    ok &= cert.valid
    _report("criterion 8 (certificate: S = {0}, omega = whole plane minus 0)",
            ok, f"S = {S.describe()}; certificate valid = {cert.valid}")


def test_criterion_9_tail_class_rules():
    r1 = classify(make_potential("-x", "molchanov_growth", "titchmarsh_decline:1"))
    ok1 = r1.S.describe() == "{inf}" and "inf excluded" in r1.omega_description

    r2 = classify(make_potential("-1/(1+abs(x))",
                                 "power_decay:1:-1", "power_decay:1:-1"))
    ok2 = r2.S.describe() == "{0}" and r2.verdict != "definitizable"

    r3 = classify(make_potential("-0.2/(1+x^2)",
                                 "power_decay:2:-0.2", "power_decay:2:-0.2"))
    ok3 = isinstance(r3.model_plus.n_neg_type, int) and \
        isinstance(r3.model_minus.n_neg_type, int)

    r4 = classify(make_potential("-1/(1+x^2)",
                                 "power_decay:2:-1", "power_decay:2:-1"))
    ok4 = r4.model_plus.n_neg_type == "infinite"

    _report("criterion 9 (tail-class spectrum rules)",
            ok1 and ok2 and ok3 and ok4,
            f"-x: omega = {r1.omega_description}; "
            f"-1/(1+|x|): S = {r2.S.describe()}; "
            f"N+ finite = {r3.model_plus.n_neg_type}; "
            f"borderline N+ = {r4.model_plus.n_neg_type}")


def test_criterion_10_invariant_suites(q_zero, q_one, deep_well):
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)

    worst_w = 0.0
    for p in (q_one, deep_well, make_potential("sin(x)")):
        for _ in range(6):
            lam = complex(rng.uniform(-4, 4), rng.uniform(0.1, 4))
            st = integrate_fundamental(p, "plus", lam, rng.uniform(1, 8))
            # drift relative to the size of the cancelling products
            scale = max(1.0, abs(st.c * st.s_prime) + abs(st.c_prime * st.s))
            worst_w = max(worst_w, abs(st.wronskian() - 1.0) / scale)
    a = worst_w <= 1e-8

    b = True
    for _ in range(50):
        lam = complex(rng.uniform(-5, 5), rng.uniform(0.2, 5))
        p = q_zero if rng.random() < 0.5 else q_one
        b &= m_coefficient(p, "plus", lam).value.imag > 0

    found = locate_nonreal(deep_well, Rect(-3, 3, 5, 8))
    c = found.conjugation_closed() and len(found.points) > 0

    corpus = [
        "0", "1", "x", "-x", "3.5", "1e-3", ".5", "2e4",
        "x+1", "x-1", "2*x", "x/2", "x^2", "2^3^2",
        "-1/(1+abs(x))", "sgn(x)", "exp(-x^2)", "sin(x)*cos(x)",
        "sqrt(abs(x))", "min(x, 0)", "max(1-x^2, 0)^2",
        "1+2*3", "(1+2)*3", "-x^2", "(-x)^2", "x*-x",
        "abs(x)^3", "2 - - 2", "min(max(x, -1), 1)", "exp(sin(x^2))",
    ]
    d = all(eparse(unparse(eparse(t))) == eparse(t) for t in corpus)

    dt = time.perf_counter() - t0
    ok = a and b and c and d and dt < 60.0
    _report("criterion 10 (invariant suites)", ok,
            f"Wronskian {worst_w:.2e}, Herglotz {b}, conjugation {c}, "
            f"round-trip {d} ({len(corpus)} exprs), t = {dt:.1f} s")
