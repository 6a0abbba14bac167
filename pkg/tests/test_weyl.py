import numpy as np
import pytest

from signsl.errors import ToleranceError
from signsl.weyl import (big_M, m_coefficient, sqrt_cut, weyl_disk,
                         weyl_solution_norm_check)
from conftest import make_potential


def closed_form_m(lam, c=0.0):
    # free/constant potential: m_+(lam) = i / sqrt(lam - c)
    return 1j / sqrt_cut(lam - c)


def test_sqrt_cut_branch():
    assert sqrt_cut(-1.0) == pytest.approx(1j)
    assert sqrt_cut(2j) ** 2 == pytest.approx(2j)
    assert sqrt_cut(-2j) ** 2 == pytest.approx(-2j)
    for lam in (1 + 1j, -3 - 0.5j, 0.2j, -7.0):
        assert sqrt_cut(lam).imag >= 0


def test_free_m_at_i(q_zero):
    m = m_coefficient(q_zero, "plus", 1j)
    want = np.exp(1j * np.pi / 4)
    assert abs(m.value - want) <= 1e-6
    assert abs(m.value - want) <= m.error_bound + 1e-12
    assert m.error_bound <= 1e-8


@pytest.mark.parametrize("lam", [1 + 1j, 2j, -1 + 1j, 0.3 - 2j, 25j])
def test_free_m_closed_form_grid(q_zero, lam):
    m = m_coefficient(q_zero, "plus", lam)
    assert abs(m.value - closed_form_m(lam)) <= 1e-7


def test_constant_m_closed_form(q_one):
    m = m_coefficient(q_one, "plus", 2j)
    assert abs(m.value - closed_form_m(2j, 1.0)) <= 1e-7


def test_minus_side_equals_plus_for_even_potential():
    p = make_potential("cos(x)")
    lam = 1 + 1j
    mp = m_coefficient(p, "plus", lam)
    mm = m_coefficient(p, "minus", lam)
    assert mp.value == pytest.approx(mm.value, abs=1e-7)


def test_big_M_sign_convention(q_zero):
    # M_+(lam) = m_+(lam), M_-(lam) = -m_-(-lam)
    lam = 1j
    Mp = big_M(q_zero, "plus", lam)
    Mm = big_M(q_zero, "minus", lam)
    assert abs(Mp.value - np.exp(1j * np.pi / 4)) <= 1e-7
    assert abs(Mm.value - (-closed_form_m(-lam))) <= 1e-7
    # dispersion for q=0 at i: e^{i pi/4} + e^{-i pi/4} = sqrt(2)
    assert abs((Mp.value - Mm.value) - np.sqrt(2)) <= 1e-6


def test_herglotz_positivity(q_zero, q_one):
    # Im m > 0 on the upper half-plane, and Im M keeps the sign of Im lam
    rng = np.random.default_rng(7)
    for p in (q_zero, q_one):
        for _ in range(10):
            lam = complex(rng.uniform(-4, 4), rng.uniform(0.2, 4))
            assert m_coefficient(p, "plus", lam).value.imag > 0
            assert big_M(p, "minus", lam).value.imag > 0


def test_disks_nest_and_shrink(q_one):
    lam = 0.5 + 1j
    radii = []
    disks = []
    for X in (1.0, 2.0, 4.0, 8.0):
        d = weyl_disk(q_one, "plus", lam, X)
        radii.append(d.radius)
        disks.append(d)
    assert radii == sorted(radii, reverse=True)
    for small, big in zip(disks[1:], disks[:-1]):
        assert abs(small.center - big.center) <= big.radius - small.radius + 1e-12
    m = m_coefficient(q_one, "plus", lam)
    for d in disks:
        assert abs(m.value - d.center) <= d.radius + m.error_bound


def test_real_lambda_rejected(q_zero):
    with pytest.raises(ValueError):
        m_coefficient(q_zero, "plus", 1.0)
    with pytest.raises(ValueError):
        weyl_disk(q_zero, "plus", 2.0, 4.0)
    with pytest.raises(ValueError):
        m_coefficient(q_zero, "plus", 1j, tol=-1.0)


def test_unreachable_tolerance(q_zero):
    # nearly real lam: the disk radius stagnates near its X -> inf limit
    with pytest.raises(ToleranceError):
        m_coefficient(q_zero, "plus", 1 + 1e-8j, tol=1e-8)


def test_norm_identity(q_zero, q_one):
    for p in (q_zero, q_one):
        for side in ("plus", "minus"):
            rel = weyl_solution_norm_check(p, side, 1 + 1j)
            assert rel < 1e-3


def test_norm_identity_asymmetric_potential():
    p = make_potential("x/(1+x^2)")
    assert weyl_solution_norm_check(p, "plus", 2j) < 1e-3
    assert weyl_solution_norm_check(p, "minus", 2j) < 1e-3
