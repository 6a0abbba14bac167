import numpy as np
import pytest

from signsl.classify import (HalfLineSpectrumModel, _negate_model, classify,
                             compute_SA, half_line_model, neumann_discrete_below,
                             separation_check)
from signsl.errors import PotentialClassError
from signsl.sets import Interval
from conftest import make_potential


def test_nonnegative_constant_is_definitizable():
    for c in (0.0, 1.0, 5.0):
        p = make_potential(repr(c), f"constant_limit:{c}", f"constant_limit:{c}")
        r = classify(p)
        assert r.verdict == "definitizable"
        assert r.S.is_empty()
        assert r.separation.separable
        assert r.decomposition_available


def test_negative_constant_witness_interval():
    p = make_potential("-1", "constant_limit:-1", "constant_limit:-1")
    r = classify(p)
    assert r.verdict == "definitizable_over_only"
    assert r.S.describe() == "[-1, 1]"
    assert not r.separation.separable
    assert r.separation.witness is not None


def test_linear_ramp_definitizable_over_finite_plane():
    # discrete spectrum on the left half-line, full-line essential on the right
    p = make_potential("-x", "molchanov_growth", "titchmarsh_decline:1")
    r = classify(p)
    assert r.verdict == "definitizable_over_only"
    assert r.S.describe() == "{inf}"
    assert "inf excluded" in r.omega_description
    assert not r.decomposition_available


def test_coulomb_like_decay_definitizable_away_from_zero():
    p = make_potential("-1/(1+abs(x))", "power_decay:1:-1", "power_decay:1:-1")
    r = classify(p)
    assert r.verdict == "definitizable_over_only"
    assert r.S.describe() == "{0}"
    assert r.model_plus.n_neg_type == "infinite"
    assert r.critical_point_candidates == ["inf"]


def test_shallow_well_finite_bound_states():
    p = make_potential("-0.2/(1+x^2)", "power_decay:2:-0.2", "power_decay:2:-0.2")
    r = classify(p)
    assert r.verdict == "definitizable"
    assert r.model_plus.n_neg_type == 1
    assert r.model_minus.n_neg_type == 1
    assert 0.0 in r.critical_point_candidates
    assert "inf" in r.critical_point_candidates


def test_borderline_decay_infinite_bound_states():
    # x^2 q -> -1 < -1/4: infinitely many eigenvalues accumulate at 0
    p = make_potential("-1/(1+x^2)", "power_decay:2:-1", "power_decay:2:-1")
    r = classify(p)
    assert r.model_plus.n_neg_type == "infinite"
    assert r.S.describe() == "{0}"


def test_half_line_model_constant():
    p = make_potential("1", "constant_limit:1", "constant_limit:1")
    m = half_line_model(p, "plus")
    assert m.essential == [Interval(1.0, np.inf)]
    assert m.discrete == []
    assert m.semibounded == ("below", 1.0)
    mm = half_line_model(p, "minus")
    assert mm.essential[0].b == -1.0
    assert mm.semibounded[0] == "above"


def test_missing_class_annotation():
    p = make_potential("0", left=None, right="constant_limit:0")
    with pytest.raises(PotentialClassError):
        classify(p)


def test_neumann_eigenvalue_square_well():
    # q = -20 inside |x| < 1 (smoothed): ground state below the well depth
    p = make_potential("-20/(1+x^16)", "power_decay:16:-20", "power_decay:16:-20")
    evs, n = neumann_discrete_below(p, 0.0)
    assert n == len(evs)
    assert evs == sorted(evs)
    assert -20.0 < evs[0] < 0.0
    # Neumann half-well eigenvalues: cos-type states of the full well
    assert 1 <= len(evs) <= 4


def _point_model(side, essential, discrete, accum=(), sup_inf=True, inf_inf=False):
    return HalfLineSpectrumModel(side, essential, "test", list(discrete),
                                 list(accum), None, ("none", None),
                                 sup_inf, inf_inf)


def test_separation_with_interior_point():
    # a point of one spectrum strictly inside the hull of the other is
    # separable with a doubled threshold
    m1 = _point_model("plus", [Interval(0.0, np.inf)], [-0.5])
    m2 = _negate_model(_point_model("plus", [Interval(0.0, np.inf)], [-0.5]))
    res = separation_check(m1, m2)
    assert res.separable
    pts = res.points
    assert pts == sorted(pts)
    assert pts.count(-0.5) == 2 or pts.count(0.5) == 2


def test_obstruction_from_shared_interval():
    m1 = _point_model("plus", [Interval(-1.0, np.inf)], [])
    m2 = _negate_model(m1)
    S, omega = compute_SA(m1, m2)
    assert S.describe() == "[-1, 1]"
    assert not separation_check(m1, m2).separable


def test_model_negation_involution():
    m = _point_model("plus", [Interval(1.0, np.inf)], [-0.3, 0.2],
                     accum=[(0.0, "below")])
    back = _negate_model(_negate_model(m))
    assert back.essential == m.essential
    assert back.discrete == m.discrete
    assert back.accumulations == m.accumulations
    assert back.sup_infinite == m.sup_infinite
