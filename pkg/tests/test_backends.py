import importlib

import numpy as np
import pytest

from signsl import _backend, kernels
from signsl.expr import compile_program, parse

numba_available = importlib.util.find_spec("numba") is not None


@pytest.fixture(scope="module")
def both():
    if not numba_available:
        pytest.skip("numba not installed")
    return kernels.build_kernels(False), kernels.build_kernels(True)


def _program(src):
    return compile_program(parse(src))


def test_backend_names(both):
    py, nb = both
    assert py.backend == "numpy"
    assert nb.backend == "numba"


def test_eval_program_agrees(both):
    py, nb = both
    code, consts = _program("sin(x)*exp(-x^2/4) + max(x, 0)")
    for x in (-3.0, -0.5, 0.0, 1.7, 9.0):
        assert py.eval_program(code, consts, x) == pytest.approx(
            nb.eval_program(code, consts, x), rel=1e-15)


def test_eval_program_vec_matches_scalar(both):
    py, _ = both
    code, consts = _program("min(abs(x), sqrt(abs(x)))")
    xs = np.linspace(-4, 4, 33)
    vec = kernels.eval_program_vec(code, consts, xs)
    for x, v in zip(xs, vec):
        assert py.eval_program(code, consts, float(x)) == pytest.approx(v)


def test_integrate_fundamental_agrees(both):
    py, nb = both
    code, consts = _program("sin(x)")
    lam = 1.0 + 2.0j
    y1, n1, s1, _ = py.integrate_fundamental(code, consts, lam, 5.0, 1e-10)
    y2, n2, s2, _ = nb.integrate_fundamental(code, consts, lam, 5.0, 1e-10)
    assert s1 == s2 == kernels.STATUS_OK
    assert np.max(np.abs(np.asarray(y1) - np.asarray(y2))) < 1e-8


def test_prufer_agrees(both):
    py, nb = both
    code, consts = _program("x^2/10")
    t1, s1, _ = py.prufer_theta(code, consts, 3.0, 12.0, 1e-9)
    t2, s2, _ = nb.prufer_theta(code, consts, 3.0, 12.0, 1e-9)
    assert s1 == s2 == kernels.STATUS_OK
    assert t1 == pytest.approx(t2, abs=1e-6)


def test_weyl_norm_agrees(both):
    py, nb = both
    code, consts = _program("0")
    lam = 1j
    m = np.exp(1j * np.pi / 4)
    out1 = py.integrate_weyl_norm(code, consts, lam, m, 0.0, 10.0,
                                  -m, 1.0 + 0j, 0.0, 1e-10)
    out2 = nb.integrate_weyl_norm(code, consts, lam, m, 0.0, 10.0,
                                  -m, 1.0 + 0j, 0.0, 1e-10)
    assert abs(complex(out1[2]) - complex(out2[2])) < 1e-8


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv("SIGNSL_BACKEND", "numpy")
    assert _backend.selected_backend() == "numpy"
    monkeypatch.setenv("SIGNSL_BACKEND", "jit")
    assert _backend.selected_backend() == "numba"
    monkeypatch.setenv("SIGNSL_BACKEND", "cuda")
    with pytest.raises(ValueError):
        _backend.selected_backend()
    monkeypatch.delenv("SIGNSL_BACKEND")
    assert _backend.selected_backend() == ("numba" if numba_available else "numpy")
