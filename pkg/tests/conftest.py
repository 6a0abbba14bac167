import pytest

from signsl.potential import Potential, TailClass


def make_potential(src, left=None, right=None):
    return Potential(src,
                     TailClass.parse(left) if left else None,
                     TailClass.parse(right) if right else None)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger jit compilation once so timed tests see steady-state speed
    from signsl.weyl import m_coefficient
    from signsl.ode import oscillation_count
    p = make_potential("0", "constant_limit:0", "constant_limit:0")
    m_coefficient(p, "plus", 1j, tol=1e-6)
    oscillation_count(p, "plus", 1.0, 1.0)


@pytest.fixture
def q_zero():
    return make_potential("0", "constant_limit:0", "constant_limit:0")


@pytest.fixture
def q_one():
    return make_potential("1", "constant_limit:1", "constant_limit:1")


@pytest.fixture
def deep_well():
    # even, smooth, deep attractive well; one conjugate pair of non-real
    # eigenvalues near +-6.554i
    return make_potential("-20/(1+x^16)",
                          "power_decay:16:-20", "power_decay:16:-20")
