import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import multiset_close
from hadspec import had4
from hadspec.exactalg import is_dephased, is_hadamard
from hadspec.had4 import Had4Class, Had4Kind
from hadspec.spectra import eigenvalues

angles = st.floats(0, 2 * math.pi, allow_nan=False)
nonreal = angles.filter(lambda t: abs(math.sin(t)) > 1e-3)


def _same(a, b, tol=1e-8):
    return multiset_close(a, b, tol)


def _numpy_eigs(A):
    return list(np.linalg.eigvals(A))


@given(angles)
def test_h4_family(theta):
    rho = had4.unit(theta)
    A = had4.h4(rho)
    assert is_hadamard(A) and is_dephased(A)
    assert _same(eigenvalues(A), [1, 1, -1, rho])
    assert _same(_numpy_eigs(A), [1, 1, -1, rho])


def test_h4_rejects_non_unit():
    with pytest.raises(ValueError):
        had4.h4(0.5)


def test_real_cores():
    c2 = [1, -1, had4.unit(2 * math.pi / 3), had4.unit(-2 * math.pi / 3)]
    expected = {"C1": [1, 1, 1, -1], "C2": c2, "C3": c2, "C4": [1, 1, -1, -1], "C5": [1, 1, -1, -1], "C6": [1, 1, -1, -1]}
    for name, ev in expected.items():
        A = had4.real_core_matrix(name)
        assert is_hadamard(A) and is_dephased(A)
        assert _same(eigenvalues(A), ev, 1e-9), name
        assert _same(_numpy_eigs(A), ev, 1e-9), name
    assert np.trace(had4.real_core_matrix("C2")) == pytest.approx(-1)
    with pytest.raises(ValueError):
        had4.real_core_matrix("C7")


def test_nonsym_characteristic_polynomial():
    x, lam = sp.symbols("x lam")
    M = sp.Matrix([[1, 1, 1, 1], [1, -1, 1, -1], [1, x, -1, -x], [1, -x, -1, x]]) / 2
    cp = (M - lam * sp.eye(4)).det()
    assert sp.expand(cp * 2 - (lam - 1) * (lam + 1) * (2 * lam**2 + (1 - x) * lam - 2 * x)) == 0
    assert sp.simplify(M.trace() - (x - 1) / 2) == 0


@given(angles, st.sampled_from([1, -1]))
def test_nonsym_closed_form(theta, sign):
    rho = had4.unit(theta)
    A = had4.nonsym_matrix(rho, sign)
    assert is_hadamard(A) and is_dephased(A)
    # only x = 1 makes the core symmetric
    if abs(sign * rho - 1) > 1e-12:
        assert not np.allclose(A, A.T, rtol=0, atol=1e-14)
    closed = had4.nonsym_eigs_closed(rho, sign)
    assert _same(closed, _numpy_eigs(A))
    assert _same(closed, eigenvalues(A))
    assert max(abs(abs(z) - 1) for z in closed) < 1e-9
    assert abs(sum(closed) - np.trace(A)) < 1e-10


@given(angles)
def test_k_branches_belong_to_opposite_sign(theta):
    rho = had4.unit(theta)
    A = had4.nonsym_matrix(rho, -1)
    assert _same(list(had4.k_branches(rho)) + [1, -1], _numpy_eigs(A))


def test_nonsym_examples():
    assert _same(had4.nonsym_eigs_closed(1, 1), [1, 1, -1, -1])
    # H1(-1) is real with trace -1
    assert _same(had4.nonsym_eigs_closed(-1, 1), [1, -1, had4.unit(2 * math.pi / 3), had4.unit(-2 * math.pi / 3)])


@given(angles)
def test_mobius_round_trip(theta):
    k = had4.unit(theta)
    rho = had4.mobius_inverse(k)
    assert abs(abs(rho) - 1) < 1e-9
    assert min(abs(k - z) for z in had4.k_branches(rho)) < 1e-9


def test_symmetric_variant_conjugate():
    rho = had4.unit(1.0)
    B = had4.symmetric_variant(rho)
    assert B[1, 1] * 2 == pytest.approx(1)
    assert _same(eigenvalues(B), [1, 1, -1, rho])


@given(nonreal)
def test_classify_round_trip(theta):
    r = had4.unit(theta)
    cases = [
        (Had4Kind.SYMMETRIC_PLUS, had4.h4(r)),
        (Had4Kind.SYMMETRIC_MINUS, had4.h4(-r)),
        (Had4Kind.NONSYM_PLUS, had4.nonsym_matrix(r, 1)),
        (Had4Kind.NONSYM_MINUS, had4.nonsym_matrix(r, -1)),
        (Had4Kind.SYMMETRIC_PLUS, had4.symmetric_variant(r)),
    ]
    for kind, A in cases:
        cls = had4.classify4(A)
        want = Had4Class.normalized(kind, r)
        assert cls.same_as(want)
        assert cls.rho.imag > 0
        assert abs(cls.trace() - np.trace(A)) < 1e-9


def test_classify_examples():
    c = had4.classify4(had4.h4(1j))
    assert c.kind is Had4Kind.SYMMETRIC_PLUS and abs(c.rho - 1j) < 1e-12
    assert had4.classify4(had4.real_core_matrix("C2")).kind is Had4Kind.REAL_C2C3
    assert had4.classify4(had4.real_core_matrix("C1")).trace() == 2
    assert had4.classify4(had4.nonsym_matrix(-1, 1)).kind is Had4Kind.REAL_C2C3
    assert had4.classify4(had4.h4(-1)).kind is Had4Kind.REAL_C4C5C6


def test_classify_rejects():
    with pytest.raises(ValueError):
        had4.classify4(np.eye(4))
    with pytest.raises(ValueError):
        had4.classify4(np.eye(3))
    A = had4.h4(1j)
    with pytest.raises(ValueError):
        had4.classify4(A[[1, 0, 2, 3]])


def test_dephased_orbit_sizes():
    assert len(had4.dephased_orbit(had4.h4(had4.unit(0.7)))) == 18
    for A in had4.dephased_orbit(had4.h4(had4.unit(0.7))):
        assert is_dephased(A) and is_hadamard(A)


def test_rho_grid():
    g = had4.rho_grid(32)
    assert len(g) == 40
    assert all(abs(abs(z) - 1) < 1e-15 for z in g)
    assert any(abs(z - 1j) < 1e-15 for z in g)


def test_verify_t_main4():
    report = had4.verify_t_main4(8)
    assert report.passed
    assert report.min_separation > 1e-9
