import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_unitary
from hadspec.exactalg import CyclotomicSum, fourier_matrix
from hadspec.spectra import (
    ConvergenceError,
    FourthRootMultiplicities,
    det_lu,
    eigenvalues,
    fourth_root_multiplicities,
    spectrally_equivalent,
    spectrum_of,
    unitarity_defect,
)


def _residual(A, lam):
    # smallest singular value of A - lam I, independent of the QR code
    return np.linalg.svd(A - lam * np.eye(A.shape[0]), compute_uv=False)[-1]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 16, 33])
def test_random_unitary_eigenvalues(rng, n):
    A = random_unitary(rng, n)
    eigs = eigenvalues(A)
    assert len(eigs) == n
    assert max(_residual(A, z) for z in eigs) < 1e-10
    assert abs(sum(eigs) - np.trace(A)) < n * 1e-10


@given(st.integers(0, 10**6), st.integers(1, 10))
def test_general_matrix_trace_and_det(seed, n):
    g = np.random.default_rng(seed)
    A = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
    eigs = eigenvalues(A)
    scale = 1 + np.max(np.abs(A))
    assert abs(sum(eigs) - np.trace(A)) <= n * 1e-8 * scale
    assert abs(np.prod(eigs) - det_lu(A)) <= n * 1e-8 * scale**n


def test_det_lu_against_numpy(rng):
    for n in (1, 3, 6):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert abs(det_lu(A) - np.linalg.det(A)) < 1e-9 * (1 + abs(np.linalg.det(A)))
    assert det_lu(np.zeros((3, 3))) == 0


def test_defective_and_degenerate():
    assert sorted(eigenvalues(np.eye(5)), key=abs) == [1] * 5
    J = np.array([[2, 1], [0, 2]], dtype=complex)
    assert all(abs(z - 2) < 1e-7 for z in eigenvalues(J))
    # cyclic shift: eigenvalues are the n-th roots of unity
    S = np.roll(np.eye(9), 1, axis=0)
    spec = spectrum_of(S)
    assert spectrally_equivalent(spec, spectrum_of(None, eigs=[cmath.exp(2j * math.pi * k / 9) for k in range(9)]))


def test_budget_exhaustion():
    S = np.roll(np.eye(6), 1, axis=0)
    with pytest.raises(ConvergenceError):
        eigenvalues(S, max_sweeps=1)


def test_bad_input():
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.nan]]))


@pytest.mark.parametrize("n", range(1, 25))
def test_fourier_multiplicities_known(n):
    # DFT multiplicities for w = e^{+2 pi i/n}; the e^{-2 pi i/n} table swaps i and -i
    k, r = divmod(n, 4)
    expected = {
        0: (k + 1, k, k, k - 1),
        1: (k + 1, k, k, k),
        2: (k + 1, k + 1, k, k),
        3: (k + 1, k + 1, k + 1, k),
    }[r]
    if n == 1:
        expected = (1, 0, 0, 0)
    F = fourier_matrix(n).to_dense()
    got = spectrum_of(F).fourth_roots()
    assert got.as_tuple() == expected
    ref = np.linalg.eigvals(F)
    assert tuple(int(np.sum(np.abs(ref - z) < 1e-6)) for z in (1, -1, 1j, -1j)) == expected


def test_clustering_wraps_and_flags():
    eps = 1e-9
    spec = spectrum_of(None, eigs=[cmath.exp(1j * eps), cmath.exp(-1j * eps), -1])
    assert spec.clusters[0][1] == 2 and abs(spec.clusters[0][0] - 1) < 1e-12
    assert not spec.ambiguous
    close = spectrum_of(None, 1e-6, eigs=[1, cmath.exp(2e-6j)])
    assert close.ambiguous and len(close.clusters) == 2


def test_spectral_equivalence_needs_multiplicity():
    a = spectrum_of(None, eigs=[1, 1, -1])
    b = spectrum_of(None, eigs=[1, -1, -1])
    assert not spectrally_equivalent(a, b)
    assert spectrally_equivalent(a, spectrum_of(None, eigs=[-1, 1 + 1e-10j, 1]))


def test_fourth_root_multiplicities_solve():
    t = fourth_root_multiplicities(12, CyclotomicSum.gaussian(-1, -1), 2)
    assert t == FourthRootMultiplicities(3, 4, 2, 3)
    assert t.trace() == -1 - 1j
    with pytest.raises(ValueError):
        fourth_root_multiplicities(5, 0.5, 1)


def test_unitarity_defect(rng):
    assert unitarity_defect(random_unitary(rng, 6)) < 1e-12
    assert unitarity_defect(2 * np.eye(3)) == pytest.approx(3.0)
