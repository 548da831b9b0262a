import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadspec import symperm
from hadspec.exactalg import Permutation, fourier_matrix, is_dephased, is_hadamard, multiplicative_permutation
from hadspec.spectra import spectrally_equivalent, spectrum_of
from hadspec.verify import N12_MULTIPLICITIES


@st.composite
def symperm_params(draw, n_max=16):
    n = draw(st.integers(2, n_max))
    m = draw(st.sampled_from(symperm.units(n)))
    rest = draw(st.permutations(range(1, n)))
    return n, m, Permutation((0, *rest))


def test_units():
    assert symperm.units(12) == [1, 5, 7, 11]
    assert symperm.units(1) == [1]


@given(symperm_params())
def test_build_is_symmetric_dephased_hadamard(params):
    n, m, tau = params
    M = symperm.build_symperm(n, m, tau)
    assert M.is_symmetric() and is_dephased(M) and is_hadamard(M)
    # same as conjugating F_n P_(.m) by P_tau
    dense = tau.matrix().T @ fourier_matrix(n).to_dense() @ multiplicative_permutation(n, m).matrix() @ tau.matrix()
    assert np.allclose(M.to_dense(), dense)


@given(symperm_params())
def test_decompose_round_trip(params):
    n, m, tau = params
    M = symperm.build_symperm(n, m, tau)
    dec = symperm.decompose_symperm(M)
    assert dec.rebuild() == M


def test_decompose_rejects():
    with pytest.raises(ValueError):
        symperm.decompose_symperm(fourier_matrix(5).permute(Permutation.from_cycles(5, "(3 4)"), Permutation.identity(5)))
    with pytest.raises(ValueError):
        symperm.decompose_symperm(fourier_matrix(4).with_exps(np.zeros((4, 4), dtype=int)))


def test_build_rejects():
    with pytest.raises(ValueError):
        symperm.build_symperm(6, 2)
    with pytest.raises(ValueError):
        symperm.build_symperm(4, 1, Permutation.from_cycles(4, "(0 1)"))


@pytest.mark.parametrize("n", range(2, 30))
def test_square_is_negation(n):
    for m in symperm.units(n):
        assert symperm.square_is_negation_perm(n, m)
        assert symperm.commute_check(n, m)


def test_square_dense(rng):
    n, m = 10, 3
    A = symperm.fourier_times_mult(n, m).to_dense()
    neg = Permutation(tuple((-j) % n for j in range(n))).matrix()
    assert np.allclose(A @ A, neg)
    assert np.allclose(np.linalg.matrix_power(A, 4), np.eye(n))


def test_fixing_pairs_small():
    pairs = {(t(1), s(1)) for t, s in symperm.fixing_pairs(5)}
    assert pairs == {(1, 1), (2, 3), (3, 2), (4, 4)}
    assert len(symperm.fixing_pairs(4)) == 2
    for n in range(2, 7):
        assert symperm.fixed_point_lemma_check(n)


@pytest.mark.parametrize("n", range(3, 41))
def test_multiplicities_match_eigensolver(n):
    for m in symperm.units(n):
        derived = symperm.multiplicity_table(n, m)
        spec = spectrum_of(symperm.fourier_times_mult(n, m).to_dense())
        assert spec.fourth_roots() == derived
        assert not spec.ambiguous


def test_n12_table():
    assert {m: symperm.multiplicity_table(12, m).as_tuple() for m in N12_MULTIPLICITIES} == N12_MULTIPLICITIES


@given(symperm_params(12))
def test_symperm_spectrum_independent_of_tau(params):
    n, m, tau = params
    a = spectrum_of(symperm.build_symperm(n, m, tau).to_dense())
    b = spectrum_of(symperm.fourier_times_mult(n, m).to_dense())
    assert spectrally_equivalent(a, b)


def test_tabulated_rows_agree_except_two():
    disc = symperm.table_discrepancies(40)
    assert {d.row for d in disc} == {"4k, 4l+1, (n/m)=-1", "4k, 4l+3, (n/m)=-1"}
    for d in disc:
        t1, tm1, ti, tmi = d.tabulated
        assert d.derived == (t1, tm1, tmi, ti)
    rows = {}
    for n in range(3, 41):
        for m in symperm.units(n):
            if m > 1:
                rows.setdefault(symperm.tabulated_multiplicities(n, m)[1], []).append((n, m))
    for label, cases in rows.items():
        if "(n/m)=-1" not in label or not label.startswith("4k,"):
            assert all(symperm.tabulated_multiplicities(n, m)[0] == symperm.multiplicity_table(n, m).as_tuple() for n, m in cases)


def test_negation_fixed_points():
    for n in range(1, 20):
        assert symperm.negation_fixed_points(n) == sum(1 for j in range(n) if (2 * j) % n == 0)
