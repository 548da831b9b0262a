"""Symmetric dephased permutations of the Fourier matrix.

Such a matrix is ``P_t^T F_n P_(.m) P_t`` with ``t`` fixing 0 and ``m`` a
unit mod n, so its exponent grid is ``m * t(j) * t(k) mod n``.  Its square is
the negation permutation, hence ``M**4 = I`` and the eigenvalue
multiplicities follow from the trace, a quadratic Gauss sum.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exactalg import (
    CyclotomicSum,
    ExponentMatrix,
    Permutation,
    exact_product,
    fourier_matrix,
    multiplicative_permutation,
)
from .numtheory import gauss_sum_closed, jacobi
from .spectra import FourthRootMultiplicities, fourth_root_multiplicities

__all__ = [
    "units",
    "SymPermDecomposition",
    "commute_check",
    "fixing_pairs",
    "fixed_point_lemma_check",
    "build_symperm",
    "fourier_times_mult",
    "decompose_symperm",
    "square_is_negation_perm",
    "negation_fixed_points",
    "multiplicity_table",
    "fourier_multiplicities",
    "tabulated_multiplicities",
    "TableDiscrepancy",
    "table_discrepancies",
]


def units(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if math.gcd(m, n) == 1 and (m < n or n == 1)]


def _require_unit(n: int, m: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(m, n) != 1:
        raise ValueError(f"m={m} is not a unit modulo {n}")
    return m % n


@dataclass(frozen=True)
class SymPermDecomposition:
    n: int
    m: int
    tau: Permutation

    def rebuild(self) -> ExponentMatrix:
        return build_symperm(self.n, self.m, self.tau)


def fourier_times_mult(n: int, m: int) -> ExponentMatrix:
    """``F_n P_(.m)``: entry ``(j, k)`` is ``w**(m j k)``."""
    _require_unit(n, m)
    return fourier_matrix(n).permute(Permutation.identity(n), multiplicative_permutation(n, m))


def commute_check(n: int, m: int) -> bool:
    """Exact check of ``F_n P_(.m)^T == P_(.m) F_n``."""
    _require_unit(n, m)
    F = fourier_matrix(n)
    inv = multiplicative_permutation(n, m).inverse()
    ident = Permutation.identity(n)
    # M P^T = M P_{s^-1}; P M = P_{s^-1}^T M
    left = F.permute(ident, inv)
    right = F.permute(inv, ident)
    return left == right


def fixing_pairs(n: int) -> list[tuple[Permutation, Permutation]]:
    """Every pair (t, s) with ``P_t^T F_n P_s == F_n``, found exhaustively.

    For each of the n! row permutations t the column permutation is forced,
    since the columns of ``F_n`` are distinct.
    """
    F = fourier_matrix(n)
    col_index = {tuple(F.exps[:, k].tolist()): k for k in range(n)}
    out = []
    for t in itertools.permutations(range(n)):
        rows = F.exps[list(t)]
        s = [0] * n
        for c in range(n):
            k = col_index.get(tuple(rows[:, c].tolist()))
            if k is None:
                break
            # F[t(j), s(k)] == F[j, k]
            s[k] = c
        else:
            out.append((Permutation(t), Permutation(tuple(s))))
    return out


def fixed_point_lemma_check(n: int) -> bool:
    """Every pair fixing ``F_n`` is ``(.p, .r)`` with ``p r == 1 mod n``, and all such pairs occur."""
    if n < 2:
        raise ValueError("n must be at least 2")
    found = set()
    for t, s in fixing_pairs(n):
        p, r = t(1), s(1)
        if (p * r) % n != 1:
            return False
        if t != multiplicative_permutation(n, p) or s != multiplicative_permutation(n, r):
            return False
        found.add((p, r))
    return found == {(p, pow(p, -1, n)) for p in units(n)}


def build_symperm(n: int, m: int, tau: Permutation | None = None) -> ExponentMatrix:
    """``P_t^T F_n P_(.m) P_t`` with exponents ``m t(j) t(k) mod n``."""
    m = _require_unit(n, m)
    tau = Permutation.identity(n) if tau is None else tau
    if tau.n != n or tau(0) != 0:
        raise ValueError("tau must be a permutation of range(n) fixing 0")
    t = np.array(tau.images, dtype=np.int64)
    return ExponentMatrix((m * np.outer(t, t)) % n, n, n)


def decompose_symperm(M: ExponentMatrix) -> SymPermDecomposition:
    """Recover (m, tau) with ``build_symperm(n, m, tau) == M``.

    Searches units m in ascending order; for each, the column c with
    ``tau(c) = 1`` is tried in ascending order, which forces
    ``tau(j) = m^-1 exps[j, c]``.  The first reconstruction that matches is
    returned.  Raises ``ValueError`` if there is none.
    """
    n = M.n
    if not M.is_square() or M.root_order != n or M.norm != n:
        raise ValueError("expected a square matrix over n-th roots of unity with scale 1/sqrt(n)")
    if not M.is_symmetric():
        raise ValueError("matrix is not symmetric")
    if M.exps[0].any():
        raise ValueError("matrix is not dephased")
    E = M.exps
    for m in units(n):
        m_inv = pow(m, -1, n) if n > 1 else 0
        for c in range(1, n):
            images = tuple(int(x) for x in (m_inv * E[:, c]) % n)
            if images[0] != 0 or len(set(images)) != n:
                continue
            tau = Permutation(images)
            if build_symperm(n, m, tau) == M:
                return SymPermDecomposition(n, m, tau)
        if n == 1:
            return SymPermDecomposition(1, 0, Permutation.identity(1))
    raise ValueError("matrix is not a symmetric dephased permutation of the Fourier matrix")


def square_is_negation_perm(n: int, m: int) -> bool:
    """Exact check that ``(F_n P_(.m))**2`` is the permutation matrix of ``j -> -j`` and the fourth power is I."""
    M = fourier_times_mult(n, m)
    sq = exact_product(M, M)
    # scale^2 = 1/n, so the unscaled entry must be n where j + k == 0 mod n
    target = np.zeros_like(sq)
    j = np.arange(n)
    target[j, (-j) % n, 0] = n
    if not np.array_equal(sq, target):
        return False
    neg = Permutation(tuple((-x) % n for x in range(n)))
    return (neg * neg).is_identity()


def negation_fixed_points(n: int) -> int:
    """Number of j with ``2j == 0 mod n``; equals tr(M^2)."""
    return 1 if n % 2 else 2


def multiplicity_table(n: int, m: int) -> FourthRootMultiplicities:
    """Eigenvalue multiplicities of ``F_n P_(.m)`` from its trace.

    The trace is ``g(m; n)/sqrt(n)``, a Gaussian integer given by the closed
    Gauss-sum formula, and ``tr(M**2)`` counts the fixed points of negation.
    """
    m = _require_unit(n, m)
    g = gauss_sum_closed(m, n)
    a, b = g.sqrt_coeff
    return fourth_root_multiplicities(n, CyclotomicSum.gaussian(a, b), negation_fixed_points(n))


def fourier_multiplicities(n: int) -> FourthRootMultiplicities:
    if n < 1:
        raise ValueError("n must be positive")
    return multiplicity_table(n, 1)


def tabulated_multiplicities(n: int, m: int) -> tuple[tuple[int, int, int, int], str]:
    """Closed-form multiplicities by congruence class, as commonly tabulated.

    Returns ``((t1, t-1, ti, t-i), row_label)``.  Rows ``4k, m = 1 mod 4,
    (n/m) = -1`` and ``4k, m = 3 mod 4, (n/m) = -1`` are reproduced as
    tabulated, which swaps ``ti`` and ``t-i`` relative to the trace; compare
    with :func:`multiplicity_table`.
    """
    m = _require_unit(n, m)
    k = n // 4
    r = n % 4
    if r == 0:
        s = jacobi(n, m)
        if m % 4 == 1:
            label = f"4k, 4l+1, (n/m)={s:+d}"
            row = (k + 1, k, k, k - 1) if s == 1 else (k, k + 1, k, k - 1)
        else:
            label = f"4k, 4l+3, (n/m)={s:+d}"
            row = (k + 1, k, k - 1, k) if s == 1 else (k, k + 1, k - 1, k)
    elif r == 1:
        s = jacobi(m, n)
        label = f"4k+1, (m/n)={s:+d}"
        row = (k + 1, k, k, k) if s == 1 else (k, k + 1, k, k)
    elif r == 2:
        label = "4k+2"
        row = (k + 1, k + 1, k, k)
    else:
        s = jacobi(m, n)
        label = f"4k+3, (m/n)={s:+d}"
        row = (k + 1, k + 1, k + 1, k) if s == 1 else (k + 1, k + 1, k, k + 1)
    return row, label


@dataclass(frozen=True)
class TableDiscrepancy:
    n: int
    m: int
    row: str
    tabulated: tuple[int, int, int, int]
    derived: tuple[int, int, int, int]


def table_discrepancies(n_max: int, n_min: int = 3) -> list[TableDiscrepancy]:
    """All (n, m) with ``m != 1`` where the tabulated row disagrees with the trace derivation."""
    out = []
    for n in range(n_min, n_max + 1):
        for m in units(n):
            if m == 1:
                continue
            row, label = tabulated_multiplicities(n, m)
            derived = multiplicity_table(n, m).as_tuple()
            if row != derived:
                out.append(TableDiscrepancy(n, m, label, row, derived))
    return out
