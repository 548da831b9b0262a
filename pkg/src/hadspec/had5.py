"""Dephased 5x5 Hadamard matrices as permuted Fourier matrices.

All matrices here are :class:`ExponentMatrix` instances of root order 5.
Rows and columns are 0-indexed; the core is rows/columns 1..4.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass

from .exactalg import (
    CyclotomicSum,
    ExponentMatrix,
    Permutation,
    fourier_matrix,
    is_dephased,
    is_hadamard,
    trace_exact,
)
from .spectra import Spectrum, spectrally_equivalent, spectrum_of

__all__ = [
    "DiagonalClass",
    "TraceClass5",
    "check_5x5",
    "is_latin_core",
    "rows_pair_up",
    "pairup_exponent_check",
    "pairing_rows",
    "enumerate_candidates",
    "enumerate_dephased_5x5",
    "diagonal_class",
    "verify_t_5x5",
    "SpectralClassViolation",
]

CORE = range(1, 5)


def check_5x5(M: ExponentMatrix) -> None:
    if M.shape != (5, 5) or M.root_order != 5:
        raise ValueError(f"expected a 5x5 matrix over 5th roots of unity, got {M.shape}, r={M.root_order}")


def is_latin_core(M: ExponentMatrix) -> bool:
    """Every core row and column holds each of 1..4 exactly once."""
    check_5x5(M)
    core = M.exps[1:, 1:]
    symbols = {1, 2, 3, 4}
    return all(set(core[j].tolist()) == symbols for j in range(4)) and all(
        set(core[:, k].tolist()) == symbols for k in range(4)
    )


def rows_pair_up(M: ExponentMatrix, j: int, j2: int) -> Permutation | None:
    """The column map tau with ``M[j, l] == M[j2, tau(l)]`` if it has order 2.

    ``tau`` is returned as a permutation of ``0..4`` fixing 0.  Rows that
    are related by a tau of any other order give ``None``.
    """
    check_5x5(M)
    if j == j2 or j not in CORE or j2 not in CORE:
        raise ValueError(f"rows must be distinct core rows, got {j}, {j2}")
    where = {int(e): k for k, e in enumerate(M.exps[j2]) if k}
    images = [0]
    for l in CORE:
        e = int(M.exps[j, l])
        if e not in where:
            raise ValueError(f"rows {j} and {j2} do not share their core symbols")
        images.append(where[e])
    tau = Permutation(tuple(images))
    return tau if tau.order() == 2 else None


def pairup_exponent_check(M: ExponentMatrix, j: int, j2: int) -> bool:
    """For rows that pair up: ``exps[j, k] + exps[j2, k] == 0 mod 5`` for every core column."""
    if rows_pair_up(M, j, j2) is None:
        raise ValueError(f"rows {j} and {j2} do not pair up")
    return all((int(M.exps[j, k]) + int(M.exps[j2, k])) % 5 == 0 for k in CORE)


def pairing_rows(M: ExponentMatrix) -> list[tuple[int, int]]:
    """All unordered core row pairs that pair up."""
    return [(a, b) for a, b in itertools.combinations(CORE, 2) if rows_pair_up(M, a, b) is not None]


class DiagonalClass(enum.Enum):
    FOUR_OF_A_KIND = "four_of_a_kind"
    THREE_OF_A_KIND = "three_of_a_kind"
    TWO_PAIR = "two_pair"
    ONE_PAIR_TWO_SINGLETONS = "one_pair_two_singletons"
    FOUR_SINGLETONS = "four_singletons"


def diagonal_class(M: ExponentMatrix) -> DiagonalClass:
    """Multiset shape of the four core diagonal exponents."""
    check_5x5(M)
    shape = sorted(Counter(M.diagonal()[1:].tolist()).values(), reverse=True)
    return {
        (4,): DiagonalClass.FOUR_OF_A_KIND,
        (3, 1): DiagonalClass.THREE_OF_A_KIND,
        (2, 2): DiagonalClass.TWO_PAIR,
        (2, 1, 1): DiagonalClass.ONE_PAIR_TWO_SINGLETONS,
        (1, 1, 1, 1): DiagonalClass.FOUR_SINGLETONS,
    }[tuple(shape)]


def _perms_fixing_zero(n: int):
    for rest in itertools.permutations(range(1, n)):
        yield Permutation((0,) + rest)


def enumerate_candidates() -> list[ExponentMatrix]:
    """``P_t^T F_5 P_s`` for all t, s fixing 0 (576 matrices, with repeats)."""
    F = fourier_matrix(5)
    perms = list(_perms_fixing_zero(5))
    return [F.permute(t, s) for t in perms for s in perms]


def enumerate_dephased_5x5() -> list[ExponentMatrix]:
    """Distinct dephased 5x5 Hadamard matrices, sorted by exponent grid."""
    unique = {M.key(): M for M in enumerate_candidates()}
    return [unique[k] for k in sorted(unique)]


@dataclass
class TraceClass5:
    canonical_trace: CyclotomicSum
    trace: CyclotomicSum
    members: list[ExponentMatrix]
    shared_spectrum: Spectrum
    symmetric: bool
    diagonal: tuple[int, ...]
    diagonal_class: DiagonalClass


class SpectralClassViolation(Exception):
    def __init__(self, messages: list[str]):
        super().__init__("; ".join(messages))
        self.messages = messages


_CLASS_RANK = {
    DiagonalClass.TWO_PAIR: 0,
    DiagonalClass.FOUR_OF_A_KIND: 1,
    DiagonalClass.ONE_PAIR_TWO_SINGLETONS: 2,
    DiagonalClass.THREE_OF_A_KIND: 3,
    DiagonalClass.FOUR_SINGLETONS: 4,
}


def verify_t_5x5(matrices: list[ExponentMatrix] | None = None, tol: float = 1e-8) -> list[TraceClass5]:
    """Group by exact trace and check each group is spectrally homogeneous.

    Classes come back symmetric first, then by diagonal shape.

    Also checks that equal traces force equal diagonal multisets and that
    symmetry is constant on each group.  Raises :class:`SpectralClassViolation`
    listing every failure.
    """
    if matrices is None:
        matrices = enumerate_dephased_5x5()
    groups: dict[tuple[int, ...], list[ExponentMatrix]] = {}
    for M in matrices:
        check_5x5(M)
        if not (is_hadamard(M) and is_dephased(M)):
            raise ValueError(f"not a dephased Hadamard matrix: {M!r}")
        key = trace_exact(M).canonical().coeffs
        groups.setdefault(key, []).append(M)
    problems: list[str] = []
    classes: list[TraceClass5] = []
    for key in sorted(groups):
        members = groups[key]
        spectra = [spectrum_of(M.to_dense()) for M in members]
        diags = {tuple(sorted(M.diagonal().tolist())) for M in members}
        syms = {M.is_symmetric() for M in members}
        label = str(CyclotomicSum(5, key))
        if len(diags) != 1:
            problems.append(f"trace {label}: diagonals differ {sorted(diags)}")
        if len(syms) != 1:
            problems.append(f"trace {label}: mixes symmetric and nonsymmetric members")
        for M, spec in zip(members[1:], spectra[1:]):
            if not spectrally_equivalent(spectra[0], spec, tol):
                problems.append(f"trace {label}: {M!r} has a different spectrum")
        classes.append(
            TraceClass5(
                CyclotomicSum(5, key),
                trace_exact(members[0]),
                members,
                spectra[0],
                symmetric=members[0].is_symmetric(),
                diagonal=tuple(sorted(members[0].diagonal().tolist())),
                diagonal_class=diagonal_class(members[0]),
            )
        )
    if problems:
        raise SpectralClassViolation(problems)
    classes.sort(key=lambda c: (not c.symmetric, _CLASS_RANK[c.diagonal_class], c.diagonal))
    return classes
