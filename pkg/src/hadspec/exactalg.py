"""Exact arithmetic over roots of unity.

Three value types live here:

* :class:`Permutation` -- a bijection of ``{0, ..., n-1}``.
* :class:`CyclotomicSum` -- an integer combination ``sum_j c_j w**j`` with
  ``w = exp(2*pi*i/r)``, comparable exactly after reduction modulo the r-th
  cyclotomic polynomial.
* :class:`ExponentMatrix` -- a matrix whose entries are ``scale * w**e`` with
  integer exponents ``e`` and ``scale = 1/sqrt(norm)``.

Everything is immutable; structural operations never touch floating point.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "CyclotomicSum",
    "ExponentMatrix",
    "cyclotomic_polynomial",
    "cyclotomic_canonical",
    "fourier_matrix",
    "multiplicative_permutation",
    "permutation_matrix_action",
    "trace_exact",
    "exact_product",
    "is_hadamard",
    "is_dephased",
]


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection ``j -> images[j]`` of ``{0, ..., n-1}``.

    The associated permutation matrix follows ``P[j, k] = 1`` iff
    ``j == sigma(k)``, so that ``(M @ P)[j, k] == M[j, sigma(k)]``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of range({len(images)}): {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: str | Iterable[Sequence[int]]) -> Permutation:
        """Build from 0-indexed cycle notation, e.g. ``"(1 2)(3 4)"``."""
        if isinstance(cycles, str):
            text = cycles.strip()
            if text and not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\)\s*)*", text):
                raise ValueError(f"unparseable cycle notation: {cycles!r}")
            cycles = [
                [int(x) for x in re.split(r"[ ,]+", body.strip())]
                for body in re.findall(r"\(([^)]*)\)", text)
            ]
        images = list(range(n))
        touched: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 0 <= x < n:
                    raise ValueError(f"cycle entry {x} outside range({n})")
                if x in touched:
                    raise ValueError(f"cycle entry {x} repeated")
                touched.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``self o other`` (apply ``other`` first)."""
        if self.n != other.n:
            raise ValueError("permutation sizes differ")
        return Permutation(tuple(self.images[other.images[j]] for j in range(self.n)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for j, s in enumerate(self.images):
            inv[s] = j
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == s for j, s in enumerate(self.images))

    def order(self) -> int:
        result = 1
        seen = [False] * self.n
        for start in range(self.n):
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length:
                result = math.lcm(result, length)
        return result

    def fixed_points(self) -> int:
        return sum(1 for j, s in enumerate(self.images) if j == s)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest element."""
        out = []
        seen = [False] * self.n
        for start in range(self.n):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n), dtype=int)
        P[list(self.images), list(range(self.n))] = 1
        return P


def multiplicative_permutation(n: int, m: int) -> Permutation:
    """The map ``j -> m*j mod n``; requires ``m`` to be a unit of Z_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(m, n) != 1:
        raise ValueError(f"m={m} is not a unit modulo {n} (unit required)")
    return Permutation(tuple((m * j) % n for j in range(n)))


# ---------------------------------------------------------------------------
# Cyclotomic sums


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_r, lowest degree first.

    Obtained by exact division of ``x**r - 1`` by ``Phi_d`` for every proper
    divisor ``d`` of ``r``.
    """
    if r < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (r - 1) + [1]
    for d in _divisors(r)[:-1]:
        num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic; remainder must vanish
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for k, dk in enumerate(den):
                num[i - dd + k] -= c * dk
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _reduction_matrix(r: int) -> np.ndarray:
    """Row k holds the coefficients of ``x**k mod Phi_r`` (shape r x phi(r))."""
    phi = cyclotomic_polynomial(r)
    d = len(phi) - 1
    R = np.zeros((r, d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for k in range(r):
        R[k] = cur
        # multiply by x and reduce the overflow term using x**d = -sum phi_i x**i
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        cur -= top * np.array(phi[:d], dtype=np.int64)
    R.setflags(write=False)
    return R


def _canonical_coeffs(coeffs: np.ndarray, r: int) -> np.ndarray:
    """Vectorised reduction over the last axis (length r), result padded to r."""
    R = _reduction_matrix(r)
    bound = int(np.abs(coeffs).max(initial=0)) * int(np.abs(R).sum(axis=0).max(initial=0))
    if bound < 2**52:
        # float BLAS is exact below 2**53
        red = np.rint(coeffs.astype(np.float64) @ R.astype(np.float64)).astype(np.int64)
    else:
        red = coeffs @ R
    out = np.zeros(coeffs.shape, dtype=np.int64)
    out[..., : red.shape[-1]] = red
    return out


@dataclass(frozen=True)
class CyclotomicSum:
    """``sum_j coeffs[j] * w**j`` with ``w = exp(2*pi*i/order)``.

    ``==`` is structural; use :meth:`equals` for equality as complex numbers.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, order: int) -> CyclotomicSum:
        return cls(order, (0,) * order)

    @classmethod
    def from_int(cls, value: int, order: int = 1) -> CyclotomicSum:
        return cls(order, (value,) + (0,) * (order - 1))

    @classmethod
    def from_exponents(cls, order: int, exponents: Iterable[int]) -> CyclotomicSum:
        """Sum of ``w**e`` over the given exponents (taken mod ``order``)."""
        counts = np.bincount(np.asarray(list(exponents), dtype=np.int64) % order, minlength=order)
        return cls(order, tuple(counts.tolist()))

    @classmethod
    def gaussian(cls, re: int, im: int) -> CyclotomicSum:
        """``re + im*i`` as an order-4 sum."""
        return cls(4, (re, im, 0, 0))

    def lift(self, order: int) -> CyclotomicSum:
        """Re-express over ``order``-th roots of unity (``order`` a multiple)."""
        if order % self.order:
            raise ValueError(f"{order} is not a multiple of {self.order}")
        step = order // self.order
        coeffs = [0] * order
        for j, c in enumerate(self.coeffs):
            coeffs[j * step] += c
        return CyclotomicSum(order, tuple(coeffs))

    def _common(self, other: CyclotomicSum) -> tuple[CyclotomicSum, CyclotomicSum]:
        r = math.lcm(self.order, other.order)
        return self.lift(r), other.lift(r)

    def __add__(self, other: CyclotomicSum | int) -> CyclotomicSum:
        if isinstance(other, int):
            other = CyclotomicSum.from_int(other, self.order)
        a, b = self._common(other)
        return CyclotomicSum(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicSum:
        return CyclotomicSum(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: CyclotomicSum | int) -> CyclotomicSum:
        return self + (-other)

    def __mul__(self, other: CyclotomicSum | int) -> CyclotomicSum:
        if isinstance(other, int):
            return CyclotomicSum(self.order, tuple(other * c for c in self.coeffs))
        a, b = self._common(other)
        r = a.order
        out = np.zeros(r, dtype=object)
        for j, cj in enumerate(a.coeffs):
            if cj:
                for k, ck in enumerate(b.coeffs):
                    if ck:
                        out[(j + k) % r] += cj * ck
        return CyclotomicSum(r, tuple(int(x) for x in out))

    __rmul__ = __mul__

    def conjugate(self) -> CyclotomicSum:
        r = self.order
        return CyclotomicSum(r, tuple(self.coeffs[(-j) % r] for j in range(r)))

    def canonical(self) -> CyclotomicSum:
        red = _canonical_coeffs(np.array(self.coeffs, dtype=np.int64), self.order)
        return CyclotomicSum(self.order, tuple(red.tolist()))

    def is_zero(self) -> bool:
        return not any(self.canonical().coeffs)

    def equals(self, other: CyclotomicSum | int) -> bool:
        """Exact equality of the complex numbers denoted."""
        return (self - other).is_zero()

    def value(self) -> complex:
        w = np.exp(2j * np.pi * np.arange(self.order) / self.order)
        return complex(np.dot(np.array(self.coeffs, dtype=float), w))

    def __complex__(self) -> complex:
        return self.value()

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            if j == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} (w = e^(2pi i/{self.order}))"


def cyclotomic_canonical(s: CyclotomicSum) -> CyclotomicSum:
    """Reduce modulo Phi_r; equal values iff equal canonical forms."""
    return s.canonical()


# ---------------------------------------------------------------------------
# Exponent matrices


class ExponentMatrix:
    """Matrix with entries ``w**exps[j, k] / sqrt(norm)``, ``w = e^{2 pi i/r}``.

    Instances are immutable and hashable.
    """

    __slots__ = ("_exps", "_root_order", "_norm")

    def __init__(self, exps, root_order: int, norm: int | None = None):
        arr = np.array(exps, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("exponent grid must be two-dimensional")
        if root_order < 1:
            raise ValueError("root_order must be positive")
        arr %= root_order
        arr.setflags(write=False)
        self._exps = arr
        self._root_order = int(root_order)
        self._norm = int(arr.shape[0] if norm is None else norm)

    @property
    def exps(self) -> np.ndarray:
        return self._exps

    @property
    def root_order(self) -> int:
        return self._root_order

    @property
    def norm(self) -> int:
        return self._norm

    @property
    def scale(self) -> float:
        return 1.0 / math.sqrt(self._norm)

    @property
    def shape(self) -> tuple[int, int]:
        return self._exps.shape

    @property
    def n(self) -> int:
        return self._exps.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentMatrix):
            return NotImplemented
        return (
            self._root_order == other._root_order
            and self._norm == other._norm
            and self._exps.shape == other._exps.shape
            and bool(np.array_equal(self._exps, other._exps))
        )

    def __hash__(self) -> int:
        return hash((self._root_order, self._norm, self._exps.shape, self._exps.tobytes()))

    def __repr__(self) -> str:
        rows = ",".join("(" + ",".join(map(str, r)) + ")" for r in self._exps.tolist())
        return f"ExponentMatrix(r={self._root_order}, norm={self._norm}, [{rows}])"

    def key(self) -> tuple:
        """Sort key: the flattened exponent grid."""
        return tuple(self._exps.ravel().tolist())

    def to_dense(self) -> np.ndarray:
        r = self._root_order
        return np.exp(2j * np.pi * self._exps / r) * self.scale

    def transpose(self) -> ExponentMatrix:
        return ExponentMatrix(self._exps.T, self._root_order, self._norm)

    def conj(self) -> ExponentMatrix:
        return ExponentMatrix(-self._exps, self._root_order, self._norm)

    def conj_transpose(self) -> ExponentMatrix:
        return ExponentMatrix(-self._exps.T, self._root_order, self._norm)

    def is_square(self) -> bool:
        return self._exps.shape[0] == self._exps.shape[1]

    def is_symmetric(self) -> bool:
        return self.is_square() and bool(np.array_equal(self._exps, self._exps.T))

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self._exps).copy()

    def with_exps(self, exps) -> ExponentMatrix:
        return ExponentMatrix(exps, self._root_order, self._norm)

    def permute(self, row_perm: Permutation, col_perm: Permutation) -> ExponentMatrix:
        """``P_row^T M P_col``: entry ``(j, k)`` becomes ``M[row(j), col(k)]``."""
        return permutation_matrix_action(self, row_perm, col_perm)


def fourier_matrix(n: int) -> ExponentMatrix:
    """The DFT matrix ``(1/sqrt n) e^{2 pi i jk/n}`` in exponent form."""
    if n < 1:
        raise ValueError("n must be positive")
    j = np.arange(n)
    return ExponentMatrix(np.outer(j, j) % n, n, n)


def permutation_matrix_action(
    M: ExponentMatrix, row_perm: Permutation, col_perm: Permutation
) -> ExponentMatrix:
    """Return ``P_row^T M P_col``, i.e. ``result[j, k] = M[row_perm(j), col_perm(k)]``."""
    rows, cols = M.shape
    if row_perm.n != rows or col_perm.n != cols:
        raise ValueError(
            f"permutation sizes ({row_perm.n}, {col_perm.n}) do not match matrix {M.shape}"
        )
    exps = M.exps[np.ix_(list(row_perm.images), list(col_perm.images))]
    return M.with_exps(exps)


def trace_exact(M: ExponentMatrix) -> CyclotomicSum:
    """Unscaled trace: coefficient j counts diagonal entries equal to ``w**j``.

    The numeric trace is ``M.scale * trace_exact(M).value()``.
    """
    if not M.is_square():
        raise ValueError(f"trace needs a square matrix, got {M.shape}")
    return CyclotomicSum.from_exponents(M.root_order, M.diagonal())


def exact_product(A: ExponentMatrix, B: ExponentMatrix) -> np.ndarray:
    """Canonical coefficient vectors of the unscaled product ``A @ B``.

    Returns an integer array of shape ``(rows, cols, r)``; entry ``[j, k]`` is
    the canonical form of ``sum_l w**(A[j,l] + B[l,k])``. The scaled product
    is this times ``A.scale * B.scale``.
    """
    if A.root_order != B.root_order:
        raise ValueError("root orders differ")
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    r = A.root_order
    rows, inner = A.shape
    cols = B.shape[1]
    sums = (A.exps[:, :, None] + B.exps[None, :, :]) % r  # (rows, inner, cols)
    flat = (np.arange(rows)[:, None, None] * cols + np.arange(cols)[None, None, :]) * r + sums
    counts = np.bincount(flat.ravel(), minlength=rows * cols * r).reshape(rows, cols, r)
    return _canonical_coeffs(counts, r)


def _is_scaled_identity(coeffs: np.ndarray, value: int) -> bool:
    n = coeffs.shape[0]
    target = np.zeros_like(coeffs)
    target[np.arange(n), np.arange(n), 0] = value
    return bool(np.array_equal(coeffs, target))


def is_hadamard(M, tol: float = 1e-9) -> bool:
    """Unitary with every entry of modulus ``1/sqrt(n)``.

    Exponent matrices are decided exactly (``tol`` is ignored); dense arrays
    use ``max|MM* - I| <= tol`` and ``max||m_jk| - 1/sqrt n| <= tol``.
    """
    if isinstance(M, ExponentMatrix):
        if not M.is_square():
            return False
        if M.norm != M.n:
            return False
        gram = exact_product(M, M.conj_transpose())
        return _is_scaled_identity(gram, M.n)
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    n = A.shape[0]
    if np.max(np.abs(np.abs(A) - 1 / math.sqrt(n))) > tol:
        return False
    return float(np.max(np.abs(A @ A.conj().T - np.eye(n)))) <= tol


def is_dephased(M, tol: float = 1e-9) -> bool:
    """First row and column all equal to ``1/sqrt(n)``."""
    if isinstance(M, ExponentMatrix):
        return M.is_square() and not M.exps[0].any() and not M.exps[:, 0].any()
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    target = 1 / math.sqrt(A.shape[0])
    edge = np.concatenate([A[0], A[:, 0]])
    return float(np.max(np.abs(edge - target))) <= tol
