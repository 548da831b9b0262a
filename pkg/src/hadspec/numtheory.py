"""Legendre/Jacobi symbols and quadratic Gauss sums."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .exactalg import CyclotomicSum, fourier_matrix, trace_exact

__all__ = [
    "is_prime",
    "factorize",
    "legendre",
    "jacobi",
    "GaussSumValue",
    "gauss_sum_direct",
    "gauss_sum_closed",
    "ReciprocityResult",
    "reciprocity_check",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd positive b.

    Uses the reciprocity iteration; agrees with the product of Legendre
    symbols over the factorisation of ``b``.
    """
    if b <= 0 or b % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive denominator, got {b}")
    a %= b
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


@dataclass(frozen=True)
class GaussSumValue:
    """Value of g(m; n).

    ``exact`` is set by direct summation; ``sqrt_coeff = (a, b)`` is set by
    the closed form and means ``g = (a + b i) * sqrt(n)``.
    """

    m: int
    n: int
    numeric: complex
    exact: CyclotomicSum | None = None
    sqrt_coeff: tuple[int, int] | None = None


def gauss_sum_direct(m: int, n: int) -> GaussSumValue:
    """``sum_{j<n} exp(2 pi i m j^2 / n)`` by direct summation (any m)."""
    if n < 1:
        raise ValueError("n must be positive")
    exact = CyclotomicSum.from_exponents(n, ((m * j * j) % n for j in range(n)))
    return GaussSumValue(m, n, exact.value(), exact=exact)


def gauss_sum_closed(m: int, n: int) -> GaussSumValue:
    """Closed-form g(m; n) for coprime m, n by the residue of n mod 4."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(m, n) != 1:
        raise ValueError(f"gcd({m}, {n}) != 1; use gauss_sum_direct")
    m %= n
    case = n % 4
    if case == 2:
        coeff = (0, 0)
    elif case == 0:
        # (n/m)(1 + i^m); m is odd here
        s = jacobi(n, m)
        coeff = (s, s) if m % 4 == 1 else (s, -s)
    elif case == 1:
        coeff = (jacobi(m, n), 0)
    else:
        coeff = (0, jacobi(m, n))
    numeric = complex(*coeff) * math.sqrt(n)
    return GaussSumValue(m, n, numeric, sqrt_coeff=coeff)


@dataclass(frozen=True)
class ReciprocityResult:
    p: int
    q: int
    lhs: int
    rhs: complex
    agree: bool


def _fourier_trace(n: int) -> complex:
    F = fourier_matrix(n)
    return F.scale * trace_exact(F).value()


def reciprocity_check(p: int, q: int, tol: float = 1e-9) -> ReciprocityResult:
    """Compare (p/q)(q/p) with tr(F_pq) / (tr(F_p) tr(F_q))."""
    for x in (p, q):
        if x == 2 or not is_prime(x):
            raise ValueError(f"{x} is not an odd prime")
    if p == q:
        raise ValueError("p and q must differ")
    lhs = legendre(p, q) * legendre(q, p)
    rhs = _fourier_trace(p * q) / (_fourier_trace(p) * _fourier_trace(q))
    return ReciprocityResult(p, q, lhs, rhs, cmath.isclose(lhs, rhs, rel_tol=0, abs_tol=tol))
