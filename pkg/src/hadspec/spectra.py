"""Dense eigenvalues of small unitary matrices and spectrum bookkeeping.

The eigensolver is a plain complex Hessenberg reduction followed by
single-shift QR iteration with Wilkinson shifts and deflation.  It does not
call LAPACK; sizes here stay below 64.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exactalg import CyclotomicSum

__all__ = [
    "ConvergenceError",
    "eigenvalues",
    "det_lu",
    "unitarity_defect",
    "Spectrum",
    "spectrum_of",
    "spectrally_equivalent",
    "FourthRootMultiplicities",
    "fourth_root_multiplicities",
]

_EPS = np.finfo(float).eps


class ConvergenceError(ArithmeticError):
    """QR iteration ran out of its iteration budget."""


def unitarity_defect(M) -> float:
    A = np.asarray(M, dtype=complex)
    return float(np.max(np.abs(A @ A.conj().T - np.eye(A.shape[0]))))


def _hessenberg(A: np.ndarray) -> np.ndarray:
    H = np.array(A, dtype=complex)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        norm_x = math.hypot(abs(x[0]), tail)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * norm_x
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H


def _wilkinson(a: complex, b: complex, c: complex, d: complex) -> complex:
    half = 0.5 * (a - d)
    root = cmath.sqrt(half * half + b * c)
    mu1 = 0.5 * (a + d) + root
    mu2 = 0.5 * (a + d) - root
    return mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2


def eigenvalues(M, max_sweeps: int | None = None) -> list[complex]:
    """All eigenvalues of a square complex matrix.

    Raises :class:`ConvergenceError` when the QR iteration exceeds its budget
    (default ``100 * n`` QR sweeps).
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n == 0:
        return []
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    H = _hessenberg(A)
    scale = float(np.max(np.abs(H))) or 1.0
    budget = 100 * n if max_sweeps is None else max_sweeps
    eigs: list[complex] = [0j] * n
    hi = n - 1
    sweeps = 0
    stalled = 0
    while hi >= 0:
        # locate the start of the active unreduced block
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            if sub <= _EPS * (abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])) or sub <= _EPS * _EPS * scale:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = complex(H[hi, hi])
            hi -= 1
            stalled = 0
            continue
        if sweeps >= budget:
            raise ConvergenceError(f"QR iteration did not converge in {budget} sweeps (n={n})")
        sweeps += 1
        stalled += 1
        if stalled % 11 == 0:
            # exceptional shift to break cycles
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * cmath.exp(1j * stalled)
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        _qr_sweep(H, lo, hi, mu)
    return eigs


def _qr_sweep(H: np.ndarray, lo: int, hi: int, mu: complex) -> None:
    """One explicitly shifted QR step on the block ``H[lo:hi+1, lo:hi+1]``."""
    B = H[lo : hi + 1, lo : hi + 1]
    m = B.shape[0]
    idx = np.arange(m)
    B[idx, idx] -= mu
    rots = []
    for k in range(m - 1):
        a, b = B[k, k], B[k + 1, k]
        r = math.hypot(abs(a), abs(b))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = a / r, b / r
        G = np.array([[c.conjugate(), s.conjugate()], [-s, c]])
        B[k : k + 2, k:] = G @ B[k : k + 2, k:]
        B[k + 1, k] = 0.0
        rots.append(G)
    for k, G in enumerate(rots):
        top = min(k + 2, m - 1) + 1
        B[:top, k : k + 2] = B[:top, k : k + 2] @ G.conj().T
    B[idx, idx] += mu


def det_lu(M) -> complex:
    """Determinant by Gaussian elimination with partial pivoting."""
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    det = 1.0 + 0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if A[p, k] == 0:
            return 0j
        if p != k:
            A[[k, p]] = A[[p, k]]
            det = -det
        det *= A[k, k]
        A[k + 1 :, k:] -= np.outer(A[k + 1 :, k] / A[k, k], A[k, k:])
    return complex(det)


# ---------------------------------------------------------------------------
# Spectra on the unit circle


def _angle(z: complex) -> float:
    """Argument in [0, 2 pi), with values within rounding of 2 pi sent to 0."""
    a = cmath.phase(z) % (2 * math.pi)
    return 0.0 if a > 2 * math.pi - 1e-12 else a


def _arc(a: complex, b: complex) -> float:
    return abs(cmath.phase(a / b)) if a and b else abs(a - b)


@dataclass(frozen=True)
class Spectrum:
    """Clustered eigenvalues ``((value, multiplicity), ...)`` sorted by angle."""

    clusters: tuple[tuple[complex, int], ...]
    cluster_tol: float
    ambiguous: bool = False

    @property
    def n(self) -> int:
        return sum(m for _, m in self.clusters)

    def multiplicity(self, value: complex, tol: float | None = None) -> int:
        tol = self.cluster_tol if tol is None else tol
        return sum(m for v, m in self.clusters if _arc(v, value) <= tol)

    def values(self) -> list[complex]:
        """The multiset, expanded."""
        return [v for v, m in self.clusters for _ in range(m)]

    def total(self) -> complex:
        return sum((v * m for v, m in self.clusters), 0j)

    def product(self) -> complex:
        out = 1 + 0j
        for v, m in self.clusters:
            out *= v**m
        return out

    def fourth_roots(self, tol: float | None = None) -> FourthRootMultiplicities | None:
        """Multiplicities at 1, -1, i, -i, or None if anything lies elsewhere."""
        t = [self.multiplicity(z, tol) for z in (1, -1, 1j, -1j)]
        if sum(t) != self.n:
            return None
        return FourthRootMultiplicities(*t)


def spectrum_of(M, cluster_tol: float = 1e-6, *, eigs: list[complex] | None = None) -> Spectrum:
    """Eigenvalues projected to the unit circle and merged within ``cluster_tol``.

    Clusters chain together any eigenvalues whose arc distance is at most
    ``cluster_tol``; each cluster is represented by its circular mean.  The
    result is flagged ambiguous when two eigenvalues sit at a distance in
    ``(cluster_tol, 3*cluster_tol)``.
    """
    if eigs is None:
        eigs = eigenvalues(M)
    pts = [z / abs(z) if z else 1 + 0j for z in eigs]
    pts.sort(key=_angle)
    n = len(pts)
    if n == 0:
        return Spectrum((), cluster_tol)
    groups: list[list[complex]] = [[pts[0]]]
    for z in pts[1:]:
        if _arc(z, groups[-1][-1]) <= cluster_tol:
            groups[-1].append(z)
        else:
            groups.append([z])
    if len(groups) > 1 and _arc(groups[0][0], groups[-1][-1]) <= cluster_tol:
        groups[0] = groups.pop() + groups[0]
    ambiguous = any(
        cluster_tol < _arc(a, b) < 3 * cluster_tol for i, a in enumerate(pts) for b in pts[i + 1 :]
    )
    clusters = []
    for g in groups:
        s = sum(g)
        clusters.append((s / abs(s) if abs(s) > 0 else g[0], len(g)))
    clusters.sort(key=lambda c: _angle(c[0]))
    return Spectrum(tuple(clusters), cluster_tol, ambiguous)


def spectrally_equivalent(A: Spectrum, B: Spectrum, tol: float = 1e-8) -> bool:
    """Equal spectra with multiplicity, matching clusters within arc ``tol``."""
    if A.n != B.n:
        return False
    unmatched = list(B.clusters)
    for v, m in A.clusters:
        for i, (w, k) in enumerate(unmatched):
            if k == m and _arc(v, w) <= tol:
                del unmatched[i]
                break
        else:
            return False
    return not unmatched


# ---------------------------------------------------------------------------
# Matrices with M^4 = I


@dataclass(frozen=True)
class FourthRootMultiplicities:
    t1: int
    t_neg1: int
    t_i: int
    t_negi: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.t1, self.t_neg1, self.t_i, self.t_negi)

    @property
    def n(self) -> int:
        return sum(self.as_tuple())

    def trace(self) -> complex:
        return complex(self.t1 - self.t_neg1, self.t_i - self.t_negi)

    def trace_exact(self) -> CyclotomicSum:
        return CyclotomicSum.gaussian(self.t1 - self.t_neg1, self.t_i - self.t_negi)


def fourth_root_multiplicities(n: int, tr_M, tr_M2: int, tol: float = 1e-6) -> FourthRootMultiplicities:
    """Multiplicities of 1, -1, i, -i for a unitary M with ``M**4 = I``.

    Uses ``t_l = (1/4) sum_k l**(-k) tr(M**k)`` with ``tr(M**0) = n`` and
    ``tr(M**3) = conj(tr M)``.  ``tr_M`` may be a complex number or an exact
    :class:`CyclotomicSum`; in the latter case the solution is also checked
    exactly against it.
    """
    exact = tr_M if isinstance(tr_M, CyclotomicSum) else None
    t = complex(tr_M)
    traces = (complex(n), t, complex(tr_M2), t.conjugate())
    out = []
    for lam in (1, -1, 1j, -1j):
        val = sum(lam ** (-k) * tr for k, tr in enumerate(traces)) / 4
        k = round(val.real)
        if abs(val - k) > tol or k < 0:
            raise ValueError(
                f"non-integral multiplicity {val:.6g} for eigenvalue {lam}: "
                "M**4 != I or inconsistent traces"
            )
        out.append(k)
    result = FourthRootMultiplicities(*out)
    if exact is not None and not result.trace_exact().equals(exact):
        raise ValueError("multiplicities disagree with the exact trace")
    return result
