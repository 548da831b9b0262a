"""Dephased 4x4 Hadamard matrices.

Every dephased 4x4 Hadamard matrix is a row/column permutation of

    H(rho) = 1/2 [[1,    1,  1,    1],
                  [1,  rho, -1, -rho],
                  [1,   -1,  1,   -1],
                  [1, -rho, -1,  rho]]

with |rho| = 1.  The trace alone decides the spectrum; :func:`classify4`
reads the class off the trace and :func:`verify_t_main4` checks that claim
numerically over a grid of rho.
"""
from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .exactalg import Permutation, is_dephased, is_hadamard
from .spectra import Spectrum, spectrally_equivalent, spectrum_of

__all__ = [
    "unit",
    "Had4Kind",
    "Had4Class",
    "REAL_CORES",
    "h4",
    "real_core_matrix",
    "nonsym_matrix",
    "symmetric_variant",
    "nonsym_eigs_closed",
    "k_branches",
    "mobius_inverse",
    "predicted_spectrum",
    "classify4",
    "rho_grid",
    "dephased_orbit",
    "Main4Report",
    "verify_t_main4",
]


def unit(theta: float) -> complex:
    """``e^{i theta}``."""
    return cmath.exp(1j * theta)


def _check_unit(z: complex, what: str = "rho") -> complex:
    z = complex(z)
    if abs(abs(z) - 1) > 1e-12:
        raise ValueError(f"{what} must have modulus 1, got |{what}|={abs(z)}")
    return z


class Had4Kind(enum.Enum):
    REAL_C1 = "real_C1"
    REAL_C2C3 = "real_C2C3"
    REAL_C4C5C6 = "real_C4C5C6"
    SYMMETRIC_PLUS = "symmetric_plus"
    SYMMETRIC_MINUS = "symmetric_minus"
    NONSYM_PLUS = "nonsym_plus"
    NONSYM_MINUS = "nonsym_minus"

    @property
    def is_real(self) -> bool:
        return self.value.startswith("real")


_REAL_TRACE = {Had4Kind.REAL_C1: 2.0, Had4Kind.REAL_C2C3: -1.0, Had4Kind.REAL_C4C5C6: 0.0}


@dataclass(frozen=True)
class Had4Class:
    """Spectral class of a dephased 4x4 Hadamard matrix.

    For the non-real kinds ``rho`` is normalised to the upper half plane; the
    sign of the diagonal entry is carried by the ``_plus``/``_minus`` kind.
    """

    kind: Had4Kind
    rho: complex | None = None

    @classmethod
    def normalized(cls, kind: Had4Kind, rho: complex | None) -> Had4Class:
        if kind.is_real:
            return cls(kind)
        if rho is not None and rho.imag < 0:
            flip = {
                Had4Kind.SYMMETRIC_PLUS: Had4Kind.SYMMETRIC_MINUS,
                Had4Kind.SYMMETRIC_MINUS: Had4Kind.SYMMETRIC_PLUS,
                Had4Kind.NONSYM_PLUS: Had4Kind.NONSYM_MINUS,
                Had4Kind.NONSYM_MINUS: Had4Kind.NONSYM_PLUS,
            }
            return cls(flip[kind], -rho)
        return cls(kind, rho)

    def trace(self) -> complex:
        if self.kind.is_real:
            return complex(_REAL_TRACE[self.kind])
        rho = self.rho
        return {
            Had4Kind.SYMMETRIC_PLUS: 1 + rho,
            Had4Kind.SYMMETRIC_MINUS: 1 - rho,
            Had4Kind.NONSYM_PLUS: (-1 + rho) / 2,
            Had4Kind.NONSYM_MINUS: (-1 - rho) / 2,
        }[self.kind]

    def same_as(self, other: Had4Class, tol: float = 1e-9) -> bool:
        if self.kind != other.kind:
            return False
        if self.kind.is_real:
            return True
        return abs(self.rho - other.rho) <= tol


# cores without the 1/2 factor
REAL_CORES: dict[str, tuple[tuple[int, ...], ...]] = {
    "C1": ((1, -1, -1), (-1, 1, -1), (-1, -1, 1)),
    "C2": ((-1, 1, -1), (-1, -1, 1), (1, -1, -1)),
    "C3": ((-1, -1, 1), (1, -1, -1), (-1, 1, -1)),
    "C4": ((-1, 1, -1), (1, -1, -1), (-1, -1, 1)),
    "C5": ((-1, -1, 1), (-1, 1, -1), (1, -1, -1)),
    "C6": ((1, -1, -1), (-1, -1, 1), (-1, 1, -1)),
}


def _from_core(core) -> np.ndarray:
    M = np.ones((4, 4), dtype=complex)
    M[1:, 1:] = np.asarray(core, dtype=complex)
    return M / 2


def h4(rho: complex) -> np.ndarray:
    rho = _check_unit(rho)
    return _from_core([[rho, -1, -rho], [-1, 1, -1], [-rho, -1, rho]])


def real_core_matrix(which: str) -> np.ndarray:
    """The dephased matrix whose core is one of ``C1`` ... ``C6``."""
    key = which.upper().removeprefix("CORE-")
    if key not in REAL_CORES:
        raise ValueError(f"unknown real core {which!r}; expected one of {sorted(REAL_CORES)}")
    return _from_core(REAL_CORES[key])


def nonsym_matrix(rho: complex, sign: int = 1) -> np.ndarray:
    """``H1(sign*rho)``: the nonsymmetric representative with trace ``(-1 + sign*rho)/2``."""
    rho = _check_unit(rho)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x = sign * rho
    return _from_core([[-1, 1, -1], [x, -1, -x], [-x, -1, x]])


def symmetric_variant(rho: complex) -> np.ndarray:
    """Symmetric matrix with the core's 1 at position (1, 1) and rho elsewhere on the diagonal.

    Conjugating by the transposition (1 2) turns it into ``h4(rho)``.
    """
    swap = Permutation.from_cycles(4, "(1 2)")
    P = swap.matrix()
    return P @ h4(rho) @ P.T


def k_branches(rho: complex) -> tuple[complex, complex]:
    """``(-(1+rho) +/- sqrt(1 - 14 rho + rho^2)) / 4`` with the principal root."""
    root = cmath.sqrt(1 - 14 * rho + rho * rho)
    return ((-(1 + rho) + root) / 4, (-(1 + rho) - root) / 4)


def nonsym_eigs_closed(rho: complex, sign: int = 1) -> list[complex]:
    """Closed-form eigenvalues of ``nonsym_matrix(rho, sign)``.

    With ``x = sign*rho`` the characteristic polynomial factors as
    ``(l - 1)(l + 1)(2 l^2 + (1 - x) l - 2 x)``, giving
    ``{1, -1, (-(1 - x) +/- sqrt(1 + 14 x + x^2)) / 4}``; this is
    :func:`k_branches` evaluated at ``-x``.
    """
    rho = _check_unit(rho)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    kp, km = k_branches(-sign * rho)
    return [1 + 0j, -1 + 0j, kp, km]


def mobius_inverse(k: complex) -> complex:
    """The rho on the unit circle with ``k`` among :func:`k_branches` (rho)."""
    k = _check_unit(k, "k")
    return -k * (k + 0.5) / (1 + 0.5 * k)


def predicted_spectrum(cls: Had4Class) -> list[complex]:
    if cls.kind is Had4Kind.REAL_C1:
        return [1, 1, 1, -1]
    if cls.kind is Had4Kind.REAL_C2C3:
        return [1, -1, unit(2 * math.pi / 3), unit(4 * math.pi / 3)]
    if cls.kind is Had4Kind.REAL_C4C5C6:
        return [1, 1, -1, -1]
    if cls.kind is Had4Kind.SYMMETRIC_PLUS:
        return [1, 1, -1, cls.rho]
    if cls.kind is Had4Kind.SYMMETRIC_MINUS:
        return [1, 1, -1, -cls.rho]
    sign = 1 if cls.kind is Had4Kind.NONSYM_PLUS else -1
    return nonsym_eigs_closed(cls.rho, sign)


def classify4(M, tol: float = 1e-7) -> Had4Class:
    """Class of a dephased 4x4 Hadamard matrix, read from its trace.

    The predicted spectrum of the class is checked against the eigensolver;
    a mismatch beyond ``tol`` raises.
    """
    A = np.asarray(M, dtype=complex)
    if A.shape != (4, 4):
        raise ValueError(f"classify4 needs a 4x4 matrix, got {A.shape}")
    if not is_hadamard(A, 1e-9):
        raise ValueError("matrix is not Hadamard")
    if not is_dephased(A, 1e-9):
        raise ValueError("matrix is not dephased")
    t = complex(np.trace(A))
    cls = None
    if abs(t.imag) <= tol:
        for kind, value in _REAL_TRACE.items():
            if abs(t.real - value) <= tol:
                cls = Had4Class(kind)
                break
    else:
        x_sym = t - 1
        x_non = 2 * t + 1
        if abs(abs(x_sym) - 1) <= tol:
            cls = Had4Class.normalized(Had4Kind.SYMMETRIC_PLUS, x_sym / abs(x_sym))
        elif abs(abs(x_non) - 1) <= tol:
            cls = Had4Class.normalized(Had4Kind.NONSYM_PLUS, x_non / abs(x_non))
    if cls is None:
        raise ValueError(f"trace {t:.12g} matches no 4x4 class")
    if not cls.kind.is_real:
        sign = 1 if cls.kind in (Had4Kind.SYMMETRIC_PLUS, Had4Kind.NONSYM_PLUS) else -1
        diag = np.diagonal(A) * 2
        if np.min(np.abs(diag - sign * cls.rho)) > 1e-6:
            raise ValueError("trace class disagrees with the diagonal entries")
    predicted = spectrum_of(None, eigs=predicted_spectrum(cls))
    computed = spectrum_of(A)
    if not spectrally_equivalent(predicted, computed, tol):
        raise ValueError(f"predicted spectrum for {cls.kind.value} does not match the eigensolver")
    return cls


# ---------------------------------------------------------------------------
# Sweep over the whole family


def rho_grid(count: int = 32) -> list[complex]:
    """``count`` equally spaced points plus the eighth roots of unity."""
    pts = [unit(2 * math.pi * (j + 0.5) / count) for j in range(count)]
    pts += [unit(2 * math.pi * j / 8) for j in range(8)]
    return pts


def dephased_orbit(M: np.ndarray) -> list[np.ndarray]:
    """Distinct dephased matrices ``P_t^T M P_s`` and their transposes."""
    seen: dict[bytes, np.ndarray] = {}
    perms = [np.array(p) for p in itertools.permutations(range(4))]
    for X in (M, M.T):
        for t in perms:
            Xt = X[t]
            if not np.allclose(Xt[0], 0.5, atol=1e-12):
                continue
            for s in perms:
                Y = Xt[:, s]
                if not np.allclose(Y[:, 0], 0.5, atol=1e-12):
                    continue
                key = np.round(Y, 10).tobytes()
                seen.setdefault(key, Y)
    return list(seen.values())


@dataclass
class Main4Report:
    samples: int
    matrices: int = 0
    groups: int = 0
    comparisons: int = 0
    counterexamples: list[str] = field(default_factory=list)
    min_separation: float = math.inf

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_t_main4(samples: int = 32, tol: float = 1e-8) -> Main4Report:
    """Equal trace implies equal spectrum over the dephased orbits of H(+-rho).

    Also records the smallest distance between a symmetric trace ``1 +- rho``
    and a nonsymmetric trace ``(-1 +- rho)/2`` over the non-real samples.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    report = Main4Report(samples)
    for rho in rho_grid(samples):
        mats: list[np.ndarray] = []
        for base in (h4(rho), h4(-rho)):
            mats.extend(dephased_orbit(base))
        report.matrices += len(mats)
        groups: list[tuple[complex, list[Spectrum]]] = []
        for A in mats:
            t = complex(np.trace(A))
            spec = spectrum_of(A)
            for gt, specs in groups:
                if abs(gt - t) <= 1e-9:
                    specs.append(spec)
                    break
            else:
                groups.append((t, [spec]))
        report.groups += len(groups)
        for t, specs in groups:
            for other in specs[1:]:
                report.comparisons += 1
                if not spectrally_equivalent(specs[0], other, tol):
                    report.counterexamples.append(f"rho={rho:.6f} trace={t:.6f}")
        if abs(rho.imag) > 1e-12:
            for a in (1, -1):
                for b in (1, -1):
                    report.min_separation = min(
                        report.min_separation, abs((1 + a * rho) - (-1 + b * rho) / 2)
                    )
    if report.min_separation <= 1e-9:
        report.counterexamples.append("symmetric and nonsymmetric traces coincide")
    return report
