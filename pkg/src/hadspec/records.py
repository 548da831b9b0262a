"""JSON-ready encodings of complex numbers, cyclotomic sums and matrices.

``decode_*`` inverts ``encode_*`` exactly, so ``json.loads(json.dumps(x))``
round-trips through these helpers.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exactalg import CyclotomicSum, ExponentMatrix

SIG_DIGITS = 12


def fmt_complex(z: complex, digits: int = SIG_DIGITS) -> str:
    z = complex(z)
    re = 0.0 if abs(z.real) < 10.0 ** -(digits + 2) else z.real
    im = 0.0 if abs(z.imag) < 10.0 ** -(digits + 2) else z.imag
    if im == 0:
        return f"{re:.{digits}g}"
    if re == 0:
        return f"{im:.{digits}g}i"
    return f"{re:.{digits}g}{'+' if im > 0 else '-'}{abs(im):.{digits}g}i"


def encode_complex(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def decode_complex(d: dict) -> complex:
    return complex(float(d["re"]), float(d["im"]))


def encode_cyclotomic(s: CyclotomicSum) -> dict:
    return {"order": s.order, "coeffs": list(s.coeffs)}


def decode_cyclotomic(d: dict) -> CyclotomicSum:
    return CyclotomicSum(int(d["order"]), tuple(int(c) for c in d["coeffs"]))


def encode_matrix(M) -> dict:
    """Exponent matrices keep ``root_order``/``exps``; dense ones store entries only."""
    if isinstance(M, ExponentMatrix):
        return {
            "n": M.n,
            "scale": M.scale,
            "norm": M.norm,
            "root_order": M.root_order,
            "exps": M.exps.tolist(),
            "entries": [[encode_complex(z) for z in row] for row in M.to_dense() / M.scale],
        }
    A = np.asarray(M, dtype=complex)
    return {"n": A.shape[0], "scale": 1.0, "entries": [[encode_complex(z) for z in row] for row in A]}


def decode_matrix(d: dict):
    """An :class:`ExponentMatrix` when exact data is present, else a dense array."""
    try:
        if "exps" in d and "root_order" in d:
            exps = np.asarray(d["exps"], dtype=np.int64)
            n = int(d.get("n", exps.shape[0]))
            norm = d.get("norm")
            if norm is None:
                scale = float(d.get("scale", 1 / math.sqrt(n)))
                norm = round(1 / scale**2)
                if not math.isclose(1 / math.sqrt(norm), scale, rel_tol=1e-12):
                    raise ValueError(f"scale {scale} is not 1/sqrt(integer)")
            M = ExponentMatrix(exps, int(d["root_order"]), int(norm))
            if M.shape != (n, n):
                raise ValueError(f"exps has shape {M.shape}, expected ({n}, {n})")
            return M
        entries = d["entries"]
        A = np.array([[decode_complex(z) for z in row] for row in entries], dtype=complex)
        A *= float(d.get("scale", 1.0))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix record: {exc}") from exc
    n = int(d.get("n", A.shape[0]))
    if A.ndim != 2 or A.shape != (n, n):
        raise ValueError(f"expected a square {n}x{n} matrix, got shape {A.shape}")
    return A


def load_matrix(path: str | Path):
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return decode_matrix(data)


def save_matrix(M, path: str | Path) -> None:
    Path(path).write_text(json.dumps(encode_matrix(M), indent=1))
