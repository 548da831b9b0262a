"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a verification failed,
3 the eigensolver did not converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import had4, had5, numtheory, symperm, verify
from .exactalg import (
    ExponentMatrix,
    Permutation,
    is_dephased,
    is_hadamard,
    trace_exact,
)
from .records import encode_complex, encode_cyclotomic, encode_matrix, fmt_complex, load_matrix
from .spectra import ConvergenceError, det_lu, spectrum_of, unitarity_defect

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_NO_CONVERGENCE = 0, 1, 2, 3

CLUSTER_TOL = 1e-6


class UsageError(Exception):
    pass


@dataclass
class Result:
    """A command's structured payload plus a flat table view of it."""

    payload: dict
    columns: list[str]
    rows: list[dict]
    header: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing helpers

_ANGLE = re.compile(r"^([+-]?(?:\d+\.?\d*(?:e[+-]?\d+)?|\.\d+)?)(pi)?(?:/(\d+\.?\d*))?$")


def parse_angle(text: str) -> float:
    """Radians from ``1.57``, ``pi/2``, ``-3pi/4`` or ``2*pi/3``."""
    m = _ANGLE.match(text.strip().lower().replace(" ", "").replace("*", ""))
    coeff = m and m.group(1)
    if not m or not (coeff.lstrip("+-") or m.group(2)):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}; use e.g. 1.2, pi/2, -3pi/4")
    value = float(coeff + "1" if coeff in ("", "+", "-") else coeff)
    if m.group(2):
        value *= math.pi
    if m.group(3):
        value /= float(m.group(3))
    return value


def _perm(n: int, text: str | None) -> Permutation:
    if not text:
        return Permutation.identity(n)
    try:
        return Permutation.from_cycles(n, text)
    except ValueError as exc:
        raise UsageError(f"bad permutation {text!r}: {exc}") from exc


def _h4_matrix(theta: float, form: str) -> np.ndarray:
    rho = had4.unit(theta)
    if form == "sym":
        return had4.h4(rho)
    if form == "nonsym-plus":
        return had4.nonsym_matrix(rho, 1)
    if form == "nonsym-minus":
        return had4.nonsym_matrix(rho, -1)
    return had4.real_core_matrix(form)


def _matrix_from_args(args) -> tuple[object, str]:
    sources = [args.fourier is not None, args.h4 is not None or args.form is not None, args.file is not None]
    if sum(sources) != 1:
        raise UsageError("choose exactly one matrix source: --fourier N, --h4 THETA/--form, or --file PATH")
    if args.fourier is not None:
        n = args.fourier
        if n < 1:
            raise UsageError("--fourier needs N >= 1")
        try:
            M = symperm.fourier_times_mult(n, args.mult)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        M = M.permute(_perm(n, args.row_perm), _perm(n, args.col_perm))
        desc = f"F_{n} P_(.{args.mult % n})" if n > 1 else "F_1"
        if args.row_perm or args.col_perm:
            desc = f"P_{args.row_perm or '()'}^T {desc} P_{args.col_perm or '()'}"
        return M, desc
    if args.file is not None:
        try:
            return load_matrix(args.file), str(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from exc
    form = args.form or "sym"
    if form.lower().startswith("core-"):
        return _h4_matrix(0.0, form), form
    if args.h4 is None:
        raise UsageError(f"--form {form} needs --h4 THETA")
    return _h4_matrix(args.h4, form), f"{form} rho=e^(i*{args.h4:.12g})"


def _arg_over_pi(z: complex) -> str:
    """Argument of z over pi in (-1, 1]."""
    a = round(math.atan2(z.imag, z.real) / math.pi, 12) + 0.0
    return f"{1.0 if a == -1 else a:.12g}"


def _spectrum_rows(spec) -> list[dict]:
    return [
        {
            "eigenvalue": fmt_complex(v),
            "arg_over_pi": _arg_over_pi(v),
            "multiplicity": m,
        }
        for v, m in spec.clusters
    ]


def _encode_spectrum(spec) -> list[dict]:
    return [{"value": encode_complex(v), "multiplicity": m} for v, m in spec.clusters]


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args) -> Result:
    M, desc = _matrix_from_args(args)
    dense = M.to_dense() if isinstance(M, ExponentMatrix) else M
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise UsageError(f"matrix is not square: {dense.shape}")
    tol = args.tol
    hadamard = bool(is_hadamard(M, max(tol, 1e-9)))
    dephased = bool(is_dephased(M, max(tol, 1e-9)))
    symmetric = bool(M.is_symmetric()) if isinstance(M, ExponentMatrix) else bool(np.allclose(dense, dense.T, atol=tol))
    warnings = []
    if not hadamard:
        warnings.append("input is not a complex Hadamard matrix; analyzed anyway")
    spec = spectrum_of(dense, CLUSTER_TOL)
    if spec.ambiguous:
        warnings.append("eigenvalue clusters are close to the merge tolerance; multiplicities may be unreliable")
    trace = complex(np.trace(dense))
    payload = {
        "command": "spectrum",
        "source": desc,
        "n": int(dense.shape[0]),
        "hadamard": hadamard,
        "dephased": dephased,
        "symmetric": symmetric,
        "unitarity_defect": unitarity_defect(dense),
        "trace": encode_complex(trace),
        "determinant": encode_complex(det_lu(dense)),
        "eigenvalues": _encode_spectrum(spec),
        "warnings": warnings,
        "matrix": encode_matrix(M),
    }
    header = [f"source: {desc}", f"n: {dense.shape[0]}"]
    if isinstance(M, ExponentMatrix):
        exact = trace_exact(M).canonical()
        payload["trace_exact"] = {"sum": encode_cyclotomic(exact), "scale_norm": M.norm}
        header.append(f"trace: {fmt_complex(trace)} = ({exact}) / sqrt({M.norm})")
        header.append(f"trace * sqrt({M.norm}): {fmt_complex(trace * math.sqrt(M.norm))}")
    else:
        header.append(f"trace: {fmt_complex(trace)}")
    header.append(f"hadamard: {hadamard}  dephased: {dephased}  symmetric: {symmetric}")
    fr = spec.fourth_roots()
    if fr is not None:
        payload["fourth_root_multiplicities"] = dict(zip(("1", "-1", "i", "-i"), fr.as_tuple()))
        header.append("multiplicities (1, -1, i, -i): " + ", ".join(map(str, fr.as_tuple())))
    return Result(payload, ["eigenvalue", "arg_over_pi", "multiplicity"], _spectrum_rows(spec), header, warnings)


def cmd_gauss(args) -> Result:
    m, n = args.m, args.n
    if n < 1:
        raise UsageError("n must be positive")
    coprime = math.gcd(m, n) == 1
    method = args.method or ("both" if coprime else "direct")
    if method in ("closed", "both") and not coprime:
        raise UsageError(f"closed form needs gcd(m, n) = 1; gcd({m}, {n}) = {math.gcd(m, n)}")
    payload: dict = {"command": "gauss", "m": m, "n": n, "method": method}
    rows = []
    if method in ("direct", "both"):
        d = numtheory.gauss_sum_direct(m, n)
        payload["direct"] = {"value": encode_complex(d.numeric), "exact": encode_cyclotomic(d.exact.canonical())}
        rows.append({"method": "direct", "value": fmt_complex(d.numeric), "over_sqrt_n": fmt_complex(d.numeric / math.sqrt(n))})
    if method in ("closed", "both"):
        c = numtheory.gauss_sum_closed(m, n)
        payload["closed"] = {"value": encode_complex(c.numeric), "sqrt_coeff": list(c.sqrt_coeff)}
        rows.append({"method": "closed", "value": fmt_complex(c.numeric), "over_sqrt_n": fmt_complex(complex(*c.sqrt_coeff))})
    header = [f"g({m}; {n}) = sum_j exp(2 pi i {m} j^2 / {n})"]
    exit_code = EXIT_OK
    if method == "both":
        diff = abs(complex(payload["direct"]["value"]["re"], payload["direct"]["value"]["im"]) - c.numeric)
        payload["abs_diff"] = diff
        payload["agree"] = diff <= args.tol * max(n, 1)
        header.append(f"|direct - closed| = {diff:.3e}")
        if not payload["agree"]:
            exit_code = EXIT_FAILED
    return Result(payload, ["method", "value", "over_sqrt_n"], rows, header, exit_code=exit_code)


def cmd_jacobi(args) -> Result:
    a, b = args.a, args.b
    try:
        value = numtheory.jacobi(a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "jacobi", "a": a, "b": b, "jacobi": value}
    row = {"a": a, "b": b, "jacobi": value, "legendre": ""}
    if numtheory.is_prime(b):
        payload["legendre"] = numtheory.legendre(a, b)
        row["legendre"] = payload["legendre"]
    return Result(payload, ["a", "b", "jacobi", "legendre"], [row], [f"({a}/{b}) = {value}"])


def cmd_reciprocity(args) -> Result:
    try:
        r = numtheory.reciprocity_check(args.p, args.q, max(args.tol, 1e-12))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "reciprocity", "p": r.p, "q": r.q, "legendre_product": r.lhs, "trace_ratio": encode_complex(r.rhs), "agree": r.agree}
    row = {"p": r.p, "q": r.q, "legendre_product": r.lhs, "trace_ratio": fmt_complex(r.rhs), "agree": r.agree}
    header = [f"(p/q)(q/p) = {r.lhs}; tr(F_pq)/(tr F_p tr F_q) = {fmt_complex(r.rhs)}"]
    return Result(payload, list(row), [row], header, exit_code=EXIT_OK if r.agree else EXIT_FAILED)


def cmd_classify4(args) -> Result:
    M, desc = _matrix_from_args(argparse.Namespace(fourier=None, mult=1, row_perm=None, col_perm=None, **vars(args)))
    dense = M.to_dense() if isinstance(M, ExponentMatrix) else np.asarray(M, dtype=complex)
    if dense.shape != (4, 4):
        raise UsageError(f"classify4 needs a 4x4 matrix, got {dense.shape}")
    try:
        cls = had4.classify4(dense, max(args.tol, 1e-9) * 10)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    notes = []
    if cls.kind.is_real and args.form in ("sym", "nonsym-plus", "nonsym-minus", None) and args.h4 is not None:
        notes.append(f"rho = {fmt_complex(had4.unit(args.h4))} is real: the matrix degenerates to the real class {cls.kind.value}")
    predicted = spectrum_of(None, CLUSTER_TOL, eigs=had4.predicted_spectrum(cls))
    computed = spectrum_of(dense, CLUSTER_TOL)
    trace = complex(np.trace(dense))
    payload = {
        "command": "classify4",
        "source": desc,
        "class": cls.kind.value,
        "rho": None if cls.rho is None else encode_complex(cls.rho),
        "trace": encode_complex(trace),
        "predicted_spectrum": _encode_spectrum(predicted),
        "computed_spectrum": _encode_spectrum(computed),
        "degenerate_real": bool(notes),
        "notes": notes,
    }
    header = [
        f"source: {desc}",
        f"class: {cls.kind.value}" + ("" if cls.rho is None else f"  rho: {fmt_complex(cls.rho)}"),
        f"trace: {fmt_complex(trace)}",
    ]
    rows = [
        {"which": which, "eigenvalue": fmt_complex(v), "multiplicity": m}
        for which, spec in (("predicted", predicted), ("computed", computed))
        for v, m in spec.clusters
    ]
    return Result(payload, ["which", "eigenvalue", "multiplicity"], rows, header, notes)


def _grid(M: ExponentMatrix) -> str:
    return "/".join("".join(map(str, r)) for r in M.exps.tolist())


def cmd_enumerate5(args) -> Result:
    mats = had5.enumerate_dephased_5x5()
    classes = had5.verify_t_5x5(mats, args.tol)
    index = {M: i for i, c in enumerate(classes) for M in c.members}
    rows = []
    for M in mats:
        rows.append(
            {
                "exps": _grid(M),
                "trace_coeffs": " ".join(map(str, trace_exact(M).coeffs)),
                "diagonal": " ".join(map(str, M.diagonal()[1:].tolist())),
                "diagonal_class": had5.diagonal_class(M).value,
                "symmetric": M.is_symmetric(),
                "trace_class": index[M],
                "pairing_rows": " ".join(f"{a}-{b}" for a, b in had5.pairing_rows(M)),
            }
        )
    payload = {
        "command": "enumerate5",
        "candidates": len(had5.enumerate_candidates()),
        "distinct": len(mats),
        "trace_classes": len(classes),
        "matrices": rows,
    }
    header = [f"candidates: {payload['candidates']}  distinct: {len(mats)}  trace classes: {len(classes)}"]
    return Result(payload, list(rows[0]), rows, header)


def _mult_rows(n: int) -> list[dict]:
    rows = []
    for m in symperm.units(n):
        t = symperm.multiplicity_table(n, m)
        rows.append(
            {
                "n": n,
                "m": m,
                "t1": t.t1,
                "t-1": t.t_neg1,
                "ti": t.t_i,
                "t-i": t.t_negi,
                "trace": fmt_complex(t.trace()),
            }
        )
    return rows


def cmd_table(args) -> Result:
    kind = args.kind
    if kind == "example1":
        if args.N is not None:
            raise UsageError("table example1 takes no argument")
        rows = [r for r in _mult_rows(12) if r["m"] in verify.N12_MULTIPLICITIES]
        header = ["multiplicities of P_(.m)^T F_12 (equivalently F_12 P_(.m))"]
        return Result({"command": "table", "kind": kind, "rows": rows}, list(rows[0]), rows, header)
    if kind == "mult":
        if args.N is None or args.N < 1:
            raise UsageError("table mult needs N >= 1")
        rows = _mult_rows(args.N)
        header = [f"multiplicities of F_{args.N} P_(.m) over the units m"]
        return Result({"command": "table", "kind": kind, "n": args.N, "rows": rows}, list(rows[0]), rows, header)
    if args.N is not None:
        raise UsageError("table example2 takes no argument")
    classes = had5.verify_t_5x5(tol=args.tol)
    rows = []
    for i, c in enumerate(classes):
        rows.append(
            {
                "class": i,
                "trace_coeffs": " ".join(map(str, c.trace.coeffs)),
                "trace": fmt_complex(c.trace.value() / math.sqrt(5)),
                "diagonal": " ".join(map(str, c.diagonal[1:])),
                "diagonal_class": c.diagonal_class.value,
                "symmetric": c.symmetric,
                "members": len(c.members),
                "spectrum": " ".join(
                    f"{fmt_complex(v)}" + (f"^{m}" if m > 1 else "") for v, m in c.shared_spectrum.clusters
                ),
            }
        )
    payload = {
        "command": "table",
        "kind": kind,
        "rows": rows,
        "spectra": [_encode_spectrum(c.shared_spectrum) for c in classes],
    }
    header = ["trace classes of dephased 5x5 Hadamard matrices; trace_coeffs are w^0..w^4 with w = e^(2 pi i/5), trace scaled by 1/sqrt(5)"]
    return Result(payload, list(rows[0]), rows, header)


def cmd_verify(args) -> Result:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(name, args.n_max) for name in names]
    rows = [
        {"suite": r.suite, "claim": c.name, "passed": c.passed, "checked": c.checked, "detail": c.detail}
        for r in reports
        for c in r.claims
    ]
    notes = [f"[{r.suite}] {note}" for r in reports for note in r.notes]
    passed = all(r.passed for r in reports)
    total = len(rows)
    failed = sum(not row["passed"] for row in rows)
    payload = {
        "command": "verify",
        "suite": args.suite,
        "passed": passed,
        "claims": rows,
        "notes": notes,
    }
    header = [f"{total - failed}/{total} claims passed"]
    return Result(payload, ["suite", "claim", "passed", "checked", "detail"], rows, header, notes, EXIT_OK if passed else EXIT_FAILED)


# ---------------------------------------------------------------------------
# rendering


def _cell(v) -> str:
    return str(v)


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=result.columns, lineterminator="\n")
        w.writeheader()
        for row in result.rows:
            w.writerow({k: row.get(k, "") for k in result.columns})
        return buf.getvalue().rstrip("\n")
    lines = list(result.header)
    cells = [[_cell(row.get(c, "")) for c in result.columns] for row in result.rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(result.columns)]
    if lines:
        lines.append("")
    lines.append("  ".join(c.ljust(w) for c, w in zip(result.columns, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    if result.notes:
        lines.append("")
        lines += [f"note: {n}" for n in result.notes]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser, fourier: bool) -> None:
    if fourier:
        p.add_argument("--fourier", type=int, metavar="N", help="F_N P_(.M)")
        p.add_argument("--mult", type=int, default=1, metavar="M", help="multiplier, a unit mod N (default 1)")
        p.add_argument("--row-perm", metavar="CYCLES", help='0-indexed cycles, e.g. "(1 2)(3 4)"')
        p.add_argument("--col-perm", metavar="CYCLES")
    p.add_argument("--h4", type=parse_angle, metavar="THETA", help="4x4 family at rho = e^(i THETA), e.g. pi/2")
    p.add_argument(
        "--form",
        choices=["sym", "nonsym-plus", "nonsym-minus"] + [f"core-C{j}" for j in range(1, 7)],
        help="which 4x4 matrix (default sym)",
    )
    p.add_argument("--file", metavar="PATH", help="JSON matrix {n, scale, entries[, root_order, exps]}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)

    parser = _Parser(prog="hadspec", description="Spectra of complex Hadamard matrices.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues, trace and flags of one matrix")
    _add_source(p, fourier=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gauss", parents=[common], help="quadratic Gauss sum g(m; n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=["direct", "closed", "both"])
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi symbol (a/b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("reciprocity", parents=[common], help="quadratic reciprocity via Fourier traces")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("classify4", parents=[common], help="spectral class of a dephased 4x4 Hadamard matrix")
    _add_source(p, fourier=False)
    p.set_defaults(func=cmd_classify4)

    p = sub.add_parser("enumerate5", parents=[common], help="all dephased permuted-F_5 matrices")
    p.set_defaults(func=cmd_enumerate5)

    p = sub.add_parser("table", parents=[common], help="multiplicity and trace-class tables")
    p.add_argument("kind", choices=["example1", "example2", "mult"])
    p.add_argument("N", type=int, nargs="?")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=list(verify.SUITES) + ["all"])
    p.add_argument("--n-max", type=int, metavar="N")
    p.set_defaults(func=cmd_verify)
    return parser


_GLOBAL_DEFAULTS = {"format": "table", "tol": 1e-8, "out": None}


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Global flags are accepted before or after the subcommand."""
    args = build_parser().parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    return args


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"hadspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"hadspec: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    text = render(result, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
