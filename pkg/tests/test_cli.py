import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadspec import had4
from hadspec.cli import main, parse_angle
from hadspec.exactalg import CyclotomicSum, ExponentMatrix, fourier_matrix
from hadspec.records import (
    decode_complex,
    decode_cyclotomic,
    decode_matrix,
    encode_complex,
    encode_cyclotomic,
    encode_matrix,
    fmt_complex,
    save_matrix,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(finite, finite)
def test_complex_round_trip(re, im):
    z = complex(re, im)
    assert decode_complex(json.loads(json.dumps(encode_complex(z)))) == z


@given(st.integers(1, 30).flatmap(lambda r: st.lists(st.integers(-9, 9), min_size=r, max_size=r).map(lambda c: CyclotomicSum(r, c))))
def test_cyclotomic_round_trip(s):
    assert decode_cyclotomic(json.loads(json.dumps(encode_cyclotomic(s)))) == s


@given(st.integers(1, 7), st.integers(1, 9), st.integers(0, 10**6))
def test_matrix_round_trip(n, r, seed):
    E = np.random.default_rng(seed).integers(0, r, (n, n))
    M = ExponentMatrix(E, r)
    assert decode_matrix(json.loads(json.dumps(encode_matrix(M)))) == M
    A = M.to_dense()
    dense = {k: v for k, v in encode_matrix(A).items()}
    assert np.array_equal(decode_matrix(json.loads(json.dumps(dense))), A)


def test_matrix_without_exps_uses_scale():
    rec = {"n": 2, "scale": 0.5, "entries": [[{"re": 1, "im": 0}] * 2] * 2}
    assert np.allclose(decode_matrix(rec), 0.5)
    with pytest.raises(ValueError):
        decode_matrix({"n": 3, "scale": 1, "entries": [[{"re": 1, "im": 0}] * 2] * 2})


def test_fmt_complex():
    assert fmt_complex(1 + 1e-17j) == "1"
    assert fmt_complex(-1 - 1j) == "-1-1i"
    assert fmt_complex(math.pi) == "3.14159265359"


@pytest.mark.parametrize("text,value", [("pi/2", math.pi / 2), ("-3pi/4", -3 * math.pi / 4), ("2*pi/3", 2 * math.pi / 3), ("0", 0.0), ("1.5", 1.5), ("pi", math.pi)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_spectrum_fourier_12_mult_5(capsys):
    code, data = run_json(capsys, "spectrum", "--fourier", "12", "--mult", "5")
    assert code == 0
    assert data["fourth_root_multiplicities"] == {"1": 3, "-1": 4, "i": 2, "-i": 3}
    assert decode_complex(data["trace"]) == pytest.approx(-1 - 1j)
    assert data["trace_exact"]["scale_norm"] == 12
    assert data["hadamard"] and data["dephased"] and data["symmetric"]
    exact = decode_cyclotomic(data["trace_exact"]["sum"])
    assert exact.value() / math.sqrt(12) == pytest.approx(-1 - 1j)


def test_spectrum_core_c1(capsys):
    code, data = run_json(capsys, "spectrum", "--h4", "0", "--form", "core-C1")
    assert code == 0
    assert data["fourth_root_multiplicities"] == {"1": 3, "-1": 1, "i": 0, "-i": 0}


def test_spectrum_f5_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--fourier", "5")
    assert code == 0
    assert "multiplicities (1, -1, i, -i): 2, 1, 1, 1" in out


def test_spectrum_file_and_warning(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"n": 2, "scale": 1, "entries": [[{"re": 1, "im": 0}, {"re": 0, "im": 0}], [{"re": 0, "im": 0}, {"re": 2, "im": 0}]]}))
    code, data = run_json(capsys, "spectrum", "--file", str(path))
    assert code == 0
    assert not data["hadamard"]
    assert data["warnings"]
    save_matrix(had4.h4(1j), tmp_path / "h.json")
    code, data = run_json(capsys, "classify4", "--file", str(tmp_path / "h.json"))
    assert code == 0 and data["class"] == "symmetric_plus"


def test_spectrum_exact_file(capsys, tmp_path):
    path = tmp_path / "f.json"
    save_matrix(fourier_matrix(7), path)
    code, data = run_json(capsys, "spectrum", "--file", str(path))
    assert code == 0 and "trace_exact" in data


def test_spectrum_json_payload_round_trips(capsys):
    code, out, _ = run(capsys, "--format", "json", "spectrum", "--fourier", "8", "--mult", "3", "--row-perm", "(1 2)", "--col-perm", "(1 2)")
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data
    M = decode_matrix(data["matrix"])
    assert isinstance(M, ExponentMatrix) and M.is_symmetric()


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--fourier", "6", "--row-perm", "(1 2"],
        ["spectrum", "--fourier", "6", "--mult", "2"],
        ["spectrum"],
        ["spectrum", "--fourier", "5", "--h4", "0"],
        ["gauss", "3", "6", "--method", "closed"],
        ["jacobi", "1", "4"],
        ["reciprocity", "3", "3"],
        ["classify4", "--h4", "pi/2", "--form", "core-C7"],
        ["table", "mult"],
        ["verify", "nonsense"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "spectrum", "--file", str(tmp_path / "none.json"))
    assert code == 1


def test_gauss(capsys):
    code, data = run_json(capsys, "gauss", "1", "5", "--method", "both")
    assert code == 0
    assert data["abs_diff"] < 1e-12
    assert decode_complex(data["closed"]["value"]) == pytest.approx(math.sqrt(5))
    code, data = run_json(capsys, "gauss", "3", "6", "--method", "direct")
    assert code == 0 and "closed" not in data
    assert abs(decode_complex(data["direct"]["value"]) - sum(np.exp(2j * np.pi * 3 * j * j / 6) for j in range(6))) < 1e-12
    code, data = run_json(capsys, "gauss", "1", "2")
    assert abs(decode_complex(data["direct"]["value"])) < 1e-12


def test_jacobi_and_reciprocity(capsys):
    code, data = run_json(capsys, "jacobi", "2", "7")
    assert code == 0 and data["jacobi"] == 1 and data["legendre"] == 1
    code, data = run_json(capsys, "reciprocity", "3", "7")
    assert code == 0 and data["agree"] and data["legendre_product"] == -1


def test_classify4(capsys):
    code, data = run_json(capsys, "classify4", "--h4", "pi/2")
    assert data["class"] == "symmetric_plus"
    assert decode_complex(data["rho"]) == pytest.approx(1j)
    code, data = run_json(capsys, "classify4", "--form", "core-C2")
    assert data["class"] == "real_C2C3"
    assert decode_complex(data["trace"]) == pytest.approx(-1)
    code, data = run_json(capsys, "classify4", "--h4", "pi", "--form", "nonsym-plus")
    assert data["class"] == "real_C2C3" and data["degenerate_real"]


def test_tables(capsys):
    code, data = run_json(capsys, "table", "example1")
    assert [(r["m"], r["t1"], r["t-1"], r["ti"], r["t-i"]) for r in data["rows"]] == [
        (1, 4, 3, 3, 2),
        (5, 3, 4, 2, 3),
        (7, 3, 4, 3, 2),
        (11, 4, 3, 2, 3),
    ]
    code, data = run_json(capsys, "table", "mult", "8")
    assert [r["m"] for r in data["rows"]] == [1, 3, 5, 7]
    code, out, _ = run(capsys, "--format", "csv", "table", "example2")
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 11
    assert len({len(r) for r in rows}) == 1
    assert rows[1][1] == "1 2 0 0 2"


def test_enumerate5(capsys):
    code, data = run_json(capsys, "enumerate5")
    assert code == 0
    assert (data["candidates"], data["distinct"], data["trace_classes"]) == (576, 144, 10)


def test_verify_reports(capsys):
    code, data = run_json(capsys, "verify", "t-5x5")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "verify", "spectrum-table", "--n-max", "16")
    assert code == 0
    assert any("4k, 4l+1, (n/m)=-1" in n for n in data["notes"])
    code, out, _ = run(capsys, "verify", "reciprocity", "--n-max", "13")
    assert code == 0 and "claims passed" in out


def test_verify_deterministic(capsys):
    _, a = run(capsys, "--format", "csv", "verify", "pairup")[:2]
    _, b = run(capsys, "--format", "csv", "verify", "pairup")[:2]
    assert a == b


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.txt"
    code, out, _ = run(capsys, "jacobi", "2", "7", "--out", str(target))
    assert code == 0 and out == ""
    assert "(2/7) = 1" in target.read_text()


def test_failed_verification_exit_2(capsys, monkeypatch):
    from hadspec import verify

    def failing(n):
        rep = verify.SuiteReport("t-5x5")
        rep.add("forced", False)
        return rep

    monkeypatch.setitem(verify.SUITES, "t-5x5", failing)
    code, _, _ = run(capsys, "verify", "t-5x5")
    assert code == 2


def test_nonconvergence_exit_3(capsys, monkeypatch):
    from hadspec import cli, spectra

    def boom(*a, **k):
        raise spectra.ConvergenceError("no")

    monkeypatch.setattr(cli, "spectrum_of", boom)
    code, _, err = run(capsys, "spectrum", "--fourier", "5")
    assert code == 3
