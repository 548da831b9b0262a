"""Evaluate the closed-form radical expressions for the nonsymmetric 5x5 spectra at 50 digits.

Writes tests/golden_5x5.py.  Keys are the sorted core diagonal exponents;
values are the five eigenvalues as (re, im) pairs rounded to 15 digits.
The square root is the principal branch; the pair +/- covers both branches.
"""
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50
q = mp.exp(1j * mp.pi / 5)
s = mp.sqrt


def pair(center, radicand, denom):
    r = s(radicand) / denom
    return [center + r, center - r]


EXPRESSIONS = {
    (1, 1, 1, 1): [1, 1, -1] + pair(
        -mp.mpf(2) / 5 + 4 * q / 5 - q**2 / 5 + 3 * q**3 / 5, 35 - 25 * q + 20 * q**2 - 20 * q**3 + 25 * q**4, 5
    ),
    (4, 4, 4, 4): [1, 1, -1] + pair(
        mp.mpf(2) / 5 - 4 * q / 5 + q**2 / 5 - 3 * q**3 / 5, 35 - 25 * q + 20 * q**2 - 20 * q**3 + 25 * q**4, 5
    ),
    (2, 2, 2, 2): [1, -1, -1] + pair(
        q**3 / 5 - 2 * q / 5 + 3 * q**2 / 5 + mp.mpf(1) / 5, -5 * q + 5 * q**4 + 20 - 10 * q**3 + 10 * q**2, 5
    ),
    (3, 3, 3, 3): [1, -1, -1] + pair(
        -q**3 / 5 + 2 * q / 5 - 3 * q**2 / 5 - mp.mpf(1) / 5, -5 * q + 5 * q**4 + 20 - 10 * q**3 + 10 * q**2, 5
    ),
    (1, 2, 2, 4): [1, -1, q**2] + pair(
        q**3 / 10 - q / 5 - q**2 / 5 + mp.mpf(1) / 10, -5 * q + 5 - 90 * q**3, 10
    ),
    (1, 3, 3, 4): [1, -1, -q**3] + pair(
        2 * q**3 / 5 + q / 5 - 3 * q**2 / 10 - mp.mpf(1) / 10,
        -20 * q + 25 * q**4 + 25 - 20 * q**3 + 110 * q**2,
        10,
    ),
    (1, 1, 2, 3): [1, -1, q] + pair(
        3 * q**3 / 10 - mp.mpf(1) / 5 - q / 10 - q**2 / 10, 95 * q + 90 * q**3 - 5 * q**4 - 90 - 95 * q**2, 10
    ),
    (2, 3, 4, 4): [1, -1, -q**4] + pair(
        q**3 / 5 - mp.mpf(3) / 10 + q / 10 - 2 * q**2 / 5,
        -110 * q - 20 * q**3 + 20 * q**4 + 25 + 25 * q**2,
        10,
    ),
}


def main() -> None:
    lines = [
        '"""Nonsymmetric 5x5 spectra from the closed-form radical expressions, evaluated at 50 digits."""',
        "",
        "GOLDEN_5X5 = {",
    ]
    for key, vals in EXPRESSIONS.items():
        pts = ", ".join(f"({float(mp.re(mp.mpc(v))):.15g}, {float(mp.im(mp.mpc(v))):.15g})" for v in vals)
        lines.append(f"    {key}: [{pts}],")
    lines.append("}")
    out = Path(__file__).resolve().parent.parent / "tests" / "golden_5x5.py"
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
