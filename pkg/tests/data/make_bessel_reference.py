"""Regenerate bessel_reference.csv from mpmath at 40 significant digits.

Run from the repository root: python3 tests/data/make_bessel_reference.py
"""

import csv
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
NUS = ["0", "0.5", "1", "1.5", "2.5", "3", "5.25", "10", "20", "35.5", "50"]
XS = ["1e-6", "0.01", "0.3", "1", "2.5", "7", "12", "19.5", "33", "50", "80", "150", "400"]


def main():
    out = Path(__file__).with_name("bessel_reference.csv")
    with out.open("w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["nu", "x", "expected", "abs_tol"])
        for nu in NUS:
            for x in XS:
                val = mp.besselj(mp.mpf(nu), mp.mpf(x))
                scale = max(abs(val), mp.mpf(1) / mp.sqrt(mp.mpf(x) + 1))
                tol = mp.mpf("1e-13") * scale
                w.writerow([nu, x, mp.nstr(val, 25, min_fixed=-1, max_fixed=-1),
                            mp.nstr(tol, 3, min_fixed=-1, max_fixed=-1)])


if __name__ == "__main__":
    main()
