"""Regenerate galerkin_reference.csv: the radial Galerkin matrix by mpmath quadrature.

The weak form
    A_jk = int (1-t)(1+t)^(beta+1) P~_j' P~_k' dt + (c^2/8) int (1+t)^(beta+1) P~_j P~_k dt
is assembled with Gauss-Jacobi rules built by Golub-Welsch at 40 digits, for
c = 5, K = 40 and beta in {0, 0.5, 1, 2.5, 5}. The band |j-k| <= 1 is stored
entry by entry, together with the largest entry outside it.

Run from the repository root: python3 tests/data/make_galerkin_reference.py
"""

import csv
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
BETAS = ["0", "0.5", "1", "2.5", "5"]
C = mp.mpf(5)
K = 40


def gauss_jacobi(n, a, b):
    """Nodes and weights for (1-t)^a (1+t)^b on [-1, 1] by Golub-Welsch."""
    J = mp.zeros(n, n)
    for i in range(n):
        s = 2 * i + a + b
        J[i, i] = (b - a) / (a + b + 2) if i == 0 else (b * b - a * a) / (s * (s + 2))
        if i + 1 < n:
            k = i + 1
            s = 2 * k + a + b
            J[i, i + 1] = J[i + 1, i] = mp.sqrt(
                4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1)))
    vals, vecs = mp.eigsy(J)
    mu0 = 2 ** (a + b + 1) * mp.gamma(a + 1) * mp.gamma(b + 1) / mp.gamma(a + b + 2)
    return [vals[i] for i in range(n)], [mu0 * vecs[0, i] ** 2 for i in range(n)]


def jacobi_all(nmax, a, b, t):
    """P_0..P_nmax^{(a,b)}(t) by the standard three-term recurrence."""
    p = [mp.mpf(1), (a + 1) + (a + b + 2) * (t - 1) / 2]
    for n in range(2, nmax + 1):
        s = 2 * n + a + b
        p.append(((s - 1) * (s * (s - 2) * t + a * a - b * b) * p[-1]
                  - 2 * (n + a - 1) * (n + b - 1) * s * p[-2]) / (2 * n * (n + a + b) * (s - 2)))
    return p[: nmax + 1]


def matrix(beta):
    h = [2 ** (beta + 1) / (2 * n + beta + 1) for n in range(K)]
    x, w = gauss_jacobi(K + 2, mp.mpf(1), beta + 1)
    stiff = mp.zeros(K, K)
    for t, wt in zip(x, w):
        q = jacobi_all(K - 2, mp.mpf(1), beta + 1, t)
        dp = [mp.mpf(0)] + [(n + beta + 1) / 2 * q[n - 1] / mp.sqrt(h[n]) for n in range(1, K)]
        for j in range(K):
            for k in range(K):
                stiff[j, k] += wt * dp[j] * dp[k]
    x, w = gauss_jacobi(K + 2, mp.mpf(0), beta)
    mass = mp.zeros(K, K)
    for t, wt in zip(x, w):
        p = [v / mp.sqrt(hn) for v, hn in zip(jacobi_all(K - 1, mp.mpf(0), beta, t), h)]
        for j in range(K):
            for k in range(K):
                mass[j, k] += wt * (1 + t) * p[j] * p[k]
    return stiff + C * C / 8 * mass


def main():
    out = Path(__file__).with_name("galerkin_reference.csv")
    with out.open("w", newline="\n") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["beta", "j", "k", "value"])
        for b in BETAS:
            A = matrix(mp.mpf(b))
            off = max(abs(A[j, k]) for j in range(K) for k in range(K) if abs(j - k) > 1)
            for j in range(K):
                for k in (j, j + 1):
                    if k < K:
                        wr.writerow([b, j, k, mp.nstr(A[j, k], 25, min_fixed=-1, max_fixed=-1)])
            wr.writerow([b, -1, -1, mp.nstr(off, 5, min_fixed=-1, max_fixed=-1)])


if __name__ == "__main__":
    main()
