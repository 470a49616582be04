#!/usr/bin/env python3
"""Quadrature variances of the CV GHZ network with the tabulated gains.

Squeezed inputs are independent, so Var(sum_k c_k Q_k) = sum_j (c^T U)_j^2 var_j
with U the real passive mode matrix. Writes tests/golden/cv_ghz_variances.csv.
"""
import sys
import numpy as np

ROWS = [(0.25, 0.36, -0.27), (0.50, 0.68, -0.40), (0.75, 0.86, -0.46),
        (1.00, 0.95, -0.49), (1.50, 0.99, -0.50), (2.00, 1.00, -0.50)]


def bs(n, i, j, refl):
    m = np.eye(n)
    t, u = np.sqrt(refl), np.sqrt(1 - refl)
    m[i, i], m[i, j], m[j, i], m[j, j] = t, u, u, -t
    return m


def main(path):
    u = bs(3, 1, 2, 0.5) @ bs(3, 0, 1, 1 / 3)
    with open(path, "w") as fh:
        fh.write("r,h,g,var_u,var_v\n")
        for r, h, g in ROWS:
            vx = np.array([np.exp(-2 * r), np.exp(2 * r), np.exp(2 * r)])
            vp = np.array([np.exp(2 * r), np.exp(-2 * r), np.exp(-2 * r)])
            cu = np.array([1.0, h, h]) @ u
            cv = np.array([1.0, g, g]) @ u
            fh.write(f"{r:g},{h:g},{g:g},{cu**2 @ vx:.15g},{cv**2 @ vp:.15g}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "cv_ghz_variances.csv")
