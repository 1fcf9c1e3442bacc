#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Compute (t+1)^2-point spherical t-designs by nonlinear least squares.

The residuals are the equal-weight quadrature errors of every monomial
x^a y^b z^c with 1 <= a+b+c <= t. A design is accepted once the largest
residual falls below 1e-14. Output goes to data/tdesign/t<t>.txt, one unit
vector per line.
"""
import argparse
import itertools
import math
import pathlib

import numpy as np
from scipy.optimize import least_squares


def exact_moment(a, b, c):
    if a % 2 or b % 2 or c % 2:
        return 0.0
    g = math.gamma
    return 2.0 * g((a + 1) / 2) * g((b + 1) / 2) * g((c + 1) / 2) / g((a + b + c + 3) / 2)


def exponents(t):
    return [e for e in itertools.product(range(t + 1), repeat=3) if 1 <= sum(e) <= t]


def to_xyz(angles):
    theta, phi = angles[0::2], angles[1::2]
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=1)


def residuals(angles, exps, targets):
    p = to_xyz(angles)
    n = p.shape[0]
    out = np.empty(len(exps))
    for i, (a, b, c) in enumerate(exps):
        out[i] = np.sum(p[:, 0] ** a * p[:, 1] ** b * p[:, 2] ** c) * (4 * np.pi / n) - targets[i]
    return out


def design(t, rng, max_starts=200):
    n = (t + 1) ** 2
    exps = exponents(t)
    targets = np.array([exact_moment(*e) for e in exps])
    for _ in range(max_starts):
        v = rng.normal(size=(n, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        x0 = np.empty(2 * n)
        x0[0::2] = np.arccos(np.clip(v[:, 2], -1, 1))
        x0[1::2] = np.arctan2(v[:, 1], v[:, 0])
        sol = least_squares(residuals, x0, args=(exps, targets), method="trf",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=20000)
        err = np.max(np.abs(residuals(sol.x, exps, targets)))
        if err < 1e-14:
            return to_xyz(sol.x), err
    raise RuntimeError(f"no design found for t={t}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "tdesign"))
    ap.add_argument("--tmax", type=int, default=10)
    ap.add_argument("--seed", type=int, default=20220323)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for t in range(1, args.tmax + 1):
        pts, err = design(t, rng)
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        with open(out / f"t{t}.txt", "w") as f:
            f.write(f"# spherical {t}-design, {len(pts)} points, max monomial error {err:.1e}\n")
            for p in pts:
                f.write(f"{p[0]:.17e} {p[1]:.17e} {p[2]:.17e}\n")
        print(f"t={t} n={len(pts)} err={err:.2e}")


if __name__ == "__main__":
    main()
