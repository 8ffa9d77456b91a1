"""Independent numerical oracles used by the test suite.

These deliberately avoid the library under test (and scipy.special): Bessel
functions come from the defining power series, their zeros from bracketing
plus bisection, and curvatures from fresh central differences of the
generator.  Reference constants derived from them are frozen in the tests.
"""

from __future__ import annotations

import math

import numpy as np


def bessel_j(m: int, x: float) -> float:
    """J_m(x) by power series: sum_k (-1)^k (x/2)^(m+2k) / (k! (m+k)!)."""
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    total = 0.0
    log_half_x = math.log(x / 2.0)
    for k in range(250):
        term = math.exp((m + 2 * k) * log_half_x
                        - math.lgamma(k + 1) - math.lgamma(m + k + 1))
        if k % 2:
            term = -term
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)) and 2 * k > x:
            break
    return total


def bessel_zero(m: int, k: int) -> float:
    """k-th positive zero of J_m by scan-and-bisect (no library calls)."""
    x, step = 1e-6, 0.05
    found = 0
    f0 = bessel_j(m, x)
    while x < 1e3:
        x1 = x + step
        f1 = bessel_j(m, x1)
        if f0 * f1 < 0.0:
            found += 1
            if found == k:
                lo, hi, flo = x, x1, f0
                while hi - lo > 1e-14 * max(1.0, lo):
                    mid = 0.5 * (lo + hi)
                    fm = bessel_j(m, mid)
                    if flo * fm <= 0.0:
                        hi = mid
                    else:
                        lo, flo = mid, fm
                return 0.5 * (lo + hi)
        x, f0 = x1, f1
    raise RuntimeError(f"zero {k} of J_{m} not found")


def disc_dirichlet_energy(m: int, k: int, radius: float = 1.0) -> float:
    """Laplacian Dirichlet level j_{m,k}^2 / (2 R^2) of the flat disc."""
    return bessel_zero(m, k) ** 2 / (2.0 * radius ** 2)


def fd_curvatures(S, rho: np.ndarray, h: float = 1e-4):
    """(Z, H, K) with S_rho and S_rhorho taken by central differences of S."""
    rho = np.asarray(rho, dtype=float)
    sr = (np.asarray(S(rho + h)) - np.asarray(S(rho - h))) / (2.0 * h)
    srr = (np.asarray(S(rho + h)) - 2.0 * np.asarray(S(rho))
           + np.asarray(S(rho - h))) / (h * h)
    Z = np.sqrt(1.0 + sr * sr)
    H = -0.5 * (sr / (Z * rho) + srr / Z ** 3)
    K = sr * srr / (rho * Z ** 4)
    return Z, H, K
