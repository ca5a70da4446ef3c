"""Covariance kernels with a power scaling law.

A centered Gaussian process divides time at exponent alpha exactly when
its covariance satisfies c(a s, a t) = a**alpha c(s, t).  The fractional
Brownian motion kernel does this at alpha = 2H, and any finite symmetric
spectral measure produces one at any chosen alpha.
"""

import numpy as np

from idtlab import (
    FBmKernel,
    SpectralKernel,
    SpectralMeasure,
    check_scaling,
    cov_matrix,
    fbm_cov,
    psd_check,
)

grid = [0.25, 0.5, 1.0, 2.0, 4.0]

print("== fractional Brownian motion kernel ==")
print(f"H = 1/2 collapses to the Brownian kernel: c(1, 2) = {fbm_cov(0.5, 1.0, 2.0)} = min(1, 2)")
print(f"H = 0.3: c(1, 2) = {fbm_cov(0.3, 1.0, 2.0):.6f} (= 2**0.6 / 2)")

for hurst in (0.2, 0.5, 0.8):
    rep = check_scaling(FBmKernel(hurst), 2 * hurst, a=3.0, grid=grid, tol=1e-10)
    print(f"H={hurst}: c(3s,3t) = 3**{2*hurst:.1f} c(s,t) holds, max err {rep.statistic:.2e}")

wrong = check_scaling(FBmKernel(0.3), 1.0, a=2.0, grid=grid, tol=1e-3)
print(f"negative control, H=0.3 probed at exponent 1.0: max err {wrong.statistic:.3f} -> fails")

print("\n== spectral kernels ==")
measure = SpectralMeasure.symmetric([(0.0, 0.4), (1.0, 0.4), (2.5, 0.2)])
for alpha in (0.6, 1.0, 2.0):
    kernel = SpectralKernel(alpha, measure)
    rep = check_scaling(kernel, alpha, a=2.0, grid=grid, tol=1e-10)
    eig = psd_check(cov_matrix(kernel, np.geomspace(0.25, 4.0, 12)))
    print(f"alpha={alpha}: scaling err {rep.statistic:.2e}, min eigenvalue {eig:+.2e}")
