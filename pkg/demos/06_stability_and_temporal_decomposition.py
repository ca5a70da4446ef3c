"""Stability, selfsimilarity, and the temporal factorization.

For a time-dividing process the stability index and the selfsimilarity
order are locked together (h = alpha / beta), and the joint CF factors
as CF(t) = CF(b**(1/alpha) t) * CF((1-b)**(1/alpha) t) for every b in
(0, 1) -- the scaled-copy-plus-residual decomposition.
"""

from idtlab import (
    AdditiveTimeChange,
    FBmKernel,
    GaussianKernel,
    RngState,
    StableLine,
    StableMotion,
    selfsimilarity_test,
    stability_test,
    temporal_sd_test,
)

GRID = [0.5, 1.0, 2.0]
N = 20_000

print("== stable motion on the clock t**0.8 (index 1.2) ==")
spec = AdditiveTimeChange(StableMotion(1.2), 0.8)
rep = stability_test(spec, 1.2, 2, GRID, GRID, N, RngState(1), 0.05)
print(f"strictly 1.2-stable:        distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")
rep = selfsimilarity_test(spec, 0.8 / 1.2, 2.0, GRID, GRID, N, RngState(2), 0.05)
print(f"selfsimilar of order 2/3:   distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")
rep = selfsimilarity_test(spec, 0.8 / 1.2 + 0.3, 2.0, GRID, GRID, N, RngState(3), 0.05)
print(f"wrong order (2/3 + 0.3):    distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")

print("\n== temporal factorization ==")
rep = temporal_sd_test(StableLine(1.0), 1.0, 0.5, GRID, GRID, N, RngState(4), 0.05)
print(f"cauchy line, b = 0.5 (analytic identity): distance {rep.statistic:.4f} -> "
      f"{'pass' if rep.passed else 'fail'}")
fbm = GaussianKernel(FBmKernel(0.3))
for b in (0.25, 0.5):
    rep = temporal_sd_test(fbm, 0.6, b, GRID, GRID, N, RngState(5), 0.05)
    print(f"fBm H=0.3, b = {b}: distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")
rep = temporal_sd_test(fbm, 1.0, 0.5, GRID, GRID, N, RngState(6), 0.05)
print(f"fBm probed at the wrong exponent 1.0: distance {rep.statistic:.4f} -> "
      f"{'pass' if rep.passed else 'fail'}")
