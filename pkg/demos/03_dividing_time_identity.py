"""The dividing-time identity, checked empirically.

A process X divides time at exponent alpha when X run at times
n**(1/alpha) * t has the law of the sum of n independent copies of X.
The check compares empirical characteristic functions: the ECF of the
dilated ensemble against the n-th power of the base ECF.
"""

from idtlab import (
    AdditiveTimeChange,
    FBmKernel,
    GammaSubordinator,
    GaussianKernel,
    RngState,
    StableLine,
    idt_test,
)

GRID = [0.5, 1.0, 2.0]
N = 20_000
THRESHOLD = 0.05  # generous fixed threshold for the demo; tests use calibrated ones

specs = [
    ("stable line t*S_1.5 (alpha = 1.5)", StableLine(1.5), 1.5),
    ("fractional BM, H = 0.3 (alpha = 0.6)", GaussianKernel(FBmKernel(0.3)), 0.6),
    ("gamma process on clock t**0.7", AdditiveTimeChange(GammaSubordinator(1.0, 1.0), 0.7), 0.7),
]

for name, spec, alpha in specs:
    good = idt_test(spec, alpha, 2, GRID, GRID, N, RngState(1), THRESHOLD)
    bad = idt_test(spec, alpha + 0.5, 2, GRID, GRID, N, RngState(2), THRESHOLD)
    print(f"{name}")
    print(f"  at its exponent {alpha}:   ECF distance {good.statistic:.4f} -> {'pass' if good.passed else 'fail'}")
    print(f"  at exponent {alpha + 0.5}: ECF distance {bad.statistic:.4f} -> {'pass' if bad.passed else 'fail'}")

print("\nThe power mode (ECF**n) has a sum-of-copies cross-check:")
rep = idt_test(StableLine(1.5), 1.5, 2, GRID, GRID, N, RngState(3), THRESHOLD, mode="sum")
print(f"  sum mode distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")
