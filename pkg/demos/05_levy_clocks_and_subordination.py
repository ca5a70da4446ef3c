"""Levy processes on deformed clocks, random chronometers, and blends.

Three constructions that all divide time at the clock exponent alpha:
the deterministic clock L(t**alpha); a Levy process run along a random
nondecreasing chronometer that itself divides time; and weighted sums of
one subordinator path over dilated clocks.
"""

import numpy as np

from idtlab import (
    AdditiveTimeChange,
    Brownian,
    GammaSubordinator,
    Mixture,
    RngState,
    StableLine,
    StableMotion,
    Subordinated,
    TimeGrid,
    WeightedSubordinator,
    association_test,
    generate,
    idt_test,
)

GRID = TimeGrid([0.5, 1.0, 2.0])
N = 20_000

print("== marginal association: X_t has the law of L at clock time t**alpha ==")
rep = association_test(StableLine(1.5), StableMotion(1.5), 1.5, [0.5, 1.0, 2.0], N, RngState(1))
print(f"stable line vs stable motion on t**1.5: min p = {rep.statistic:.3f} -> {'pass' if rep.passed else 'fail'}")
rep = association_test(StableLine(1.5), Brownian(1.0, 0.0), 1.5, [0.5, 1.0, 2.0], N, RngState(2))
print(f"mismatch control (Brownian marginals):  min p = {rep.statistic:.2e} -> {'pass' if rep.passed else 'fail'}")

print("\n== random chronometer ==")
clock = AdditiveTimeChange(GammaSubordinator(1.0, 1.0), 0.7)
spec = Subordinated(Brownian(1.0, 0.0), clock)
xi = generate(clock, GRID, 5, RngState(3))
print("five chronometer paths at times", GRID.times.tolist())
print(np.round(xi.values, 3))
rep = idt_test(spec, 0.7, 2, GRID, [0.5, 1.0, 2.0], N, RngState(4), 0.05)
print(f"Brownian along the gamma clock divides time at 0.7: distance {rep.statistic:.4f} -> "
      f"{'pass' if rep.passed else 'fail'}")

print("\n== blends preserve the exponent ==")
blend = WeightedSubordinator(GammaSubordinator(1.0, 1.0), ((1.0, 0.5), (2.0, 0.5)), 0.7)
rep = idt_test(blend, 0.7, 2, GRID, [0.5, 1.0, 2.0], N, RngState(5), 0.05)
print(f"half-and-half gamma blend: distance {rep.statistic:.4f} -> {'pass' if rep.passed else 'fail'}")

from idtlab import FBmKernel, GaussianKernel

mix = Mixture(GaussianKernel(FBmKernel(0.3)), ((1.0, 0.5), (2.0, 0.5)))
rep = idt_test(mix, 0.6, 2, GRID, [0.5, 1.0, 2.0], N, RngState(6), 0.05)
print(f"fBm mixture (one trajectory, two dilations): distance {rep.statistic:.4f} -> "
      f"{'pass' if rep.passed else 'fail'}")
