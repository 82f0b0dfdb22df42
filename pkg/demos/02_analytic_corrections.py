"""Closed-form bias corrections as a function of sample size.

AIC uses the parameter count; the finite-sample correction and the direct
series C_n refine it for each data/model pair.
"""
from icbench import cn
from icbench.analytic import SCENARIOS, sugiura_bias

sizes = (10, 25, 100, 400, 1600)
print("scenario".ljust(16) + "".join(f"{n:>9d}" for n in sizes))
for sc in SCENARIOS:
    print(str(sc).ljust(16) + "".join(f"{cn(sc, n):9.4f}" for n in sizes))
print("AICc/2".ljust(16) + "".join(f"{sugiura_bias(n, 2):9.4f}" for n in sizes))

# The Laplace-truth Gaussian-model series can keep one more term.
sc = SCENARIOS[1]
print(f"\n{sc} at N=25: order 1 -> {cn(sc, 25, order=1):.4f}, order 2 -> {cn(sc, 25, order=2):.4f}")
