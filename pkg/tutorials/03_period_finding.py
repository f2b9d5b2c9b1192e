"""
Period finding for 7 mod 15
===========================

Hadamards on eight control qubits, the staged modular-multiplication
oracle, a QFT on the controls, then measurement.  The period is 4, which
divides 256, so all the probability sits on multiples of 64.
"""

import numpy as np

from distcirc.shor import control_distribution, convergents, factor, oracle, period_find

print([g.power for g in oracle(7, 15, 8).gates])

p = control_distribution(7, 15, 8)
peaks = np.flatnonzero(p > 1e-9)
print("support:", peaks, "mass:", p[peaks].sum())

for y in peaks:
    print(y, convergents(int(y), 256))

run = period_find(7, 15, 8, shots=16, seed=3)
print("counts:", run.counts, "period:", run.period)

for K in (15, 21, 35):
    r = factor(K, seed=1)
    print(K, "->", r.factors, "via", r.method, "after", r.attempts, "attempts")
