"""
The iterator, naive and factorised
==================================

The naive iterator of f stacks f^0, ..., f^(N-1) on N copies of X.  The
factorised one uses n = log2 N controlled blocks, each the square of the
last.  Both agree once the qubit register is identified with the N copies.
"""

import time


from distcirc.iterator import build_efficient, build_naive, gate_counts, verify_equivalence
from distcirc.morphisms import from_matrix
from distcirc.sampling import random_unitary, rng_for
from distcirc.shapes import Atom

rng = rng_for(1, "tutorial")
f = from_matrix(random_unitary(2, rng), Atom("X", 2))

for n in (2, 4, 6):
    print(n, verify_equivalence(f, n))

print(" n  naive  efficient   t_naive    t_eff")
for n in range(1, 11):
    t = time.perf_counter()
    build_naive(f, 2**n)
    t_naive = time.perf_counter() - t
    t = time.perf_counter()
    build_efficient(f, n)
    t_eff = time.perf_counter() - t
    c = gate_counts(n)
    print(f"{n:2d} {c['naive']:6d} {c['efficient']:10d} {t_naive:9.5f} {t_eff:8.5f}")
