"""
Coherence checks beyond complex matrices
========================================

The same canonical maps act on boolean relations and on tropical (min, +)
matrices; only the scalar operations change.
"""

import math
import operator

import numpy as np

from distcirc.coherence import check_naturality_fig1, run_suite
from distcirc.morphisms import BOOLEAN, Mor, compose, dsum, make_semiring, mtensor, perm_to_mor
from distcirc.shapes import Atom, dl_perm

reports = list(run_suite(trials=10, seed=5))
print(sum(r.passed for r in reports), "of", len(reports), "instances pass")

rng = np.random.default_rng(0)
A, B, C = Atom("A", 2), Atom("B", 2), Atom("C", 3)
f = Mor(B, Atom("Y", 3), rng.random((3, 2)) < 0.5, BOOLEAN)
g = Mor(C, Atom("Z", 1), rng.random((1, 3)) < 0.5, BOOLEAN)
print(check_naturality_fig1(A, f, g))

trop = make_semiring("min_plus", math.inf, 0, min, operator.add)
w = lambda d: Mor(Atom("W", d), Atom("W", d), rng.integers(0, 5, (d, d)).astype(object), trop)
a, b, c = w(2), w(2), w(1)
lhs = compose(perm_to_mor(dl_perm(a.dom, b.dom, c.dom), trop), mtensor(a, dsum(b, c)))
rhs = compose(dsum(mtensor(a, b), mtensor(a, c)), perm_to_mor(dl_perm(a.dom, b.dom, c.dom), trop))
print("dl natural over min-plus:", np.array_equal(lhs.entries, rhs.entries))
