"""
Canonical maps as index permutations
====================================

Objects are expressions over 0, I, + and *, with atoms of a given
dimension.  Every canonical isomorphism between two such expressions is a
permutation of the lexicographic basis.
"""

from distcirc.shapes import I, TWO, Atom, dl_perm, dr_perm, lambda_perm, parse, s_perm, sigma_perm

A, B, C = Atom("A", 2), Atom("B", 1), Atom("C", 1)

# the left distributor A*(B+C) -> A*B + A*C interleaves the two blocks
print("dl:", dl_perm(A, B, C).map)

# the right distributor needs no reordering at all
print("dr is identity:", dr_perm(Atom("X", 2), Atom("Y", 3), Atom("Z", 4)).is_identity())

# swapping two qubits and flipping one
print("sigma_{2,2}:", sigma_perm(TWO, TWO).map)
print("s_{I,I}:", s_perm(I, I).map)

# 2*2*2*X is eight copies of X, with no reshuffling
lam = lambda_perm(3, Atom("X", 3))
print("lambda(3) on 24 elements is identity:", lam.is_identity())

# the text grammar used on the command line
e = parse("(2*(A2+B3))")
print(e, "has dimension", e.dim)
