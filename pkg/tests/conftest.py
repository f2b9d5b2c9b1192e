"""Shared oracles.

``basis`` enumerates the lexicographic basis of an object expression as
nested tuples, independently of the index arithmetic in the library:
sums tag elements with "L"/"R", products pair them.  A canonical map is then
checked by rewriting each source tuple structurally and looking up its
position among the target tuples.
"""

import numpy as np
import pytest
from hypothesis import settings

from distcirc.shapes import Atom, Prod, Sum, Unit, Zero

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def basis(e):
    if isinstance(e, Zero):
        return []
    if isinstance(e, Unit):
        return [()]
    if isinstance(e, Atom):
        return [(e.label, i) for i in range(e.d)]
    if isinstance(e, Sum):
        return [("L", x) for x in basis(e.left)] + [("R", y) for y in basis(e.right)]
    if isinstance(e, Prod):
        return [(x, y) for x in basis(e.left) for y in basis(e.right)]
    raise TypeError(e)


def tuple_map(source, target, rule):
    """Index map sending each source tuple ``t`` to the index of ``rule(t)`` in the target."""
    tgt = {t: j for j, t in enumerate(basis(target))}
    assert len(tgt) == target.dim
    return np.array([tgt[rule(t)] for t in basis(source)], dtype=np.int64)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
