import math
import operator

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distcirc.morphisms import (
    BOOLEAN, COMPLEX, Mor, MorError, compose, discrepancy, dsum, from_matrix, identity,
    make_semiring, mor_from_json, mor_to_json, mtensor, perm_to_mor, power, relabel,
)
from distcirc.quantum import NOT
from distcirc.sampling import random_complex, random_endo, random_mor, random_unitary, rng_for
from distcirc.shapes import (
    I, TWO, ZERO, Atom, Prod, Sum, dl_perm, invert, s_perm, same_object, sigma_perm,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
small = st.integers(min_value=1, max_value=4)
SEMIRINGS = [COMPLEX, BOOLEAN]

MIN_PLUS = make_semiring("min_plus", math.inf, 0, min, operator.add)
GENERIC_BOOL = make_semiring("bool_generic", False, True, operator.or_, operator.and_)


def unitarity_error(m):
    return np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))


# --- composition and identities --------------------------------------------------

def test_identity_is_unit(rng):
    x, y = Atom("X", 3), Atom("Y", 2)
    f = Mor(x, y, random_complex(2, 3, rng))
    assert discrepancy(compose(identity(y), f), f) == 0
    assert discrepancy(compose(f, identity(x)), f) == 0


def test_perm_and_inverse_compose_to_identity():
    p = dl_perm(Atom("A", 2), Atom("B", 3), I)
    assert discrepancy(compose(perm_to_mor(p), perm_to_mor(invert(p))), identity(p.target)) == 0


def test_boolean_product_by_hand():
    x = Atom("X", 2)
    f = Mor(x, x, [[1, 0], [1, 1]], BOOLEAN)
    g = Mor(x, x, [[0, 1], [1, 0]], BOOLEAN)
    # rows of f OR-ed over the ones in each column of g
    assert compose(f, g).entries.tolist() == [[False, True], [True, True]]
    assert compose(g, f).entries.tolist() == [[True, True], [True, False]]


def test_compose_type_errors(rng):
    x, y = Atom("X", 2), Atom("Y", 2)
    with pytest.raises(MorError):
        compose(identity(x), identity(y))
    with pytest.raises(MorError):
        compose(identity(x), identity(x, BOOLEAN))
    with pytest.raises(MorError):
        Mor(x, y, np.zeros((3, 2)))


def test_entries_are_read_only():
    f = identity(Atom("X", 2))
    with pytest.raises(ValueError):
        f.entries[0, 0] = 3


# --- tensors -------------------------------------------------------------------

def test_mtensor_unit(rng):
    x = Atom("X", 3)
    f = Mor(x, x, random_unitary(3, rng))
    g = mtensor(identity(I), f)
    assert same_object(g.dom, x)
    assert discrepancy(g, f) == 0


def test_not_tensor_not():
    m = mtensor(NOT, NOT)
    assert same_object(m.dom, Prod(TWO, TWO))
    assert np.array_equal(m.entries, perm_to_mor_map([3, 2, 1, 0]))


def perm_to_mor_map(mp):
    m = np.zeros((len(mp), len(mp)), dtype=complex)
    m[mp, np.arange(len(mp))] = 1
    return m


@given(seeds)
def test_mtensor_functorial(seed):
    rng = np.random.default_rng(seed)
    x = Atom("X", 2)
    f, g, h, k = (Mor(x, x, random_complex(2, 2, rng)) for _ in range(4))
    lhs = mtensor(compose(f, g), compose(h, k))
    rhs = compose(mtensor(f, h), mtensor(g, k))
    assert discrepancy(lhs, rhs) <= 1e-10


def test_dsum_examples():
    u = 0.6 + 0.8j
    x = Atom("X", 1)
    f = Mor(x, x, [[u]])
    assert np.allclose(dsum(f, identity(I)).entries, np.diag([u, 1]))
    g = Mor(Atom("Y", 2), Atom("Y", 2), np.eye(2))
    z = dsum(identity(ZERO), g)
    assert same_object(z.dom, g.dom)
    assert discrepancy(z, g) == 0


@pytest.mark.parametrize("sr", SEMIRINGS, ids=lambda s: s.name)
@given(seed=seeds, a=small, b=small, c=small)
def test_bifunctoriality(sr, seed, a, b, c):
    rng = np.random.default_rng(seed)
    A, B, C = Atom("A", a), Atom("B", b), Atom("C", c)
    f1, f2 = random_mor(A, B, sr, rng), random_mor(B, C, sr, rng)
    g1, g2 = random_mor(C, A, sr, rng), random_mor(A, B, sr, rng)
    tol = 1e-9 if not sr.exact else 0
    assert discrepancy(mtensor(compose(f2, f1), compose(g2, g1)),
                       compose(mtensor(f2, g2), mtensor(f1, g1))) <= tol
    assert discrepancy(dsum(compose(f2, f1), compose(g2, g1)),
                       compose(dsum(f2, g2), dsum(f1, g1))) <= tol


@pytest.mark.parametrize("sr", SEMIRINGS, ids=lambda s: s.name)
@given(seed=seeds, a=small, b=small, c=small, d=small)
def test_dl_naturality(sr, seed, a, b, c, d):
    rng = np.random.default_rng(seed)
    A, B, C = Atom("A", a), Atom("B", b), Atom("C", c)
    A2, B2, C2 = Atom("P", d), Atom("Q", b), Atom("R", c)
    f, g, h = random_mor(A, A2, sr, rng), random_mor(B, B2, sr, rng), random_mor(C, C2, sr, rng)
    lhs = compose(perm_to_mor(dl_perm(A2, B2, C2), sr), mtensor(f, dsum(g, h)))
    rhs = compose(dsum(mtensor(f, g), mtensor(f, h)), perm_to_mor(dl_perm(A, B, C), sr))
    assert discrepancy(lhs, rhs) <= (0 if sr.exact else 1e-10)


@given(seeds, small, small)
def test_unitarity_preserved(seed, a, b):
    rng = np.random.default_rng(seed)
    A, B = Atom("A", a), Atom("B", b)
    u, v = Mor(A, A, random_unitary(a, rng)), Mor(B, B, random_unitary(b, rng))
    assert unitarity_error(u.entries) <= 1e-10
    assert unitarity_error(mtensor(u, v).entries) <= 1e-10
    assert unitarity_error(dsum(u, v).entries) <= 1e-10
    assert unitarity_error(perm_to_mor(sigma_perm(A, B)).entries) <= 1e-10


# --- permutations as matrices ---------------------------------------------------------

def test_perm_to_mor_examples():
    x = Atom("X", 3)
    assert np.array_equal(perm_to_mor(s_perm(I, I)).entries, [[0, 1], [1, 0]])
    assert np.array_equal(perm_to_mor(sigma_perm(TWO, TWO)).entries, perm_to_mor_map([0, 2, 1, 3]))
    p = sigma_perm(x, Atom("Y", 1))
    assert np.array_equal(perm_to_mor(p).entries, np.eye(3))


@given(seeds, small, small, small)
def test_relabel_matches_composition(seed, a, b, c):
    rng = np.random.default_rng(seed)
    A, B, C = Atom("A", a), Atom("B", b), Atom("C", c)
    p, q = dl_perm(A, B, C), sigma_perm(Sum(B, C), A)
    f = Mor(p.source, p.source, random_complex(p.dim, p.dim, rng))
    want = compose(perm_to_mor(p), compose(f, perm_to_mor(q)))
    assert discrepancy(relabel(p, f, q), want) == 0


# --- powers -------------------------------------------------------------------------

def test_power_examples(rng):
    x = Atom("X", 3)
    f = Mor(x, x, random_complex(3, 3, rng))
    assert discrepancy(power(f, 0), identity(x)) == 0
    assert discrepancy(power(NOT, 2), identity(TWO)) == 0
    naive = f
    for _ in range(4):
        naive = compose(naive, f)
    assert discrepancy(power(f, 5), naive) <= 1e-10 * np.abs(naive.entries).max()


def test_power_rejects_non_endo():
    with pytest.raises(MorError):
        power(Mor(Atom("X", 2), Atom("Y", 2), np.eye(2)), 3)
    with pytest.raises(ValueError):
        power(NOT, -1)


# --- semirings -------------------------------------------------------------------------

def _elements(sr, rng, k):
    if sr is COMPLEX:
        return list(rng.integers(-3, 4, k) + 1j * rng.integers(-3, 4, k))
    if sr in (BOOLEAN, GENERIC_BOOL):
        return list(rng.random(k) < 0.5)
    return [math.inf if v < 0 else int(v) for v in rng.integers(-2, 9, k)]


@pytest.mark.parametrize("sr", [COMPLEX, BOOLEAN, MIN_PLUS, GENERIC_BOOL], ids=lambda s: s.name)
@given(seed=seeds)
def test_semiring_laws(sr, seed):
    rng = np.random.default_rng(seed)
    a, b, c = _elements(sr, rng, 3)
    add, mul = sr.add, sr.mul
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert add(a, b) == add(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(add(a, b), c) == add(mul(a, c), mul(b, c))
    assert add(a, sr.zero) == a
    assert mul(a, sr.one) == a and mul(sr.one, a) == a
    assert mul(a, sr.zero) == sr.zero


@given(seeds, small, small, small)
def test_generic_boolean_matches_native(seed, a, b, c):
    rng = np.random.default_rng(seed)
    m, n = rng.random((a, b)) < 0.5, rng.random((b, c)) < 0.5
    generic = GENERIC_BOOL.matmul(GENERIC_BOOL.asarray(m), GENERIC_BOOL.asarray(n))
    assert np.array_equal(generic.astype(bool), BOOLEAN.matmul(m, n))
    kron = GENERIC_BOOL.kron(GENERIC_BOOL.asarray(m), GENERIC_BOOL.asarray(n))
    assert np.array_equal(kron.astype(bool), np.kron(m, n))


def test_min_plus_shortest_paths():
    inf = math.inf
    x = Atom("V", 3)
    w = Mor(x, x, [[0, inf, inf], [1, 0, inf], [inf, 2, 0]], MIN_PLUS)
    two_hops = power(w, 2)
    assert two_hops.entries[2, 0] == 3
    assert two_hops.entries[0, 2] == inf
    assert discrepancy(compose(identity(x, MIN_PLUS), w), w) == 0


def test_min_plus_coherence():
    # dl naturality holds verbatim in the tropical semiring
    rng = np.random.default_rng(5)
    A, B, C = Atom("A", 2), Atom("B", 2), Atom("C", 1)

    def rand(dom, cod):
        return Mor(dom, cod, rng.integers(0, 9, (cod.dim, dom.dim)).astype(object), MIN_PLUS)

    f, g, h = rand(A, A), rand(B, B), rand(C, C)
    lhs = compose(perm_to_mor(dl_perm(A, B, C), MIN_PLUS), mtensor(f, dsum(g, h)))
    rhs = compose(dsum(mtensor(f, g), mtensor(f, h)), perm_to_mor(dl_perm(A, B, C), MIN_PLUS))
    assert discrepancy(lhs, rhs) == 0


# --- JSON -------------------------------------------------------------------------

@pytest.mark.parametrize("sr", SEMIRINGS, ids=lambda s: s.name)
def test_json_roundtrip(sr):
    rng = rng_for(1, "json")
    f = random_endo(Prod(TWO, Atom("X", 3)), sr, rng)
    doc = mor_to_json(f)
    assert list(doc) == ["dom", "cod", "semiring", "rows", "cols", "entries"]
    g = mor_from_json(doc)
    assert same_object(g.dom, f.dom) and g.semiring is sr
    assert discrepancy(f, g) == 0


def test_from_matrix_defaults():
    f = from_matrix(np.eye(3))
    assert f.dom.dim == 3 and f.is_endo
    g = from_matrix(np.ones((2, 3)))
    assert (g.cod.dim, g.dom.dim) == (2, 3)
