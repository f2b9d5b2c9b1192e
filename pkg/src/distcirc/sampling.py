"""Seeded random instances.

All randomness derives from one root seed.  A stream is identified by the
root seed plus a tuple of small integers (suite, trial, ...), and
``numpy.random.default_rng`` turns that entropy list into an independent
``SeedSequence``; the same key always reproduces the same generator.
"""

from __future__ import annotations

import zlib

import numpy as np

from .morphisms import BOOLEAN, COMPLEX, Mor, Semiring
from .shapes import Atom, ObjExpr

DEFAULT_SEED = 20100501


def rng_for(seed: int, *stream) -> np.random.Generator:
    key = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for s in stream:
        key.append(zlib.crc32(s.encode()) if isinstance(s, str) else int(s))
    return np.random.default_rng(key)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with the phase of R's diagonal removed."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_complex(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_permutation_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    m = np.zeros((d, d), dtype=bool)
    m[rng.permutation(d), np.arange(d)] = True
    return m


def random_relation(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.random((rows, cols)) < 0.5


def random_endo(x: ObjExpr, semiring: Semiring, rng: np.random.Generator) -> Mor:
    """Unitary (complex) or permutation (boolean) endomorphism of ``x``."""
    if semiring is COMPLEX:
        return Mor(x, x, random_unitary(x.dim, rng), COMPLEX)
    if semiring is BOOLEAN:
        return Mor(x, x, random_permutation_matrix(x.dim, rng), BOOLEAN)
    raise ValueError(f"no random endomorphisms for {semiring.name}")


def random_mor(dom: ObjExpr, cod: ObjExpr, semiring: Semiring, rng: np.random.Generator) -> Mor:
    """Dense complex matrix or random boolean relation ``dom -> cod``."""
    if semiring is COMPLEX:
        return Mor(dom, cod, random_complex(cod.dim, dom.dim, rng), COMPLEX)
    if semiring is BOOLEAN:
        return Mor(dom, cod, random_relation(cod.dim, dom.dim, rng), BOOLEAN)
    raise ValueError(f"no random morphisms for {semiring.name}")


def random_atom(rng: np.random.Generator, label: str = "A", max_dim: int = 5) -> Atom:
    return Atom(label, int(rng.integers(1, max_dim + 1)))
