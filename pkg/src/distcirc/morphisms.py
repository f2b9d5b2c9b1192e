"""Dense matrices over a pluggable semiring: the arrow layer.

A :class:`Mor` is a ``dim(cod) x dim(dom)`` matrix with typed domain and
codomain.  Composition is the semiring matrix product, the multiplicative
tensor is the Kronecker product and the additive tensor is the block
direct sum, all under the lexicographic basis conventions of
:mod:`distcirc.shapes`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .shapes import Atom, ObjExpr, Perm, Prod, invert, osum, parse, same_object, to_text

__all__ = [
    "Semiring", "COMPLEX", "BOOLEAN", "make_semiring", "semiring_by_name",
    "Mor", "MorError", "identity", "compose", "mtensor", "dsum",
    "perm_to_mor", "relabel", "power", "from_matrix", "discrepancy",
    "mor_to_json", "mor_from_json",
]


class MorError(ValueError):
    """Shape or typing mismatch between morphisms."""


@dataclass(frozen=True, eq=False)
class Semiring:
    """Scalars for matrix entries.

    ``native`` semirings map directly onto a numpy dtype whose ``@`` and
    ``np.kron`` already implement the semiring operations (complex numbers,
    and booleans where ``@`` is OR-of-ANDs).  Anything else is evaluated
    elementwise on object arrays through ``add`` and ``mul``.
    """

    name: str
    dtype: Any
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    exact: bool = True
    native: bool = False
    sub: Optional[Callable[[Any, Any], Any]] = None
    conj: Optional[Callable[[Any], Any]] = None
    norm: Optional[Callable[[Any], float]] = None

    def zeros(self, shape) -> np.ndarray:
        if self.native:
            return np.zeros(shape, dtype=self.dtype)
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        out[np.arange(n), np.arange(n)] = self.one
        return out

    def asarray(self, m) -> np.ndarray:
        return np.array(m, dtype=self.dtype if self.native else object)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.native:
            return a @ b
        out = self.zeros((a.shape[0], b.shape[1]))
        if a.shape[1] == 0:
            return out
        prods = np.frompyfunc(self.mul, 2, 1)(a[:, :, None], b[None, :, :])
        return np.frompyfunc(self.add, 2, 1).reduce(prods, axis=1)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.native:
            return np.kron(a, b)
        outer = np.frompyfunc(self.mul, 2, 1)(a[:, None, :, None], b[None, :, None, :])
        return outer.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def distance(self, a: np.ndarray, b: np.ndarray) -> float:
        """Max-abs difference for inexact scalars; 0/1 mismatch flag otherwise."""
        if a.shape != b.shape:
            raise MorError(f"cannot compare shapes {a.shape} and {b.shape}")
        if a.size == 0:
            return 0.0
        if self.exact:
            return 0.0 if np.array_equal(a, b) else 1.0
        return float(np.max(np.abs(a - b)))

    def __repr__(self):
        return f"Semiring({self.name})"


COMPLEX = Semiring(
    "complex", np.complex128, 0j, 1 + 0j, np.add, np.multiply,
    exact=False, native=True, sub=np.subtract, conj=np.conjugate, norm=abs,
)

BOOLEAN = Semiring(
    "boolean", np.bool_, False, True, np.logical_or, np.logical_and,
    exact=True, native=True,
)


def make_semiring(name, zero, one, add, mul, exact=True, **optional) -> Semiring:
    """A user-defined semiring evaluated on object arrays."""
    return Semiring(name, object, zero, one, add, mul, exact=exact, native=False, **optional)


def semiring_by_name(name: str) -> Semiring:
    try:
        return {"complex": COMPLEX, "boolean": BOOLEAN}[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}") from None


@dataclass(frozen=True, eq=False)
class Mor:
    dom: ObjExpr
    cod: ObjExpr
    entries: np.ndarray
    semiring: Semiring = COMPLEX

    def __post_init__(self):
        m = self.semiring.asarray(self.entries)
        if m.shape != (self.cod.dim, self.dom.dim):
            raise MorError(
                f"entries have shape {m.shape}, expected ({self.cod.dim}, {self.dom.dim}) "
                f"for {self.dom} -> {self.cod}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def shape(self):
        return self.entries.shape

    @property
    def is_endo(self) -> bool:
        return same_object(self.dom, self.cod)

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __repr__(self):
        return f"Mor({self.dom} -> {self.cod}, {self.semiring.name}, shape={self.shape})"


def _check_same_semiring(*fs: Mor) -> Semiring:
    sr = fs[0].semiring
    if any(f.semiring is not sr for f in fs[1:]):
        raise MorError("morphisms live over different semirings")
    return sr


def from_matrix(m, dom: ObjExpr | None = None, cod: ObjExpr | None = None,
                semiring: Semiring = COMPLEX) -> Mor:
    m = semiring.asarray(m)
    if m.ndim != 2:
        raise MorError("expected a 2-d matrix")
    rows, cols = m.shape
    dom = dom if dom is not None else Atom("X", cols)
    cod = cod if cod is not None else (dom if rows == cols else Atom("Y", rows))
    return Mor(dom, cod, m, semiring)


def identity(x: ObjExpr, semiring: Semiring = COMPLEX) -> Mor:
    return Mor(x, x, semiring.eye(x.dim), semiring)


def compose(f: Mor, g: Mor) -> Mor:
    """``f`` after ``g``."""
    sr = _check_same_semiring(f, g)
    if not same_object(g.cod, f.dom):
        raise MorError(f"cannot compose: codomain {g.cod} is not domain {f.dom}")
    return Mor(g.dom, f.cod, sr.matmul(f.entries, g.entries), sr)


def mtensor(f: Mor, g: Mor) -> Mor:
    sr = _check_same_semiring(f, g)
    return Mor(Prod(f.dom, g.dom), Prod(f.cod, g.cod), sr.kron(f.entries, g.entries), sr)


def dsum(*fs: Mor) -> Mor:
    """Block direct sum ``f0 + f1 + ...`` in a single allocation."""
    if not fs:
        raise MorError("dsum needs at least one morphism")
    sr = _check_same_semiring(*fs)
    rows = sum(f.shape[0] for f in fs)
    cols = sum(f.shape[1] for f in fs)
    out = sr.zeros((rows, cols))
    r = c = 0
    for f in fs:
        h, w = f.shape
        out[r:r + h, c:c + w] = f.entries
        r, c = r + h, c + w
    return Mor(osum(*(f.dom for f in fs)), osum(*(f.cod for f in fs)), out, sr)


def perm_to_mor(p: Perm, semiring: Semiring = COMPLEX) -> Mor:
    m = semiring.zeros((p.dim, p.dim))
    m[p.map, np.arange(p.dim)] = semiring.one
    return Mor(p.source, p.target, m, semiring)


def relabel(p: Perm | None, f: Mor, q: Perm | None = None) -> Mor:
    """``perm_to_mor(p) @ f @ perm_to_mor(q)`` by index relabelling only.

    Either permutation may be ``None`` for an identity on that side.
    """
    m = f.entries
    dom, cod = f.dom, f.cod
    if q is not None:
        if not same_object(q.target, f.dom):
            raise MorError(f"cannot precompose {q.target} with domain {f.dom}")
        if not q.is_identity():
            m = m[:, q.map]
        dom = q.source
    if p is not None:
        if not same_object(p.source, f.cod):
            raise MorError(f"cannot postcompose {p.source} with codomain {f.cod}")
        if not p.is_identity():
            m = m[invert(p).map, :]
        cod = p.target
    return Mor(dom, cod, m, f.semiring)


def power(f: Mor, k: int) -> Mor:
    """``f`` composed with itself ``k`` times, by binary exponentiation."""
    if not f.is_endo:
        raise MorError(f"power needs an endomorphism, got {f.dom} -> {f.cod}")
    if k < 0:
        raise ValueError("negative power")
    sr = f.semiring
    result = None
    base = f.entries
    while k:
        if k & 1:
            result = base if result is None else sr.matmul(result, base)
        k >>= 1
        if k:
            base = sr.matmul(base, base)
    if result is None:
        result = sr.eye(f.dom.dim)
    return Mor(f.dom, f.cod, result, sr)


def discrepancy(f: Mor, g: Mor) -> float:
    sr = _check_same_semiring(f, g)
    if not (same_object(f.dom, g.dom) and same_object(f.cod, g.cod)):
        raise MorError(f"cannot compare {f.dom} -> {f.cod} with {g.dom} -> {g.cod}")
    return sr.distance(f.entries, g.entries)


def mor_to_json(f: Mor) -> dict:
    """Matrix export; complex entries as ``[re, im]`` pairs, booleans as bits."""
    if f.semiring is COMPLEX:
        entries = [[[float(z.real), float(z.imag)] for z in row] for row in f.entries]
    elif f.semiring is BOOLEAN:
        entries = [[int(b) for b in row] for row in f.entries]
    else:
        raise MorError(f"no JSON encoding for semiring {f.semiring.name}")
    rows, cols = f.shape
    return {
        "dom": to_text(f.dom),
        "cod": to_text(f.cod),
        "semiring": f.semiring.name,
        "rows": rows,
        "cols": cols,
        "entries": entries,
    }


def mor_from_json(doc: dict) -> Mor:
    sr = semiring_by_name(doc.get("semiring", "complex"))
    shape = (doc["rows"], doc["cols"])
    if sr is COMPLEX:
        arr = np.array([[complex(re, im) for re, im in row] for row in doc["entries"]],
                       dtype=np.complex128).reshape(shape)
    else:
        arr = np.array(doc["entries"], dtype=bool).reshape(shape)
    return Mor(parse(doc["dom"]), parse(doc["cod"]), arr, sr)
