"""Objects of a strongly distributive category and its canonical isomorphisms.

Objects are small expression trees over ``0``, ``I``, ``+`` (additive tensor)
and ``*`` (multiplicative tensor) with dimensioned atoms.  Every canonical
isomorphism is realised as an index permutation under a fixed lexicographic
basis ordering:

* the basis of ``A * B`` is ``a * dim(B) + b``;
* the basis of ``A + B`` lists ``A``'s indices, then ``B``'s.

Both tensors are treated as strictly associative and unital, so associators
and unitors never appear at runtime; :func:`normalize` flattens expressions
to a right-nested normal form instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Zero", "Unit", "Atom", "Sum", "Prod", "ObjExpr", "ZERO", "I", "TWO",
    "dim", "normalize", "summands", "factors", "same_object", "osum", "oprod",
    "two_power", "parse", "to_text",
    "Perm", "PermError", "identity_perm", "dl_perm", "dl_multi_perm",
    "dr_perm", "sigma_perm", "s_perm", "lambda_perm", "invert",
    "compose_perm", "ptensor", "psum",
]


@dataclass(frozen=True)
class Zero:
    @property
    def dim(self) -> int:
        return 0

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Unit:
    @property
    def dim(self) -> int:
        return 1

    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Atom:
    label: str
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"atom dimension must be positive, got {self.d}")
        if not re.fullmatch(r"[A-Za-z]+", self.label):
            raise ValueError(f"atom label must be alphabetic, got {self.label!r}")

    @property
    def dim(self) -> int:
        return self.d

    def __str__(self):
        return f"{self.label}{self.d}"


class _Node:
    # Structural equality through the rendered text, which is walked
    # iteratively; dataclass __eq__/__hash__ would recurse per nesting level.

    def __eq__(self, other):
        if not isinstance(other, _Node):
            return NotImplemented
        return type(self) is type(other) and to_text(self) == to_text(other)

    def __hash__(self):
        return hash(to_text(self))

    def __repr__(self):
        return f"{type(self).__name__}<{to_text(self)}>"


@dataclass(frozen=True, eq=False, repr=False)
class Sum(_Node):
    left: "ObjExpr"
    right: "ObjExpr"

    def __post_init__(self):
        object.__setattr__(self, "_dim", self.left.dim + self.right.dim)

    @property
    def dim(self) -> int:
        return self._dim

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=False, repr=False)
class Prod(_Node):
    left: "ObjExpr"
    right: "ObjExpr"

    def __post_init__(self):
        object.__setattr__(self, "_dim", self.left.dim * self.right.dim)

    @property
    def dim(self) -> int:
        return self._dim

    def __str__(self):
        return to_text(self)


ObjExpr = Union[Zero, Unit, Atom, Sum, Prod]

ZERO = Zero()
I = Unit()
TWO = Sum(I, I)


def dim(e: ObjExpr) -> int:
    return e.dim


def osum(*parts: ObjExpr) -> ObjExpr:
    """Right-nested additive tensor of ``parts``; the empty sum is ``0``."""
    if not parts:
        return ZERO
    return reduce(lambda acc, p: Sum(p, acc), reversed(parts[:-1]), parts[-1])


def oprod(*parts: ObjExpr) -> ObjExpr:
    """Right-nested multiplicative tensor of ``parts``; the empty product is ``I``."""
    if not parts:
        return I
    return reduce(lambda acc, p: Prod(p, acc), reversed(parts[:-1]), parts[-1])


def two_power(n: int) -> ObjExpr:
    """The n-fold tensor power of the qubit object."""
    return oprod(*([TWO] * n))


def _flatten(e: ObjExpr, kind: type, out: list) -> list:
    # Collect the operands of nested ``kind`` nodes, normalising the leaves.
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            stack.append(node.right)
            stack.append(node.left)
            continue
        leaf = normalize(node)
        if isinstance(leaf, kind):
            out.extend(_operands(leaf, kind))
        else:
            out.append(leaf)
    return out


def _operands(e: ObjExpr, kind: type) -> list:
    out = []
    while isinstance(e, kind):
        out.append(e.left)
        e = e.right
    out.append(e)
    return out


def factors(e: ObjExpr) -> list[ObjExpr]:
    """Multiplicative factors of ``e`` after strictness normalisation."""
    return [p for p in _flatten(e, Prod, []) if not isinstance(p, Unit)]


def summands(e: ObjExpr) -> list[ObjExpr]:
    """Additive summands of ``e`` after strictness normalisation."""
    return [p for p in _flatten(e, Sum, []) if not isinstance(p, Zero)]


def normalize(e: ObjExpr) -> ObjExpr:
    """Right-nest both tensors, drop units, and let ``0`` absorb products."""
    if isinstance(e, Sum):
        return osum(*summands(e))
    if isinstance(e, Prod):
        parts = factors(e)
        if any(isinstance(p, Zero) for p in parts):
            return ZERO
        return oprod(*parts)
    return e


def object_key(e: ObjExpr) -> tuple:
    """Hashable canonical form of ``e`` up to associativity and unit laws.

    Nested tuples follow only the alternation of ``+`` and ``*``, so long
    sums like ``X + X + ... + X`` stay shallow.  Cached on composite nodes.
    """
    if isinstance(e, _Node):
        key = e.__dict__.get("_key")
        if key is None:
            key = _object_key(e)
            object.__setattr__(e, "_key", key)
        return key
    return _object_key(e)


def _object_key(e: ObjExpr) -> tuple:
    if isinstance(e, Sum):
        parts = summands(e)
        if not parts:
            return ("0",)
        if len(parts) == 1:
            return object_key(parts[0])
        return ("+",) + tuple(object_key(p) for p in parts)
    if isinstance(e, Prod):
        parts = factors(e)
        if any(isinstance(p, Zero) for p in parts):
            return ("0",)
        if not parts:
            return ("I",)
        if len(parts) == 1:
            return object_key(parts[0])
        return ("*",) + tuple(object_key(p) for p in parts)
    if isinstance(e, Atom):
        return ("A", e.label, e.d)
    return (str(e),)


def same_object(a: ObjExpr, b: ObjExpr) -> bool:
    return a is b or object_key(a) == object_key(b)


# --- text grammar: 0 | I | 2 | A<d> | (e+e) | (e*e) -------------------------

_TOKEN = re.compile(r"\s*(?:(?P<atom>[A-Za-z]+\d+)|(?P<sym>[()+*02I]))")


def to_text(e: ObjExpr) -> str:
    """Render in the compact grammar; right-nested chains are walked iteratively."""
    pieces = []
    closers = 0
    while isinstance(e, (Sum, Prod)):
        if isinstance(e, Sum) and isinstance(e.left, Unit) and isinstance(e.right, Unit):
            break
        op = "+" if isinstance(e, Sum) else "*"
        pieces.append("(" + to_text(e.left) + op)
        closers += 1
        e = e.right
    if isinstance(e, Sum):
        tail = "2"
    elif isinstance(e, (Zero, Unit)):
        tail = "0" if isinstance(e, Zero) else "I"
    else:
        tail = f"{e.label}{e.d}"
    return "".join(pieces) + tail + ")" * closers


def parse(text: str) -> ObjExpr:
    """Parse the compact object grammar, e.g. ``"(2*(A3+I))"``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad object expression at {pos}: {text!r}")
        tokens.append(m.group("atom") or m.group("sym"))
        pos = m.end()

    def expr(i):
        if i >= len(tokens):
            raise ValueError(f"unexpected end of object expression: {text!r}")
        tok = tokens[i]
        if tok == "0":
            return ZERO, i + 1
        if tok == "I":
            return I, i + 1
        if tok == "2":
            return TWO, i + 1
        if tok == "(":
            left, i = expr(i + 1)
            if i >= len(tokens) or tokens[i] not in "+*":
                raise ValueError(f"expected '+' or '*' in {text!r}")
            op = tokens[i]
            right, i = expr(i + 1)
            if i >= len(tokens) or tokens[i] != ")":
                raise ValueError(f"expected ')' in {text!r}")
            return (Sum if op == "+" else Prod)(left, right), i + 1
        m = re.fullmatch(r"([A-Za-z]+)(\d+)", tok)
        if m:
            return Atom(m.group(1), int(m.group(2))), i + 1
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    e, i = expr(0)
    if i != len(tokens):
        raise ValueError(f"trailing input in object expression: {text!r}")
    return e


# --- permutations ------------------------------------------------------------

class PermError(ValueError):
    """Raised on ill-typed composition or a non-bijective index map."""


@dataclass(frozen=True, eq=False)
class Perm:
    """A canonical isomorphism ``source -> target`` as an index map.

    ``map[i]`` is the target basis index of source basis index ``i``.
    """

    source: ObjExpr
    target: ObjExpr
    map: np.ndarray

    def __post_init__(self):
        m = np.array(self.map, dtype=np.int64)
        n = self.source.dim
        if self.target.dim != n:
            raise PermError(f"dim mismatch: {self.source} has {n}, {self.target} has {self.target.dim}")
        if m.shape != (n,):
            raise PermError(f"map has shape {m.shape}, expected ({n},)")
        if n and not np.array_equal(np.sort(m), np.arange(n)):
            raise PermError("map is not a bijection")
        m.setflags(write=False)
        object.__setattr__(self, "map", m)

    @property
    def dim(self) -> int:
        return self.source.dim

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.map, np.arange(self.dim)))

    def same_map(self, other: "Perm") -> bool:
        return bool(np.array_equal(self.map, other.map))

    def __eq__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        return (same_object(self.source, other.source)
                and same_object(self.target, other.target)
                and self.same_map(other))

    def __hash__(self):
        return hash(self.map.tobytes())

    def __matmul__(self, other: "Perm") -> "Perm":
        return compose_perm(self, other)

    def __repr__(self):
        return f"Perm({self.source} -> {self.target}, {self.map.tolist()})"


def identity_perm(x: ObjExpr) -> Perm:
    return Perm(x, x, np.arange(x.dim))


def invert(p: Perm) -> Perm:
    inv = np.empty_like(p.map)
    inv[p.map] = np.arange(p.dim)
    return Perm(p.target, p.source, inv)


def compose_perm(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    if not same_object(q.target, p.source):
        raise PermError(f"cannot compose: {q.target} is not {p.source}")
    return Perm(q.source, p.target, p.map[q.map])


def ptensor(p: Perm, q: Perm) -> Perm:
    """Multiplicative tensor of two permutations (lexicographic indices)."""
    m = (p.map[:, None] * q.dim + q.map[None, :]).reshape(-1)
    return Perm(Prod(p.source, q.source), Prod(p.target, q.target), m)


def psum(*ps: Perm) -> Perm:
    """Additive tensor of permutations: block-wise relabelling."""
    offsets = np.cumsum([0] + [p.dim for p in ps])
    m = np.concatenate([p.map + off for p, off in zip(ps, offsets)]) if ps else np.arange(0)
    return Perm(osum(*(p.source for p in ps)), osum(*(p.target for p in ps)), m)


def dl_multi_perm(a: ObjExpr, parts: Sequence[ObjExpr]) -> Perm:
    """``A*(B1+...+Bk) -> (A*B1)+...+(A*Bk)``; the k-ary left distributor."""
    da = a.dim
    dims = np.array([b.dim for b in parts], dtype=np.int64)
    total = int(dims.sum())
    src_off = np.concatenate([[0], np.cumsum(dims)[:-1]]) if len(parts) else dims
    tgt_off = da * src_off
    m = np.empty(da * total, dtype=np.int64)
    for i, db in enumerate(dims):
        s = np.arange(db)
        for x in range(da):
            m[x * total + src_off[i] + s] = tgt_off[i] + x * db + s
    source = Prod(a, osum(*parts))
    target = osum(*(Prod(a, b) for b in parts))
    return Perm(source, target, m)


def dl_perm(a: ObjExpr, b: ObjExpr, c: ObjExpr) -> Perm:
    return dl_multi_perm(a, [b, c])


def dr_perm(x: ObjExpr, y: ObjExpr, z: ObjExpr) -> Perm:
    # (X+Y)*Z: index (s, t) -> s*dZ + t already lists X*Z before Y*Z.
    return Perm(Prod(Sum(x, y), z), Sum(Prod(x, z), Prod(y, z)),
                np.arange((x.dim + y.dim) * z.dim))


def sigma_perm(x: ObjExpr, y: ObjExpr) -> Perm:
    """Multiplicative symmetry ``X*Y -> Y*X``: the perfect shuffle."""
    dx, dy = x.dim, y.dim
    m = (np.arange(dx)[:, None] + dx * np.arange(dy)[None, :]).reshape(-1)
    return Perm(Prod(x, y), Prod(y, x), m)


def s_perm(a: ObjExpr, b: ObjExpr) -> Perm:
    """Additive symmetry ``A+B -> B+A``: rotate the two blocks."""
    da, db = a.dim, b.dim
    m = np.concatenate([db + np.arange(da), np.arange(db)])
    return Perm(Sum(a, b), Sum(b, a), m)


def lambda_perm(n: int, x: ObjExpr) -> Perm:
    """``2^{*n} * X -> X + ... + X`` (2^n summands), built inductively from dr."""
    if n < 1:
        raise ValueError("lambda_perm needs n >= 1")
    lam = dr_perm(I, I, x)
    for k in range(2, n + 1):
        inner = osum(*([x] * 2 ** (k - 1)))
        step = dr_perm(I, I, inner)
        lam = compose_perm(step, ptensor(identity_perm(TWO), lam))
    return lam

