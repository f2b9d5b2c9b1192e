"""The iterator ``!^N(f) = f^0 + f^1 + ... + f^(N-1)`` in naive and factorised form.

The naive form is the block direct sum over ``N`` copies of ``X``.  The
factorised form lives on ``2^{*n} * X`` and is a product of ``n`` stages,
stage ``k`` applying ``f^(2^k)`` controlled on qubit ``k``.  The canonical
isomorphism ``lambda_perm(n, X)`` carries one onto the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coherence import DEFAULT_TOLERANCE, DiagramReport
from .morphisms import (
    Mor, MorError, Semiring, compose, discrepancy, dsum, identity, mtensor, power, relabel,
)
from .quantum import Circuit, Gate, ctrl1
from .shapes import TWO, Perm, Prod, identity_perm, invert, lambda_perm, ptensor, sigma_perm, two_power

__all__ = [
    "IteratorBuild", "build_naive", "build_efficient", "iterate_naive", "iterate_efficient",
    "iterate_recursive", "stage", "apply_stages", "verify_equivalence", "gate_counts",
    "efficient_circuit", "naive_circuit", "squared_powers",
]


def _require_endo(f: Mor):
    if not f.is_endo:
        raise MorError(f"the iterator needs an endomorphism, got {f.dom} -> {f.cod}")


def squared_powers(f: Mor, n: int) -> list[Mor]:
    """``[f, f^2, f^4, ..., f^(2^(n-1))]``, each the square of the previous one."""
    _require_endo(f)
    out = [f]
    for _ in range(n - 1):
        out.append(compose(out[-1], out[-1]))
    return out


@dataclass
class IteratorBuild:
    """A constructed iterator, kept in its native factorised shape.

    ``blocks`` holds the ``2**n`` powers ``f^a`` for the naive form and the
    ``n`` controlled blocks ``ctrl1(f^(2^k))`` for the efficient one.  The
    dense ``result`` is only materialised on first access.
    """

    n: int
    base: Mor
    form: str
    blocks: list
    powers_computed: int
    _result: Optional[Mor] = field(default=None, repr=False)

    @property
    def stage_count(self) -> int:
        return len(self.blocks)

    @property
    def result(self) -> Mor:
        if self._result is None:
            if self.form == "naive":
                self._result = dsum(*self.blocks)
            else:
                x = self.base.dom
                obj = Prod(two_power(self.n), x)
                eye = identity(obj, self.base.semiring)
                powers = [_target_block(b, x) for b in self.blocks]
                self._result = Mor(obj, obj, apply_stages(powers, eye.entries, self.n, self.base.semiring),
                                   self.base.semiring)
        return self._result


def _target_block(ctrl: Mor, x) -> np.ndarray:
    # Lower-right block of a singly controlled operation on 2 * X.
    d = x.dim
    return ctrl.entries[d:, d:]


def build_naive(f: Mor, N: int) -> IteratorBuild:
    _require_endo(f)
    if N < 1:
        raise ValueError("the iterator needs N >= 1")
    blocks = [power(f, a) for a in range(N)]
    n = max(N - 1, 0).bit_length()
    return IteratorBuild(n, f, "naive", blocks, powers_computed=N)


def build_efficient(f: Mor, n: int) -> IteratorBuild:
    if n < 1:
        raise ValueError("the efficient iterator needs n >= 1")
    pw = squared_powers(f, n)
    return IteratorBuild(n, f, "efficient", [ctrl1(p) for p in pw], powers_computed=n - 1)


def iterate_naive(f: Mor, N: int) -> Mor:
    """``f^0 + f^1 + ... + f^(N-1)`` on ``N`` copies of ``X``."""
    return build_naive(f, N).result


def iterate_efficient(f: Mor, n: int) -> Mor:
    """The ``n``-stage factorised iterator on ``2^{*n} * X``."""
    return build_efficient(f, n).result


def apply_stages(blocks: list, m: np.ndarray, n: int, semiring: Semiring) -> np.ndarray:
    """Left-multiply ``m`` (rows over ``2^{*n} * X``) by every stage in order.

    ``blocks[k]`` is the target matrix ``f^(2^k)``; stage ``k`` acts on the
    rows whose control qubit ``k`` is set.  Costs ``O(n * rows * cols * d)``
    rather than the ``O(n * rows^3)`` of dense composition.
    """
    out = np.array(m, copy=True)
    cols = out.shape[1]
    for k, g in enumerate(blocks):
        d = g.shape[0]
        high = 1 << (n - 1 - k)
        low = 1 << k
        view = out.reshape(high, 2, low, d, cols)
        sub = view[:, 1]
        moved = np.moveaxis(sub, 2, 0).reshape(d, -1)
        res = semiring.matmul(g, moved).reshape(d, high, low, cols)
        view[:, 1] = np.moveaxis(res, 0, 2)
    return out


def _qubit_to_bottom(n: int, k: int, x) -> Perm:
    # On 2^{*n} * X: move control qubit k (tensor position n-1-k) next to X.
    pos = n - 1 - k
    swap = ptensor(identity_perm(two_power(pos)), sigma_perm(TWO, two_power(k)))
    return ptensor(swap, identity_perm(x))


def stage(f: Mor, k: int, n: int, fpow: Optional[Mor] = None) -> Mor:
    """Dense stage ``k`` of ``n``: ``f^(2^k)`` controlled on qubit ``k``.

    Built as ``1_{2^{*(n-1)}} * ctrl1(f^(2^k))`` conjugated by the symmetry
    that brings qubit ``k`` down next to the target.
    """
    _require_endo(f)
    if not 0 <= k < n:
        raise ValueError(f"stage index {k} out of range for {n} controls")
    g = fpow if fpow is not None else power(f, 1 << k)
    core = mtensor(identity(two_power(n - 1), f.semiring), ctrl1(g))
    p = _qubit_to_bottom(n, k, f.dom)
    return relabel(invert(p), core, p)


def iterate_recursive(f: Mor, n: int) -> Mor:
    """Factorised iterator built by doubling: ``E_n = (1_2 * E_(n-1)) . stage(n-1)``.

    The new stage controls ``f^(2^(n-1))`` from the new most significant
    qubit, brought into place by ``sigma_{2, 2^{*(n-1)}}``.
    """
    _require_endo(f)
    pw = squared_powers(f, n)
    e = ctrl1(pw[0])
    for j in range(2, n + 1):
        e = compose(mtensor(identity(TWO, f.semiring), e), stage(f, j - 1, j, pw[j - 1]))
    return e


def verify_equivalence(f: Mor, n: int, tol: float = DEFAULT_TOLERANCE, seed=None) -> DiagramReport:
    """``lambda . efficient == naive . lambda`` as matrices on ``2^n`` copies of ``X``."""
    _require_endo(f)
    lam = lambda_perm(n, f.dom)
    lhs = relabel(lam, iterate_efficient(f, n))
    rhs = relabel(None, iterate_naive(f, 1 << n), lam)
    inst = {"n": n, "dim": f.dom.dim, "semiring": f.semiring.name, "seed": seed}
    return DiagramReport("iterator_equivalence", inst, discrepancy(lhs, rhs),
                         0.0 if f.semiring.exact else tol)


def gate_counts(n: int) -> dict:
    """Controlled blocks in each circuit; the naive ``a = 0`` block is the identity and omitted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {"naive": (1 << n) - 1, "efficient": n}


def efficient_circuit(n: int, f: Mor | None = None, target_dim: int | None = None,
                      label: str = "f") -> Circuit:
    """Singly controlled powers ``f^(2^k)`` on qubit ``k``, ``k = 0..n-1``."""
    d = f.dom.dim if f is not None else target_dim
    ops = {label: f} if f is not None else {}
    gates = [Gate("ctrl_power", (k,), 1 << k, label) for k in range(n)]
    return Circuit(n, d, gates, ops)


def naive_circuit(n: int, f: Mor | None = None, target_dim: int | None = None,
                  label: str = "f") -> Circuit:
    """One multiply-controlled ``f^a`` per nonzero register value ``a``."""
    d = f.dom.dim if f is not None else target_dim
    ops = {label: f} if f is not None else {}
    qubits = tuple(range(n))
    gates = [Gate("multi_ctrl_power", qubits, a, label) for a in range(1, 1 << n)]
    return Circuit(n, d, gates, ops)
