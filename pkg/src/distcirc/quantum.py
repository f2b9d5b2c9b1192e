"""Hilbert-space instantiation: controlled operations, QFT and a statevector simulator.

Register layout.  A state lives on ``2^{*n} * X``: ``n`` control qubits
followed by a target of dimension ``d`` (not necessarily a power of two).
Control qubit ``k`` carries weight ``2**k`` in the register value, so the
most significant qubit is the leftmost tensor factor, which is also the
topmost wire when circuits are drawn.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .coherence import DEFAULT_TOLERANCE, DiagramReport
from .morphisms import (
    COMPLEX, Mor, MorError, compose, discrepancy, dsum, identity, perm_to_mor, power, relabel,
)
from .shapes import TWO, I, Prod, dl_perm, invert, lambda_perm, s_perm, sigma_perm, two_power

__all__ = [
    "NOT", "ctrl0", "ctrl1", "ctrl1_right", "multi_ctrl", "swap_decomposition_check", "qft",
    "StateVec", "Gate", "Circuit", "CircuitError", "NormDriftError", "apply", "sample",
    "marginal", "qft_matrix", "not_gate", "GATE_KINDS",
]


class CircuitError(ValueError):
    pass


class NormDriftError(RuntimeError):
    pass


def not_gate(semiring=COMPLEX) -> Mor:
    """The additive symmetry ``s_{I,I}``."""
    return perm_to_mor(s_perm(I, I), semiring)


NOT = not_gate()


def _require_endo(u: Mor):
    if not u.is_endo:
        raise MorError(f"expected an endomorphism, got {u.dom} -> {u.cod}")


def _controlled(first: Mor, second: Mor) -> Mor:
    # Block matrix on 2 * H; equals dr^-1 . (first + second) . dr because
    # dr_{I,I,H} is the identity index map.
    sr = first.semiring
    d = first.dom.dim
    m = sr.zeros((2 * d, 2 * d))
    m[:d, :d] = first.entries
    m[d:, d:] = second.entries
    obj = Prod(TWO, first.dom)
    return Mor(obj, obj, m, sr)


def ctrl0(u: Mor) -> Mor:
    """``U`` on the |0> block of a control qubit: ``(U 0; 0 I)`` on ``2 * H``."""
    _require_endo(u)
    return _controlled(u, identity(u.dom, u.semiring))


def ctrl1(v: Mor) -> Mor:
    """``V`` on the |1> block of a control qubit: ``(I 0; 0 V)`` on ``2 * H``."""
    _require_endo(v)
    return _controlled(identity(v.dom, v.semiring), v)


def ctrl1_right(v: Mor) -> Mor:
    """``V`` on ``H * 2`` controlled by the right-hand qubit, via the left distributor."""
    _require_endo(v)
    d = dl_perm(v.dom, I, I)
    return relabel(invert(d), dsum(identity(v.dom, v.semiring), v), d)


def multi_ctrl(ops: Sequence[Mor]) -> Mor:
    """Direct sum of ``2**n`` blocks selected by the control register value."""
    count = len(ops)
    n = count.bit_length() - 1
    if count < 2 or (1 << n) != count:
        raise MorError(f"need a power-of-two number (>= 2) of blocks, got {count}")
    x = ops[0].dom
    for u in ops:
        _require_endo(u)
        if u.dom != x:
            raise MorError("all blocks must act on the same object")
    lam = lambda_perm(n, x)
    return relabel(invert(lam), dsum(*ops), lam)


def swap_decomposition_check(tol: float = 0.0) -> DiagramReport:
    """Three alternating controlled NOTs equal the qubit swap ``sigma_{2,2}``.

    The two orientations of controlled NOT come from the two distributors:
    control on the left qubit through ``dr``, on the right qubit through ``dl``.
    """
    cnot = ctrl1(NOT)
    rcnot = ctrl1_right(NOT)
    lhs = compose(cnot, compose(rcnot, cnot))
    rhs = perm_to_mor(sigma_perm(TWO, TWO))
    return DiagramReport("swap_decomposition", {"gates": ["cnot", "rcnot", "cnot"]},
                         discrepancy(lhs, rhs), tol)


def qft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    if n < 1:
        raise ValueError("qft needs at least one qubit")
    size = 1 << n
    jk = np.outer(np.arange(size), np.arange(size)) % size
    sign = -1.0 if inverse else 1.0
    return np.exp(sign * 2j * np.pi * jk / size) / np.sqrt(size)


def qft(n: int, inverse: bool = False) -> Mor:
    """Dense DFT ``F[j,k] = w^{jk}/sqrt(N)`` on ``n`` qubits, ``w = exp(2 pi i / N)``."""
    q = two_power(n)
    return Mor(q, q, qft_matrix(n, inverse), COMPLEX)


# --- circuits ----------------------------------------------------------------

GATE_KINDS = ("ctrl_power", "multi_ctrl_power", "ctrl_modmul", "swap", "hadamard", "qft", "iqft", "dense")


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    * ``ctrl_power``: ``operators[matrix_ref] ** power`` on the target when
      control ``qubits[0]`` is 1.
    * ``multi_ctrl_power``: ``operators[matrix_ref] ** power`` when the listed
      controls (least significant first) read the value ``power``.
    * ``ctrl_modmul``: ``p -> power * p mod K`` on target indices ``p < K``
      when ``qubits[0]`` is 1, with ``matrix_ref == "modmul:K"``.
    * ``swap``, ``hadamard``: on the listed control qubits.
    * ``qft`` / ``iqft``: on the register formed by ``qubits``, least
      significant first.
    * ``dense``: ``operators[matrix_ref]`` on the target register.
    """

    kind: str
    qubits: tuple = ()
    power: Optional[int] = None
    matrix_ref: Optional[str] = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "qubits": list(self.qubits),
                "power": self.power, "matrix_ref": self.matrix_ref}


@dataclass
class Circuit:
    n_controls: int
    target_dim: int
    gates: list = field(default_factory=list)
    operators: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for g in self.gates:
            self._validate(g)

    def _validate(self, g: Gate):
        n = self.n_controls
        if any(not 0 <= q < n for q in g.qubits):
            raise CircuitError(f"qubit index out of range in {g}")
        if len(set(g.qubits)) != len(g.qubits):
            raise CircuitError(f"repeated qubit in {g}")
        single = {"ctrl_power", "ctrl_modmul", "hadamard"}
        if g.kind in single and len(g.qubits) != 1:
            raise CircuitError(f"{g.kind} takes exactly one qubit")
        if g.kind == "swap" and len(g.qubits) != 2:
            raise CircuitError("swap takes two qubits")
        if g.kind == "ctrl_modmul":
            k = _modulus(g)
            if k > self.target_dim:
                raise CircuitError(f"modulus {k} exceeds target dimension {self.target_dim}")
        if g.kind in ("ctrl_power", "multi_ctrl_power", "dense") and g.matrix_ref in self.operators:
            op = self.operators[g.matrix_ref]
            if op.shape != (self.target_dim, self.target_dim):
                raise CircuitError(f"operator {g.matrix_ref!r} has shape {op.shape}")

    def append(self, g: Gate) -> "Circuit":
        self._validate(g)
        self.gates.append(g)
        return self

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def to_dict(self) -> dict:
        return {"n_controls": self.n_controls, "target_dim": self.target_dim,
                "gates": [g.to_dict() for g in self.gates]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict, operators: Optional[dict] = None) -> "Circuit":
        gates = [Gate(g["kind"], tuple(g.get("qubits", ())), g.get("power"), g.get("matrix_ref"))
                 for g in doc["gates"]]
        return cls(doc["n_controls"], doc["target_dim"], gates, dict(operators or {}))


def _modulus(g: Gate) -> int:
    ref = g.matrix_ref or ""
    if not ref.startswith("modmul:"):
        raise CircuitError(f"ctrl_modmul needs matrix_ref 'modmul:K', got {ref!r}")
    return int(ref.split(":", 1)[1])


# --- statevectors ------------------------------------------------------------

class StateVec:
    """Amplitudes over ``n`` control qubits and a ``d``-dimensional target."""

    def __init__(self, n_controls: int, target_dim: int, amplitudes=None):
        self.n_controls = n_controls
        self.target_dim = target_dim
        size = (1 << n_controls) * target_dim
        if amplitudes is None:
            amplitudes = np.zeros(size, dtype=np.complex128)
            amplitudes[0] = 1.0
        amp = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size != size:
            raise CircuitError(f"expected {size} amplitudes, got {amp.size}")
        self.amplitudes = amp

    @classmethod
    def basis(cls, n_controls: int, target_dim: int, control: int = 0, target: int = 0) -> "StateVec":
        s = cls(n_controls, target_dim)
        s.amplitudes[0] = 0
        s.amplitudes[control * target_dim + target] = 1
        return s

    @classmethod
    def product(cls, n_controls: int, control: int, psi) -> "StateVec":
        """``|control> (x) psi`` with ``psi`` normalised by the caller."""
        psi = np.asarray(psi, dtype=np.complex128)
        s = cls(n_controls, psi.size)
        s.amplitudes[:] = 0
        s.amplitudes[control * psi.size:(control + 1) * psi.size] = psi
        return s

    @property
    def dims(self) -> tuple:
        return (2,) * self.n_controls + (self.target_dim,)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def control_block(self, control: int) -> np.ndarray:
        d = self.target_dim
        return self.amplitudes[control * d:(control + 1) * d]

    def copy(self) -> "StateVec":
        return StateVec(self.n_controls, self.target_dim, self.amplitudes.copy())

    def __repr__(self):
        return f"StateVec(n_controls={self.n_controls}, target_dim={self.target_dim})"


def _axis(n: int, qubit: int) -> int:
    return n - 1 - qubit


def _slice(n: int, qubit: int, bit: int):
    idx = [slice(None)] * (n + 1)
    idx[_axis(n, qubit)] = bit
    return tuple(idx)


def _apply_target(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    # Apply m on the last axis of t.
    return np.tensordot(t, m, axes=([t.ndim - 1], [1]))


def _register_apply(t: np.ndarray, n: int, qubits: Sequence[int], m_fn) -> np.ndarray:
    # Move the listed qubits (most significant first) to the front as one axis.
    axes = [_axis(n, q) for q in reversed(qubits)]
    rest = [a for a in range(t.ndim) if a not in axes]
    moved = np.transpose(t, axes + rest)
    shape = moved.shape
    flat = moved.reshape(1 << len(qubits), -1)
    flat = m_fn(flat)
    back = np.argsort(axes + rest)
    return np.transpose(flat.reshape(shape), back)


_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


class _PowerCache:
    def __init__(self, operators: dict):
        self.operators = operators
        self.cache = {}

    def get(self, ref: str, e: int) -> np.ndarray:
        key = (ref, e)
        if key not in self.cache:
            if ref not in self.operators:
                raise CircuitError(f"no operator registered under {ref!r}")
            self.cache[key] = power(self.operators[ref], e).entries
        return self.cache[key]


def apply(circuit: Circuit, state: StateVec, check_norm: bool = True,
          tol: float = DEFAULT_TOLERANCE) -> StateVec:
    """Run ``circuit`` on a copy of ``state``.

    With ``check_norm`` the norm is compared with the input norm after every
    gate and :class:`NormDriftError` is raised on drift beyond ``tol``.
    """
    if (circuit.n_controls, circuit.target_dim) != (state.n_controls, state.target_dim):
        raise CircuitError(
            f"circuit acts on ({circuit.n_controls}, {circuit.target_dim}), "
            f"state is ({state.n_controls}, {state.target_dim})")
    n = circuit.n_controls
    t = state.tensor().copy()
    powers = _PowerCache(circuit.operators)
    norm0 = state.norm()
    for g in circuit.gates:
        t = _apply_gate(g, t, n, circuit, powers)
        if check_norm and g.kind != "dense":
            drift = abs(np.linalg.norm(t) - norm0)
            if drift > tol:
                raise NormDriftError(f"norm drifted by {drift:.3g} after {g}")
    return StateVec(n, circuit.target_dim, t.reshape(-1))


def _apply_gate(g: Gate, t: np.ndarray, n: int, circuit: Circuit, powers: _PowerCache) -> np.ndarray:
    kind = g.kind
    if kind == "ctrl_power":
        sl = _slice(n, g.qubits[0], 1)
        t[sl] = _apply_target(t[sl], powers.get(g.matrix_ref, g.power))
    elif kind == "multi_ctrl_power":
        idx = [slice(None)] * (n + 1)
        for j, q in enumerate(g.qubits):
            idx[_axis(n, q)] = (g.power >> j) & 1
        idx = tuple(idx)
        t[idx] = _apply_target(t[idx], powers.get(g.matrix_ref, g.power))
    elif kind == "ctrl_modmul":
        k = _modulus(g)
        perm = np.arange(circuit.target_dim)
        perm[:k] = (g.power * np.arange(k)) % k
        src = np.empty_like(perm)
        src[perm] = np.arange(circuit.target_dim)
        sl = _slice(n, g.qubits[0], 1)
        t[sl] = t[sl][..., src]
    elif kind == "hadamard":
        s0, s1 = _slice(n, g.qubits[0], 0), _slice(n, g.qubits[0], 1)
        lo = t[s0].copy()
        hi = t[s1]
        t[s0] += hi
        t[s0] *= _H[0, 0]
        lo -= hi
        lo *= _H[0, 0]
        t[s1] = lo
    elif kind == "swap":
        t = np.swapaxes(t, _axis(n, g.qubits[0]), _axis(n, g.qubits[1])).copy()
    elif kind in ("qft", "iqft"):
        fft = np.fft.fft if kind == "iqft" else np.fft.ifft
        t = _register_apply(t, n, g.qubits, lambda m: fft(m, axis=0, norm="ortho"))
    elif kind == "dense":
        if g.matrix_ref not in circuit.operators:
            raise CircuitError(f"no operator registered under {g.matrix_ref!r}")
        t = _apply_target(t, circuit.operators[g.matrix_ref].entries)
    t = np.ascontiguousarray(t)
    return t


def marginal(state: StateVec, register="controls") -> np.ndarray:
    """Outcome probabilities of ``register``: ``"controls"``, ``"target"`` or a qubit list."""
    p = np.abs(state.tensor()) ** 2
    n = state.n_controls
    if register == "controls":
        return p.reshape(1 << n, state.target_dim).sum(axis=1)
    if register == "target":
        return p.reshape(1 << n, state.target_dim).sum(axis=0)
    axes = [_axis(n, q) for q in reversed(list(register))]
    rest = [a for a in range(p.ndim) if a not in axes]
    return np.transpose(p, axes + rest).reshape(1 << len(axes), -1).sum(axis=1)


def sample(state: StateVec, register="controls", shots: int = 1, seed: int = 0) -> dict:
    """Draw ``shots`` outcomes with ``numpy.random.default_rng(seed)``; returns sorted counts."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = marginal(state, register)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(probs.size, size=shots, p=probs)
    values, counts = np.unique(draws, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
