"""Period finding and factoring on top of the factorised iterator.

The target register holds residues mod ``K`` padded to ``2**m`` basis
states; ``U|p> = |r p mod K>`` for ``p < K`` and fixes the padding.  The
oracle is the ``n``-stage iterator of ``U`` in which stage ``k`` multiplies
by ``r**(2**k) mod K``, a multiplier obtained by classical repeated squaring,
so every stage is a fresh permutation and no matrix power is formed.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .quantum import Circuit, Gate, StateVec, apply, marginal, sample
from .sampling import DEFAULT_SEED, rng_for
from .shapes import Atom, Perm

__all__ = [
    "ModMulPerm", "FactorRun", "mod_mult_perm", "target_width", "oracle", "shor_circuit",
    "period_find", "convergents", "extract_factors", "factor", "multiplicative_order",
    "MULTIPLE_BOUND", "control_distribution",
]

# Candidate periods q from convergents are also tried as 2q and 3q.
MULTIPLE_BOUND = 3


@dataclass(frozen=True)
class ModMulPerm:
    r: int
    K: int
    m: int
    perm: Perm


def target_width(K: int) -> int:
    """Smallest ``m`` with ``2**m >= K``."""
    return max(1, (K - 1).bit_length())


def mod_mult_perm(r: int, K: int, m: Optional[int] = None) -> ModMulPerm:
    if K < 2:
        raise ValueError(f"modulus must be >= 2, got {K}")
    if math.gcd(r, K) != 1:
        raise ValueError(f"base {r} is not coprime to {K}")
    m = target_width(K) if m is None else m
    if (1 << m) < K:
        raise ValueError(f"2**{m} target states cannot hold residues mod {K}")
    size = 1 << m
    idx = np.arange(size)
    idx[:K] = (r * np.arange(K)) % K
    t = Atom("T", size)
    return ModMulPerm(r % K, K, m, Perm(t, t, idx))


def multiplicative_order(r: int, K: int) -> int:
    """Order of ``r`` mod ``K`` by direct iteration."""
    if math.gcd(r, K) != 1:
        raise ValueError(f"{r} is not invertible mod {K}")
    x, s = r % K, 1
    while x != 1 % K:
        x = (x * r) % K
        s += 1
    return s


def oracle(r: int, K: int, n: int, m: Optional[int] = None) -> Circuit:
    """``|x>|y> -> |x>|r^x y mod K>`` as ``n`` singly controlled multiplications."""
    if n < 1:
        raise ValueError("the oracle needs at least one control qubit")
    mm = mod_mult_perm(r, K, m)
    gates = []
    c = mm.r
    for k in range(n):
        gates.append(Gate("ctrl_modmul", (k,), c, f"modmul:{K}"))
        c = (c * c) % K
    return Circuit(n, 1 << mm.m, gates)


def shor_circuit(r: int, K: int, n: int, m: Optional[int] = None, inverse: bool = False) -> Circuit:
    """Hadamards on every control, the oracle, then a QFT on the control register."""
    orc = oracle(r, K, n, m)
    gates = [Gate("hadamard", (k,)) for k in range(n)]
    gates += orc.gates
    gates.append(Gate("iqft" if inverse else "qft", tuple(range(n))))
    return Circuit(n, orc.target_dim, gates)


def convergents(y: int, Q: int) -> list[tuple[int, int]]:
    """All continued-fraction convergents ``p/q`` of ``y/Q``."""
    if Q <= 0 or not 0 <= y < Q:
        raise ValueError(f"need 0 <= y < Q, got y={y}, Q={Q}")
    out = []
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    a, b = y, Q
    while b:
        q = a // b
        a, b = b, a - q * b
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        out.append((h1, k1))
    return out


def extract_factors(r: int, s: int, K: int) -> Optional[tuple[int, int]]:
    if s % 2:
        return None
    x = pow(r, s // 2, K)
    if x == K - 1:
        return None
    f1, f2 = math.gcd(x - 1, K), math.gcd(x + 1, K)
    if 1 < f1 < K and 1 < f2 < K:
        return f1, f2
    return None


@dataclass
class FactorRun:
    K: int
    base: Optional[int] = None
    controls: Optional[int] = None
    shots: int = 0
    seed: Optional[int] = None
    counts: dict = field(default_factory=dict)
    convergents: list = field(default_factory=list)
    period: Optional[int] = None
    factors: Optional[list] = None
    attempts: int = 0
    method: str = "none"
    history: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["counts"] = {str(k): v for k, v in sorted(self.counts.items())}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _period_from_outcome(r: int, K: int, y: int, Q: int):
    convs = convergents(y, Q)
    for _, q in convs:
        if q < 1 or q > K:
            continue
        for mult in range(1, MULTIPLE_BOUND + 1):
            if pow(r, mult * q, K) == 1:
                return mult * q, convs
    return None, convs


def period_find(r: int, K: int, n: Optional[int] = None, shots: int = 32,
                seed: int = DEFAULT_SEED, inverse: bool = False) -> FactorRun:
    """One quantum period-finding run for base ``r`` mod ``K``.

    Outcomes are post-processed in order of decreasing count (ties by
    value); the first convergent denominator ``q`` for which some
    ``r**(j q) = 1 mod K`` (``j <= MULTIPLE_BOUND``) is the period.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    m = target_width(K)
    n = 2 * m if n is None else n
    circ = shor_circuit(r, K, n, m, inverse)
    state = apply(circ, StateVec.basis(n, 1 << m, 0, 1))
    counts = sample(state, "controls", shots, seed)
    run = FactorRun(K, r % K, n, shots, seed, counts)
    Q = 1 << n
    for y, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        s, convs = _period_from_outcome(r, K, y, Q)
        run.convergents.append({"y": y, "convergents": [list(c) for c in convs]})
        if s is not None:
            run.period = s
            break
    return run


def control_distribution(r: int, K: int, n: int, inverse: bool = False) -> np.ndarray:
    """Exact post-QFT outcome probabilities on the control register."""
    m = target_width(K)
    state = apply(shor_circuit(r, K, n, m, inverse), StateVec.basis(n, 1 << m, 0, 1))
    return marginal(state, "controls")


def _is_prime(K: int) -> bool:
    if K < 2:
        return False
    for p in range(2, math.isqrt(K) + 1):
        if K % p == 0:
            return False
    return True


def _perfect_power(K: int) -> Optional[int]:
    for e in range(2, K.bit_length() + 1):
        b = round(K ** (1 / e))
        for c in (b - 1, b, b + 1):
            if c > 1 and c ** e == K:
                return c
    return None


def factor(K: int, n: Optional[int] = None, shots: int = 32, seed: int = DEFAULT_SEED,
           max_attempts: int = 8, base: Optional[int] = None, inverse: bool = False) -> FactorRun:
    """Find a nontrivial factor of ``K``.

    Even ``K``, prime ``K`` and perfect powers are settled classically.
    Otherwise each attempt draws a base from the stream ``(seed, "factor",
    attempt)`` (or uses ``base``), takes the gcd shortcut when the base shares
    a factor with ``K``, and runs period finding followed by
    :func:`extract_factors`.
    """
    if K < 4:
        raise ValueError(f"nothing to factor below 4, got {K}")
    run = FactorRun(K, controls=n, shots=shots, seed=seed)
    if K % 2 == 0:
        run.factors, run.method = [2, K // 2], "even"
        return run
    if _is_prime(K):
        run.method = "prime"
        return run
    root = _perfect_power(K)
    if root is not None:
        run.factors, run.method = [root, K // root], "perfect_power"
        return run

    for attempt in range(max_attempts):
        run.attempts = attempt + 1
        rng = rng_for(seed, "factor", attempt)
        r = base if base is not None else int(rng.integers(2, K))
        g = math.gcd(r, K)
        if g > 1:
            run.base, run.factors, run.method = r, sorted([g, K // g]), "gcd"
            run.counts, run.convergents, run.period = {}, [], None
            run.history.append({"base": r, "gcd": g})
            return run
        sub_seed = int(rng.integers(2 ** 63))
        pf = period_find(r, K, n, shots, sub_seed, inverse)
        found = extract_factors(r, pf.period, K) if pf.period else None
        run.history.append({"base": r, "period": pf.period, "factors": list(found) if found else None})
        run.base, run.controls, run.counts = r, pf.controls, pf.counts
        run.convergents, run.period, run.seed = pf.convergents, pf.period, seed
        if found:
            run.factors, run.method = sorted(found), "period"
            return run
    return run
