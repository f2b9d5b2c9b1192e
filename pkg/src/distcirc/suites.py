"""Batches of seeded checks, shared by the CLI and the acceptance tests.

Every generator yields :class:`DiagramReport` objects in a fixed order; a
report's randomness comes only from ``rng_for(seed, <suite>, ...)`` so any
single line can be reproduced on its own.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

import numpy as np

from .coherence import DEFAULT_TOLERANCE, DiagramReport, run_suite
from .iterator import efficient_circuit, verify_equivalence
from .morphisms import BOOLEAN, COMPLEX, compose, discrepancy, dsum, from_matrix, power, relabel
from .quantum import StateVec, apply, ctrl0, ctrl1, qft_matrix, swap_decomposition_check
from .sampling import DEFAULT_SEED, random_endo, random_unitary, rng_for
from .shapes import I, Atom, dr_perm, invert, lambda_perm
from .shor import oracle

__all__ = [
    "iterator_suite", "quantum_suite", "coherence_suite", "all_suites", "SUITES",
    "oracle_action_report", "qft_unitarity_report", "modexp_oracle_report",
]

ITERATOR_NS = (1, 2, 3, 4, 5, 6)
ITERATOR_DIMS = (2, 3, 4)


def coherence_suite(seed: int = DEFAULT_SEED, trials: int = 100, tol: float = DEFAULT_TOLERANCE,
                    max_dim: int = 5) -> Iterator[DiagramReport]:
    return run_suite(trials=trials, seed=seed, max_dim=max_dim, tol=tol)


def iterator_suite(seed: int = DEFAULT_SEED, trials: int = 20, tol: float = DEFAULT_TOLERANCE,
                   ns: Optional[Iterable[int]] = None, dims: Optional[Iterable[int]] = None,
                   semirings=(COMPLEX, BOOLEAN)) -> Iterator[DiagramReport]:
    """``verify_equivalence`` over every ``(n, dim, semiring, trial)``.

    Complex trials use Haar-random unitaries, boolean trials random
    permutation matrices.
    """
    ns = ITERATOR_NS if ns is None else tuple(ns)
    dims = ITERATOR_DIMS if dims is None else tuple(dims)
    for n in ns:
        for d in dims:
            x = Atom("X", d)
            for sr in semirings:
                for t in range(trials):
                    rng = rng_for(seed, "iterator", n, d, sr.name, t)
                    rep = verify_equivalence(random_endo(x, sr, rng), n, tol, seed=t)
                    yield rep


def oracle_action_report(n: int, d: int, seed: int = DEFAULT_SEED,
                         tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    """Simulated efficient circuit on ``|a> psi`` against ``|a> U^a psi`` for every ``a``."""
    rng = rng_for(seed, "oracle_action", n, d)
    u = from_matrix(random_unitary(d, rng))
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    circ = efficient_circuit(n, u)
    worst = 0.0
    for a in range(1 << n):
        out = apply(circ, StateVec.product(n, a, psi))
        want = np.zeros_like(out.amplitudes)
        want[a * d:(a + 1) * d] = power(u, a).entries @ psi
        worst = max(worst, float(np.max(np.abs(out.amplitudes - want))))
    return DiagramReport("oracle_action", {"n": n, "dim": d, "seed": seed}, worst, tol)


def modexp_oracle_report(r: int, K: int, n: int) -> DiagramReport:
    """``|x>|1> -> |x>|r^x mod K>`` for every ``x``, exactly."""
    circ = oracle(r, K, n)
    bad = 0
    for x in range(1 << n):
        out = apply(circ, StateVec.basis(n, circ.target_dim, x, 1))
        want = x * circ.target_dim + pow(r, x, K)
        bad += int(not np.isclose(abs(out.amplitudes[want]), 1.0, atol=0, rtol=1e-12))
    return DiagramReport("modexp_oracle", {"r": r, "K": K, "n": n}, float(bad > 0), 0.0)


def qft_unitarity_report(n_max: int = 10, tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    worst = 0.0
    for n in range(1, n_max + 1):
        f = qft_matrix(n)
        worst = max(worst, float(np.max(np.abs(f.conj().T @ f - np.eye(1 << n)))))
    return DiagramReport("qft_unitarity", {"n_max": n_max}, worst, tol)


def quantum_suite(seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOLERANCE) -> Iterator[DiagramReport]:
    yield swap_decomposition_check()
    yield qft_unitarity_report(10, tol)

    rng = rng_for(seed, "quantum", "ctrl")
    x = Atom("X", 3)
    u, v = (from_matrix(random_unitary(3, rng), x) for _ in range(2))
    dr = dr_perm(I, I, x)
    worst = max(discrepancy(relabel(dr, compose(ctrl0(u), ctrl1(v)), invert(dr)), dsum(u, v)),
                discrepancy(relabel(dr, compose(ctrl1(v), ctrl0(u)), invert(dr)), dsum(u, v)))
    yield DiagramReport("controlled_sum", {"dim": 3, "seed": seed}, worst, tol)

    yield oracle_action_report(4, 3, seed, tol)
    yield modexp_oracle_report(7, 15, 8)

    rng = rng_for(seed, "quantum", "dr")
    bad = 0
    for _ in range(50):
        dx, dy, dz = (int(v) for v in rng.integers(1, 6, size=3))
        bad += not dr_perm(Atom("X", dx), Atom("Y", dy), Atom("Z", dz)).is_identity()
    yield DiagramReport("dr_identity", {"trials": 50, "seed": seed}, float(bad > 0), 0.0)

    lam = lambda_perm(3, Atom("X", 2))
    yield DiagramReport("lambda_identity", {"n": 3, "dim": 2}, 0.0 if lam.is_identity() else 1.0, 0.0)


SUITES = ("coherence", "iterator", "quantum")


def all_suites(names=SUITES, seed: int = DEFAULT_SEED, trials: int = 20,
               tol: float = DEFAULT_TOLERANCE, ns=None, dims=None) -> Iterator[DiagramReport]:
    for name in names:
        if name == "coherence":
            yield from coherence_suite(seed, trials, tol)
        elif name == "iterator":
            yield from iterator_suite(seed, trials, tol, ns, dims)
        elif name == "quantum":
            yield from quantum_suite(seed, tol)
        else:
            raise ValueError(f"unknown suite {name!r}")
