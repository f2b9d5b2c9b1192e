"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s``.
"""

import json
import time
from fractions import Fraction

import numpy as np

from distcirc.cli import main
from distcirc.coherence import run_suite
from distcirc.iterator import build_efficient, build_naive, gate_counts
from distcirc.morphisms import from_matrix
from distcirc.quantum import swap_decomposition_check
from distcirc.sampling import random_unitary, rng_for
from distcirc.shapes import Atom, dr_perm
from distcirc.shor import control_distribution, convergents
from distcirc.suites import iterator_suite, oracle_action_report, qft_unitarity_report

SEED = 20100501


def verdict(num, title, ok, detail):
    print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def test_1_circuit_equivalence():
    t0 = time.perf_counter()
    reps = list(iterator_suite(SEED, trials=20))
    elapsed = time.perf_counter() - t0
    cplx = [r for r in reps if r.instance["semiring"] == "complex"]
    perm = [r for r in reps if r.instance["semiring"] == "boolean"]
    worst = max(r.discrepancy for r in cplx)
    ok = (len(cplx) == 6 * 3 * 20 and worst <= 1e-10
          and all(r.discrepancy == 0 for r in perm) and elapsed < 60)
    verdict(1, "efficient vs naive iterator under lambda", ok,
            f"{len(cplx)} unitary cases max {worst:.2e}, {len(perm)} permutation cases exact, {elapsed:.1f}s")


def _best(fn, repeat=7):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_2_exponential_gap():
    counts_ok = all(gate_counts(n) == {"naive": 2**n - 1, "efficient": n} for n in range(1, 11))
    f = from_matrix(random_unitary(2, rng_for(SEED, "acceptance", 2)), Atom("X", 2))
    build_naive(f, 1024), build_efficient(f, 10)  # warm caches
    t_naive = _best(lambda: build_naive(f, 1024))
    t_eff = _best(lambda: build_efficient(f, 10))
    ratio = t_naive / t_eff
    ok = counts_ok and gate_counts(10) == {"naive": 1023, "efficient": 10} and ratio >= 50
    verdict(2, "gate counts and build-time gap", ok,
            f"n=10 counts (1023, 10), naive {t_naive * 1e3:.2f} ms, efficient {t_eff * 1e3:.3f} ms, ratio {ratio:.0f}x")


def test_3_oracle_action():
    rep = oracle_action_report(6, 5, SEED)
    verdict(3, "|a>psi -> |a>U^a psi for all 64 a", rep.discrepancy <= 1e-10,
            f"max error {rep.discrepancy:.2e}")


def test_4_coherence_suite():
    reps = list(run_suite(trials=100, seed=SEED, max_dim=5))
    failed = [r for r in reps if not r.passed]
    exact_ok = all(r.discrepancy == 0 for r in reps
                   if r.name == "deltasym" or r.instance.get("semiring") == "boolean")
    names = sorted({r.name for r in reps})
    ok = not failed and exact_ok and len(reps) == 100 * 4 * 2 + 100
    verdict(4, "coherence diagrams", ok, f"{len(reps)} instances of {names}, {len(failed)} failures")


def _factor(capsys, K, seed):
    t = time.perf_counter()
    code = main(["factor", "--K", str(K), "--seed", str(seed), "--json"])
    elapsed = time.perf_counter() - t
    return code, json.loads(capsys.readouterr().out), elapsed


def test_5_shor_end_to_end(capsys):
    c15, r15, t15 = _factor(capsys, 15, 7)
    c21, r21, t21 = _factor(capsys, 21, 3)
    p = control_distribution(7, 15, 8)
    mass = float(p[[0, 64, 128, 192]].sum())
    ok = (c15 == 0 and set(r15["factors"]) == {3, 5} and r15["attempts"] <= 8 and t15 <= 10
          and c21 == 0 and set(r21["factors"]) == {3, 7} and r21["attempts"] <= 8 and t21 <= 10
          and mass >= 0.99)
    with capsys.disabled():
        verdict(5, "factoring 15 and 21, exact peaks", ok,
                f"15 -> {r15['factors']} in {r15['attempts']} attempts {t15:.2f}s; "
                f"21 -> {r21['factors']} in {r21['attempts']} attempts {t21:.2f}s; peak mass {mass:.12f}")


def test_6_continued_fractions():
    last = convergents(192, 256)[-1]
    rng = rng_for(SEED, "acceptance", 6)
    bad = 0
    for _ in range(1000):
        Q = int(rng.integers(1, 2**20))
        y = int(rng.integers(0, Q))
        for p, q in convergents(y, Q):
            bad += abs(Fraction(y, Q) - Fraction(p, q)) > Fraction(1, q * q)
    verdict(6, "convergents", last == (3, 4) and bad == 0,
            f"192/256 ends at {last}, {bad} bound violations over 1000 pairs")


def test_7_structural_identities():
    rng = rng_for(SEED, "acceptance", 7)
    dr_bad = 0
    for _ in range(200):
        dx, dy, dz = (int(v) for v in rng.integers(1, 9, size=3))
        dr_bad += not dr_perm(Atom("X", dx), Atom("Y", dy), Atom("Z", dz)).is_identity()
    swap = swap_decomposition_check()
    qft = qft_unitarity_report(10)
    ok = dr_bad == 0 and swap.discrepancy == 0 and qft.discrepancy <= 1e-10
    verdict(7, "dr identity, three-CNOT swap, QFT unitarity", ok,
            f"dr non-identity {dr_bad}/200, swap discrepancy {swap.discrepancy}, "
            f"max |F*F - I| {qft.discrepancy:.2e} for n <= 10")
