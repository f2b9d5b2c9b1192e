import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distcirc.iterator import iterate_efficient
from distcirc.morphisms import BOOLEAN, Mor, discrepancy, perm_to_mor, power, relabel
from distcirc.quantum import StateVec, apply, multi_ctrl
from distcirc.shapes import lambda_perm
from distcirc.shor import (
    MULTIPLE_BOUND, FactorRun, control_distribution, convergents, extract_factors, factor,
    mod_mult_perm, multiplicative_order, oracle, period_find, shor_circuit, target_width,
)

moduli = st.integers(min_value=2, max_value=64)


def coprime_base(K, seed):
    rng = np.random.default_rng(seed)
    while True:
        r = int(rng.integers(1, K + 1))
        if math.gcd(r, K) == 1:
            return r


# --- modular multiplication ---------------------------------------------------------------

def test_mod_mult_examples():
    assert mod_mult_perm(1, 15, 4).perm.is_identity()
    m = mod_mult_perm(7, 15, 4).perm.map
    assert (m[1], m[7], m[4], m[13]) == (7, 4, 13, 1)
    assert m[15] == 15


def test_mod_mult_errors():
    with pytest.raises(ValueError):
        mod_mult_perm(5, 15, 4)
    with pytest.raises(ValueError):
        mod_mult_perm(2, 15, 3)


@given(moduli, st.integers(0, 2**16))
def test_mod_mult_homomorphism(K, seed):
    r, r2 = coprime_base(K, seed), coprime_base(K, seed + 1)
    a, b = mod_mult_perm(r, K), mod_mult_perm(r2, K)
    ab = mod_mult_perm(r * r2 % K, K)
    assert a.perm.map[b.perm.map][:K].tolist() == ab.perm.map[:K].tolist()


@given(moduli, st.integers(0, 2**16))
def test_mod_mult_order(K, seed):
    r = coprime_base(K, seed)
    p = mod_mult_perm(r, K).perm.map
    idx = np.arange(K)
    cur, s = p[idx], 1
    while not np.array_equal(cur, idx):
        cur, s = p[cur], s + 1
    assert s == multiplicative_order(r, K)


def test_target_width():
    assert [target_width(K) for K in (2, 3, 4, 5, 15, 16, 17, 21)] == [1, 2, 2, 3, 4, 4, 5, 5]


# --- oracle --------------------------------------------------------------------------------

@pytest.mark.parametrize("r,K,n", [(7, 15, 8), (2, 15, 5), (2, 21, 6), (5, 21, 6)])
def test_oracle_action(r, K, n):
    circ = oracle(r, K, n)
    assert len(circ.gates) == n
    for x in range(1 << n):
        out = apply(circ, StateVec.basis(n, circ.target_dim, x, 1))
        j = int(np.argmax(np.abs(out.amplitudes)))
        assert divmod(j, circ.target_dim) == (x, pow(r, x, K))
        assert abs(out.amplitudes[j]) == pytest.approx(1.0, abs=1e-12)


def test_oracle_fixed_point():
    out = apply(oracle(7, 15, 8), StateVec.basis(8, 16, 4, 1))
    assert abs(out.amplitudes[4 * 16 + 1]) == pytest.approx(1.0)


def test_oracle_multipliers():
    assert [g.power for g in oracle(7, 15, 8).gates] == [7, 4, 1, 1, 1, 1, 1, 1]
    assert all(g.matrix_ref == "modmul:15" for g in oracle(7, 15, 3).gates)


@pytest.mark.parametrize("r,K,n", [(7, 15, 4), (2, 21, 3), (4, 9, 6)])
def test_oracle_equals_direct_sum(r, K, n):
    # the staged circuit against the direct sum of U^a, exactly
    mm = mod_mult_perm(r, K)
    u = perm_to_mor(mm.perm, BOOLEAN)
    circ = oracle(r, K, n)
    d = circ.target_dim
    cols = [apply(circ, StateVec.basis(n, d, i // d, i % d)).amplitudes for i in range((1 << n) * d)]
    sim = np.abs(np.stack(cols, axis=1)) > 0.5
    direct = multi_ctrl([power(u, a) for a in range(1 << n)])
    assert np.array_equal(sim, direct.entries)
    assert discrepancy(iterate_efficient(u, n), Mor(direct.dom, direct.cod, sim, BOOLEAN)) == 0


# --- continued fractions -------------------------------------------------------------------

def test_convergent_examples():
    assert convergents(0, 7) == [(0, 1)]
    assert convergents(192, 256)[-1] == (3, 4)
    assert (1, 3) in convergents(85, 256)
    with pytest.raises(ValueError):
        convergents(5, 5)


@given(st.integers(1, 2**20), st.data())
def test_convergent_bound(Q, data):
    y = data.draw(st.integers(0, Q - 1))
    convs = convergents(y, Q)
    assert Fraction(*convs[-1]) == Fraction(y, Q)
    for p, q in convs:
        assert abs(Fraction(y, Q) - Fraction(p, q)) <= Fraction(1, q * q)


# --- factors ----------------------------------------------------------------------------------

def test_extract_factors_examples():
    assert extract_factors(7, 4, 15) == (3, 5)
    assert extract_factors(2, 4, 15) == (3, 5)
    assert extract_factors(7, 3, 15) is None
    assert extract_factors(14, 2, 15) is None  # 14 = -1 mod 15


def test_period_find():
    assert period_find(7, 15, 8).period == 4
    assert period_find(2, 15, 8).period == 4
    with pytest.raises(ValueError):
        period_find(7, 15, 8, shots=0)


def test_exact_peaks():
    p = control_distribution(7, 15, 8)
    assert p[[0, 64, 128, 192]].sum() >= 1 - 1e-9
    pi = control_distribution(7, 15, 8, inverse=True)
    assert pi[[0, 64, 128, 192]].sum() >= 1 - 1e-9


def test_inverse_qft_mirrors_outcomes():
    p, pi = control_distribution(2, 21, 7), control_distribution(2, 21, 7, inverse=True)
    mirror = np.concatenate([pi[:1], pi[:0:-1]])
    assert np.allclose(p, mirror, atol=1e-12)


def test_shor_circuit_layout():
    c = shor_circuit(7, 15, 4)
    kinds = [g.kind for g in c.gates]
    assert kinds == ["hadamard"] * 4 + ["ctrl_modmul"] * 4 + ["qft"]


@pytest.mark.parametrize("K,seed,want", [(15, 7, [3, 5]), (21, 3, [3, 7]), (15, 1, [3, 5]), (35, 2, [5, 7])])
def test_factor(K, seed, want):
    run = factor(K, seed=seed)
    assert run.factors == want
    assert run.attempts <= 8
    for f in run.factors:
        assert 1 < f < K and K % f == 0


def test_factor_classical_cases():
    run = factor(22)
    assert run.factors == [2, 11] and run.method == "even" and run.counts == {}
    assert factor(13).factors is None and factor(13).method == "prime"
    assert factor(49).factors == [7, 7]
    run = factor(15, base=6)
    assert run.method == "gcd" and run.factors == [3, 5]
    with pytest.raises(ValueError):
        factor(3)


def test_factor_by_period_with_fixed_base():
    run = factor(15, base=7, seed=5)
    assert run.method == "period" and run.period == 4 and run.factors == [3, 5]
    assert run.controls == 8


def test_factor_run_json_stable():
    a = factor(21, seed=3).to_json()
    assert a == factor(21, seed=3).to_json()
    assert list(FactorRun(15).to_dict())[:10] == [
        "K", "base", "controls", "shots", "seed", "counts", "convergents", "period", "factors", "attempts"]


def test_multiple_bound_constant():
    assert MULTIPLE_BOUND == 3
