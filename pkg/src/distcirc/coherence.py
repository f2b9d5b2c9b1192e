"""The copying endofunctor and executable instances of its coherence diagrams.

Each ``check_*`` function evaluates both sides of a commuting diagram at a
concrete instance and returns a :class:`DiagramReport`.  Canonical maps are
turned into 0/1 matrices with :func:`perm_to_mor` and composed as ordinary
matrices, so the checks exercise the permutation formulas of
:mod:`distcirc.shapes` against the matrix operations of
:mod:`distcirc.morphisms`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .morphisms import (
    BOOLEAN, COMPLEX, Mor, Semiring, compose, discrepancy, dsum, identity, mtensor, perm_to_mor,
)
from .sampling import DEFAULT_SEED, random_atom, random_endo, random_mor, rng_for
from .shapes import (
    TWO, I, ObjExpr, Perm, Prod, Sum, compose_perm, dl_multi_perm, dl_perm, dr_perm,
    identity_perm, invert, psum, ptensor, s_perm, sigma_perm, to_text,
)

DEFAULT_TOLERANCE = 1e-10


@dataclass
class DiagramReport:
    name: str
    instance: dict
    discrepancy: float
    tolerance: float = DEFAULT_TOLERANCE
    passed: bool = field(init=False)

    def __post_init__(self):
        self.discrepancy = float(self.discrepancy)
        self.passed = self.discrepancy <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "diagram": self.name,
            "instance": self.instance,
            "discrepancy": self.discrepancy,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} discrepancy={self.discrepancy:.3g} {self.instance}"


def delta(f: Mor) -> Mor:
    """Copying functor on arrows: ``1_2 * f``."""
    return mtensor(identity(TWO, f.semiring), f)


def _p(p: Perm, sr: Semiring) -> Mor:
    return perm_to_mor(p, sr)


def _describe(f: Mor, **extra) -> dict:
    out = {"dom": to_text(f.dom), "cod": to_text(f.cod), "semiring": f.semiring.name}
    out.update(extra)
    return out


def check_copy(f: Mor, seed=None, tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    """``dr_{I,I,Y} . (1_2 * f) . dr_{I,I,X}^-1 == f + f``."""
    sr = f.semiring
    lhs = compose(_p(dr_perm(I, I, f.cod), sr),
                  compose(delta(f), _p(invert(dr_perm(I, I, f.dom)), sr)))
    rhs = dsum(f, f)
    return DiagramReport("copy", _describe(f, seed=seed), discrepancy(lhs, rhs), tol)


def diagonal_component(x: ObjExpr) -> Perm:
    """Component ``2 * X -> X + X`` of the natural iso between ``(-)+(-)`` after the diagonal and ``2 * (-)``.

    Typed as the left distributor ``dl_{X,I,I}`` after the symmetry
    ``sigma_{2,X}``; it coincides with ``dr_{I,I,X}`` as an index map.
    """
    return compose_perm(dl_perm(x, I, I), sigma_perm(TWO, x))


def check_diagonal_nat(f: Mor, seed=None, tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    sr = f.semiring
    eta_x, eta_y = diagonal_component(f.dom), diagonal_component(f.cod)
    lhs = compose(_p(eta_y, sr), delta(f))
    rhs = compose(dsum(f, f), _p(eta_x, sr))
    same_as_dr = eta_x.same_map(dr_perm(I, I, f.dom))
    return DiagramReport("diagonal_nat", _describe(f, seed=seed, component_equals_dr=same_as_dr),
                         discrepancy(lhs, rhs), tol)


def _middle_swap(a: ObjExpr, b: ObjExpr) -> Perm:
    # 2 * A * 2 * B -> 2 * 2 * A * B
    return ptensor(ptensor(identity_perm(TWO), sigma_perm(a, TWO)), identity_perm(b))


def check_monoidality(a: ObjExpr, b: ObjExpr, f: Mor, g: Mor, seed=None,
                      tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    """Additive monoidality of the copying functor and the multiplicative obstruction.

    ``f : A -> A'`` and ``g : B -> B'``.  Checks the square
    ``dl_{2,A',B'} . delta(f+g) == (delta f + delta g) . dl_{2,A,B}`` and the
    conjugation ``delta(f) * delta(g) ~ delta^2(f * g)`` through
    ``1_2 * sigma_{A,2} * 1_B``.
    """
    sr = f.semiring
    if f.dom != a or g.dom != b:
        raise ValueError("f and g must have domains A and B")
    additive = discrepancy(
        compose(_p(dl_perm(TWO, f.cod, g.cod), sr), delta(dsum(f, g))),
        compose(dsum(delta(f), delta(g)), _p(dl_perm(TWO, a, b), sr)),
    )
    obstruction = discrepancy(
        compose(_p(_middle_swap(f.cod, g.cod), sr), mtensor(delta(f), delta(g))),
        compose(delta(delta(mtensor(f, g))), _p(_middle_swap(a, b), sr)),
    )
    da, db = a.dim, b.dim
    inst = {
        "A": to_text(a), "B": to_text(b), "semiring": sr.name, "seed": seed,
        "additive_discrepancy": float(additive),
        "obstruction_discrepancy": float(obstruction),
        "dim_delta_A_tensor_delta_B": 4 * da * db,
        "dim_delta2_AB": TWO.dim * TWO.dim * da * db,
        "dim_delta_AB": TWO.dim * da * db,
    }
    return DiagramReport("monoidality", inst, max(additive, obstruction), tol)


def _ladder_verticals(a: ObjExpr, x1: ObjExpr, x2: ObjExpr) -> list[Perm]:
    """The four canonical steps ``2*A*(X1+X2) -> AX1 + AX1 + AX2 + AX2``."""
    return [
        ptensor(sigma_perm(TWO, a), identity_perm(Sum(x1, x2))),
        ptensor(identity_perm(a), dl_perm(TWO, x1, x2)),
        ptensor(identity_perm(a), psum(dr_perm(I, I, x1), dr_perm(I, I, x2))),
        dl_multi_perm(a, [x1, x1, x2, x2]),
    ]


def deltasym_paths(a: ObjExpr, b: ObjExpr, c: ObjExpr) -> tuple[Perm, Perm]:
    """Both paths ``2*A*(B+C) -> AB + AB + AC + AC`` of the copying/symmetry diagram.

    The left path swaps the qubit past ``A`` and distributes inside; the right
    path distributes ``A`` first, then copies and reorders the middle blocks.
    """
    left = identity_perm(Prod(TWO, Prod(a, Sum(b, c))))
    for step in _ladder_verticals(a, b, c):
        left = compose_perm(step, left)

    ab, ac = Prod(a, b), Prod(a, c)
    right = ptensor(identity_perm(TWO), dl_perm(a, b, c))
    right = compose_perm(dr_perm(I, I, Sum(ab, ac)), right)
    right = compose_perm(psum(identity_perm(ab), s_perm(ac, ab), identity_perm(ac)), right)
    return left, right


def check_deltasym(a: ObjExpr, b: ObjExpr, c: ObjExpr, seed=None) -> DiagramReport:
    left, right = deltasym_paths(a, b, c)
    ok = left == right
    inst = {"A": to_text(a), "B": to_text(b), "C": to_text(c), "seed": seed}
    return DiagramReport("deltasym", inst, 0.0 if ok else 1.0, 0.0)


def check_naturality_fig1(a: ObjExpr, f: Mor, g: Mor, seed=None,
                          tol: float = DEFAULT_TOLERANCE) -> DiagramReport:
    """Every square of the naturality ladder for ``f : B -> Y`` and ``g : C -> Z``.

    Rows, top to bottom, live over ``2*A*(B+C)``, ``A*2*(B+C)``,
    ``A*(2*B + 2*C)``, ``A*(B+B+C+C)`` and ``AB+AB+AC+AC``; the
    horizontal arrows apply ``f`` and ``g`` in the matching position.
    """
    sr = f.semiring
    one_a, one_2 = identity(a, sr), identity(TWO, sr)
    rows = [
        mtensor(one_2, mtensor(one_a, dsum(f, g))),
        mtensor(one_a, mtensor(one_2, dsum(f, g))),
        mtensor(one_a, dsum(mtensor(one_2, f), mtensor(one_2, g))),
        mtensor(one_a, dsum(f, f, g, g)),
        dsum(mtensor(one_a, f), mtensor(one_a, f), mtensor(one_a, g), mtensor(one_a, g)),
    ]
    src = _ladder_verticals(a, f.dom, g.dom)
    tgt = _ladder_verticals(a, f.cod, g.cod)
    squares = []
    for k in range(4):
        squares.append(discrepancy(compose(_p(tgt[k], sr), rows[k]),
                                   compose(rows[k + 1], _p(src[k], sr))))
    down_src, down_tgt = src[0], tgt[0]
    for k in range(1, 4):
        down_src, down_tgt = compose_perm(src[k], down_src), compose_perm(tgt[k], down_tgt)
    outer = discrepancy(compose(_p(down_tgt, sr), rows[0]), compose(rows[4], _p(down_src, sr)))
    inst = _describe(f, A=to_text(a), g_dom=to_text(g.dom), g_cod=to_text(g.cod), seed=seed,
                     squares=[float(d) for d in squares], outer=float(outer))
    return DiagramReport("naturality_fig1", inst, max(squares + [outer]), tol)


def run_suite(trials: int = 100, seed: int = DEFAULT_SEED, max_dim: int = 5,
              semirings: tuple[Semiring, ...] = (COMPLEX, BOOLEAN),
              tol: float = DEFAULT_TOLERANCE) -> Iterator[DiagramReport]:
    """Random instances of every diagram, ``trials`` per diagram and semiring.

    Trial ``t`` of diagram ``name`` over ``sr`` draws from the stream
    ``(seed, "coherence", name, sr.name, t)``, so any single report can be
    regenerated in isolation.
    """
    for sr in semirings:
        for t in range(trials):
            rng = rng_for(seed, "coherence", "copy", sr.name, t)
            x = random_atom(rng, "X", max_dim)
            yield check_copy(random_endo(x, sr, rng), seed=t, tol=tol)

            rng = rng_for(seed, "coherence", "diagonal_nat", sr.name, t)
            x, y = random_atom(rng, "X", max_dim), random_atom(rng, "Y", max_dim)
            yield check_diagonal_nat(random_mor(x, y, sr, rng), seed=t, tol=tol)

            rng = rng_for(seed, "coherence", "monoidality", sr.name, t)
            a, b = random_atom(rng, "A", max_dim), random_atom(rng, "B", max_dim)
            yield check_monoidality(a, b, random_endo(a, sr, rng), random_endo(b, sr, rng),
                                    seed=t, tol=tol)

            rng = rng_for(seed, "coherence", "naturality_fig1", sr.name, t)
            a, b, c = (random_atom(rng, lab, max_dim) for lab in "ABC")
            y, z = random_atom(rng, "Y", max_dim), random_atom(rng, "Z", max_dim)
            yield check_naturality_fig1(a, random_mor(b, y, sr, rng), random_mor(c, z, sr, rng),
                                        seed=t, tol=tol)

    for t in range(trials):
        rng = rng_for(seed, "coherence", "deltasym", t)
        a, b, c = (random_atom(rng, lab, max_dim) for lab in "ABC")
        yield check_deltasym(a, b, c, seed=t)
