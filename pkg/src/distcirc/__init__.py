"""Strongly distributive matrix categories, the controlled-power iterator and Shor's oracle."""

__version__ = "0.1.0"

from .shapes import (  # noqa: E402
    I, TWO, ZERO, Atom, Perm, PermError, Prod, Sum, Unit, Zero, compose_perm, dim, dl_perm,
    dr_perm, identity_perm, invert, lambda_perm, parse, s_perm, sigma_perm, to_text,
)
from .morphisms import (  # noqa: E402
    BOOLEAN, COMPLEX, Mor, MorError, Semiring, compose, dsum, identity, make_semiring, mtensor,
    perm_to_mor, power,
)
from .coherence import DiagramReport, delta  # noqa: E402
from .iterator import gate_counts, iterate_efficient, iterate_naive, stage, verify_equivalence  # noqa: E402
from .quantum import Circuit, Gate, StateVec, apply, ctrl0, ctrl1, qft, sample  # noqa: E402
from .shor import FactorRun, convergents, extract_factors, factor, mod_mult_perm, oracle, period_find  # noqa: E402
