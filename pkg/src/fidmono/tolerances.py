"""Numerical tolerances shared by the whole package."""

#: Hermiticity, PSD and trace checks on states.
STRUCTURAL = 1e-10
#: Algebraic identities (trace preservation, homogeneity, ...).
ALGEBRAIC = 1e-12
#: Acceptance of user-supplied matrices as Hermitian.
INPUT = 1e-8
#: Concurrence allowed to exceed 1 by this much before it is an error.
SPILL = 1e-9
#: Relative slack toward acceptance in regime/condition comparisons.
CONDITION = 1e-12


def at_least(a: float, b: float, rel: float = CONDITION) -> bool:
    """``a >= b`` up to a slack relative to the larger magnitude."""
    return a >= b - rel * max(abs(a), abs(b))
