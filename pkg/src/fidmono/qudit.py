"""Qudit states through their 2 x 2 x ... x 2 substates.

A substate keeps two basis labels per party. Labels are 0-based. Projected
substates are never renormalized; the concurrences computed on them scale
with their weight, which is what the bounds consume.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod

import numpy as np

from fidmono import kernels
from fidmono import tolerances as tol
from fidmono.monogamy import (AB_LARGE, AC_LARGE, QUDIT, BoundParams, Regime,
                              _split_of, chain_coefficients, mu_coeff)
from fidmono.qstate import (DensityMatrix, StateVector, check_dims, partial_trace,
                            reduced_factor)


@dataclass(frozen=True, order=True)
class SubstateIndex:
    """One label pair ``(lo, hi)`` per party, ``lo < hi``."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        if any(a >= b or a < 0 for a, b in pairs):
            raise ValueError(f"label pairs must satisfy 0 <= lo < hi, got {pairs}")
        object.__setattr__(self, "pairs", pairs)

    def check(self, dims) -> None:
        if len(dims) != len(self.pairs):
            raise ValueError(f"substate {self.pairs} has the wrong number of parties for {dims}")
        for (_, b), d in zip(self.pairs, dims):
            if b >= d:
                raise ValueError(f"label {b} out of range for local dimension {d}")

    def __str__(self):
        return " ".join(f"{a},{b}" for a, b in self.pairs)


def n_substates(dims) -> int:
    return prod(comb(d, 2) for d in check_dims(dims))


def enumerate_substates(dims) -> list[SubstateIndex]:
    """All substates of ``dims`` in lexicographic order."""
    dims = check_dims(dims)
    per_party = [list(combinations(range(d), 2)) for d in dims]
    return [SubstateIndex(tuple(c)) for c in product(*per_party)]


def _global_indices(idx: SubstateIndex, dims: tuple[int, ...]) -> np.ndarray:
    # row-major over the substate, party 0 slowest, same as the parent ordering
    grids = np.meshgrid(*[np.array(p) for p in idx.pairs], indexing="ij")
    return np.ravel_multi_index(tuple(g.ravel() for g in grids), dims)


@lru_cache(maxsize=64)
def _substate_table(dims: tuple[int, ...]):
    subs = enumerate_substates(dims)
    return subs, np.stack([_global_indices(s, dims) for s in subs])


def project_substate_pure(psi: StateVector, idx: SubstateIndex) -> StateVector:
    idx.check(psi.dims)
    sel = _global_indices(idx, psi.dims)
    return StateVector(psi.amplitudes[sel], (2,) * psi.n_parties, normalized=False)


def project_substate_mixed(rho: DensityMatrix, idx: SubstateIndex) -> DensityMatrix:
    """Principal submatrix of ``rho`` on the substate's index set."""
    idx.check(rho.dims)
    sel = _global_indices(idx, rho.dims)
    return DensityMatrix(rho.entries[np.ix_(sel, sel)], (2,) * rho.n_parties,
                         normalized=False, validate=False)


def _pairsum_sq(amplitudes: np.ndarray, dims) -> float:
    return float(kernels.pairsum_sq(np.reshape(amplitudes, (dims[0], -1))))


def concurrence_pure_pairsum(psi: StateVector) -> float:
    """First-party-vs-rest concurrence from the sum over amplitude 2x2 minors."""
    if abs(psi.norm_sq - 1.0) > tol.STRUCTURAL:
        raise ValueError("concurrence_pure_pairsum needs a normalized state")
    return float(np.sqrt(_pairsum_sq(psi.amplitudes, psi.dims)))


def _pair_concurrence_sub(sub, j: int) -> float:
    # sub is an all-qubit projected substate (pure or mixed)
    if isinstance(sub, StateVector):
        return float(kernels.wootters_from_factor(reduced_factor(sub, (0, j))))
    return float(kernels.wootters(partial_trace(sub, (0, j)).entries))


def substate_pair_concurrence(state, idx: SubstateIndex, pair=(0, 1)) -> float:
    """Wootters concurrence of the (A1, Aj) reduction of one projected substate."""
    i, j = pair
    if i != 0 or j == 0:
        raise ValueError("pair must be (0, j) with j > 0")
    if not 0 < j < state.n_parties:
        raise ValueError(f"party {j} out of range")
    if isinstance(state, StateVector):
        sub = project_substate_pure(state, idx)
    else:
        sub = project_substate_mixed(state, idx)
    return _pair_concurrence_sub(sub, j)


def _prefactor_base(dims) -> float:
    return 1.0 / prod(d - 1 for d in dims)


def lemma3_rhs_pure(psi: StateVector) -> float:
    """Weighted substate sum that lower-bounds C^2(A1|A2A3) for a pure state."""
    if psi.n_parties != 3:
        raise ValueError(f"needs a tripartite profile, got {psi.dims}")
    if abs(psi.norm_sq - 1.0) > tol.STRUCTURAL:
        raise ValueError("lemma3_rhs_pure needs a normalized state")
    _, table = _substate_table(psi.dims)
    total = sum(_pairsum_sq(psi.amplitudes[sel], (2, 2, 2)) for sel in table)
    return _prefactor_base(psi.dims) * total


@dataclass(frozen=True)
class SubstateContribution:
    index: SubstateIndex
    concurrences: tuple[float, ...]
    branch: str | None
    value: float


@dataclass(frozen=True)
class QuditBoundReport:
    bound: float
    prefactor: float
    contributions: list[SubstateContribution] = field(repr=False)

    @property
    def n_satisfied(self) -> int:
        return sum(c.branch is not None for c in self.contributions)

    @property
    def all_satisfied(self) -> bool:
        return self.n_satisfied == len(self.contributions)

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "prefactor": self.prefactor,
            "substates": len(self.contributions),
            "substates_satisfying_hypothesis": self.n_satisfied,
            "contributions": [
                {"substate": [list(p) for p in c.index.pairs],
                 "concurrences": list(c.concurrences),
                 "branch": c.branch,
                 "value": c.value}
                for c in self.contributions
            ],
        }


def _qudit_params(p: BoundParams) -> None:
    if p.mode != QUDIT:
        raise ValueError("qudit bounds need BoundParams(mode='qudit')")


def _substates_of(state):
    if not isinstance(state, (StateVector, DensityMatrix)):
        raise TypeError("expected a StateVector or DensityMatrix")
    subs, table = _substate_table(state.dims)
    n = state.n_parties
    for s, sel in zip(subs, table):
        if isinstance(state, StateVector):
            yield s, StateVector(state.amplitudes[sel], (2,) * n, normalized=False)
        else:
            yield s, DensityMatrix(state.entries[np.ix_(sel, sel)], (2,) * n,
                                   normalized=False, validate=False)


def theorem3_bound(state, p: BoundParams) -> QuditBoundReport:
    """Tripartite qudit bound on C^alpha(A1|A2A3).

    The hypothesis is checked substate by substate: C^2(A1A3) <= k^w C^2(A1A2)
    selects ``ab_large`` with weights ((1/2)^x, mu) on (C12^alpha, C13^alpha),
    the mirror selects ``ac_large``; substates meeting neither contribute 0.
    """
    _qudit_params(p)
    if state.n_parties != 3:
        raise ValueError(f"needs a tripartite profile, got {state.dims}")
    a, kw = p.alpha, p.k_omega
    h, mu = 0.5**p.exponent, mu_coeff(p)
    pref = _prefactor_base(state.dims) ** (a / 2)
    out = []
    total = 0.0
    for idx, sub in _substates_of(state):
        c12 = _pair_concurrence_sub(sub, 1)
        c13 = _pair_concurrence_sub(sub, 2)
        if tol.at_least(kw * c12**2, c13**2):
            branch, val = AB_LARGE, h * c12**a + mu * c13**a
        elif tol.at_least(kw * c13**2, c12**2):
            branch, val = AC_LARGE, h * c13**a + mu * c12**a
        else:
            branch, val = None, 0.0
        val *= pref
        total += val
        out.append(SubstateContribution(idx, (c12, c13), branch, val))
    return QuditBoundReport(total, pref, out)


def chain_hypothesis_holds(csq: np.ndarray, kw: float, m: int) -> bool:
    """Per-substate hypothesis for the chained bound with split ``m``.

    ``csq`` holds C^2(A1Aj) for j = 2..n. Pair i <= m must dominate the
    tail (k^w C^2_i >= sum_{j>i} C^2_j); pair i > m must be dominated by it
    (C^2_i <= k^w sum_{j>i} C^2_j).
    """
    n = csq.size + 1
    tails = np.cumsum(csq[::-1])[::-1]
    for i in range(2, n):
        ci, tail = csq[i - 2], tails[i - 1]
        if i <= m:
            if not tol.at_least(kw * ci, tail):
                return False
        elif not tol.at_least(kw * tail, ci):
            return False
    return True


def theorem4_bound(state, p: BoundParams, regime: Regime) -> QuditBoundReport:
    """n-partite qudit bound on C^alpha(A1|A2...An).

    ``regime`` names the coefficient shape as in
    :func:`fidmono.monogamy.chain_coefficients`; each substate checks the
    matching hypothesis (see :func:`chain_hypothesis_holds`) and contributes
    0 when it fails.
    """
    _qudit_params(p)
    n = state.n_parties
    if n < 3:
        raise ValueError("needs at least three parties")
    m = _split_of(regime, n)
    coeffs = chain_coefficients(n, p.exponent, mu_coeff(p), regime)
    a, kw = p.alpha, p.k_omega
    pref = _prefactor_base(state.dims) ** (a / 2)
    label = regime if isinstance(regime, str) else f"split:{m}"
    out = []
    total = 0.0
    for idx, sub in _substates_of(state):
        cs = np.array([_pair_concurrence_sub(sub, j) for j in range(1, n)])
        if chain_hypothesis_holds(cs**2, kw, m):
            branch, val = label, pref * float(np.dot(coeffs, cs**a))
        else:
            branch, val = None, 0.0
        total += val
        out.append(SubstateContribution(idx, tuple(cs), branch, val))
    return QuditBoundReport(total, pref, out)
