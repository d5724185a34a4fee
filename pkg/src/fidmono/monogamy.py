"""Scalar inequality engine and the qubit monogamy bounds.

All bounds here are functions of already-computed pairwise measure values;
they do not touch states except in :func:`verify_ckw` and
:func:`tripartite_report_for_state`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from fidmono import tolerances as tol
from fidmono.measures import (Bipartition, MeasureKind, concurrence_pure, f_measure,
                              pair_concurrence)
from fidmono.qstate import DensityMatrix, StateVector

AC_LARGE = "ac_large"
AB_LARGE = "ab_large"
ALL_SMALL = "all_small"
ALL_LARGE = "all_large"

#: A regime is one of the four names above or an integer split index m.
Regime = Union[str, int]

QUBIT = "qubit"
QUDIT = "qudit"


@dataclass(frozen=True)
class BoundParams:
    """Knobs (k, omega, alpha, eta) of a monogamy bound.

    ``mode="qubit"`` enforces k >= 1, omega >= 1, eta >= 1, 0 <= alpha <= eta/2.
    ``mode="qudit"`` enforces 0 < k <= 1, omega >= 1, alpha >= 2 and
    fixes eta = 2, so the working exponent is alpha / 2.
    """

    k: float
    omega: float
    alpha: float
    eta: float = 2.0
    mode: str = QUBIT

    def __post_init__(self):
        for name in ("k", "omega", "alpha", "eta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        k, w, a, e = self.k, self.omega, self.alpha, self.eta
        if not all(np.isfinite([k, w, a, e])):
            raise ValueError("bound parameters must be finite")
        if w < 1:
            raise ValueError(f"omega must be >= 1, got {w}")
        if self.mode == QUBIT:
            if k < 1:
                raise ValueError(f"qubit bounds need k >= 1, got {k}")
            if e < 1:
                raise ValueError(f"eta must be >= 1, got {e}")
            if not 0 <= a <= e / 2 + tol.ALGEBRAIC:
                raise ValueError(f"qubit bounds need 0 <= alpha <= eta/2, got alpha={a}, eta={e}")
        elif self.mode == QUDIT:
            # k = 0 would make the mu coefficient divide by zero
            if not 0 < k <= 1:
                raise ValueError(f"qudit bounds need 0 < k <= 1, got {k}")
            if a < 2:
                raise ValueError(f"qudit bounds need alpha >= 2, got {a}")
            if e != 2:
                raise ValueError("qudit bounds use eta = 2")
        else:
            raise ValueError(f"unknown parameter mode {self.mode!r}")

    @property
    def exponent(self) -> float:
        """The working exponent alpha / eta."""
        return self.alpha / self.eta

    @property
    def k_omega(self) -> float:
        return self.k**self.omega


def _mu(k, omega, x):
    kw = np.power(k, omega)
    return (np.power(1.0 + kw, x) - np.power(0.5, x)) / np.power(kw, x)


def mu_coeff(p: BoundParams) -> float:
    """((1 + k^w)^x - (1/2)^x) / k^(w x) with x = alpha / eta."""
    return float(_mu(p.k, p.omega, p.exponent))


def lemma1_regime(t, k, omega, x):
    """6 or 7 for the parameter regime (t, k, omega, x) falls in, else None."""
    kw = k**omega
    s = tol.CONDITION
    if omega >= 1 and 0 <= x <= 0.5 and t >= kw - s and kw >= k - s and k >= 1:
        return 6
    if omega >= 1 and x >= 1 and 0 <= t <= kw + s and kw <= k + s and k <= 1 and k > 0:
        return 7
    return None


def _lemma1_rhs(t, k, omega, x):
    return np.power(0.5, x) + _mu(k, omega, x) * np.power(t, x)


def lemma1_rhs(t: float, p: BoundParams) -> float:
    """(1/2)^x + mu t^x, a lower bound on (1 + t)^x inside either regime."""
    x = p.exponent
    if lemma1_regime(t, p.k, p.omega, x) is None:
        raise ValueError(f"t={t} with k={p.k}, omega={p.omega}, x={x} is outside both regimes")
    return float(_lemma1_rhs(t, p.k, p.omega, x))


def lemma2_rhs(fx: float, fy: float, p: BoundParams, kind=MeasureKind.BURES) -> float:
    """(1/2)^x fx + mu fy for f^alpha values fx, fy (f^eta(y) >= k^w f^eta(x) assumed)."""
    MeasureKind.parse(kind)
    if fx < 0 or fy < 0:
        raise ValueError("measure powers must be non-negative")
    return 0.5**p.exponent * fx + mu_coeff(p) * fy


def _check_regime_tripartite(regime):
    if regime not in (AC_LARGE, AB_LARGE):
        raise ValueError(f"tripartite regime must be {AC_LARGE!r} or {AB_LARGE!r}, got {regime!r}")


def theorem1_bound(m_ab: float, m_ac: float, p: BoundParams, regime: Regime) -> float:
    """Lower bound on M^alpha(A1|A2A3) from the unexponentiated pairwise measures.

    ``ac_large`` (M^eta(A1A3) >= k^w M^eta(A1A2)) puts the (1/2)^x weight on
    A1A2 and mu on A1A3; ``ab_large`` swaps the roles.
    """
    _check_regime_tripartite(regime)
    if m_ab < 0 or m_ac < 0:
        raise ValueError("pairwise measures must be non-negative")
    a = p.alpha
    small, large = (m_ab, m_ac) if regime == AC_LARGE else (m_ac, m_ab)
    return 0.5**p.exponent * small**a + mu_coeff(p) * large**a


class Remark2Bounds(NamedTuple):
    m: float
    m1: float
    m2: float
    m3: float


def remark2_bounds(m_ab: float, m_ac: float, p: BoundParams,
                   regime: Regime = AC_LARGE) -> Remark2Bounds:
    """This bound together with the three earlier ones it is compared against.

    Formulas are written for ``ac_large``; ``ab_large`` swaps the pair roles.
    """
    _check_regime_tripartite(regime)
    small, large = (m_ab, m_ac) if regime == AC_LARGE else (m_ac, m_ab)
    a, x, k, kw = p.alpha, p.exponent, p.k, p.k_omega
    h = 0.5**x
    m = theorem1_bound(m_ab, m_ac, p, regime)
    m1 = small**a + large**a
    m2 = h * small**a + ((1 + k)**x - h) / k**x * large**a
    m3 = small**a + ((1 + kw)**x - 1) / kw**x * large**a
    return Remark2Bounds(m, m1, m2, m3)


def _split_of(regime: Regime, n: int) -> int:
    """Number m such that pairs 2..m take the 'small' role (1 = none, n-1 = all)."""
    if regime == ALL_SMALL:
        return n - 1
    if regime == ALL_LARGE:
        return 1
    if isinstance(regime, (int, np.integer)) and not isinstance(regime, bool):
        if n < 4 or not 2 <= regime <= n - 2:
            raise ValueError(f"split index {regime} needs n >= 4 and 2 <= m <= n-2 (n={n})")
        return int(regime)
    raise ValueError(f"unknown n-partite regime {regime!r}")


def chain_coefficients(n: int, x: float, mu: float, regime: Regime) -> np.ndarray:
    """Weights c_2..c_n of the chained bound sum_j c_j M_{A1Aj}^alpha.

    ``all_small`` is the (1/2)^x (M12 + mu M13 + ...) + mu^(n-2) M1n shape,
    ``all_large`` the mu (M12 + (1/2)^x M13 + ...) + (1/2)^((n-2)x) M1n
    shape, and an integer m the mixed shape with pairs 2..m in the first
    pattern and m+1..n-1 in the second.
    """
    if n < 3:
        raise ValueError("chained bounds need at least three parties")
    m = _split_of(regime, n)
    h = 0.5**x
    c = np.empty(n - 1)
    for j in range(2, n):
        if j <= m:
            c[j - 2] = h * mu**(j - 2)
        else:
            c[j - 2] = mu**m * h**(j - m - 1)
    c[n - 2] = mu**(m - 1) * h**(n - m - 1)
    return c


def theorem2_bound(pairwise: Sequence[float], p: BoundParams, regime: Regime) -> float:
    """n-qubit bound from pairwise measures (M_{A1A2}, ..., M_{A1An})."""
    vals = np.asarray(pairwise, dtype=float)
    if vals.ndim != 1 or vals.size < 2:
        raise ValueError("need at least two pairwise values")
    if np.any(vals < 0):
        raise ValueError("pairwise measures must be non-negative")
    c = chain_coefficients(vals.size + 1, p.exponent, mu_coeff(p), regime)
    return float(np.dot(c, np.power(vals, p.alpha)))


def condition_check_tripartite(m_ab: float, m_ac: float, p: BoundParams):
    """Which hypothesis of the tripartite bound holds: ``ac_large``, ``ab_large`` or None.

    Both pairwise values zero gives None: the bound is vacuous there.
    """
    if m_ab == 0 and m_ac == 0:
        return None
    e, kw = p.eta, p.k_omega
    if tol.at_least(m_ac**e, kw * m_ab**e):
        return AC_LARGE
    if tol.at_least(m_ab**e, kw * m_ac**e):
        return AB_LARGE
    return None


class CKWResult(NamedTuple):
    lhs: float
    rhs: float
    margin: float


def verify_ckw(psi: StateVector) -> CKWResult:
    """C^2(A1|A2A3) against C^2(A1A2) + C^2(A1A3) for a pure three-qubit state."""
    if psi.dims != (2, 2, 2):
        raise ValueError(f"CKW check needs a three-qubit state, got {psi.dims}")
    lhs = concurrence_pure(psi, Bipartition.first_vs_rest(3)) ** 2
    rhs = pair_concurrence(psi, 0, 1) ** 2 + pair_concurrence(psi, 0, 2) ** 2
    return CKWResult(lhs, rhs, lhs - rhs)


@dataclass
class BoundReport:
    lhs: float | None
    bound: float | None
    m1: float | None
    m2: float | None
    m3: float | None
    regime: str | None
    condition_ok: bool | None
    gaps: dict

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "bound": self.bound,
            "m1": self.m1,
            "m2": self.m2,
            "m3": self.m3,
            "regime": self.regime,
            "condition_ok": self.condition_ok,
            "gaps": dict(self.gaps),
        }


def tripartite_report(m_full: float | None, m_ab: float, m_ac: float,
                      p: BoundParams) -> BoundReport:
    """Bound, comparison bounds and gaps for given measure values.

    ``m_full`` is M(A1|A2A3) when it is computable, else None.
    """
    regime = condition_check_tripartite(m_ab, m_ac, p)
    lhs = None if m_full is None else m_full**p.alpha
    if regime is None:
        if m_ab == 0 and m_ac == 0:
            # vacuous: every formula collapses to the same value, report it
            m, m1, m2, m3 = remark2_bounds(0.0, 0.0, p, AC_LARGE)
            return BoundReport(lhs, m, m1, m2, m3, None, False, {})
        return BoundReport(lhs, None, None, None, None, None, False, {})
    m, m1, m2, m3 = remark2_bounds(m_ab, m_ac, p, regime)
    gaps = {"m-m1": m - m1, "m-m2": m - m2, "m-m3": m - m3}
    if lhs is not None:
        gaps["lhs-m"] = lhs - m
    return BoundReport(lhs, m, m1, m2, m3, regime, True, gaps)


def tripartite_report_for_state(state, p: BoundParams, kind=MeasureKind.BURES) -> BoundReport:
    """:func:`tripartite_report` evaluated on a three-qubit state."""
    if state.dims != (2, 2, 2):
        raise ValueError(f"tripartite mode needs a three-qubit state, got {state.dims}")
    m_ab = f_measure(pair_concurrence(state, 0, 1), kind)
    m_ac = f_measure(pair_concurrence(state, 0, 2), kind)
    m_full = None
    if isinstance(state, StateVector):
        m_full = f_measure(concurrence_pure(state), kind)
    elif not isinstance(state, DensityMatrix):
        raise TypeError("expected a StateVector or DensityMatrix")
    return tripartite_report(m_full, m_ab, m_ac, p)
