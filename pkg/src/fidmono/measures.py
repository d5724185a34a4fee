"""Concurrence and the fidelity-based measures expressed through it."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod
from typing import Iterable

import numpy as np

from fidmono import kernels
from fidmono import tolerances as tol
from fidmono.qstate import DensityMatrix, StateVector, partial_trace, reduced_factor

# sigma_y (x) sigma_y, fixed once
SIGMA_YY = kernels._fallback.YY


class MeasureKind(enum.Enum):
    BURES = "bures"
    GEOMETRIC = "geometric"

    @classmethod
    def parse(cls, value) -> "MeasureKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown measure {value!r}; expected 'bures' or 'geometric'") from None


@dataclass(frozen=True)
class Bipartition:
    """Split of ``n`` parties into ``left`` and its complement."""

    left: tuple[int, ...]
    n: int

    def __post_init__(self):
        left = tuple(sorted(set(int(i) for i in self.left)))
        if not left or len(left) >= self.n:
            raise ValueError("both sides of a bipartition must be non-empty")
        if left[0] < 0 or left[-1] >= self.n:
            raise ValueError(f"party index out of range in {left}")
        object.__setattr__(self, "left", left)

    @classmethod
    def first_vs_rest(cls, n: int) -> "Bipartition":
        return cls((0,), n)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.left)


def _cut_for(psi: StateVector, cut) -> Bipartition:
    if cut is None:
        return Bipartition.first_vs_rest(psi.n_parties)
    if isinstance(cut, Bipartition):
        if cut.n != psi.n_parties:
            raise ValueError("bipartition does not match the number of parties")
        return cut
    return Bipartition(tuple(cut), psi.n_parties)


def concurrence_pure(psi: StateVector, cut: Bipartition | Iterable[int] | None = None) -> float:
    """Pure-state concurrence sqrt(2 (1 - tr rho_left^2)) across ``cut``.

    ``cut`` defaults to the first party against the rest.
    """
    if abs(psi.norm_sq - 1.0) > tol.STRUCTURAL:
        raise ValueError("concurrence_pure needs a normalized state")
    cut = _cut_for(psi, cut)
    f = reduced_factor(psi, cut.left)
    red = f @ f.conj().T
    purity = float(np.sum(red.real**2 + red.imag**2))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def _as_two_qubit(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if rho.dims != (2, 2):
            raise ValueError(f"Wootters concurrence needs a 2x2 profile, got {rho.dims}")
        m = rho.entries
    else:
        m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ValueError(f"Wootters concurrence needs a 4x4 matrix, got {m.shape}")
    return m


def concurrence_wootters(rho) -> float:
    """Wootters concurrence max(l1 - l2 - l3 - l4, 0).

    Accepts unnormalized positive matrices, on which the result scales
    linearly with the trace.
    """
    m = _as_two_qubit(rho)
    if np.max(np.abs(m - m.conj().T)) > tol.INPUT:
        raise ValueError("matrix is not Hermitian")
    w, _ = kernels.eigh(0.5 * (m + m.conj().T))
    if np.min(w) < -tol.STRUCTURAL:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {np.min(w):.3g})")
    return float(kernels.wootters(m))


def spin_flip_product(rho) -> np.ndarray:
    """The matrix rho (Y (x) Y) rho* (Y (x) Y) whose spectrum defines the lambdas."""
    m = _as_two_qubit(rho)
    return m @ SIGMA_YY @ m.conj() @ SIGMA_YY


def _clip_concurrence(c):
    c = np.asarray(c, dtype=float)
    if np.any(c > 1.0 + tol.SPILL) or np.any(c < -tol.SPILL):
        raise ValueError(f"concurrence {c} outside [0, 1]")
    return np.clip(c, 0.0, 1.0)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def f_bures(c):
    """Bures measure of a two-qubit state with concurrence ``c``."""
    c = _clip_concurrence(c)
    s = np.sqrt(1.0 - c * c)
    q = np.sqrt((1.0 + s) / 2.0)
    # 2 - 2q, rewritten to avoid cancellation near c = 0
    return _out(c * c / ((1.0 + s) * (1.0 + q)))


def f_geometric(c):
    """Geometric measure of a two-qubit state with concurrence ``c``."""
    c = _clip_concurrence(c)
    s = np.sqrt(1.0 - c * c)
    # (1 - s) / 2 without cancellation
    return _out(c * c / (2.0 * (1.0 + s)))


def f_measure(c, kind):
    kind = MeasureKind.parse(kind)
    return f_bures(c) if kind is MeasureKind.BURES else f_geometric(c)


def measure_two_qubit(rho, kind) -> float:
    """Exact Bures or geometric measure of a two-qubit state."""
    return f_measure(concurrence_wootters(rho), kind)


def measure_pure_bipartite(psi: StateVector, cut=None, kind=MeasureKind.BURES,
                           *, with_flag: bool = False):
    """f(C) for a pure state across ``cut``.

    The value equals the measure when the left side is a single qubit and is
    a lower bound otherwise; ``with_flag=True`` returns ``(value, exact)``.
    """
    cut = _cut_for(psi, cut)
    value = f_measure(concurrence_pure(psi, cut), kind)
    if with_flag:
        return value, prod(psi.dims[i] for i in cut.left) == 2
    return value


def pair_concurrence(state, i: int, j: int) -> float:
    """Wootters concurrence of the two-qubit reduction of ``state`` on parties ``i, j``.

    Pure states are reduced through their amplitude factor, mixed ones
    through the partial trace.
    """
    if state.dims[i] != 2 or state.dims[j] != 2:
        raise ValueError("pair concurrence needs qubit parties")
    if isinstance(state, StateVector):
        return float(kernels.wootters_from_factor(reduced_factor(state, (i, j))))
    return float(kernels.wootters(partial_trace(state, (i, j)).entries))
