"""Finite-dimensional states and the dense linear-algebra they need.

Amplitudes and matrix entries are stored row-major over the parties with
party 0 varying slowest, i.e. the usual ``np.kron`` ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

from fidmono import kernels
from fidmono import tolerances as tol


def check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    """Validate a local-dimension profile and return it as a tuple."""
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dimension profile is empty")
    if any(d < 2 for d in dims):
        raise ValueError(f"every local dimension must be >= 2, got {dims}")
    return dims


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state given by its amplitudes.

    Projected substates are unnormalized and carry ``normalized=False``.
    """

    amplitudes: np.ndarray
    dims: tuple[int, ...]
    normalized: bool = True

    def __post_init__(self):
        dims = check_dims(self.dims)
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != prod(dims):
            raise ValueError(f"{amps.size} amplitudes do not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)
        if self.normalized and abs(self.norm_sq - 1.0) > tol.STRUCTURAL:
            raise ValueError(f"state is not normalized (|psi|^2 = {self.norm_sq!r})")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def norm_sq(self) -> float:
        a = self.amplitudes
        return float(np.sum(a.real**2 + a.imag**2))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party."""
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density matrix over a dimension profile, possibly unnormalized."""

    entries: np.ndarray
    dims: tuple[int, ...]
    normalized: bool = True
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        m = _frozen(self.entries)
        n = prod(dims)
        if m.shape != (n, n):
            raise ValueError(f"matrix of shape {m.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", m)
        if self.validate:
            report = validate_density(self)
            if not report.ok:
                raise ValueError(f"invalid density matrix: {report.reason}")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class DensityReport:
    ok: bool
    hermiticity_defect: float
    min_eigenvalue: float
    trace_deviation: float
    reason: str = ""


def tensor_product(a, b):
    """Kronecker product of two states of the same kind."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), a.dims + b.dims,
                           normalized=a.normalized and b.normalized)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.entries, b.entries), a.dims + b.dims,
                             normalized=a.normalized and b.normalized)
    raise TypeError(f"cannot take the tensor product of {type(a).__name__} "
                    f"and {type(b).__name__}")


def _check_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise ValueError("keep set is empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep set {keep} out of range for {n} parties")
    return keep


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced matrix on the parties in ``keep`` (kept in their original order)."""
    dims = rho.dims
    keep = _check_keep(keep, len(dims))
    gone = tuple(i for i in range(len(dims)) if i not in keep)
    dk = prod(dims[i] for i in keep)
    dg = prod(dims[i] for i in gone)
    n = len(dims)
    t = rho.entries.reshape(dims + dims)
    perm = keep + gone + tuple(n + i for i in keep) + tuple(n + i for i in gone)
    t = t.transpose(perm).reshape(dk, dg, dk, dg)
    red = np.einsum("itjt->ij", t)
    return DensityMatrix(red, tuple(dims[i] for i in keep), normalized=rho.normalized,
                         validate=False)


def reduced_factor(psi: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Matrix ``F`` with ``F @ F^H`` equal to the reduction of ``|psi><psi|`` on ``keep``.

    Rows run over the kept parties (in order), columns over the traced ones.
    """
    dims = psi.dims
    keep = _check_keep(keep, len(dims))
    gone = tuple(i for i in range(len(dims)) if i not in keep)
    dk = prod(dims[i] for i in keep)
    return psi.tensor().transpose(keep + gone).reshape(dk, -1)


def outer(psi: StateVector) -> DensityMatrix:
    """The projector ``|psi><psi|`` (scaled by the squared norm if unnormalized)."""
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), psi.dims, normalized=psi.normalized,
                         validate=False)


def hermitian_eigenvalues(m, clamp: bool = False) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order.

    The matrix is symmetrized before solving. With ``clamp=True``, values in
    ``[-1e-10, 0)`` are set to zero and anything more negative raises.
    """
    m = np.asarray(getattr(m, "entries", m), dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > tol.INPUT:
        raise ValueError("matrix is not Hermitian")
    w, _ = kernels.eigh(0.5 * (m + m.conj().T))
    w = np.sort(np.asarray(w, dtype=float))[::-1]
    if clamp:
        if w.size and w[-1] < -tol.STRUCTURAL:
            raise ValueError(f"matrix has a negative eigenvalue {w[-1]!r}")
        w = np.maximum(w, 0.0)
    return w


def validate_density(rho) -> DensityReport:
    """Check Hermiticity, positivity and trace; never raises on bad matrices."""
    m = np.asarray(getattr(rho, "entries", rho), dtype=np.complex128)
    normalized = getattr(rho, "normalized", True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return DensityReport(False, np.inf, np.nan, np.inf, "matrix is not square")
    herm = float(np.max(np.abs(m - m.conj().T), initial=0.0))
    w, _ = kernels.eigh(0.5 * (m + m.conj().T))
    min_eig = float(np.min(w))
    tr = float(np.trace(m).real)
    if normalized:
        dev = abs(tr - 1.0)
        trace_ok = dev <= tol.STRUCTURAL
    else:
        dev = max(0.0 - tr, tr - 1.0, 0.0)
        trace_ok = 0.0 < tr <= 1.0 + tol.STRUCTURAL
    reasons = []
    if herm > tol.STRUCTURAL:
        reasons.append(f"not Hermitian (defect {herm:.3g})")
    if min_eig < -tol.STRUCTURAL:
        reasons.append(f"negative eigenvalue {min_eig:.3g}")
    if not trace_ok:
        reasons.append(f"trace {tr:.17g} out of range")
    return DensityReport(not reasons, herm, min_eig, dev, "; ".join(reasons))
