"""Example state families and reproducible random samplers.

Random draws use NumPy's PCG64 seeded by ``SeedSequence(seed, spawn_key=(stream,))``,
so distinct streams of one seed are statistically independent and any
(seed, stream) pair always reproduces the same draws.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from fidmono.qstate import DensityMatrix, StateVector, check_dims


@dataclass(frozen=True)
class SeedSpec:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.stream < 0:
            raise ValueError("stream must be non-negative")

    def rng(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def _as_seed(s) -> SeedSpec:
    if isinstance(s, SeedSpec):
        return s
    return SeedSpec(int(s))


@dataclass(frozen=True)
class SchmidtParams:
    """Coefficients of l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>."""

    l0: float
    l1: float = 0.0
    l2: float = 0.0
    l3: float = 0.0
    l4: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        lam = self.lambdas
        if np.any(lam < 0):
            raise ValueError("Schmidt coefficients must be non-negative")
        if abs(np.sum(lam**2) - 1.0) > 1e-12:
            raise ValueError(f"sum of squared coefficients is {np.sum(lam**2)!r}, not 1")
        if not 0 <= self.theta <= np.pi:
            raise ValueError("theta must lie in [0, pi]")

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([self.l0, self.l1, self.l2, self.l3, self.l4], dtype=float)

    def concurrences(self) -> tuple[float, float, float]:
        """Closed forms for C(A1|A2A3), C(A1A2), C(A1A3)."""
        l0, _, l2, l3, l4 = self.lambdas
        return (2 * l0 * np.sqrt(l2**2 + l3**2 + l4**2), 2 * l0 * l2, 2 * l0 * l3)


def schmidt_state(p: SchmidtParams, *, literal_kets: bool = False) -> StateVector:
    """Generalized Schmidt form of a three-qubit state.

    By default the kets carrying l2 and l3 are read as |a1 a3 a2>, which is
    the labelling under which C(A1A2) = 2 l0 l2 and C(A1A3) = 2 l0 l3. With
    ``literal_kets=True`` they are read as |a1 a2 a3> and those two
    concurrences trade places.
    """
    amps = np.zeros(8, dtype=np.complex128)
    i2, i3 = (0b101, 0b110) if literal_kets else (0b110, 0b101)
    amps[0b000] = p.l0
    amps[0b100] = p.l1 * np.exp(1j * p.theta)
    amps[i2] = p.l2
    amps[i3] = p.l3
    amps[0b111] = p.l4
    return StateVector(amps, (2, 2, 2))


def example1_params() -> SchmidtParams:
    s2, s5 = np.sqrt(2) / 3, np.sqrt(5) / 3
    return SchmidtParams(l0=s2, l2=s5, l3=s2)


def w_class_example2() -> StateVector:
    """(|100> + |010> + 2|001>) / sqrt(6)."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b100] = 1
    amps[0b010] = 1
    amps[0b001] = 2
    return StateVector(amps / np.sqrt(6), (2, 2, 2))


def ghz(n: int = 3) -> StateVector:
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(amps, (2,) * n)


def basis_state(labels, dims) -> StateVector:
    """Computational basis state with 0-based ``labels``."""
    dims = check_dims(dims)
    amps = np.zeros(prod(dims), dtype=np.complex128)
    amps[np.ravel_multi_index(tuple(labels), dims)] = 1
    return StateVector(amps, dims)


def _haar_amplitudes(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def haar_pure(dims, s=0) -> StateVector:
    """Haar-random pure state: normalized i.i.d. standard complex Gaussians."""
    dims = check_dims(dims)
    return StateVector(_haar_amplitudes(_as_seed(s).rng(), prod(dims)), dims)


def haar_pure_many(dims, count: int, s=0) -> list[StateVector]:
    """``count`` Haar states drawn in sequence from one (seed, stream)."""
    dims = check_dims(dims)
    rng = _as_seed(s).rng()
    d = prod(dims)
    return [StateVector(_haar_amplitudes(rng, d), dims) for _ in range(count)]


def random_mixed(dims, rank: int, s=0) -> DensityMatrix:
    """Mixture of ``rank`` Haar states with flat Dirichlet weights."""
    dims = check_dims(dims)
    d = prod(dims)
    if rank < 1:
        raise ValueError("rank must be positive")
    if rank > d:
        raise ValueError(f"rank {rank} exceeds the dimension {d}")
    rng = _as_seed(s).rng()
    vecs = np.stack([_haar_amplitudes(rng, d) for _ in range(rank)], axis=1)
    weights = rng.dirichlet(np.ones(rank)) if rank > 1 else np.ones(1)
    rho = (vecs * weights) @ vecs.conj().T
    return DensityMatrix(0.5 * (rho + rho.conj().T), dims)
