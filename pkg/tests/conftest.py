"""Shared fixtures and independent reference implementations.

The references below deliberately avoid the package's own code paths: they
use explicit index loops and the textbook square-root-of-eigenvalues form of
the Wootters formula, so agreement with the library is a real cross-check.
"""
from itertools import product

import numpy as np
import pytest

from fidmono import kernels

YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return kernels.get_backend(request.param)


def ref_wootters(rho):
    rho = np.asarray(rho, dtype=complex)
    r = rho @ YY @ rho.conj() @ YY
    lam = np.sort(np.sqrt(np.abs(np.linalg.eigvals(r).real)))[::-1]
    return max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)


def ref_partial_trace(rho, dims, keep):
    """Partial trace by explicit summation over multi-indices."""
    n = len(dims)
    gone = [i for i in range(n) if i not in keep]
    kd = [dims[i] for i in keep]
    out = np.zeros((int(np.prod(kd)),) * 2, dtype=complex)
    flat = lambda idx: int(np.ravel_multi_index(idx, dims))  # noqa: E731
    for a in product(*[range(d) for d in kd]):
        for b in product(*[range(d) for d in kd]):
            s = 0j
            for g in product(*[range(dims[i]) for i in gone]):
                ia, ib = [0] * n, [0] * n
                for pos, party in enumerate(keep):
                    ia[party], ib[party] = a[pos], b[pos]
                for pos, party in enumerate(gone):
                    ia[party] = ib[party] = g[pos]
                s += rho[flat(ia), flat(ib)]
            out[np.ravel_multi_index(a, kd), np.ravel_multi_index(b, kd)] = s
    return out


def ref_concurrence_pure(amps, dims):
    rho = np.outer(amps, np.conj(amps))
    red = ref_partial_trace(rho, dims, [0])
    return np.sqrt(max(0.0, 2 * (1 - np.trace(red @ red).real)))


def ref_substate_amplitudes(amps, dims, pairs):
    t = np.asarray(amps).reshape(dims)
    return np.array([t[idx] for idx in product(*pairs)])


def haar(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def f_bures_ref(c):
    return 2 - 2 * np.sqrt((1 + np.sqrt(1 - c * c)) / 2)


def f_geometric_ref(c):
    return (1 - np.sqrt(1 - c * c)) / 2
