import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import YY, haar, ref_wootters
from fidmono import kernels


def _herm(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return a + a.conj().T


def test_backend_selection():
    assert kernels.BACKEND in kernels.available_backends()
    assert "python" in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("d", [1, 2, 4, 8, 27])
def test_eigh_reconstructs(backend, d):
    rng = np.random.default_rng(d)
    a = _herm(rng, d)
    w, v = backend.eigh(a)
    assert np.all(np.diff(w) <= 1e-12)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-11)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(d), atol=1e-12)
    np.testing.assert_allclose(w, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-11)


def test_eigh_diagonal_and_degenerate(backend):
    w, _ = backend.eigh(np.diag([3.0, 1.0, 2.0]).astype(complex))
    np.testing.assert_allclose(w, [3, 2, 1], atol=1e-15)
    w, _ = backend.eigh(np.eye(4, dtype=complex))
    np.testing.assert_allclose(w, np.ones(4), atol=1e-15)


@pytest.mark.parametrize("shape", [(4, 4), (4, 2), (2, 5), (4, 1)])
def test_svdvals(backend, shape):
    rng = np.random.default_rng(sum(shape))
    b = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    np.testing.assert_allclose(backend.svdvals(b), np.linalg.svd(b, compute_uv=False),
                               atol=1e-12)


def test_wootters_known(backend):
    bell = np.zeros(4, complex)
    bell[[0, 3]] = 1 / np.sqrt(2)
    rho = np.outer(bell, bell.conj())
    assert backend.wootters(rho) == pytest.approx(1.0, abs=1e-12)
    assert backend.wootters(0.5 * rho) == pytest.approx(0.5, abs=1e-12)
    assert backend.wootters(np.eye(4, dtype=complex) / 4) == pytest.approx(0.0, abs=1e-12)
    prod00 = np.zeros((4, 4), complex)
    prod00[0, 0] = 1
    assert backend.wootters(prod00) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("rank, tol", [(4, 1e-10), (3, 1e-7), (2, 1e-7)])
def test_wootters_matches_reference_mixed(backend, rank, tol):
    # the reference takes square roots of near-zero eigenvalues when rank < 4,
    # so it is only good to ~sqrt(eps) there
    rng = np.random.default_rng(11 + rank)
    for _ in range(200):
        f = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
        f /= np.linalg.norm(f)
        rho = f @ f.conj().T
        assert backend.wootters(rho) == pytest.approx(ref_wootters(rho), abs=tol)
        assert backend.wootters_from_factor(f) == pytest.approx(ref_wootters(rho), abs=tol)
        assert backend.wootters_from_factor(f) == pytest.approx(backend.wootters(rho), abs=1e-11)


def test_wootters_factor_pure(backend):
    # pure two-qubit state: C = 2|ad - bc|
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = haar(rng, 4)
        expected = 2 * abs(a[0] * a[3] - a[1] * a[2])
        assert backend.wootters_from_factor(a.reshape(4, 1)) == pytest.approx(expected, abs=1e-13)


def test_wootters_factor_shapes(backend):
    assert backend.wootters_from_factor(np.zeros((4, 0), complex)) == 0.0
    with pytest.raises(ValueError):
        backend.wootters_from_factor(np.zeros((3, 2), complex))


def test_wootters_rank_deficient_precise(backend):
    # near-pure mixture where sqrt-of-eigenvalue forms lose ~1e-8
    bell = np.zeros(4, complex)
    bell[[0, 3]] = 1 / np.sqrt(2)
    eps = 1e-14
    rho = (1 - eps) * np.outer(bell, bell) + eps * np.eye(4) / 4
    assert backend.wootters(rho) == pytest.approx(1 - eps, abs=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_pairsum_identity(da, db, seed):
    rng = np.random.default_rng(seed)
    h = rng.standard_normal((da, db)) + 1j * rng.standard_normal((da, db))
    red = h @ h.conj().T
    n2 = np.trace(red).real
    expected = 2 * (n2**2 - np.trace(red @ red).real)
    for name in kernels.available_backends():
        b = kernels.get_backend(name)
        assert b.pairsum_sq(h) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_backends_agree():
    if len(kernels.available_backends()) < 2:
        pytest.skip("compiled backend not built")
    cy, py = kernels.get_backend("cython"), kernels.get_backend("python")
    rng = np.random.default_rng(5)
    for _ in range(100):
        f = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = f @ f.conj().T / np.trace(f @ f.conj().T).real
        assert cy.wootters(rho) == pytest.approx(py.wootters(rho), abs=1e-12)
        assert cy.wootters_from_factor(f) == pytest.approx(py.wootters_from_factor(f), abs=1e-12)
        assert cy.pairsum_sq(f) == pytest.approx(py.pairsum_sq(f), rel=1e-12)


def test_yy_constant():
    from fidmono.measures import SIGMA_YY
    sy = np.array([[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(SIGMA_YY, np.kron(sy, sy))
    np.testing.assert_array_equal(SIGMA_YY, YY)
