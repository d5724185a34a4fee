"""NumPy implementations of the kernels in ``_kernels.pyx``."""
import numpy as np

RANK_CUTOFF = 1e-11

# sigma_y (x) sigma_y
YY = np.array(
    [[0, 0, 0, -1],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [-1, 0, 0, 0]],
    dtype=float,
)
YY.setflags(write=False)


def eigh(a):
    w, v = np.linalg.eigh(np.asarray(a, dtype=np.complex128))
    return w[::-1], v[:, ::-1]


def svdvals(b):
    return np.linalg.svd(np.asarray(b, dtype=np.complex128), compute_uv=False)


def wootters_from_factor(f):
    f = np.asarray(f, dtype=np.complex128)
    if f.shape[0] != 4:
        raise ValueError("factor must have 4 rows")
    if f.shape[1] == 0:
        return 0.0
    lam = svdvals(f.conj().T @ YY @ f.conj())
    lam = np.concatenate([lam, np.zeros(4)])[:4]
    return max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)


def wootters(rho):
    rho = np.asarray(rho, dtype=np.complex128)
    w, v = eigh(0.5 * (rho + rho.conj().T))
    if w[0] <= 0.0:
        return 0.0
    keep = w > RANK_CUTOFF * w[0]
    return wootters_from_factor(v[:, keep] * np.sqrt(w[keep]))


def pairsum_sq(h):
    h = np.asarray(h, dtype=np.complex128)
    # t[a, e, B, F] = h[a, B] h[e, F] - h[e, B] h[a, F]
    t = np.einsum("ab,ef->aebf", h, h)
    t = t - t.transpose(1, 0, 2, 3)
    return float(np.sum(t.real**2 + t.imag**2))
