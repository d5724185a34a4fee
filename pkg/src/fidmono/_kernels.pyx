# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled linear-algebra kernels.

Mirrors ``fidmono._fallback`` function for function; ``fidmono.kernels``
picks one of the two at import time.
"""
import numpy as np

from libc.math cimport sqrt

ctypedef double complex cplx

DEF MAX_SWEEPS = 64

# factor columns whose eigenvalue is below this fraction of the largest are dropped
cdef double RANK_CUTOFF = 1e-11


cdef inline double _abs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline cplx _conj(cplx z) nogil:
    return z.real - 1j * z.imag


cdef void _jacobi_eigh(cplx[:, ::1] a, cplx[:, ::1] v) noexcept nogil:
    # cyclic complex Jacobi; a is overwritten with (nearly) diagonal U^H a U, v with U
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, p, q, k, sweep
    cdef double off, diag, r, zeta, t, c, s, tiny
    cdef bint rotated
    cdef cplx ph, cph, x, y

    for i in range(n):
        for j in range(n):
            v[i, j] = 0
        v[i, i] = 1

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        diag = 0.0
        for p in range(n):
            diag += _abs2(a[p, p])
            for q in range(p + 1, n):
                off += _abs2(a[p, q])
        if off == 0.0 or off <= 1e-34 * (diag + 2.0 * off):
            break
        # entries this small against the Frobenius norm are left alone;
        # a sweep that rotates nothing is converged
        tiny = 1e-17 * sqrt(diag + 2.0 * off)
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = sqrt(_abs2(a[p, q]))
                if r <= tiny:
                    continue
                rotated = True
                ph = a[p, q] / r
                cph = _conj(ph)
                # smallest-angle root of t^2 + 2 zeta t - 1 = 0, t = tan(theta)
                zeta = (a[p, p].real - a[q, q].real) / (2.0 * r)
                if zeta >= 0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                # U = diag(1, conj(ph)) @ [[c, -s], [s, c]] on the (p, q) plane
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x + s * cph * y
                    a[k, q] = -s * x + c * cph * y
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x + s * ph * y
                    a[q, k] = -s * x + c * ph * y
                a[p, q] = 0
                a[q, p] = 0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x + s * cph * y
                    v[k, q] = -s * x + c * cph * y
        if not rotated:
            break


cdef void _jacobi_svdvals(cplx[:, ::1] g, double[::1] out) noexcept nogil:
    # one-sided (Hestenes) Jacobi; g's columns are rotated in place
    cdef Py_ssize_t m = g.shape[0]
    cdef Py_ssize_t n = g.shape[1]
    cdef Py_ssize_t i, j, k, sweep
    cdef double alpha, beta, r, zeta, t, c, s, acc
    cdef cplx gam, ph, cph, x, y
    cdef bint rotated

    for sweep in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gam = 0
                for k in range(m):
                    alpha += _abs2(g[k, i])
                    beta += _abs2(g[k, j])
                    gam = gam + _conj(g[k, i]) * g[k, j]
                r = sqrt(_abs2(gam))
                if r == 0.0 or r <= 1e-16 * sqrt(alpha * beta):
                    continue
                rotated = True
                ph = gam / r
                cph = _conj(ph)
                zeta = (beta - alpha) / (2.0 * r)
                if zeta >= 0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                for k in range(m):
                    x = g[k, i]
                    y = cph * g[k, j]
                    g[k, i] = c * x - s * y
                    g[k, j] = s * x + c * y
        if not rotated:
            break
    for j in range(n):
        acc = 0.0
        for k in range(m):
            acc += _abs2(g[k, j])
        out[j] = sqrt(acc)


def eigh(a):
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix."""
    arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef cplx[:, ::1] work = arr
    n = work.shape[0]
    vecs = np.empty((n, n), dtype=np.complex128)
    cdef cplx[:, ::1] v = vecs
    with nogil:
        _jacobi_eigh(work, v)
    w = arr.diagonal().real
    order = np.argsort(-w, kind="stable")
    return w[order], vecs[:, order]


def svdvals(b):
    """Singular values of a complex matrix, descending."""
    arr = np.array(b, dtype=np.complex128, order="C", copy=True)
    if arr.shape[0] < arr.shape[1]:
        arr = np.ascontiguousarray(arr.conj().T)
    cdef cplx[:, ::1] g = arr
    out = np.empty(arr.shape[1])
    cdef double[::1] o = out
    with nogil:
        _jacobi_svdvals(g, o)
    return np.sort(out)[::-1]


cdef double _wootters_factor(const cplx[:, ::1] f):
    # f is 4 x r with rho = f f^H; lambdas are the singular values of f^H (Y (x) Y) conj(f)
    cdef Py_ssize_t r = f.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double sgn[4]
    cdef cplx acc
    cdef double top = 0.0, rest = 0.0
    sgn[0] = -1.0
    sgn[1] = 1.0
    sgn[2] = 1.0
    sgn[3] = -1.0
    cdef cplx[:, ::1] b = np.empty((r, r), dtype=np.complex128)
    out_arr = np.empty(r)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(r):
            for j in range(r):
                acc = 0
                for k in range(4):
                    # (Y (x) Y) is antidiagonal with signs (-1, 1, 1, -1)
                    acc = acc + _conj(f[k, i]) * sgn[k] * _conj(f[3 - k, j])
                b[i, j] = acc
        _jacobi_svdvals(b, out)
    if r > 4:
        # rank <= 4: anything past the four largest is rounding noise
        srt = np.sort(out_arr)[::-1]
        top = srt[0]
        rest = srt[1] + srt[2] + srt[3]
    else:
        for i in range(r):
            rest += out[i]
            if out[i] > top:
                top = out[i]
        rest -= top
    if top - rest > 0.0:
        return top - rest
    return 0.0


def wootters_from_factor(f):
    """Wootters concurrence of ``f @ f.conj().T`` for a 4 x r factor ``f``."""
    cdef const cplx[:, ::1] fv = np.ascontiguousarray(f, dtype=np.complex128)
    if fv.shape[0] != 4:
        raise ValueError("factor must have 4 rows")
    if fv.shape[1] == 0:
        return 0.0
    return _wootters_factor(fv)


def wootters(rho):
    """Wootters concurrence of a 4 x 4 positive semidefinite matrix (trace free)."""
    cdef cplx[:, ::1] work = np.array(rho, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t i, j, k, r
    cdef double wmax
    cdef cplx[:, ::1] v = np.empty((4, 4), dtype=np.complex128)
    cdef cplx x
    for i in range(4):
        for j in range(i, 4):
            x = 0.5 * (work[i, j] + _conj(work[j, i]))
            work[i, j] = x
            work[j, i] = _conj(x)
    _jacobi_eigh(work, v)
    wmax = 0.0
    for i in range(4):
        if work[i, i].real > wmax:
            wmax = work[i, i].real
    if wmax <= 0.0:
        return 0.0
    r = 0
    for i in range(4):
        if work[i, i].real > RANK_CUTOFF * wmax:
            r += 1
    cdef cplx[:, ::1] f = np.empty((4, r), dtype=np.complex128)
    j = 0
    for i in range(4):
        if work[i, i].real > RANK_CUTOFF * wmax:
            for k in range(4):
                f[k, j] = v[k, i] * sqrt(work[i, i].real)
            j += 1
    return _wootters_factor(f)


def pairsum_sq(h):
    """Sum of |h[a,B] h[e,F] - h[e,B] h[a,F]|^2 over all index pairs.

    ``h`` is the amplitude matrix with the first party on the rows and the
    remaining parties flattened onto the columns.
    """
    cdef const cplx[:, ::1] m = np.ascontiguousarray(h, dtype=np.complex128)
    cdef Py_ssize_t d = m.shape[0]
    cdef Py_ssize_t R = m.shape[1]
    cdef Py_ssize_t a, e, bb, ff
    cdef double total = 0.0
    cdef cplx z
    with nogil:
        # the summand is symmetric under a<->e and vanishes at a == e
        for a in range(d):
            for e in range(a + 1, d):
                for bb in range(R):
                    for ff in range(R):
                        z = m[a, bb] * m[e, ff] - m[e, bb] * m[a, ff]
                        total += _abs2(z)
    return 2.0 * total
