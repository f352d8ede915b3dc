# cython: language_level=3
"""Compiled kernels: batched Hermitian Jacobi, Kraus dilation, l1 off-diagonal sums.

Every kernel works on a stack of small dense matrices (leading axis = batch)
and releases the GIL for the numeric loop.
"""
import numpy as np

from libc.math cimport sqrt, hypot, fabs, frexp, ldexp


cdef inline double _offnorm2(double complex[:, ::1] a, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            s += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    return s


cdef int _jacobi_one(double complex[:, ::1] a, double complex[:, ::1] v,
                     double[::1] w, double tol, int max_sweeps) noexcept nogil:
    """Diagonalize one Hermitian matrix in place; returns 0 on success."""
    cdef Py_ssize_t d = a.shape[0]
    cdef Py_ssize_t i, j, p, q, k
    cdef double fro = 0.0, mag, tau, t, c, s, app, aqq, wr
    cdef double complex ph, gpq, gqp, gqq, x, y
    cdef int sweep, expo, converged = 0
    cdef double amax = 0.0, scale = 1.0

    # power-of-two scaling keeps the squared norms below clear of over/underflow
    for i in range(d):
        for j in range(d):
            amax = max(amax, fabs(a[i, j].real), fabs(a[i, j].imag))
    if amax > 0.0:
        frexp(amax, &expo)
        scale = ldexp(1.0, expo)
        for i in range(d):
            for j in range(d):
                a[i, j].real = a[i, j].real / scale
                a[i, j].imag = a[i, j].imag / scale
    for i in range(d):
        for j in range(d):
            fro += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
            v[i, j] = 1.0 if i == j else 0.0
    cdef double thresh = tol * tol * fro

    for sweep in range(max_sweeps):
        if _offnorm2(a, d) <= thresh:
            converged = 1
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                mag = hypot(a[p, q].real, a[p, q].imag)
                if mag == 0.0:
                    continue
                # componentwise: limited-range complex division squares mag
                ph.real = a[p, q].real / mag
                ph.imag = a[p, q].imag / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # G = [[c, s], [-s*conj(ph), c*conj(ph)]] in the (p, q) plane
                gpq = s
                gqp = -s * ph.conjugate()
                gqq = c * ph.conjugate()
                for k in range(d):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = x * c + y * gqp
                    a[k, q] = x * gpq + y * gqq
                for k in range(d):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x + gqp.conjugate() * y
                    a[q, k] = gpq * x + gqq.conjugate() * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(d):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * c + y * gqp
                    v[k, q] = x * gpq + y * gqq
    if not converged and _offnorm2(a, d) <= thresh:
        converged = 1

    for i in range(d):
        w[i] = a[i, i].real * scale
    # insertion sort, descending, carrying eigenvector columns
    for i in range(1, d):
        j = i
        while j > 0 and w[j - 1] < w[j]:
            wr = w[j]
            w[j] = w[j - 1]
            w[j - 1] = wr
            for k in range(d):
                x = v[k, j]
                v[k, j] = v[k, j - 1]
                v[k, j - 1] = x
            j -= 1
    return 0 if converged else 1


def eigh(a, double tol=1e-15, int max_sweeps=60):
    """Eigen-decompose a stack of Hermitian matrices.

    Returns ``(w, v, failed)`` with eigenvalues descending along the last
    axis of ``w``, eigenvectors as the columns of ``v``, and ``failed`` the
    index of the first matrix that did not converge (``-1`` if none).
    """
    cdef double complex[:, :, ::1] work = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = work.shape[0], d = work.shape[1], b
    w_arr = np.empty((n, d), dtype=np.float64)
    v_arr = np.empty((n, d, d), dtype=np.complex128)
    cdef double[:, ::1] w = w_arr
    cdef double complex[:, :, ::1] v = v_arr
    cdef Py_ssize_t failed = -1
    with nogil:
        for b in range(n):
            if _jacobi_one(work[b], v[b], w[b], tol, max_sweeps) != 0 and failed < 0:
                failed = b
    return w_arr, v_arr, failed


def dilate(rho, kraus):
    """Joint states sum_jk (K_j rho K_k^dag) (x) |j><k| for stacks of inputs.

    ``rho`` has shape (n, ds, ds), ``kraus`` shape (n, k, ds, ds); the result
    has shape (n, ds*k, ds*k) with the system index major.
    """
    cdef const double complex[:, :, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const double complex[:, :, :, ::1] ks = np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef Py_ssize_t n = ks.shape[0], nk = ks.shape[1], ds = ks.shape[2]
    out_arr = np.zeros((n, ds * nk, ds * nk), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = out_arr
    m_arr = np.empty((nk, ds, ds), dtype=np.complex128)
    cdef double complex[:, :, ::1] m = m_arr
    cdef Py_ssize_t b, j, l, i1, i2, c
    cdef double complex acc
    with nogil:
        for b in range(n):
            # m[j] = K_j rho
            for j in range(nk):
                for i1 in range(ds):
                    for i2 in range(ds):
                        acc = 0.0
                        for c in range(ds):
                            acc = acc + ks[b, j, i1, c] * r[b, c, i2]
                        m[j, i1, i2] = acc
            for j in range(nk):
                for l in range(nk):
                    for i1 in range(ds):
                        for i2 in range(ds):
                            acc = 0.0
                            for c in range(ds):
                                acc = acc + m[j, i1, c] * ks[b, l, i2, c].conjugate()
                            out[b, i1 * nk + j, i2 * nk + l] = acc
    return out_arr


def l1_offdiag(a):
    """Sum of moduli of the off-diagonal entries of each matrix in a stack."""
    cdef const double complex[:, :, ::1] x = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], b, i, j
    out_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double s
    with nogil:
        for b in range(n):
            s = 0.0
            for i in range(d):
                for j in range(d):
                    if i != j:
                        s += hypot(x[b, i, j].real, x[b, i, j].imag)
            out[b] = s
    return out_arr
