# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""LAPACK/BLAS-backed kernels mirroring ``chancap._kernels._pure``.

The working matrices are tiny (dimension <= 64), where Python dispatch and
temporary allocation dominate numpy's runtime, so the win here comes from
calling zheevd/zgemm directly on preallocated buffers.
"""

import numpy as np

from libc.math cimport log2 as c_log2, exp as c_exp
from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zheevd

BACKEND_NAME = "compiled"

ctypedef double complex zcomplex


cdef int _zheevd(zcomplex[::1, :] a, double[::1] w, bint vectors) except -1:
    """Eigendecomposition of a Hermitian Fortran-ordered matrix in place.

    Ascending eigenvalues land in ``w``; with ``vectors`` the columns of
    ``a`` are overwritten with the eigenvectors.
    """
    cdef int n = a.shape[0]
    cdef int lda = n if n > 0 else 1
    cdef int info = 0
    cdef char jobz = b'V' if vectors else b'N'
    cdef char uplo = b'L'
    cdef int lwork, lrwork, liwork
    if vectors:
        lwork = 2 * n + n * n
        lrwork = 1 + 5 * n + 2 * n * n
        liwork = 3 + 5 * n
    else:
        lwork = n + 1
        lrwork = n if n > 1 else 1
        liwork = 1
    work_arr = np.empty(lwork, dtype=np.complex128)
    rwork_arr = np.empty(lrwork, dtype=np.float64)
    iwork_arr = np.empty(liwork, dtype=np.intc)
    cdef zcomplex[::1] work = work_arr
    cdef double[::1] rwork = rwork_arr
    cdef int[::1] iwork = iwork_arr
    zheevd(&jobz, &uplo, &n, &a[0, 0], &lda, &w[0], &work[0], &lwork,
           &rwork[0], &lrwork, &iwork[0], &liwork, &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"zheevd failed with info={info}")
    return 0


cdef void _rm_zgemm(char transa, char transb, int m, int n, int k,
                    zcomplex alpha, zcomplex* a, int lda,
                    zcomplex* b, int ldb, zcomplex beta,
                    zcomplex* c, int ldc) noexcept nogil:
    """Row-major C = alpha op(A) op(B) + beta C via the operand-swap trick."""
    zgemm(&transb, &transa, &n, &m, &k, &alpha, b, &ldb, a, &lda, &beta, c, &ldc)


def entropy_bits(a):
    """Von Neumann entropy in bits; eigenvalues clamped to [0, 1]."""
    a_f = np.array(a, dtype=np.complex128, order="F", copy=True)
    cdef zcomplex[::1, :] av = a_f
    cdef int n = av.shape[0]
    w_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] w = w_arr
    _zheevd(av, w, False)
    cdef double s = 0.0
    cdef double x
    cdef Py_ssize_t i
    for i in range(n):
        x = w[i]
        if x > 1.0:
            x = 1.0
        if x > 0.0:
            s -= x * c_log2(x)
    return s


cdef object _spectral_map(object a, double floor, bint exponential):
    """V f(w) V^dagger with f = log2 clipped at ``floor`` or shifted exp."""
    a_f = np.array(a, dtype=np.complex128, order="F", copy=True)
    cdef zcomplex[::1, :] v = a_f
    cdef int n = v.shape[0]
    w_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] w = w_arr
    _zheevd(v, w, True)
    b_arr = np.empty((n, n), dtype=np.complex128, order="F")
    out_arr = np.empty((n, n), dtype=np.complex128, order="F")
    cdef zcomplex[::1, :] b = b_arr
    cdef zcomplex[::1, :] out = out_arr
    cdef double fw, wmax, total
    cdef Py_ssize_t i, j
    if exponential:
        wmax = w[0]
        for j in range(1, n):
            if w[j] > wmax:
                wmax = w[j]
        total = 0.0
        for j in range(n):
            total += c_exp(w[j] - wmax)
        for j in range(n):
            fw = c_exp(w[j] - wmax) / total
            for i in range(n):
                b[i, j] = v[i, j] * fw
    else:
        for j in range(n):
            fw = c_log2(w[j] if w[j] > floor else floor)
            for i in range(n):
                b[i, j] = v[i, j] * fw
    cdef char cn = b'N', cc = b'C'
    cdef zcomplex one = 1.0, zero = 0.0
    # Column-major product OUT = B V^dagger.
    zgemm(&cn, &cc, &n, &n, &n, &one, &b[0, 0], &n, &v[0, 0], &n, &zero, &out[0, 0], &n)
    return np.ascontiguousarray(out_arr)


def log2_hermitian(a, double floor=1e-12):
    """Base-2 matrix log of a Hermitian PSD matrix with eigenvalue floor."""
    return _spectral_map(a, floor, False)


def exp_normalized(h):
    """exp(H) / Tr exp(H) for Hermitian H, computed shift-stably."""
    return _spectral_map(h, 0.0, True)


def apply_kraus(ks, rho):
    """Channel action sum_k K_k rho K_k^dagger for a (n, do, di) Kraus stack."""
    karr = np.ascontiguousarray(ks, dtype=np.complex128)
    r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const zcomplex[:, :, ::1] kv = karr
    cdef const zcomplex[:, ::1] rv = r
    cdef int nk = kv.shape[0], do = kv.shape[1], di = kv.shape[2]
    out_arr = np.zeros((do, do), dtype=np.complex128)
    tmp_arr = np.empty((do, di), dtype=np.complex128)
    cdef zcomplex[:, ::1] out = out_arr
    cdef zcomplex[:, ::1] tmp = tmp_arr
    cdef Py_ssize_t t
    with nogil:
        for t in range(nk):
            _rm_zgemm(b'N', b'N', do, di, di, 1.0, <zcomplex*> &kv[t, 0, 0], di,
                      <zcomplex*> &rv[0, 0], di, 0.0, &tmp[0, 0], di)
            _rm_zgemm(b'N', b'C', do, do, di, 1.0, &tmp[0, 0], di,
                      <zcomplex*> &kv[t, 0, 0], di, 1.0, &out[0, 0], do)
    return out_arr


def apply_kraus_adjoint(ks, x):
    """Adjoint action sum_k K_k^dagger X K_k."""
    karr = np.ascontiguousarray(ks, dtype=np.complex128)
    xm = np.ascontiguousarray(x, dtype=np.complex128)
    cdef const zcomplex[:, :, ::1] kv = karr
    cdef const zcomplex[:, ::1] xv = xm
    cdef int nk = kv.shape[0], do = kv.shape[1], di = kv.shape[2]
    out_arr = np.zeros((di, di), dtype=np.complex128)
    tmp_arr = np.empty((di, do), dtype=np.complex128)
    cdef zcomplex[:, ::1] out = out_arr
    cdef zcomplex[:, ::1] tmp = tmp_arr
    cdef Py_ssize_t t
    with nogil:
        for t in range(nk):
            _rm_zgemm(b'C', b'N', di, do, do, 1.0, <zcomplex*> &kv[t, 0, 0], di,
                      <zcomplex*> &xv[0, 0], do, 0.0, &tmp[0, 0], do)
            _rm_zgemm(b'N', b'N', di, di, do, 1.0, &tmp[0, 0], do,
                      <zcomplex*> &kv[t, 0, 0], di, 1.0, &out[0, 0], di)
    return out_arr
