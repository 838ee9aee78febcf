# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; same contracts as ``_kernels_py``."""
import numpy as np
from libc.math cimport sqrt, exp, fabs, NAN

cdef double CLAMP = 1e-9


def sympeig_batch(delta, det):
    cdef double[::1] d = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    cdef double[::1] q = np.ascontiguousarray(det, dtype=np.float64).ravel()
    cdef Py_ssize_t n = d.shape[0], k
    lo_arr = np.empty(n, dtype=np.float64)
    hi_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] lo = lo_arr
    cdef double[::1] hi = hi_arr
    cdef double rad, root, l, h
    with nogil:
        for k in range(n):
            rad = d[k] * d[k] - 4.0 * q[k]
            if rad < 0.0:
                if rad >= -CLAMP:
                    rad = 0.0
                else:
                    lo[k] = NAN
                    hi[k] = NAN
                    continue
            root = sqrt(rad)
            l = 0.5 * (d[k] - root)
            h = 0.5 * (d[k] + root)
            if l < 0.0 and l >= -CLAMP:
                l = 0.0
            lo[k] = sqrt(l) if l >= 0.0 else NAN
            hi[k] = sqrt(h) if h >= 0.0 else NAN
    shape = np.shape(delta)
    return lo_arr.reshape(shape), hi_arr.reshape(shape)


cdef inline double _det3(double a, double b, double c,
                         double d, double e, double f,
                         double g, double h, double i) nogil:
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def two_mode_invariants(sigmas):
    cdef double[:, :, ::1] s = np.ascontiguousarray(sigmas, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0], k
    out = np.empty((4, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double m00, m01, m02, m03, m10, m11, m12, m13
    cdef double m20, m21, m22, m23, m30, m31, m32, m33
    with nogil:
        for k in range(n):
            m00 = s[k, 0, 0]; m01 = s[k, 0, 1]; m02 = s[k, 0, 2]; m03 = s[k, 0, 3]
            m10 = s[k, 1, 0]; m11 = s[k, 1, 1]; m12 = s[k, 1, 2]; m13 = s[k, 1, 3]
            m20 = s[k, 2, 0]; m21 = s[k, 2, 1]; m22 = s[k, 2, 2]; m23 = s[k, 2, 3]
            m30 = s[k, 3, 0]; m31 = s[k, 3, 1]; m32 = s[k, 3, 2]; m33 = s[k, 3, 3]
            o[0, k] = (m00 * _det3(m11, m12, m13, m21, m22, m23, m31, m32, m33)
                       - m01 * _det3(m10, m12, m13, m20, m22, m23, m30, m32, m33)
                       + m02 * _det3(m10, m11, m13, m20, m21, m23, m30, m31, m33)
                       - m03 * _det3(m10, m11, m12, m20, m21, m22, m30, m31, m32))
            o[1, k] = m00 * m11 - m01 * m10
            o[2, k] = m22 * m33 - m23 * m32
            o[3, k] = m02 * m13 - m03 * m12
    return out[0], out[1], out[2], out[3]


def epr_grid_min(double a, double b, double c_plus, double c_minus, logv):
    cdef double[::1] lv = np.ascontiguousarray(logv, dtype=np.float64)
    cdef Py_ssize_t m = lv.shape[0], i, j, bi = 0, bj = 0
    cdef double best = 1e300, v1, x, w1
    cdef double[::1] v = np.empty(m)
    cdef double[::1] inv = np.empty(m)
    cdef double[::1] w2 = np.empty(m)
    with nogil:
        for j in range(m):
            v[j] = exp(lv[j])
            inv[j] = 1.0 / v[j]
            w2[j] = 0.5 * b * (v[j] * v[j] + inv[j] * inv[j])
        for i in range(m):
            v1 = v[i]
            w1 = 0.5 * a * (v1 * v1 + inv[i] * inv[i])
            for j in range(m):
                x = w1 + w2[j] - fabs(c_plus * v1 * v[j] - c_minus * inv[i] * inv[j])
                if x < best:
                    best = x
                    bi = i
                    bj = j
    return best, bi, bj
