# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()

NAME = "cython"


cdef Py_ssize_t _fuse_inplace(double[::1] c, double[::1] e, Py_ssize_t n, double tol) noexcept nogil:
    cdef Py_ssize_t i, k = 0
    if n == 0:
        return 0
    for i in range(1, n):
        if e[i] - e[i - 1] > tol:
            k += 1
            c[k] = c[i]
            e[k] = e[i]
        elif c[i] > c[k]:
            c[k] = c[i]
    return k + 1


def fuse_sorted(coeffs, exps, double tol):
    cdef cnp.ndarray[double, ndim=1] c = np.array(coeffs, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.array(exps, dtype=np.float64)
    cdef Py_ssize_t n = _fuse_inplace(c, e, e.shape[0], tol)
    return c[:n].copy(), e[:n].copy()


def normalize_terms(coeffs, exps, double tol):
    exps = np.asarray(exps, dtype=np.float64)
    order = np.argsort(exps, kind="stable")
    return fuse_sorted(np.asarray(coeffs, dtype=np.float64)[order], exps[order], tol)


def merge_terms(const double[::1] c1, const double[::1] e1,
                const double[::1] c2, const double[::1] e2, double tol):
    cdef Py_ssize_t n1 = e1.shape[0], n2 = e2.shape[0]
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef cnp.ndarray[double, ndim=1] c = np.empty(n1 + n2, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.empty(n1 + n2, dtype=np.float64)
    cdef double[::1] cv = c, ev = e
    with nogil:
        # stable two-way merge: ties take the first operand first
        while i < n1 and j < n2:
            if e2[j] < e1[i]:
                cv[k] = c2[j]; ev[k] = e2[j]; j += 1
            else:
                cv[k] = c1[i]; ev[k] = e1[i]; i += 1
            k += 1
        while i < n1:
            cv[k] = c1[i]; ev[k] = e1[i]; i += 1; k += 1
        while j < n2:
            cv[k] = c2[j]; ev[k] = e2[j]; j += 1; k += 1
        k = _fuse_inplace(cv, ev, k, tol)
    return c[:k].copy(), e[:k].copy()


def envelope_minimum(coeffs, exps):
    cdef const double[::1] a = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] p = np.ascontiguousarray(exps, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], j, k
    cdef Py_ssize_t n_neg = 0, n_pos = 0
    cdef double mu = -INFINITY, lo = -INFINITY, hi = INFINITY
    cdef double pj, pk, d, t
    with nogil:
        for j in range(n):
            if p[j] < 0.0:
                n_neg += 1
            elif p[j] > 0.0:
                n_pos += 1
            elif a[j] > mu:
                mu = a[j]
        for j in range(n):
            pj = p[j]
            if not pj < 0.0:
                continue
            for k in range(n):
                pk = p[k]
                if not pk > 0.0:
                    continue
                d = pj - pk
                t = a[j] * (-pk / d) + a[k] * (pj / d)
                if t > mu:
                    mu = t
        if mu != -INFINITY:
            for j in range(n):
                if p[j] < 0.0:
                    t = (mu - a[j]) / p[j]
                    if t > lo:
                        lo = t
                elif p[j] > 0.0:
                    t = (mu - a[j]) / p[j]
                    if t < hi:
                        hi = t
    return mu, lo, hi, n_neg * n_pos


def evaluate(coeffs, exps, t):
    cdef const double[::1] a = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] p = np.ascontiguousarray(exps, dtype=np.float64)
    tt = np.asarray(t, dtype=np.float64)
    cdef const double[::1] fv = np.ascontiguousarray(tt.ravel())
    cdef cnp.ndarray[double, ndim=1] out = np.full(fv.shape[0], -INFINITY)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(fv.shape[0]):
            for j in range(p.shape[0]):
                v = a[j] + p[j] * fv[i]
                if v > ov[i]:
                    ov[i] = v
    return out.reshape(tt.shape)
