# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-start damped-Newton kernel for the 3x3 search.

Mirrors the numpy backend step for step: same residual vector, same damping
policy (strict decrease or halve, up to the cap), same convergence predicate.
The whole chunk loop runs without the GIL, so chunks can be dispatched to a
thread pool for real parallelism.
"""

import numpy as np

from . import _system

from libc.math cimport INFINITY, hypot

ctypedef double complex dc

cdef double COF_SIGN[9]
cdef Py_ssize_t COF_I1[9]
cdef Py_ssize_t COF_I2[9]
cdef Py_ssize_t COF_I3[9]
cdef Py_ssize_t COF_I4[9]
cdef Py_ssize_t HESS_A[36]
cdef Py_ssize_t HESS_B[36]
cdef double HESS_SIGN[36]
cdef Py_ssize_t HESS_C[36]

# Copy the derivative tables once at import; _system owns their definition.
cdef Py_ssize_t _k
for _k in range(9):
    COF_SIGN[_k] = _system.COF_SIGN[_k]
    COF_I1[_k] = _system.COF_I1[_k]
    COF_I2[_k] = _system.COF_I2[_k]
    COF_I3[_k] = _system.COF_I3[_k]
    COF_I4[_k] = _system.COF_I4[_k]
for _k in range(36):
    HESS_A[_k] = _system.HESS_A[_k]
    HESS_B[_k] = _system.HESS_B[_k]
    HESS_SIGN[_k] = _system.HESS_SIGN[_k]
    HESS_C[_k] = _system.HESS_C[_k]


cdef inline double _mag2(dc z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _cofactors(const dc* p, dc* cof) nogil:
    cdef Py_ssize_t a
    for a in range(9):
        cof[a] = COF_SIGN[a] * (
            p[COF_I1[a]] * p[COF_I2[a]] - p[COF_I3[a]] * p[COF_I4[a]]
        )


cdef double _residual(const dc* x, const double* u, dc* f) nogil:
    cdef dc cof[9]
    cdef dc lam = x[9]
    cdef dc mu = x[10]
    cdef dc total = 0
    cdef Py_ssize_t a
    cdef double best = 0.0
    cdef double mag
    _cofactors(x, cof)
    for a in range(9):
        f[a] = u[a] / x[a] - lam * cof[a] - mu
        total = total + x[a]
    f[9] = x[0] * cof[0] + x[1] * cof[1] + x[2] * cof[2]
    f[10] = total - 1.0
    for a in range(11):
        mag = hypot(f[a].real, f[a].imag)
        if mag != mag:  # NaN from a pole: treat as infinitely bad
            return INFINITY
        if mag > best:
            best = mag
    return best


cdef void _jacobian(const dc* x, const double* u, dc* jac) nogil:
    cdef dc cof[9]
    cdef dc lam = x[9]
    cdef Py_ssize_t a, t
    for a in range(121):
        jac[a] = 0
    _cofactors(x, cof)
    for a in range(9):
        jac[a * 11 + a] = -u[a] / (x[a] * x[a])
        jac[a * 11 + 9] = -cof[a]
        jac[a * 11 + 10] = -1.0
        jac[9 * 11 + a] = cof[a]
        jac[10 * 11 + a] = 1.0
    for t in range(36):
        jac[HESS_A[t] * 11 + HESS_B[t]] = (
            jac[HESS_A[t] * 11 + HESS_B[t]] - lam * (HESS_SIGN[t] * x[HESS_C[t]])
        )


cdef int _lu_solve(dc* a, const dc* b, dc* out) nogil:
    """Partial-pivot LU solve of the 11x11 system; 1 on a (near-)zero pivot."""
    cdef dc rhs[11]
    cdef Py_ssize_t i, j, k, piv
    cdef double best, mag
    cdef dc factor, tmp
    for i in range(11):
        rhs[i] = b[i]
    for k in range(11):
        piv = k
        best = _mag2(a[k * 11 + k])
        for i in range(k + 1, 11):
            mag = _mag2(a[i * 11 + k])
            if mag > best:
                best = mag
                piv = i
        if not (best > 0.0):  # exact zero or NaN pivot column
            return 1
        if piv != k:
            for j in range(k, 11):
                tmp = a[k * 11 + j]
                a[k * 11 + j] = a[piv * 11 + j]
                a[piv * 11 + j] = tmp
            tmp = rhs[k]
            rhs[k] = rhs[piv]
            rhs[piv] = tmp
        for i in range(k + 1, 11):
            factor = a[i * 11 + k] / a[k * 11 + k]
            a[i * 11 + k] = 0
            for j in range(k + 1, 11):
                a[i * 11 + j] = a[i * 11 + j] - factor * a[k * 11 + j]
            rhs[i] = rhs[i] - factor * rhs[k]
    for i in range(10, -1, -1):
        tmp = rhs[i]
        for j in range(i + 1, 11):
            tmp = tmp - a[i * 11 + j] * out[j]
        out[i] = tmp / a[i * 11 + i]
    return 0


cdef void _polish(dc* x, const double* u, double* norm_io, int steps) nogil:
    """Extra full Newton steps kept only while the residual strictly drops;
    pushes converged residuals to the quadratic floor."""
    cdef dc f[11]
    cdef dc fc[11]
    cdef dc jac[121]
    cdef dc delta[11]
    cdef dc cand[11]
    cdef double cand_norm
    cdef int s
    cdef Py_ssize_t i
    _residual(x, u, f)
    for s in range(steps):
        _jacobian(x, u, jac)
        if _lu_solve(jac, f, delta):
            return
        for i in range(11):
            cand[i] = x[i] - delta[i]
        cand_norm = _residual(cand, u, fc)
        if not cand_norm < norm_io[0]:
            return
        for i in range(11):
            x[i] = cand[i]
            f[i] = fc[i]
        norm_io[0] = cand_norm


cdef int _solve_one(
    dc* x,
    const double* u,
    double tol,
    int max_iter,
    int max_halvings,
    double* res_out,
) nogil:
    cdef dc f[11]
    cdef dc fc[11]
    cdef dc jac[121]
    cdef dc delta[11]
    cdef dc cand[11]
    cdef double norm, cand_norm, step
    cdef int it, h, improved
    cdef Py_ssize_t i
    norm = _residual(x, u, f)
    for it in range(max_iter):
        if norm < tol:
            _polish(x, u, &norm, 2)
            res_out[0] = norm
            return 0
        _jacobian(x, u, jac)
        if _lu_solve(jac, f, delta):
            break
        step = 1.0
        improved = 0
        cand_norm = INFINITY
        for h in range(max_halvings + 1):
            for i in range(11):
                cand[i] = x[i] - step * delta[i]
            cand_norm = _residual(cand, u, fc)
            if cand_norm < norm:
                improved = 1
                break
            step = step * 0.5
        if not improved:
            break
        for i in range(11):
            x[i] = cand[i]
            f[i] = fc[i]
        norm = cand_norm
    if norm < tol:
        _polish(x, u, &norm, 2)
        res_out[0] = norm
        return 0
    res_out[0] = norm
    return 1


def solve_chunk(p0, lm0, u, double newton_tol, int max_iter=200, int max_halvings=30):
    cdef dc[:, ::1] pv = np.ascontiguousarray(p0, dtype=np.complex128)
    cdef dc[:, ::1] lv = np.ascontiguousarray(lm0, dtype=np.complex128)
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t count = pv.shape[0]
    status_arr = np.ones(count, dtype=np.int8)
    out_arr = np.empty((count, 11), dtype=np.complex128)
    res_arr = np.full(count, np.inf, dtype=np.float64)
    if count == 0:
        return status_arr, out_arr, res_arr
    cdef signed char[::1] sv = status_arr
    cdef dc[:, ::1] ov = out_arr
    cdef double[::1] rv = res_arr
    cdef dc x[11]
    cdef double res = INFINITY
    cdef Py_ssize_t s, i
    with nogil:
        for s in range(count):
            for i in range(9):
                x[i] = pv[s, i]
            x[9] = lv[s, 0]
            x[10] = lv[s, 1]
            sv[s] = <signed char> _solve_one(
                x, &uv[0], newton_tol, max_iter, max_halvings, &res
            )
            for i in range(11):
                ov[s, i] = x[i]
            rv[s] = res
    return status_arr, out_arr, res_arr
