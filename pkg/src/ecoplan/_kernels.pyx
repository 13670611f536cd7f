# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled edge-cost and DP kernels; see ``_kernels_py`` for the reference."""

import numpy as np
cimport numpy as cnp

from libc.math cimport INFINITY

cnp.import_array()


cdef inline double _edge(double m, double half_drag, double roll, double mg,
                         double eta, double p_tot, double a_min, double a_max,
                         double f_max, double v1, double v2, double ds,
                         double sin_a, double cos_a) noexcept nogil:
    cdef double a = (v2 * v2 - v1 * v1) / (2.0 * ds)
    cdef double vm2, force, work, motor
    if a < a_min or a > a_max:
        return INFINITY
    vm2 = 0.5 * (v1 * v1 + v2 * v2)
    force = m * a + half_drag * vm2 + roll * cos_a + mg * sin_a
    if force > f_max:
        return INFINITY
    work = force * ds
    if work > 0:
        motor = work / eta
    else:
        motor = work * eta
    return motor + p_tot * (2.0 * ds / (v1 + v2))


def edge_cost(tuple coef, double v1, double v2, double ds, double sin_a, double cos_a):
    m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max = coef
    return _edge(m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max,
                 v1, v2, ds, sin_a, cos_a)


def edge_row(tuple coef, v, Py_ssize_t i, double ds, double sin_a, double cos_a):
    cdef double m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max
    m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max = coef
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t n = vv.shape[0], j
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double v1 = vv[i]
    for j in range(n):
        o[j] = _edge(m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max,
                     v1, vv[j], ds, sin_a, cos_a)
    return out


def dp_sweep(tuple coef, v, double ds, sin_arr, cos_arr, Py_ssize_t goal_idx):
    cdef double m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max
    m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max = coef
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef const double[::1] sn = np.ascontiguousarray(sin_arr, dtype=np.float64)
    cdef const double[::1] cs = np.ascontiguousarray(cos_arr, dtype=np.float64)
    cdef Py_ssize_t n_v = vv.shape[0], n_stages = sn.shape[0]
    J_arr = np.full((n_stages + 1, n_v), np.inf)
    policy_arr = np.full((n_stages + 1, n_v), -1, dtype=np.int64)
    cdef double[:, ::1] J = J_arr
    cdef cnp.int64_t[:, ::1] policy = policy_arr
    cdef Py_ssize_t k, i, j, arg
    cdef double best, c, val, jn
    J[n_stages, goal_idx] = 0.0
    with nogil:
        for k in range(n_stages - 1, -1, -1):
            for i in range(n_v):
                best = INFINITY
                arg = -1
                for j in range(n_v):
                    jn = J[k + 1, j]
                    if jn == INFINITY:
                        continue
                    c = _edge(m, half_drag, roll, mg, eta, p_tot, a_min, a_max,
                              f_max, vv[i], vv[j], ds, sn[k], cs[k])
                    if c == INFINITY:
                        continue
                    val = c + jn
                    if val < best:
                        best = val
                        arg = j
                J[k, i] = best
                policy[k, i] = arg
    return J_arr, policy_arr
