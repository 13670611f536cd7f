"""Pure-Python edge-cost and DP kernels.

Mirrors ``_kernels.pyx`` operation for operation so both backends return
bit-identical numbers.  ``coef`` is ``EnergyCoefficients.as_tuple()``.
"""

import math

import numpy as np

INF = math.inf


def edge_cost(coef, v1, v2, ds, sin_a, cos_a):
    m, half_drag, roll, mg, eta, p_tot, a_min, a_max, f_max = coef
    a = (v2 * v2 - v1 * v1) / (2.0 * ds)
    if a < a_min or a > a_max:
        return INF
    vm2 = 0.5 * (v1 * v1 + v2 * v2)
    force = m * a + half_drag * vm2 + roll * cos_a + mg * sin_a
    if force > f_max:
        return INF
    work = force * ds
    motor = work / eta if work > 0 else work * eta
    return motor + p_tot * (2.0 * ds / (v1 + v2))


def edge_row(coef, v, i, ds, sin_a, cos_a):
    """Costs from speed index ``i`` to every speed of the next stage."""
    v1 = float(v[i])
    n = len(v)
    out = np.empty(n)
    for j in range(n):
        out[j] = edge_cost(coef, v1, float(v[j]), ds, sin_a, cos_a)
    return out


def dp_sweep(coef, v, ds, sin_arr, cos_arr, goal_idx):
    """Backward Bellman sweep over all stages.

    Returns ``(J, policy)``: ``J[k, i]`` is the optimal cost-to-go and
    ``policy[k, i]`` the chosen next speed index (-1 where unreachable).
    Ties go to the lower speed index.
    """
    n_v = len(v)
    n_stages = len(sin_arr)
    J = np.full((n_stages + 1, n_v), INF)
    policy = np.full((n_stages + 1, n_v), -1, dtype=np.int64)
    J[n_stages, goal_idx] = 0.0
    vs = [float(x) for x in v]
    for k in range(n_stages - 1, -1, -1):
        sin_a = float(sin_arr[k])
        cos_a = float(cos_arr[k])
        nxt = J[k + 1].tolist()
        row_J = J[k]
        row_p = policy[k]
        for i in range(n_v):
            best = INF
            arg = -1
            v1 = vs[i]
            for j in range(n_v):
                jn = nxt[j]
                if jn == INF:
                    continue
                c = edge_cost(coef, v1, vs[j], ds, sin_a, cos_a)
                if c == INF:
                    continue
                val = c + jn
                if val < best:
                    best = val
                    arg = j
            row_J[i] = best
            row_p[i] = arg
    return J, policy
