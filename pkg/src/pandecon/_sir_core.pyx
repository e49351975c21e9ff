# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython RK4 kernel, transcribed from pandecon._sir_py.

Arithmetic must stay expression-for-expression identical to the Python kernel
(same association order, no refactoring) so the two backends remain
bit-identical. Compile with -ffp-contract=off.
"""

import numpy as np

from .errors import IntegrationError

from libc.math cimport isfinite


def integrate(double s, double i, double r, double c,
              double population, double gamma, double h,
              beta, imports):
    """Advance the state over len(beta) RK4 steps of size h.

    Same contract as pandecon._sir_py.integrate.
    """
    cdef double[::1] beta_v = np.ascontiguousarray(beta, dtype=np.float64)
    cdef double[::1] m_v = np.ascontiguousarray(imports, dtype=np.float64)
    cdef Py_ssize_t n_steps = beta_v.shape[0]

    out_s_arr = np.empty(n_steps + 1)
    out_i_arr = np.empty(n_steps + 1)
    out_r_arr = np.empty(n_steps + 1)
    out_c_arr = np.empty(n_steps + 1)
    cdef double[::1] out_s = out_s_arr
    cdef double[::1] out_i = out_i_arr
    cdef double[::1] out_r = out_r_arr
    cdef double[::1] out_c = out_c_arr

    out_s[0] = s
    out_i[0] = i
    out_r[0] = r
    out_c[0] = c

    cdef double inv_n = 1.0 / population
    cdef double g = gamma
    cdef double h2 = 0.5 * h
    cdef double h6 = h / 6.0

    cdef Py_ssize_t k
    cdef double b, m
    cdef double f1, ds1, di1, dr1, dc1
    cdef double f2, ds2, di2, dr2, dc2
    cdef double f3, ds3, di3, dr3, dc3
    cdef double f4, ds4, di4, dr4, dc4
    cdef double s2, i2, s3, i3, s4, i4

    for k in range(n_steps):
        b = beta_v[k]
        m = m_v[k]

        f1 = b * s * i * inv_n
        ds1 = -f1
        di1 = f1 + m - g * i
        dr1 = g * i
        dc1 = f1 + m

        s2 = s + h2 * ds1
        i2 = i + h2 * di1
        f2 = b * s2 * i2 * inv_n
        ds2 = -f2
        di2 = f2 + m - g * i2
        dr2 = g * i2
        dc2 = f2 + m

        s3 = s + h2 * ds2
        i3 = i + h2 * di2
        f3 = b * s3 * i3 * inv_n
        ds3 = -f3
        di3 = f3 + m - g * i3
        dr3 = g * i3
        dc3 = f3 + m

        s4 = s + h * ds3
        i4 = i + h * di3
        f4 = b * s4 * i4 * inv_n
        ds4 = -f4
        di4 = f4 + m - g * i4
        dr4 = g * i4
        dc4 = f4 + m

        s = s + h6 * (ds1 + 2.0 * ds2 + 2.0 * ds3 + ds4)
        i = i + h6 * (di1 + 2.0 * di2 + 2.0 * di3 + di4)
        r = r + h6 * (dr1 + 2.0 * dr2 + 2.0 * dr3 + dr4)
        c = c + h6 * (dc1 + 2.0 * dc2 + 2.0 * dc3 + dc4)

        if not (isfinite(s) and isfinite(i) and isfinite(r) and isfinite(c)):
            raise IntegrationError(
                "non-finite state at step %d (t = %g days)" % (k + 1, (k + 1) * h)
            )

        out_s[k + 1] = s
        out_i[k + 1] = i
        out_r[k + 1] = r
        out_c[k + 1] = c

    return out_s_arr, out_i_arr, out_r_arr, out_c_arr
