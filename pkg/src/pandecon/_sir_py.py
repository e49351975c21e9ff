"""Pure-Python RK4 kernel for the importation-augmented SIR system.

This is the reference implementation of the hot loop; pandecon._sir_core is a
line-for-line Cython transcription. Keep the two in lockstep: every arithmetic
expression must match token for token, including association order, or the
backends stop being bit-identical.

State vector is (S, I, R, C) where C counts cumulative infections (domestic
transmission plus imported cases). Per step k the effective transmission rate
beta[k] and importation inflow m[k] are constant:

    dS/dt = -beta * S * I / N
    dI/dt = +beta * S * I / N + m - gamma * I
    dR/dt = +gamma * I
    dC/dt = +beta * S * I / N + m
"""

import math

import numpy as np

from .errors import IntegrationError


def integrate(s, i, r, c, population, gamma, h, beta, imports):
    """Advance the state over len(beta) RK4 steps of size h.

    beta and imports are per-step parameter arrays (float64, equal length).
    Returns four float64 arrays of length n_steps + 1 holding the state at
    every step edge, starting with the initial condition.
    """
    n_steps = len(beta)
    out_s = np.empty(n_steps + 1)
    out_i = np.empty(n_steps + 1)
    out_r = np.empty(n_steps + 1)
    out_c = np.empty(n_steps + 1)
    out_s[0] = s
    out_i[0] = i
    out_r[0] = r
    out_c[0] = c

    beta_list = [float(b) for b in beta]
    m_list = [float(m) for m in imports]
    inv_n = 1.0 / population
    g = gamma
    h2 = 0.5 * h
    h6 = h / 6.0
    isfinite = math.isfinite

    for k in range(n_steps):
        b = beta_list[k]
        m = m_list[k]

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

    return out_s, out_i, out_r, out_c
