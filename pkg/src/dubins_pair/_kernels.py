"""Compiled scalar kernels shared by every public entry point.

State vectors are laid out as ``[x1, x2, x3, y1, y2, y3]``, controls as
``[u1, u2, v1, v2]`` and costates as ``[p1, ..., p6]``.  The public functions in
:mod:`dubins_pair.model` and :mod:`dubins_pair.pmp` call exactly these kernels,
so unit tests on the public surface also pin the integrator loops.

Controls are stored on grid nodes.  RK4 half-step stages see a cubic
interpolant of the four surrounding nodes (one-sided at the two end
intervals), and the running cost is integrated with the same RK4 stages as
the dynamics.  Together these make the control gradient of the discrete cost
agree with the nodal stationarity residual to fourth order, which a linear
interpolant with trapezoidal cost cannot do: there the discrete minimizer
sits O(h^2 u'') away from the stationary controls.

All loops return an integer failure index instead of raising: ``-1`` means
success, ``k >= 0`` is the first grid node (or step) where the separation
guard tripped.  The Python wrappers turn that into an exception.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

SEPARATION_GUARD = 1e-9
P0 = -1.0


@njit(cache=True)
def separation_sq(s):
    d1 = s[0] - s[3]
    d2 = s[1] - s[4]
    return d1 * d1 + d2 * d2


@njit(cache=True)
def dynamics(s, c, out):
    out[0] = c[0] * math.sin(s[2])
    out[1] = c[0] * math.cos(s[2])
    out[2] = c[1]
    out[3] = c[2] * math.sin(s[5])
    out[4] = c[2] * math.cos(s[5])
    out[5] = c[3]


@njit(cache=True)
def cost_parts(s, c, delta, beta, alpha, rho):
    """Running cost split as (vehicle 1, vehicle 2, repulsion)."""
    la = 0.5 * (delta * (c[0] * c[0] + c[1] * c[1]) + beta * (s[0] * s[0] + s[1] * s[1]))
    lb = 0.5 * (delta * (c[2] * c[2] + c[3] * c[3]) + alpha * (s[3] * s[3] + s[4] * s[4]))
    lr = 0.5 * rho / separation_sq(s)
    return la, lb, lr


@njit(cache=True)
def running_cost(s, c, delta, beta, alpha, rho):
    effort = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]
    attract = beta * (s[0] * s[0] + s[1] * s[1]) + alpha * (s[3] * s[3] + s[4] * s[4])
    return 0.5 * (delta * effort + attract + rho / separation_sq(s))


@njit(cache=True)
def hamiltonian(s, p, c, delta, beta, alpha, rho):
    f = np.empty(6)
    dynamics(s, c, f)
    acc = 0.0
    for i in range(6):
        acc += p[i] * f[i]
    return acc + P0 * running_cost(s, c, delta, beta, alpha, rho)


@njit(cache=True)
def optimal_control(s, p, delta, out):
    out[0] = (p[0] * math.sin(s[2]) + p[1] * math.cos(s[2])) / delta
    out[1] = p[2] / delta
    out[2] = (p[3] * math.sin(s[5]) + p[4] * math.cos(s[5])) / delta
    out[3] = p[5] / delta


@njit(cache=True)
def stationarity(s, p, c, delta, out):
    # dH/du with p0 = -1
    out[0] = p[0] * math.sin(s[2]) + p[1] * math.cos(s[2]) - delta * c[0]
    out[1] = p[2] - delta * c[1]
    out[2] = p[3] * math.sin(s[5]) + p[4] * math.cos(s[5]) - delta * c[2]
    out[3] = p[5] - delta * c[3]


@njit(cache=True)
def adjoint(s, p, c, beta, alpha, rho, out):
    # pdot = -dH/dstate; the repulsion gradient carries d^4 (derivative of rho/d^2)
    d1 = s[0] - s[3]
    d2 = s[1] - s[4]
    d4 = separation_sq(s) ** 2
    r1 = rho * d1 / d4
    r2 = rho * d2 / d4
    out[0] = beta * s[0] - r1
    out[1] = beta * s[1] - r2
    out[2] = -c[0] * (p[0] * math.cos(s[2]) - p[1] * math.sin(s[2]))
    out[3] = alpha * s[3] + r1
    out[4] = alpha * s[4] + r2
    out[5] = -c[2] * (p[3] * math.cos(s[5]) - p[4] * math.sin(s[5]))


@njit(cache=True)
def closed_loop(z, delta, beta, alpha, rho, out):
    s = z[:6]
    p = z[6:]
    u = np.empty(4)
    optimal_control(s, p, delta, u)
    dynamics(s, u, out[:6])
    adjoint(s, p, u, beta, alpha, rho, out[6:])


# ---------------------------------------------------------------------------
# grid loops
# ---------------------------------------------------------------------------

CUBIC_MID = (-1.0 / 16.0, 9.0 / 16.0, 9.0 / 16.0, -1.0 / 16.0)
EDGE_MID = (5.0 / 16.0, 15.0 / 16.0, -5.0 / 16.0, 1.0 / 16.0)


@njit(cache=True)
def midpoint_stencil(k, n):
    """Nodes and coefficients giving the control at t_k + h/2."""
    if n < 3:
        return (k, k + 1, k + 1, k + 1), (0.5, 0.5, 0.0, 0.0)
    if k == 0:
        return (0, 1, 2, 3), EDGE_MID
    if k == n - 1:
        return (n, n - 1, n - 2, n - 3), EDGE_MID
    return (k - 1, k, k + 1, k + 2), CUBIC_MID


@njit(cache=True)
def midpoint_control(U, k, out):
    idx, coef = midpoint_stencil(k, U.shape[0] - 1)
    for j in range(U.shape[1]):
        out[j] = (coef[0] * U[idx[0], j] + coef[1] * U[idx[1], j]
                  + coef[2] * U[idx[2], j] + coef[3] * U[idx[3], j])


@njit(cache=True)
def node_weights(n, h):
    """Quadrature weight each nodal control receives through the RK4 stages."""
    w = np.zeros(n + 1)
    for k in range(n):
        w[k] += h / 6.0
        w[k + 1] += h / 6.0
        idx, coef = midpoint_stencil(k, n)
        for j in range(4):
            w[idx[j]] += 2.0 * h / 3.0 * coef[j]
    return w


@njit(cache=True)
def forward(x0, U, h):
    n = U.shape[0] - 1
    X = np.empty((n + 1, 6))
    X[0] = x0
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    cm = np.empty(4)
    tmp = np.empty(6)
    if separation_sq(x0) < SEPARATION_GUARD:
        return X, 0
    for k in range(n):
        x = X[k]
        midpoint_control(U, k, cm)
        dynamics(x, U[k], k1)
        for i in range(6):
            tmp[i] = x[i] + 0.5 * h * k1[i]
        dynamics(tmp, cm, k2)
        for i in range(6):
            tmp[i] = x[i] + 0.5 * h * k2[i]
        dynamics(tmp, cm, k3)
        for i in range(6):
            tmp[i] = x[i] + h * k3[i]
        dynamics(tmp, U[k + 1], k4)
        for i in range(6):
            X[k + 1, i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if separation_sq(X[k + 1]) < SEPARATION_GUARD:
            return X, k + 1
    return X, -1


@njit(cache=True)
def backward(pT, X, U, h, beta, alpha, rho):
    n = U.shape[0] - 1
    P = np.empty((n + 1, 6))
    P[n] = pT
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    xm = np.empty(6)
    cm = np.empty(4)
    tmp = np.empty(6)
    f0 = np.empty(6)
    f1 = np.empty(6)
    for k in range(n, 0, -1):
        if separation_sq(X[k]) < SEPARATION_GUARD:
            return P, k
        # cubic Hermite midpoint of the stored states
        dynamics(X[k - 1], U[k - 1], f0)
        dynamics(X[k], U[k], f1)
        for i in range(6):
            xm[i] = 0.5 * (X[k - 1, i] + X[k, i]) + h / 8.0 * (f0[i] - f1[i])
        midpoint_control(U, k - 1, cm)
        if separation_sq(xm) < SEPARATION_GUARD or separation_sq(X[k - 1]) < SEPARATION_GUARD:
            return P, k - 1
        p = P[k]
        adjoint(X[k], p, U[k], beta, alpha, rho, k1)
        for i in range(6):
            tmp[i] = p[i] - 0.5 * h * k1[i]
        adjoint(xm, tmp, cm, beta, alpha, rho, k2)
        for i in range(6):
            tmp[i] = p[i] - 0.5 * h * k2[i]
        adjoint(xm, tmp, cm, beta, alpha, rho, k3)
        for i in range(6):
            tmp[i] = p[i] - h * k3[i]
        adjoint(X[k - 1], tmp, U[k - 1], beta, alpha, rho, k4)
        for i in range(6):
            P[k - 1, i] = p[i] - (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    return P, -1


@njit(cache=True)
def extremal(z0, n, h, delta, beta, alpha, rho):
    Z = np.empty((n + 1, 12))
    Z[0] = z0
    k1 = np.empty(12)
    k2 = np.empty(12)
    k3 = np.empty(12)
    k4 = np.empty(12)
    tmp = np.empty(12)
    if separation_sq(z0) < SEPARATION_GUARD:
        return Z, 0
    for k in range(n):
        z = Z[k]
        closed_loop(z, delta, beta, alpha, rho, k1)
        for i in range(12):
            tmp[i] = z[i] + 0.5 * h * k1[i]
        if separation_sq(tmp) < SEPARATION_GUARD:
            return Z, k + 1
        closed_loop(tmp, delta, beta, alpha, rho, k2)
        for i in range(12):
            tmp[i] = z[i] + 0.5 * h * k2[i]
        if separation_sq(tmp) < SEPARATION_GUARD:
            return Z, k + 1
        closed_loop(tmp, delta, beta, alpha, rho, k3)
        for i in range(12):
            tmp[i] = z[i] + h * k3[i]
        if separation_sq(tmp) < SEPARATION_GUARD:
            return Z, k + 1
        closed_loop(tmp, delta, beta, alpha, rho, k4)
        for i in range(12):
            Z[k + 1, i] = z[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if separation_sq(Z[k + 1]) < SEPARATION_GUARD:
            return Z, k + 1
    return Z, -1


@njit(cache=True)
def stage_cost_steps(X, U, h, delta, beta, alpha, rho):
    """Running cost of each RK4 step, integrated over the step's stages.

    Row k holds the (vehicle 1, vehicle 2, repulsion) parts of step k.  Also
    returns the first step whose stage states break the separation guard
    (-1 if none).  Keeping the steps apart lets callers difference two
    trajectories term by term instead of subtracting two large totals.
    """
    n = U.shape[0] - 1
    out = np.zeros((n, 3))
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    cm = np.empty(4)
    tmp = np.empty(6)
    for k in range(n):
        x = X[k]
        midpoint_control(U, k, cm)
        dynamics(x, U[k], k1)
        if separation_sq(x) < SEPARATION_GUARD:
            return out, k
        a1, b1, r1 = cost_parts(x, U[k], delta, beta, alpha, rho)
        for i in range(6):
            tmp[i] = x[i] + 0.5 * h * k1[i]
        dynamics(tmp, cm, k2)
        if separation_sq(tmp) < SEPARATION_GUARD:
            return out, k
        a2, b2, r2 = cost_parts(tmp, cm, delta, beta, alpha, rho)
        for i in range(6):
            tmp[i] = x[i] + 0.5 * h * k2[i]
        dynamics(tmp, cm, k3)
        if separation_sq(tmp) < SEPARATION_GUARD:
            return out, k
        a3, b3, r3 = cost_parts(tmp, cm, delta, beta, alpha, rho)
        for i in range(6):
            tmp[i] = x[i] + h * k3[i]
        if separation_sq(tmp) < SEPARATION_GUARD:
            return out, k
        a4, b4, r4 = cost_parts(tmp, U[k + 1], delta, beta, alpha, rho)
        out[k, 0] = h / 6.0 * (a1 + 2.0 * (a2 + a3) + a4)
        out[k, 1] = h / 6.0 * (b1 + 2.0 * (b2 + b3) + b4)
        out[k, 2] = h / 6.0 * (r1 + 2.0 * (r2 + r3) + r4)
    return out, -1


# ---------------------------------------------------------------------------
# nodal evaluations
# ---------------------------------------------------------------------------


@njit(cache=True)
def nodal_hamiltonian(X, P, U, delta, beta, alpha, rho):
    n = X.shape[0]
    out = np.empty(n)
    for k in range(n):
        out[k] = hamiltonian(X[k], P[k], U[k], delta, beta, alpha, rho)
    return out


@njit(cache=True)
def nodal_stationarity(X, P, U, delta):
    n = X.shape[0]
    out = np.empty((n, 4))
    for k in range(n):
        stationarity(X[k], P[k], U[k], delta, out[k])
    return out


@njit(cache=True)
def nodal_optimal_control(X, P, delta):
    n = X.shape[0]
    out = np.empty((n, 4))
    for k in range(n):
        optimal_control(X[k], P[k], delta, out[k])
    return out


@njit(cache=True)
def min_separation_sq(X):
    best = np.inf
    for k in range(X.shape[0]):
        d = separation_sq(X[k])
        if d < best:
            best = d
    return best
