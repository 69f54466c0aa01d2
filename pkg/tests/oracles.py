"""Independent oracles used by the tests.

These reimplement the checked quantities from scratch (bisection pressure
solver, linear characteristic boundary relations, quadrature cell averages)
so the main code paths are never verified against themselves.
"""

import numpy as np


def _wave_velocity_change(p, rho_k, p_k, g):
    """Velocity change across one wave connecting pressure p to (rho_k, p_k)."""
    c_k = np.sqrt(g * p_k / rho_k)
    if p > p_k:
        a = 2.0 / ((g + 1.0) * rho_k)
        b = (g - 1.0) / (g + 1.0) * p_k
        return (p - p_k) * np.sqrt(a / (p + b))
    return 2.0 * c_k / (g - 1.0) * ((p / p_k) ** ((g - 1.0) / (2.0 * g)) - 1.0)


def bisect_star_pressure(rho_l, v_l, p_l, rho_r, v_r, p_r, g,
                         lo=1e-10, hi=None, iters=200):
    """Star pressure by pure bisection on the two-wave pressure function."""
    if hi is None:
        hi = 10.0 * max(p_l, p_r)
    f = lambda p: (_wave_velocity_change(p, rho_l, p_l, g)
                   + _wave_velocity_change(p, rho_r, p_r, g) + (v_r - v_l))
    f_hi = f(hi)
    while f_hi < 0.0:
        hi *= 10.0
        f_hi = f(hi)
    a, b = lo, hi
    for _ in range(iters):
        m = 0.5 * (a + b)
        if f(m) > 0.0:
            b = m
        else:
            a = m
    return 0.5 * (a + b)


def bisect_star_velocity(rho_l, v_l, p_l, rho_r, v_r, p_r, g):
    ps = bisect_star_pressure(rho_l, v_l, p_l, rho_r, v_r, p_r, g)
    return ps, 0.5 * (v_l + v_r) + 0.5 * (
        _wave_velocity_change(ps, rho_r, p_r, g)
        - _wave_velocity_change(ps, rho_l, p_l, g))


def linear_boundary_rates(side, rho, v, p, drho, dv, dp, g, q=0.0,
                          bc=("velocity", 0.0)):
    """Second-order linear characteristic boundary approximation.

    Solves B (du/dt) = g' together with (dw_i/dt) = -lambda_i w_i' + L_i h
    for the characteristics entering the boundary. Unknown ordering
    (drho/dt, dv/dt, dp/dt).
    """
    c = np.sqrt(g * p / rho)
    lam = (v - c, v, v + c)
    rows = {
        0: ((0.0, 1.0, -1.0 / (rho * c)), dv - dp / (rho * c), q * c * v),
        1: ((1.0, 0.0, -1.0 / c**2), drho - dp / c**2, 0.0),
        2: ((0.0, 1.0, 1.0 / (rho * c)), dv + dp / (rho * c), -q * c * v),
    }
    tol = 1e-10 * c
    use = [i for i in range(3)
           if (lam[i] <= tol if side == "left" else lam[i] >= -tol)]
    mat, rhs = [], []
    for i in use:
        row, wp, src = rows[i]
        mat.append(row)
        rhs.append(-lam[i] * wp + src)
    kind, rate = bc
    if kind == "velocity":
        mat.append((0.0, 1.0, 0.0)); rhs.append(rate)
    elif kind == "pressure":
        mat.append((0.0, 0.0, 1.0)); rhs.append(rate)
    rest = sorted((i for i in range(3) if i not in use),
                  key=lambda i: lam[i] if side == "left" else -lam[i])
    for i in rest:
        if len(mat) >= 3:
            break
        row, wp, src = rows[i]
        mat.append(row); rhs.append(-lam[i] * wp + src)
    return np.linalg.solve(np.asarray(mat[:3]), np.asarray(rhs[:3]))


def linear_interface_rates(rho, v, p, slopes_l, slopes_r, g, q=0.0):
    """Linear characteristic rates at an interior interface (uL = uR = state),
    upwinding each family's slope by its propagation direction."""
    c = np.sqrt(g * p / rho)
    lam = (v - c, v, v + c)
    w_rows = ((0.0, 1.0, -1.0 / (rho * c)),
              (1.0, 0.0, -1.0 / c**2),
              (0.0, 1.0, 1.0 / (rho * c)))
    srcs = (q * c * v, 0.0, -q * c * v)
    mat, rhs = [], []
    for i in range(3):
        sl = slopes_l if lam[i] >= 0.0 else slopes_r
        drho, dv, dp = sl
        wp = (dv - dp / (rho * c), drho - dp / c**2, dv + dp / (rho * c))[i]
        mat.append(w_rows[i])
        rhs.append(-lam[i] * wp + srcs[i])
    return np.linalg.solve(np.asarray(mat), np.asarray(rhs))


def cell_averages(fn, faces, nsub=32):
    """Cell averages of fn(x) over the cells bounded by ``faces``."""
    faces = np.asarray(faces, dtype=float)
    out = []
    for a, b in zip(faces[:-1], faces[1:]):
        xs = a + (np.arange(nsub) + 0.5) * (b - a) / nsub
        out.append(np.mean(fn(xs), axis=-1))
    return np.array(out)


def l1_vs_exact_averages(x_centers, values, exact_fn, nsub=32):
    """Discrete L1 distance between cell data and the exact cell averages."""
    x = np.asarray(x_centers)
    dx = x[1] - x[0]
    faces = np.concatenate([[x[0] - dx / 2], x + dx / 2])
    ex = cell_averages(exact_fn, faces, nsub)
    return float(np.sum(np.abs(np.asarray(values) - ex)) * dx)
