"""Instantaneous time-derivative resolution at interfaces and boundaries.

Given piecewise-linear initial data (state limits plus slopes on each side),
these solvers return the interface/boundary trace of the solution together
with its time derivative at t -> 0+, which is what a second-order
finite-volume scheme needs for mid-step flux values.

The linear relation ``a_J Dv/Dt + b_J Dp/Dt = d_J`` couples the material
derivatives behind the wave emitted toward side J; its coefficients depend on
the wave family and type (rarefaction/shock), the star state, the data slopes,
and the geometric source ratio q = a'(x)/a(x). Material derivatives convert
to Eulerian rates through

    dv/dt = Dv/Dt + (v/(rho c^2)) Dp/Dt + q v^2
    dp/dt = Dp/Dt + rho v Dv/Dt.

Array-kernel entry points (hot path): ``resolve_faces`` for interior
interfaces and ``resolve_wall_faces`` for solid-wall boundary faces.
"""

from dataclasses import dataclass

import numpy as np

from . import riemann
from .boundary import BoundarySpec
from .errors import IllPosedBoundary
from .gas import CharacteristicSlopes, Eos, PrimitiveState

__all__ = [
    "GrpSideData",
    "GrpCoefficients",
    "BoundaryTimeDerivatives",
    "FaceResolution",
    "one_sided_coefficients",
    "grp_interior",
    "one_sided_grp",
    "acoustic_one_sided",
    "resolve_faces",
    "resolve_wall_faces",
]

SONIC_EDGE_RTOL = 1e-10   # fan straddles the face if edges clear 0 by this * c
_VSTAR_TOL = 1e-12        # |v*| below this * (cL+cR): contact sits on the face
_DET_RTOL = 1e-14


@dataclass(frozen=True)
class GrpSideData:
    """Limiting state and slopes on one side of an interface/boundary."""

    u: PrimitiveState
    slopes: CharacteristicSlopes

    def validate(self):
        self.u.validate()
        return self


@dataclass(frozen=True)
class GrpCoefficients:
    a: float
    b: float
    d: float
    branch: str          # "rare" | "shock" | "acoustic"
    sgn: float
    theta: float
    sigma: float | None  # shock speed (shock branch only)
    phi_integral: float | None
    geom_ratio: float


@dataclass(frozen=True)
class BoundaryTimeDerivatives:
    dv_dt: float
    dp_dt: float
    drho_dt: float


# ---------------------------------------------------------------------------
# coefficient table

def _phi_rare(theta, c_star, c_data, eta, sgn, g):
    """Fan integral Phi_J; the general-gamma form degenerates at 5/3 and 3."""
    mu2 = (g - 1.0) / (g + 1.0)
    ln_t = np.log(theta)
    if abs(g - 5.0 / 3.0) < 1e-9:
        return -2.0 * (3.0 * c_star * ln_t - sgn * eta * (1.0 - theta))
    if abs(g - 3.0) < 1e-9:
        return c_data - c_star - sgn * eta * ln_t
    t1 = ((mu2 - 1.0) * c_star) / (mu2 * (4.0 * mu2 - 1.0)) \
        * (1.0 - theta ** ((1.0 - 4.0 * mu2) / (2.0 * mu2)))
    t2 = sgn * eta / (2.0 * mu2 - 1.0) * (1.0 - theta ** ((1.0 - 2.0 * mu2) / (2.0 * mu2)))
    return t1 - t2


def _side_rows(sgn, rho, v, p, c, drho, dv, dp, ps, rho_s, c_s, vstar, q, g,
               shock, degenerate):
    """Vectorized (a, b, d) rows of the linear relation for one side.

    ``sgn`` = -1 for the 1-family (J=L), +1 for the 3-family (J=R); may be an
    array. Rarefaction rows carry b = -sgn/(rho* c*); the shock rows come from
    differentiating the Rankine-Hugoniot relations. Degenerate waves collapse to
    the acoustic row (theta = 1 limit) built on the data state.
    """
    mu2 = (g - 1.0) / (g + 1.0)
    w1 = (1.0 + mu2) / (1.0 + 2.0 * mu2)
    w2 = mu2 / (1.0 + 2.0 * mu2)
    e1 = 1.0 / (2.0 * mu2)
    e2 = (1.0 + mu2) / mu2

    ts_p = (dp - c * c * drho) / ((g - 1.0) * rho)
    dc = 0.5 * c * (dp / p - drho / rho)
    eta = v - sgn * (2.0 / (g - 1.0)) * c
    eta_p = dv - sgn * (2.0 / (g - 1.0)) * dc

    # rarefaction / acoustic row (theta -> 1 for degenerate lanes)
    theta = np.where(degenerate, 1.0, c_s / c)
    rho_b = np.where(degenerate, rho, rho_s)
    c_b = np.where(degenerate, c, c_s)
    phi = _phi_rare(theta, c_b, c, eta, sgn, g)
    t_e1 = theta**e1
    d_rare = (w1 * t_e1 + w2 * theta**e2) * ts_p \
        + sgn * c * (eta_p + q * v) * t_e1 \
        + q * c_b * (phi + sgn * vstar)
    a_rare = np.ones_like(d_rare)
    b_rare = -sgn / (rho_b * c_b)

    # shock row
    denom = rho_s - rho
    safe = np.abs(denom) > 1e-12 * rho
    sigma_mass = np.where(safe, (rho_s * vstar - rho * v) / np.where(safe, denom, 1.0), v)
    sigma_toro = riemann.shock_speed_from_state(v, c, p, np.maximum(ps, 1e-300), g, sgn)
    sigma = np.where(safe, sigma_mass, sigma_toro)
    rad = np.sqrt((1.0 - mu2) / (rho * (ps + mu2 * p)))
    h1 = 0.5 * rad * (ps + (1.0 + 2.0 * mu2) * p) / (ps + mu2 * p)
    h2 = -0.5 * rad * ((2.0 + mu2) * ps + mu2 * p) / (ps + mu2 * p)
    h3 = -(ps - p) / (2.0 * rho) * rad
    a_sh = 1.0 + sgn * rho_s * (sigma - vstar) * h1
    b_sh = -(sigma - vstar) / (rho_s * c_s * c_s) - sgn * h1
    l_rho = sgn * (sigma - v) * h3
    l_v = (sigma - v) - sgn * (rho * c * c * h2 + rho * h3)
    l_p = -1.0 / rho + sgn * (sigma - v) * h2
    j_g = sgn * rho * v * (c * c * h2 + h3) - (sigma - vstar) * vstar
    d_sh = l_rho * drho + l_p * dp + l_v * dv - q * j_g

    use_shock = shock & ~degenerate
    a = np.where(use_shock, a_sh, a_rare)
    b = np.where(use_shock, b_sh, b_rare)
    d = np.where(use_shock, d_sh, d_rare)
    return a, b, d, sigma, phi


def one_sided_coefficients(side_j, data: GrpSideData, star, geom_ratio: float,
                           eos: Eos, force_branch: str | None = None) -> GrpCoefficients:
    """Linear-relation coefficients for the single wave of a one-sided problem.

    ``side_j`` is "L" (1-family, right domain boundary) or "R" (3-family,
    left boundary); ``star`` is the OneSidedSolution (or any object with
    ``ustar``/``wave``). ``force_branch`` overrides the branch for
    continuity testing.
    """
    data.validate()
    g = eos.gamma
    sgn = -1.0 if side_j == "L" else 1.0
    u, sl = data.u, data.slopes
    c = float(np.sqrt(g * u.p / u.rho))
    us = star.ustar
    c_s = float(np.sqrt(g * us.p / us.rho))
    branch = force_branch or ("shock" if star.wave == "shock" else
                              "acoustic" if star.wave == "none" else "rare")
    shock = np.asarray(branch == "shock")
    degenerate = np.asarray(branch == "acoustic")
    a, b, d, sigma, phi = _side_rows(
        np.asarray(sgn), np.asarray(u.rho), np.asarray(u.v), np.asarray(u.p),
        np.asarray(c), np.asarray(sl.drho), np.asarray(sl.dv), np.asarray(sl.dp),
        np.asarray(us.p), np.asarray(us.rho), np.asarray(c_s), np.asarray(us.v),
        np.asarray(geom_ratio), g, shock, degenerate)
    return GrpCoefficients(
        a=float(a), b=float(b), d=float(d), branch=branch, sgn=sgn,
        theta=1.0 if branch == "acoustic" else c_s / c,
        sigma=float(sigma) if branch == "shock" else None,
        phi_integral=None if branch == "shock" else float(phi),
        geom_ratio=float(geom_ratio))


# ---------------------------------------------------------------------------
# shared pieces

def _lw_rates(rho, v, p, drho, dv, dp, q, g):
    """Smooth one-sided rates: du/dt = -A(u) u' + source, primitive form."""
    d_rho = -(v * drho + rho * dv) - q * rho * v
    d_v = -(v * dv + dp / rho)
    d_p = -(v * dp + g * p * dv) - q * g * p * v
    return d_rho, d_v, d_p


def _solve3(m, r):
    """Cramer solve of per-face 3x3 systems; m[i][j], r[i] are arrays."""
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = m
    det = (a11 * (a22 * a33 - a23 * a32)
           - a12 * (a21 * a33 - a23 * a31)
           + a13 * (a21 * a32 - a22 * a31))
    x1 = (r[0] * (a22 * a33 - a23 * a32)
          - a12 * (r[1] * a33 - a23 * r[2])
          + a13 * (r[1] * a32 - a22 * r[2])) / det
    x2 = (a11 * (r[1] * a33 - a23 * r[2])
          - r[0] * (a21 * a33 - a23 * a31)
          + a13 * (a21 * r[2] - r[1] * a31)) / det
    x3 = (a11 * (a22 * r[2] - r[1] * a32)
          - a12 * (a21 * r[2] - r[1] * a31)
          + r[0] * (a21 * a32 - a22 * a31)) / det
    return x1, x2, x3


def _sonic_rates(sgn, rho, v, p, c, drho, dv, dp, q, g):
    """Sonic state and its rates when the face sits inside a data-side fan.

    sgn = -1: 1-family fan generated by left data; +1: 3-family fan from
    right data. Returns (rho_s, v_s, p_s, drho_t, dv_t, dp_t).
    """
    mu2 = (g - 1.0) / (g + 1.0)
    k = 2.0 / (g - 1.0)
    dc = 0.5 * c * (dp / p - drho / rho)
    ts_p = (dp - c * c * drho) / ((g - 1.0) * rho)
    cross_inv = v - sgn * k * c            # crossing-family Riemann invariant
    cross_slope = dv - sgn * k * dc
    # clamp keeps masked-out lanes finite; genuine fan lanes have c_s in (0, c)
    c_s = np.clip(-sgn * mu2 * cross_inv, 0.01 * c, None)
    v_s = -sgn * c_s
    theta = c_s / c
    rho_s = rho * theta**k
    p_s = p * theta ** (g * k)

    # E1: the tangential characteristic relation with the fan's entropy-slope
    # correction; E2: crossing-invariant transport with the fan time dilation;
    # E3: tangential-invariant drift feedback.
    e1_row = (-rho_s * v_s, np.ones_like(c_s), np.zeros_like(c_s))
    e1_rhs = -rho_s * v_s * (theta ** (2.0 * g / (g - 1.0)) * ts_p + q * v_s * v_s)

    kc = c_s / (g - 1.0)
    e2_row = (np.ones_like(c_s), -sgn * kc / p_s, sgn * kc / rho_s)
    e2_rhs = sgn * 2.0 * c * theta ** (1.0 / (2.0 * mu2)) * cross_slope

    k3 = 2.0 / (g - 1.0) + 4.0 / (g + 1.0)
    a3 = 1.0 + 4.0 / (g + 1.0)
    e3_row = (np.full_like(c_s, a3), sgn * k3 * 0.5 * c_s / p_s, -sgn * k3 * 0.5 * c_s / rho_s)
    e3_rhs = q * c_s * c_s + theta ** ((1.0 + mu2) / mu2) * ts_p

    dv_t, dp_t, drho_t = _solve3((e1_row, e2_row, e3_row), (e1_rhs, e2_rhs, e3_rhs))
    return rho_s, v_s, p_s, drho_t, dv_t, dp_t


def _entropy_advection(rho_s, rho_d, c_d, drho_d, dp_d):
    """Transported non-barotropic density gradient behind the wave."""
    return (rho_s / rho_d) ** 2 * (drho_d - dp_d / (c_d * c_d))


# ---------------------------------------------------------------------------
# interior interfaces (vectorized)

@dataclass
class FaceResolution:
    """Per-face trace, rates, and side limits (slope-update inputs)."""

    rho: np.ndarray
    v: np.ndarray
    p: np.ndarray
    drho_dt: np.ndarray
    dv_dt: np.ndarray
    dp_dt: np.ndarray
    rho_left: np.ndarray        # face value approached from the left cell
    drho_left: np.ndarray
    rho_right: np.ndarray
    drho_right: np.ndarray


def resolve_faces(WL, dWL, WR, dWR, q, g) -> FaceResolution:
    """Resolve interior interfaces: trace at xi=0 and its time derivative.

    WL, dWL, WR, dWR are (3, F) arrays of (rho, v, p) limits and slopes at
    each face; q is the geometric ratio a'/a at the face (array or scalar).
    """
    rhoL, vL, pL = WL
    rhoR, vR, pR = WR
    drhoL, dvL, dpL = dWL
    drhoR, dvR, dpR = dWR
    q = np.broadcast_to(np.asarray(q, dtype=float), rhoL.shape)

    cL = np.sqrt(g * pL / rhoL)
    cR = np.sqrt(g * pR / rhoR)
    ps, vs = riemann.star_states(rhoL, vL, pL, rhoR, vR, pR, g)
    rho_sl = riemann.star_density(rhoL, pL, ps, g)
    rho_sr = riemann.star_density(rhoR, pR, ps, g)
    c_sl = np.sqrt(g * ps / rho_sl)
    c_sr = np.sqrt(g * ps / rho_sr)

    shock_l = ps > pL
    shock_r = ps > pR
    dge_l = np.abs(ps - pL) < riemann.DEGENERATE_RTOL * (ps + pL)
    dge_r = np.abs(ps - pR) < riemann.DEGENERATE_RTOL * (ps + pR)

    sig_l = riemann.shock_speed_from_state(vL, cL, pL, ps, g, -1.0)
    sig_r = riemann.shock_speed_from_state(vR, cR, pR, ps, g, +1.0)
    head_l = np.where(shock_l, sig_l, vL - cL)
    tail_l = np.where(shock_l, sig_l, vs - c_sl)
    head_r = np.where(shock_r, sig_r, vR + cR)
    tail_r = np.where(shock_r, sig_r, vs + c_sr)

    tol_l = SONIC_EDGE_RTOL * c_sl
    tol_r = SONIC_EDGE_RTOL * c_sr
    m_ldata = head_l > 0.0
    m_rdata = ~m_ldata & (head_r < 0.0)
    m_lfan = (~m_ldata & ~m_rdata & ~shock_l & ~dge_l
              & (head_l < -tol_l) & (tail_l > tol_l))
    m_rfan = (~m_ldata & ~m_rdata & ~m_lfan & ~shock_r & ~dge_r
              & (head_r > tol_r) & (tail_r < -tol_r))
    m_star = ~(m_ldata | m_rdata | m_lfan | m_rfan)

    # --- star region: 2x2 in material derivatives at the contact
    aL, bL, dL, _, _ = _side_rows(-1.0, rhoL, vL, pL, cL, drhoL, dvL, dpL,
                                  ps, rho_sl, c_sl, vs, q, g, shock_l, dge_l)
    aR, bR, dR, _, _ = _side_rows(+1.0, rhoR, vR, pR, cR, drhoR, dvR, dpR,
                                  ps, rho_sr, c_sr, vs, q, g, shock_r, dge_r)
    det = aL * bR - aR * bL
    scale = np.abs(aL * bR) + np.abs(aR * bL) + 1e-300
    singular = np.abs(det) < _DET_RTOL * scale
    if np.any(singular):
        # acoustic fallback rows built on the data states
        aLf, bLf, dLf, _, _ = _side_rows(-1.0, rhoL, vL, pL, cL, drhoL, dvL, dpL,
                                         ps, rho_sl, c_sl, vs, q, g,
                                         np.zeros_like(shock_l), np.ones_like(dge_l))
        aRf, bRf, dRf, _, _ = _side_rows(+1.0, rhoR, vR, pR, cR, drhoR, dvR, dpR,
                                         ps, rho_sr, c_sr, vs, q, g,
                                         np.zeros_like(shock_r), np.ones_like(dge_r))
        aL = np.where(singular, aLf, aL); bL = np.where(singular, bLf, bL)
        dL = np.where(singular, dLf, dL)
        aR = np.where(singular, aRf, aR); bR = np.where(singular, bRf, bR)
        dR = np.where(singular, dRf, dR)
        det = aL * bR - aR * bL
    Dv = (dL * bR - dR * bL) / det
    Dp = (aL * dR - aR * dL) / det

    on_left = vs >= 0.0
    rho_side = np.where(on_left, rho_sl, rho_sr)
    c_side = np.where(on_left, c_sl, c_sr)
    dv_star = Dv + vs * Dp / (rho_side * c_side**2) + q * vs * vs
    dp_star = Dp + rho_side * vs * Dv
    p_x = -rho_side * Dv

    nonbar_l = _entropy_advection(rho_sl, rhoL, cL, drhoL, dpL)
    nonbar_r = _entropy_advection(rho_sr, rhoR, cR, drhoR, dpR)
    drho_star_l = Dp / c_sl**2 - vs * (-rho_sl * Dv / c_sl**2 + nonbar_l)
    drho_star_r = Dp / c_sr**2 - vs * (-rho_sr * Dv / c_sr**2 + nonbar_r)
    drho_star = np.where(on_left, drho_star_l, drho_star_r)
    del p_x

    # --- assemble: star values as the base, then overwrite the other regions
    rho_f = np.where(on_left, rho_sl, rho_sr)
    v_f = vs.copy()
    p_f = ps.copy()
    drho_f, dv_f, dp_f = drho_star.copy(), dv_star.copy(), dp_star.copy()

    def put(mask, vals):
        for dst, val in zip((rho_f, v_f, p_f, drho_f, dv_f, dp_f), vals):
            dst[mask] = val

    if np.any(m_ldata):
        m = m_ldata
        lw = _lw_rates(rhoL[m], vL[m], pL[m], drhoL[m], dvL[m], dpL[m], q[m], g)
        put(m, (rhoL[m], vL[m], pL[m], lw[0], lw[1], lw[2]))
    if np.any(m_rdata):
        m = m_rdata
        lw = _lw_rates(rhoR[m], vR[m], pR[m], drhoR[m], dvR[m], dpR[m], q[m], g)
        put(m, (rhoR[m], vR[m], pR[m], lw[0], lw[1], lw[2]))
    if np.any(m_lfan):
        m = m_lfan
        son = _sonic_rates(-1.0, rhoL[m], vL[m], pL[m], cL[m],
                           drhoL[m], dvL[m], dpL[m], q[m], g)
        put(m, (son[0], son[1], son[2], son[3], son[4], son[5]))
    if np.any(m_rfan):
        m = m_rfan
        son = _sonic_rates(+1.0, rhoR[m], vR[m], pR[m], cR[m],
                           drhoR[m], dvR[m], dpR[m], q[m], g)
        put(m, (son[0], son[1], son[2], son[3], son[4], son[5]))

    # side limits differ from the face value only when the contact sits on it
    vtol = _VSTAR_TOL * (cL + cR)
    contact = m_star & (np.abs(vs) <= vtol)
    rho_left = np.where(contact, rho_sl, rho_f)
    rho_right = np.where(contact, rho_sr, rho_f)
    drho_left = np.where(contact, drho_star_l, drho_f)
    drho_right = np.where(contact, drho_star_r, drho_f)

    return FaceResolution(rho=rho_f, v=v_f, p=p_f,
                          drho_dt=drho_f, dv_dt=dv_f, dp_dt=dp_f,
                          rho_left=rho_left, drho_left=drho_left,
                          rho_right=rho_right, drho_right=drho_right)


def grp_interior(left: GrpSideData, right: GrpSideData, geom_ratio: float, eos: Eos):
    """Interface trace and time derivative for single side data.

    Returns (ustar: PrimitiveState, du_dt: array (drho/dt, dv/dt, dp/dt)).
    """
    left.validate(); right.validate()
    WL = np.array([[left.u.rho], [left.u.v], [left.u.p]])
    dWL = np.array([[left.slopes.drho], [left.slopes.dv], [left.slopes.dp]])
    WR = np.array([[right.u.rho], [right.u.v], [right.u.p]])
    dWR = np.array([[right.slopes.drho], [right.slopes.dv], [right.slopes.dp]])
    r = resolve_faces(WL, dWL, WR, dWR, float(geom_ratio), eos.gamma)
    ustar = PrimitiveState(float(r.rho[0]), float(r.v[0]), float(r.p[0]))
    return ustar, np.array([float(r.drho_dt[0]), float(r.dv_dt[0]), float(r.dp_dt[0])])


# ---------------------------------------------------------------------------
# one-sided (boundary) solver, scalar path

def acoustic_one_sided(side: str, data: GrpSideData, bc: BoundarySpec,
                       geom_ratio: float, eos: Eos, t: float = 0.0,
                       literal: bool = False) -> BoundaryTimeDerivatives:
    """Acoustic boundary rates from the linear characteristic relations.

    With ``literal=True`` an alternative closed-form variant is evaluated
    instead (kept for comparison; its leading term lacks the rate factor).
    """
    data.validate()
    g = eos.gamma
    u, sl = data.u, data.slopes
    rho, v, p = u.rho, u.v, u.p
    c = float(np.sqrt(g * p / rho))
    q = float(geom_ratio)
    sgn = 1.0 if side == "left" else -1.0

    if literal:
        gp = bc.rate(t) if bc.g is not None else 0.0
        dv_t = gp
        dp_t = (sgn * rho * c
                - rho * (v - sgn * c) * (sl.dp / rho - sgn * c * sl.dv)
                - q * (rho * v) ** 3)
        drho_t = (dp_t + v * (sl.dp - c * c * sl.drho)) / (c * c)
        return BoundaryTimeDerivatives(dv_dt=dv_t, dp_dt=dp_t, drho_dt=drho_t)

    lam = (v - c, v, v + c)
    w_slopes = (sl.dv - sl.dp / (rho * c),
                sl.drho - sl.dp / (c * c),
                sl.dv + sl.dp / (rho * c))
    w_rows = ((0.0, 1.0, -1.0 / (rho * c)),
              (1.0, 0.0, -1.0 / (c * c)),
              (0.0, 1.0, 1.0 / (rho * c)))
    w_src = (q * c * v, 0.0, -q * c * v)

    tol = 1e-10 * c
    incoming = [i for i in range(3)
                if (lam[i] <= tol if side == "left" else lam[i] >= -tol)]
    rows, rhs = [], []
    for i in incoming:
        rows.append(w_rows[i])
        rhs.append(-lam[i] * w_slopes[i] + w_src[i])

    kind = bc.kind
    if kind in ("wall", "velocity"):
        rows.append((0.0, 1.0, 0.0)); rhs.append(bc.rate(t))
        if bc.rho_b is not None and len(rows) < 3:
            rows.append((1.0, 0.0, 0.0)); rhs.append(bc.rho_b_rate(t))
    elif kind in ("pressure", "inflow-rho-p"):
        rows.append((0.0, 0.0, 1.0)); rhs.append(bc.rate(t))
        if kind == "inflow-rho-p" and len(rows) < 3:
            rows.append((1.0, 0.0, 0.0)); rhs.append(0.0)
    elif kind == "mach":
        if bc.literal_mach:
            rows.append((-0.5 * c / rho, 1.0, 0.5 * c / p))
        else:
            rows.append((0.5 * v / (rho * c), 1.0 / c, -0.5 * v / (p * c)))
        rhs.append(bc.rate(t))
    # outflow adds no rows

    # fill to 3 with the remaining characteristic relations, nearest to the
    # incoming side first (marginal contact/sound characteristics)
    order = sorted((i for i in range(3) if i not in incoming),
                   key=lambda i: lam[i] if side == "left" else -lam[i])
    for i in order:
        if len(rows) >= 3:
            break
        rows.append(w_rows[i])
        rhs.append(-lam[i] * w_slopes[i] + w_src[i])

    sol = np.linalg.solve(np.array(rows[:3]), np.array(rhs[:3]))
    return BoundaryTimeDerivatives(dv_dt=float(sol[1]), dp_dt=float(sol[2]),
                                   drho_dt=float(sol[0]))


def one_sided_grp(side: str, data: GrpSideData, bc: BoundarySpec, bc_rate,
                  geom_ratio: float, eos: Eos, t: float = 0.0,
                  literal_acoustic: bool = False):
    """Boundary trace and time derivatives of the one-sided problem.

    Returns (trace: PrimitiveState, BoundaryTimeDerivatives); ``bc_rate``
    overrides bc.g_rate(t) when not None.
    """
    data.validate()
    g = eos.gamma
    u, sl = data.u, data.slopes
    q = float(geom_ratio)
    sgn = 1.0 if side == "left" else -1.0
    gp = float(bc.rate(t)) if bc_rate is None else float(bc_rate)
    kind = bc.kind

    if kind in ("supersonic-inflow", "dirichlet"):
        vals = bc.state(0.0, t)
        trace = PrimitiveState(*[float(x) for x in vals[:3]]).validate()
        eps = 1e-6 * (1.0 + abs(t))
        hi = np.asarray(bc.state(0.0, t + eps), dtype=float)[:3]
        lo = np.asarray(bc.state(0.0, max(t - eps, 0.0)), dtype=float)[:3]
        dt_span = eps + min(eps, t)
        rate = (hi - lo) / dt_span if dt_span > 0 else np.zeros(3)
        return trace, BoundaryTimeDerivatives(dv_dt=float(rate[1]),
                                              dp_dt=float(rate[2]),
                                              drho_dt=float(rate[0]))
    c_lim = float(np.sqrt(g * u.p / u.rho))
    if kind == "outflow" or (kind == "pressure" and -sgn * u.v >= c_lim):
        # free outflow, or a back-pressure datum swept away by supersonic
        # outgoing flow: the boundary values follow the interior data
        r = _lw_rates(u.rho, u.v, u.p, sl.drho, sl.dv, sl.dp, q, g)
        return u, BoundaryTimeDerivatives(dv_dt=float(r[1]), dp_dt=float(r[2]),
                                          drho_dt=float(r[0]))

    star = riemann.solve_one_sided(u, bc, side, eos, t=t)
    us = star.ustar
    c_s = float(np.sqrt(g * us.p / us.rho))
    c_d = float(np.sqrt(g * u.p / u.rho))

    if star.wave == "none":
        der = acoustic_one_sided(side, data, bc, q, eos, t=t, literal=literal_acoustic)
        return us, der

    # sonic check: emitted fan straddles the boundary
    if star.wave == "rarefaction":
        edge_star = us.v + sgn * c_s       # fan edge on the star side
        edge_data = u.v + sgn * c_d
        tol = SONIC_EDGE_RTOL * c_s
        straddle = (edge_star * sgn < -tol) and (edge_data * sgn > tol)
        if straddle:
            mu2 = eos.mu2
            k = 2.0 / (g - 1.0)
            # fan-crossing invariant: phi for the 3-fan (left boundary),
            # psi for the 1-fan (right boundary)
            cross_inv = u.v - sgn * k * c_d
            c_son = max(-sgn * mu2 * cross_inv, 1e-300)
            v_son = -sgn * c_son
            theta = c_son / c_d
            rho_son = u.rho * theta**k
            p_son = u.p * theta ** (g * k)
            ts_p = (sl.dp - c_d * c_d * sl.drho) / ((g - 1.0) * u.rho)
            dv_t = gp if kind in ("wall", "velocity") else 0.0
            dp_t = rho_son * v_son * (dv_t - theta ** (2.0 * g / (g - 1.0)) * ts_p
                                      - q * v_son * v_son)
            drho_t = dp_t / (c_son * c_son)
            trace = PrimitiveState(rho_son, v_son, p_son)
            return trace, BoundaryTimeDerivatives(dv_dt=dv_t, dp_dt=dp_t, drho_dt=drho_t)

    side_j = "R" if side == "left" else "L"
    co = one_sided_coefficients(side_j, data, star, q, eos)
    vstar = us.v
    kappa = vstar / (us.rho * c_s * c_s)

    if kind in ("wall", "velocity"):
        row2 = (1.0, kappa)
        rhs2 = gp - q * vstar * vstar
    elif kind in ("pressure", "inflow-rho-p"):
        row2 = (us.rho * vstar, 1.0)
        rhs2 = gp if kind == "pressure" else 0.0
    elif kind == "mach":
        if bc.literal_mach:
            # d(v + c)/dt = g', with the EOS identity closing dc in dp
            beta = (g - 1.0) / (2.0 * us.rho * c_s)
            row2 = (1.0 + beta * us.rho * vstar, kappa + beta)
            rhs2 = gp - q * vstar * vstar
        else:
            beta = vstar * (g - 1.0) / (2.0 * us.rho * c_s**3)
            row2 = (1.0 / c_s - beta * us.rho * vstar, kappa / c_s - beta)
            rhs2 = gp - q * vstar * vstar / c_s
    else:  # pragma: no cover
        raise IllPosedBoundary(f"no derivative closure for boundary kind {kind}")

    det = co.a * row2[1] - co.b * row2[0]
    Dv = (co.d * row2[1] - rhs2 * co.b) / det
    Dp = (co.a * rhs2 - row2[0] * co.d) / det
    dv_t = Dv + kappa * Dp + q * vstar * vstar
    dp_t = Dp + us.rho * vstar * Dv

    inward = sgn
    if kind in ("wall", "velocity"):
        if bc.rho_b is not None and vstar * inward > 0.0:
            drho_t = float(bc.rho_b_rate(t))
        else:
            drho_t = dp_t / (c_s * c_s)
    elif kind == "inflow-rho-p":
        drho_t = float(bc.rho_b_rate(t))
    else:
        nonbar = _entropy_advection(us.rho, u.rho, c_d, sl.drho, sl.dp)
        drho_t = dp_t / (c_s * c_s) - vstar * nonbar

    return us, BoundaryTimeDerivatives(dv_dt=float(dv_t), dp_dt=float(dp_t),
                                       drho_dt=float(drho_t))


# ---------------------------------------------------------------------------
# vectorized wall faces (2D hot path)

def resolve_wall_faces(W, dW, sgn, q, g):
    """One-sided solid-wall resolution for arrays of boundary faces.

    W, dW: (3, F) interior limits and slopes in the wall-normal frame
    (velocity = normal component, positive pointing away from the wall into
    the fluid when sgn=+1). ``sgn`` = +1 where the fluid occupies the +normal
    side (left-boundary configuration), -1 otherwise; array or scalar.
    Returns (rho*, p*, dv_dt, dp_dt, drho_dt); v* = 0.
    """
    rho, v, p = W
    drho, dv, dp = dW
    sgn = np.broadcast_to(np.asarray(sgn, dtype=float), rho.shape)
    q = np.broadcast_to(np.asarray(q, dtype=float), rho.shape)
    c = np.sqrt(g * p / rho)
    ps, rho_s = riemann.one_sided_star_velocity(rho, v, p, g, sgn, 0.0,
                                                vacuum="floor")
    c_s = np.sqrt(g * ps / rho_s)
    shock = ps > p
    dge = np.abs(ps - p) < riemann.DEGENERATE_RTOL * (ps + p)
    a, b, d, _, _ = _side_rows(sgn, rho, v, p, c, drho, dv, dp,
                               ps, rho_s, c_s, np.zeros_like(rho), q, g, shock, dge)
    # wall: Dv = 0 (v* = 0 and dv/dt = 0), so Dp = d/b
    Dp = d / b
    dp_t = Dp
    drho_t = dp_t / (c_s * c_s)
    return rho_s, ps, np.zeros_like(rho), dp_t, drho_t
