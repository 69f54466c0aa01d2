"""Exact Riemann solvers: the classical two-sided problem at interior
interfaces and the one-sided problem closed by partial boundary data.

The array kernels (`star_states`, `one_sided_star_velocity`) are the hot path
of the finite-volume sweeps; the dataclass API wraps them for single states.
"""

from dataclasses import dataclass

import numpy as np

from .boundary import BoundarySpec
from .errors import IllPosedBoundary, InvalidState, NoConvergence, VacuumFormation
from .gas import Eos, PrimitiveState, sound_speed

__all__ = [
    "WaveCurvePoint",
    "RiemannSolution",
    "OneSidedSolution",
    "wave_curve_from_state",
    "solve_riemann",
    "solve_one_sided",
    "sample",
    "star_states",
    "one_sided_star_velocity",
]

_PTOL = 1e-12      # relative Newton tolerance on p*
_MAXIT = 100
DEGENERATE_RTOL = 1e-9   # |p_b - p_R| < tol*(p_b + p_R) -> acoustic/degenerate wave


# ---------------------------------------------------------------------------
# pressure functions (Toro-style wave-curve parametrization)

def _fk(p, rho, pk, ck, g):
    """f_K(p) and f_K'(p): velocity change across a single K-family wave."""
    p = np.asarray(p, dtype=float)
    shock = p > pk
    A = 2.0 / ((g + 1.0) * rho)
    B = ((g - 1.0) / (g + 1.0)) * pk
    sq = np.sqrt(A / (p + B))
    f_sh = (p - pk) * sq
    df_sh = sq * (1.0 - 0.5 * (p - pk) / (B + p))
    z = (g - 1.0) / (2.0 * g)
    pr = p / pk
    f_ra = 2.0 * ck / (g - 1.0) * (pr**z - 1.0)
    df_ra = (1.0 / (rho * ck)) * pr ** (-(g + 1.0) / (2.0 * g))
    return np.where(shock, f_sh, f_ra), np.where(shock, df_sh, df_ra)


def _bisect(residual, lo, hi):
    """Bisection on a vectorized monotone-increasing residual."""
    fhi = residual(hi)
    for _ in range(80):
        grow = fhi < 0.0
        if not grow.any():
            break
        hi = np.where(grow, hi * 8.0, hi)
        fhi = residual(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        high = residual(mid) > 0.0
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    return 0.5 * (lo + hi)


def _newton_p(f_target, rho, pk, ck, g, p0):
    """Solve f_K(p) = target for each element; bisection fallback.

    f_K is monotone increasing, so a bracket always exists when the target is
    above the vacuum bound.
    """
    rho, pk, ck, target, p0 = np.broadcast_arrays(
        *[np.asarray(a, dtype=float) for a in (rho, pk, ck, f_target, p0)])
    p = np.maximum(p0.copy(), 1e-14 * pk)
    converged = np.zeros(p.shape, dtype=bool)
    for _ in range(_MAXIT):
        f, df = _fk(p, rho, pk, ck, g)
        pn = p - (f - target) / df
        pn = np.where(pn <= 0.0, 0.5 * p, pn)
        converged |= np.abs(pn - p) <= _PTOL * pn
        p = pn
        if converged.all():
            break
    if not converged.all():
        resid = lambda q: _fk(q, rho, pk, ck, g)[0] - target
        pb = _bisect(resid, 1e-14 * pk, np.maximum(p, pk) * 8.0)
        p = np.where(converged, p, pb)
    return p


def star_states(rhoL, vL, pL, rhoR, vR, pR, g):
    """Vectorized exact star state (p*, v*) of the two-sided Riemann problem.

    Newton iteration from the two-rarefaction guess with a bisection fallback;
    raises VacuumFormation if any pair generates vacuum.
    """
    rhoL, vL, pL, rhoR, vR, pR = np.broadcast_arrays(
        *[np.asarray(a, dtype=float) for a in (rhoL, vL, pL, rhoR, vR, pR)])
    cL = np.sqrt(g * pL / rhoL)
    cR = np.sqrt(g * pR / rhoR)
    if np.any(2.0 * (cL + cR) / (g - 1.0) <= vR - vL):
        raise VacuumFormation("vacuum-generating data: psi_L <= phi_R")
    z = (g - 1.0) / (2.0 * g)
    p0 = ((cL + cR - 0.5 * (g - 1.0) * (vR - vL))
          / (cL / pL**z + cR / pR**z)) ** (1.0 / z)
    p0 = np.maximum(p0, 1e-14 * np.minimum(pL, pR))

    p = p0.copy()
    dv = vR - vL
    converged = np.zeros(p.shape, dtype=bool)
    for _ in range(_MAXIT):
        fL, dfL = _fk(p, rhoL, pL, cL, g)
        fR, dfR = _fk(p, rhoR, pR, cR, g)
        dp = (fL + fR + dv) / (dfL + dfR)
        pn = p - dp
        pn = np.where(pn <= 0.0, 0.5 * p, pn)
        converged |= np.abs(pn - p) <= _PTOL * pn
        p = pn
        if converged.all():
            break
    if not converged.all():
        resid = lambda q: (_fk(q, rhoL, pL, cL, g)[0] + _fk(q, rhoR, pR, cR, g)[0] + dv)
        pb = _bisect(resid, 1e-14 * np.minimum(pL, pR), np.maximum.reduce([p, pL, pR]) * 8.0)
        p = np.where(converged, p, pb)
    fL, _ = _fk(p, rhoL, pL, cL, g)
    fR, _ = _fk(p, rhoR, pR, cR, g)
    resid = np.abs(fL + fR + dv)
    if np.any(resid >= 1e-12 * (1.0 + p)):
        raise NoConvergence(f"star pressure residual {resid.max():.3e}")
    v = 0.5 * (vL + vR) + 0.5 * (fR - fL)
    return p, v


def shock_density(rho0, p0, pstar, g):
    """Post-shock density from the Rankine-Hugoniot relations."""
    mu2 = (g - 1.0) / (g + 1.0)
    r = pstar / p0
    return rho0 * (r + mu2) / (mu2 * r + 1.0)


def rarefaction_density(rho0, p0, pstar, g):
    return rho0 * (pstar / p0) ** (1.0 / g)


def star_density(rho0, p0, pstar, g):
    """Density behind the wave connecting (rho0, p0) to pstar (either branch)."""
    return np.where(np.asarray(pstar) > np.asarray(p0),
                    shock_density(rho0, p0, pstar, g),
                    rarefaction_density(rho0, p0, pstar, g))


def shock_speed_from_state(v0, c0, p0, pstar, g, sgn):
    """Shock speed v0 + sgn*c0*sqrt(...); sgn=-1 for the 1-family, +1 for 3."""
    return v0 + sgn * c0 * np.sqrt((g + 1.0) / (2.0 * g) * pstar / p0
                                   + (g - 1.0) / (2.0 * g))


# ---------------------------------------------------------------------------
# dataclass API

@dataclass(frozen=True)
class WaveCurvePoint:
    p: float
    v: float
    rho: float
    kind: str          # "shock" | "rarefaction"
    family: int        # 1 | 3


@dataclass(frozen=True)
class RiemannSolution:
    uL: PrimitiveState
    uR: PrimitiveState
    eos: Eos
    pstar: float
    vstar: float
    rho_star_left: float
    rho_star_right: float
    left_wave: str
    right_wave: str

    @property
    def contact_speed(self):
        return self.vstar


@dataclass(frozen=True)
class OneSidedSolution:
    ustar: PrimitiveState
    wave: str            # "shock" | "rarefaction" | "none"
    family: int          # 3 for a left boundary, 1 for a right boundary
    wellposed: bool
    outgoing_characteristics: int


def wave_curve_from_state(u: PrimitiveState, family: int, p: float, eos: Eos) -> WaveCurvePoint:
    """Point at pressure p on the single-wave curve anchored at u.

    family=3 treats u as the data right of the wave (states on the left side
    of a 3-wave, the left-boundary configuration); family=1 mirrors it.
    """
    u.validate()
    if family not in (1, 3):
        raise ValueError("family must be 1 or 3")
    if not p > 0.0:
        raise InvalidState(f"curve pressure must be positive, got {p}")
    g = eos.gamma
    c = sound_speed(u, eos)
    f, _ = _fk(p, u.rho, u.p, c, g)
    v = u.v + f if family == 3 else u.v - f
    rho = float(star_density(u.rho, u.p, p, g))
    kind = "shock" if p > u.p else "rarefaction"
    return WaveCurvePoint(p=float(p), v=float(v), rho=rho, kind=kind, family=family)


def solve_riemann(uL: PrimitiveState, uR: PrimitiveState, eos: Eos) -> RiemannSolution:
    uL.validate(); uR.validate()
    g = eos.gamma
    p, v = star_states(uL.rho, uL.v, uL.p, uR.rho, uR.v, uR.p, g)
    p = float(p); v = float(v)
    rl = float(star_density(uL.rho, uL.p, p, g))
    rr = float(star_density(uR.rho, uR.p, p, g))
    return RiemannSolution(
        uL=uL, uR=uR, eos=eos, pstar=p, vstar=v,
        rho_star_left=rl, rho_star_right=rr,
        left_wave="shock" if p > uL.p else "rarefaction",
        right_wave="shock" if p > uR.p else "rarefaction",
    )


def sample(sol: RiemannSolution, xi) -> PrimitiveState:
    """State of the self-similar solution at similarity coordinate xi = x/t."""
    xi = np.asarray(xi, dtype=float)
    g = sol.eos.gamma
    uL, uR = sol.uL, sol.uR
    cL = np.sqrt(g * uL.p / uL.rho)
    cR = np.sqrt(g * uR.p / uR.rho)
    ps, vs = sol.pstar, sol.vstar
    csl = np.sqrt(g * ps / sol.rho_star_left)
    csr = np.sqrt(g * ps / sol.rho_star_right)

    rho = np.full(xi.shape, sol.rho_star_left)
    v = np.full(xi.shape, vs)
    p = np.full(xi.shape, ps)

    right_of_contact = xi > vs
    rho = np.where(right_of_contact, sol.rho_star_right, rho)

    if sol.left_wave == "shock":
        sL = shock_speed_from_state(uL.v, cL, uL.p, ps, g, -1.0)
        in_left = xi < sL
        rho = np.where(in_left, uL.rho, rho)
        v = np.where(in_left, uL.v, v)
        p = np.where(in_left, uL.p, p)
    else:
        head, tail = uL.v - cL, vs - csl
        in_left = xi < head
        rho = np.where(in_left, uL.rho, rho)
        v = np.where(in_left, uL.v, v)
        p = np.where(in_left, uL.p, p)
        fan = (xi >= head) & (xi < tail)
        if np.any(fan):
            cf = (2.0 / (g + 1.0)) * (cL + 0.5 * (g - 1.0) * (uL.v - xi))
            vf = xi + cf
            rf = uL.rho * (cf / cL) ** (2.0 / (g - 1.0))
            pf = uL.p * (cf / cL) ** (2.0 * g / (g - 1.0))
            rho = np.where(fan, rf, rho)
            v = np.where(fan, vf, v)
            p = np.where(fan, pf, p)

    if sol.right_wave == "shock":
        sR = shock_speed_from_state(uR.v, cR, uR.p, ps, g, +1.0)
        in_right = xi > sR
        rho = np.where(in_right, uR.rho, rho)
        v = np.where(in_right, uR.v, v)
        p = np.where(in_right, uR.p, p)
    else:
        head, tail = uR.v + cR, vs + csr
        in_right = xi > head
        rho = np.where(in_right, uR.rho, rho)
        v = np.where(in_right, uR.v, v)
        p = np.where(in_right, uR.p, p)
        fan = (xi <= head) & (xi > tail)
        if np.any(fan):
            cf = (2.0 / (g + 1.0)) * (cR - 0.5 * (g - 1.0) * (uR.v - xi))
            vf = xi - cf
            rf = uR.rho * (cf / cR) ** (2.0 / (g - 1.0))
            pf = uR.p * (cf / cR) ** (2.0 * g / (g - 1.0))
            rho = np.where(fan, rf, rho)
            v = np.where(fan, vf, v)
            p = np.where(fan, pf, p)

    if xi.ndim == 0:
        return PrimitiveState(float(rho), float(v), float(p))
    return PrimitiveState(rho, v, p)


# ---------------------------------------------------------------------------
# one-sided problem

def one_sided_star_velocity(rho, v, p, g, sgn, vb, vacuum="raise"):
    """Vectorized star pressure of a velocity-datum one-sided problem.

    sgn = +1 when the fluid sits on the +x side of the boundary (left
    boundary, emitted 3-wave); sgn = -1 for a right boundary (1-wave).
    Solves f_K(p*) = sgn*(vb - v).

    ``vacuum='floor'`` resolves data beyond the complete-rarefaction bound as
    the vacuum-adjacent limit (near-zero wall pressure, gas detaching) instead
    of raising; the sweeping schemes use it for receding-flow wall faces.
    """
    rho, v, p, vb = np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in (rho, v, p, vb)])
    c = np.sqrt(g * p / rho)
    target = sgn * (vb - v)
    bound = -2.0 * c / (g - 1.0)
    detach = target <= bound * (1.0 - 1e-12)
    if np.any(detach):
        if vacuum != "floor":
            raise VacuumFormation("velocity datum pulls the boundary state to vacuum")
        target = np.where(detach, (1.0 - 1e-3) * bound, target)
    p0 = np.maximum(p + rho * c * target, 1e-10 * p)
    ps = _newton_p(target, rho, p, c, g, p0)
    return ps, star_density(rho, p, ps, g)


def _count_outgoing(state: PrimitiveState, eos: Eos, side: str, tol: float):
    c = sound_speed(state, eos)
    lams = (state.v - c, state.v, state.v + c)
    if side == "left":
        return sum(1 for lam in lams if lam > tol), sum(1 for lam in lams if lam > -tol)
    return sum(1 for lam in lams if lam < -tol), sum(1 for lam in lams if lam < tol)


def _bc_manifold_dim(kind: str):
    # dimension of {B u = w_b} in (rho, v, p)-space
    if kind in ("wall", "velocity", "mach", "pressure"):
        return 2
    if kind == "inflow-rho-p":
        return 1
    if kind in ("supersonic-inflow", "dirichlet"):
        return 0
    return 3  # outflow: nothing prescribed


def solve_one_sided(uR: PrimitiveState, bc: BoundarySpec, side: str, eos: Eos,
                    t: float = 0.0) -> OneSidedSolution:
    """Boundary trace of the one-sided Riemann problem.

    ``uR`` is the interior limit adjacent to the boundary; ``side`` names
    which domain boundary ("left": fluid occupies x > 0, emitted wave in the
    3-family; "right": 1-family).
    """
    uR.validate()
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    g = eos.gamma
    family = 3 if side == "left" else 1
    sgn = 1.0 if side == "left" else -1.0
    c = sound_speed(uR, eos)
    kind = bc.kind

    if kind in ("supersonic-inflow", "dirichlet"):
        vals = bc.state(0.0, t)
        star = PrimitiveState(*[float(x) for x in vals[:3]]).validate()
        wave = "none"
    elif kind == "outflow":
        star = uR
        wave = "none"
    elif kind in ("wall", "velocity"):
        vb = float(bc.datum(t))
        inward = sgn
        ps, rs = one_sided_star_velocity(uR.rho, uR.v, uR.p, g, sgn, vb)
        ps, rs = float(ps), float(rs)
        cstar = np.sqrt(g * ps / rs)
        if vb * inward < 0.0 and abs(vb) / cstar > 1.0:
            raise IllPosedBoundary(
                f"outflow-directed velocity datum {vb} is supersonic (M={abs(vb)/cstar:.3f})")
        rho_star = rs
        if bc.rho_b is not None and vb * inward > 0.0:
            rho_star = float(bc.rho_b(t))
        star = PrimitiveState(rho_star, vb, ps)
        wave = "shock" if ps > uR.p else "rarefaction"
        if abs(ps - uR.p) < DEGENERATE_RTOL * (ps + uR.p):
            wave = "none"
    elif kind in ("pressure", "inflow-rho-p"):
        if kind == "pressure" and -sgn * uR.v >= c:
            # supersonic outgoing flow: no characteristic carries the datum
            # into the domain, so the back pressure is inactive
            star = uR
            wave = "none"
        else:
            pb = float(bc.datum(t))
            pt = wave_curve_from_state(uR, family, pb, eos)
            rho_star = pt.rho
            if kind == "inflow-rho-p":
                rho_star = float(bc.rho_b(t))
            star = PrimitiveState(rho_star, pt.v, pb)
            wave = pt.kind
            if abs(pb - uR.p) < DEGENERATE_RTOL * (pb + uR.p):
                wave = "none"
    elif kind == "mach":
        mb = float(bc.datum(t))
        star = _solve_mach(uR, mb, family, sgn, eos, literal=bc.literal_mach)
        wave = "shock" if star.p > uR.p else "rarefaction"
    else:  # pragma: no cover
        raise ValueError(f"unhandled boundary kind {kind}")

    tol = 1e-10 * sound_speed(star, eos)
    strict, loose = _count_outgoing(star, eos, side, tol)
    dim = _bc_manifold_dim(kind)
    if kind in ("supersonic-inflow", "dirichlet"):
        wellposed = loose == 3
    elif kind == "outflow":
        wellposed = strict == 0
    else:
        wellposed = strict <= dim <= loose
    return OneSidedSolution(ustar=star, wave=wave, family=family,
                            wellposed=bool(wellposed), outgoing_characteristics=strict)


def _solve_mach(uR, mb, family, sgn, eos, literal):
    """Intersection of the wave curve with the Mach-number datum."""
    g = eos.gamma

    def mismatch(p):
        pt = wave_curve_from_state(uR, family, p, eos)
        cstar = np.sqrt(g * pt.p / pt.rho)
        if literal:
            return pt.v + cstar - mb
        return pt.v - mb * cstar

    lo, hi = 1e-10 * uR.p, 8.0 * uR.p
    flo, fhi = mismatch(lo), mismatch(hi)
    for _ in range(200):
        if flo * fhi <= 0.0:
            break
        hi *= 8.0
        fhi = mismatch(hi)
    else:
        raise IllPosedBoundary(f"no wave-curve intersection for Mach datum {mb}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = mismatch(mid)
        if fm * flo <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    p = 0.5 * (lo + hi)
    pt = wave_curve_from_state(uR, family, p, eos)
    return PrimitiveState(pt.rho, pt.v, pt.p)
