"""Benchmark suite: declarative case definitions and exact/reference solutions.

Every builtin names a complete, runnable configuration (initial data,
boundary operators, source model, grid, CFL, output times) plus a reference
solution where one exists in closed form.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import boundary as bdy
from .errors import NoRoot, UnknownCase
from .gas import AreaFunction, Eos, PrimitiveState, radial_area
from .riemann import sample, solve_riemann

__all__ = ["CaseConfig", "builtin", "case_names", "nozzle_exact", "noh_exact",
           "smooth_wave_exact", "nozzle_area", "export_case", "load_case"]

NOH_FLOOR = 1e-6  # conventional stand-in for the zero initial pressure


@dataclass(frozen=True)
class CaseConfig:
    name: str
    dim: int                    # 0: scalar Burgers, 1, or 2
    gamma: float
    domain: tuple               # (x0, x1) or ((x0, x1), (y0, y1))
    cells: int | tuple
    cfl: float
    t_end: float
    initial: Callable = None    # 1D: x -> (3,N); 2D: (X, Y) -> (4, ...); scalar: x -> v
    bc_left: bdy.BoundarySpec | None = None
    bc_right: bdy.BoundarySpec | None = None
    bc_bottom: tuple | bdy.BoundarySpec | None = None   # 2D; may be segment list
    bc_top: tuple | bdy.BoundarySpec | None = None
    solid: Callable | None = None        # 2D: (X, Y) -> bool, True inside solid
    area: AreaFunction | None = None
    source_kind: str = "none"            # none | nozzle | radial-1 | radial-2
    output_times: tuple = ()
    steady_stop: float | None = None
    reference: Callable | None = None    # (x, t) -> (3, N) primitives
    extras: dict = field(default_factory=dict)

    def scalars(self):
        """The file-representable part of the configuration."""
        return {
            "case": self.name, "dim": self.dim, "gamma": self.gamma,
            "cells": self.cells, "cfl": self.cfl, "t_end": self.t_end,
            "domain": self.domain, "source": self.source_kind,
            "output_times": tuple(self.output_times),
            "steady_stop": self.steady_stop,
            "bc_left": self.bc_left.kind if self.bc_left else None,
            "bc_right": self.bc_right.kind if self.bc_right else None,
        }


# ---------------------------------------------------------------------------
# nozzle geometry and steady transonic solution

A_IN = 4.864317646
A_EX = 4.234567901


def nozzle_area() -> AreaFunction:
    """Converging-diverging duct, throat area 1 at x = 0.25."""
    la_in, la_ex = math.log(A_IN), math.log(A_EX)

    def a(x):
        x = np.asarray(x, dtype=float)
        left = A_IN * np.exp(-la_in * np.sin(2.0 * np.pi * x) ** 2)
        u = 2.0 * np.pi * (1.0 - x) / 3.0
        right = A_EX * np.exp(-la_ex * np.sin(u) ** 2)
        return np.where(x <= 0.25, left, right)

    def da(x):
        x = np.asarray(x, dtype=float)
        left = a(x) * (-la_in) * 2.0 * np.pi * np.sin(4.0 * np.pi * x)
        u = 2.0 * np.pi * (1.0 - x) / 3.0
        right = a(x) * la_ex * (2.0 * np.pi / 3.0) * np.sin(2.0 * u)
        return np.where(x <= 0.25, left, right)

    return AreaFunction(a=a, da=da)


def _area_mach_residual(m, a_ratio, g):
    return (1.0 / m**2) * ((2.0 / (g + 1.0)) * (1.0 + 0.5 * (g - 1.0) * m**2)) \
        ** ((g + 1.0) / (g - 1.0)) - a_ratio**2


def mach_from_area(a_ratio, branch, g=1.4):
    """Mach number from A/A* on the chosen branch ('sub' or 'sup')."""
    if a_ratio < 1.0 - 1e-12:
        raise NoRoot(f"area ratio {a_ratio} below the sonic throat value")
    a_ratio = max(a_ratio, 1.0)
    lo, hi = (1e-10, 1.0) if branch == "sub" else (1.0, 100.0)
    f = lambda m: _area_mach_residual(m, a_ratio, g)
    if f(lo) * f(hi) > 0.0:
        raise NoRoot(f"no {branch} root for area ratio {a_ratio}")
    return brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)


def _isentropic(m, rho0, p0, g):
    fac = 1.0 + 0.5 * (g - 1.0) * m**2
    rho = rho0 * fac ** (-1.0 / (g - 1.0))
    p = p0 * fac ** (-g / (g - 1.0))
    v = m * math.sqrt(g * p / rho)
    return rho, v, p


def standing_shock_position(p_exit, g=1.4, rho0=1.0, p0=1.0):
    """Shock location in the diverging section matching the exit pressure."""
    area = nozzle_area()

    def exit_p(xs):
        a_xs = float(area.a(xs))
        m1 = mach_from_area(a_xs, "sup", g)
        p1 = p0 * (1.0 + 0.5 * (g - 1.0) * m1**2) ** (-g / (g - 1.0))
        m2 = math.sqrt(((g - 1.0) * m1**2 + 2.0) / (2.0 * g * m1**2 - (g - 1.0)))
        p2 = p1 * (2.0 * g * m1**2 - (g - 1.0)) / (g + 1.0)
        p02 = p2 * (1.0 + 0.5 * (g - 1.0) * m2**2) ** (g / (g - 1.0))
        a_star2 = a_xs / math.sqrt(_area_mach_residual(m2, 0.0, g))
        m_ex = mach_from_area(float(area.a(1.0)) / a_star2, "sub", g)
        return p02 * (1.0 + 0.5 * (g - 1.0) * m_ex**2) ** (-g / (g - 1.0))

    f = lambda xs: exit_p(xs) - p_exit
    lo, hi = 0.2501, 0.9999
    if f(lo) * f(hi) > 0.0:
        raise NoRoot(f"no standing-shock position for exit pressure {p_exit}")
    return brentq(f, lo, hi, xtol=1e-12)


def nozzle_exact(x, g=1.4, rho0=1.0, p0=1.0, p_exit=None):
    """Steady nozzle solution: transonic when p_exit is None, else the
    standing-shock solution matching the exit pressure.

    Returns (rho, v, p) arrays over x in [0, 1]; Mach is v/c.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    area = nozzle_area()
    rho = np.empty_like(x); v = np.empty_like(x); p = np.empty_like(x)
    if p_exit is None:
        for i, xi in enumerate(x):
            branch = "sub" if xi < 0.25 else "sup"
            m = 1.0 if abs(xi - 0.25) < 1e-14 else mach_from_area(float(area.a(xi)), branch, g)
            rho[i], v[i], p[i] = _isentropic(m, rho0, p0, g)
        return rho, v, p
    xs = standing_shock_position(p_exit, g, rho0, p0)
    m1 = mach_from_area(float(area.a(xs)), "sup", g)
    p1 = p0 * (1.0 + 0.5 * (g - 1.0) * m1**2) ** (-g / (g - 1.0))
    m2 = math.sqrt(((g - 1.0) * m1**2 + 2.0) / (2.0 * g * m1**2 - (g - 1.0)))
    p2 = p1 * (2.0 * g * m1**2 - (g - 1.0)) / (g + 1.0)
    p02 = p2 * (1.0 + 0.5 * (g - 1.0) * m2**2) ** (g / (g - 1.0))
    # downstream stagnation density from the entropy jump (T0 is conserved)
    rho02 = rho0 * (p02 / p0)
    a_star2 = float(area.a(xs)) / math.sqrt(_area_mach_residual(m2, 0.0, g))
    for i, xi in enumerate(x):
        if xi < 0.25:
            m = mach_from_area(float(area.a(xi)), "sub", g)
            rho[i], v[i], p[i] = _isentropic(m, rho0, p0, g)
        elif xi <= xs:
            m = 1.0 if abs(xi - 0.25) < 1e-14 else mach_from_area(float(area.a(xi)), "sup", g)
            rho[i], v[i], p[i] = _isentropic(m, rho0, p0, g)
        else:
            m = mach_from_area(float(area.a(xi)) / a_star2, "sub", g)
            rho[i], v[i], p[i] = _isentropic(m, rho02, p02, g)
    return rho, v, p


def noh_exact(r, t, g=5.0 / 3.0):
    """Spherical cold-gas implosion: expanding shock at r = t/3 (v0 = -1).

    Plateau rho = 64, v = 0, p = 64/3 behind the shock; outside,
    rho = (1 + t/r)^2, v = -1, p = floor.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if t <= 0.0:
        return (np.ones_like(r), np.full_like(r, -1.0), np.full_like(r, NOH_FLOOR))
    inside = r < t / 3.0
    rho = np.where(inside, 64.0, (1.0 + t / r) ** 2)
    v = np.where(inside, 0.0, -1.0)
    p = np.where(inside, 64.0 / 3.0, NOH_FLOOR)
    return rho, v, p


def smooth_wave_exact(x, t, g=1.4, amp=0.05, rho0=1.0, p0=1.0):
    """Right-running simple wave: v0(x) = amp sin(2 pi x), uniform entropy.

    Characteristics are straight; valid before breaking
    (t* ~ 1/((g+1) pi amp) ~ 2.65 for the defaults).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    c0 = math.sqrt(g * p0 / rho0)
    v0 = lambda y: amp * np.sin(2.0 * np.pi * y)
    dv0 = lambda y: amp * 2.0 * np.pi * np.cos(2.0 * np.pi * y)
    x0 = x.copy()
    for _ in range(100):
        lam = c0 + 0.5 * (g + 1.0) * v0(x0)
        f = x0 + lam * t - x
        df = 1.0 + 0.5 * (g + 1.0) * dv0(x0) * t
        x0n = x0 - f / df
        if np.max(np.abs(x0n - x0)) < 1e-15:
            x0 = x0n
            break
        x0 = x0n
    v = v0(x0)
    c = c0 + 0.5 * (g - 1.0) * v
    rho = rho0 * (c / c0) ** (2.0 / (g - 1.0))
    p = p0 * (c / c0) ** (2.0 * g / (g - 1.0))
    return rho, v, p


# ---------------------------------------------------------------------------
# builtin definitions

def _jump_initial(x_jump, left, right):
    def init(x):
        x = np.asarray(x, dtype=float)
        out = np.empty((3,) + x.shape)
        for k in range(3):
            out[k] = np.where(x <= x_jump, left[k], right[k])
        return out
    return init


def _const_state(vals):
    vals = tuple(float(v) for v in vals)
    return lambda x, t: vals


def _sod():
    left, right = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
    eos = Eos(1.4)
    sol = solve_riemann(PrimitiveState(*left), PrimitiveState(*right), eos)

    def reference(x, t):
        if t <= 0.0:
            return _jump_initial(0.5, left, right)(x)
        s = sample(sol, (np.asarray(x, dtype=float) - 0.5) / t)
        return np.array([s.rho, s.v, s.p])

    return CaseConfig(
        name="sod", dim=1, gamma=1.4, domain=(0.0, 1.0), cells=400, cfl=0.6,
        t_end=0.25, initial=_jump_initial(0.5, left, right),
        bc_left=bdy.outflow(), bc_right=bdy.outflow(),
        reference=reference, output_times=(0.25,))


def _shock_wall():
    left, right = (1.4, 0.0, 1.0), (8.0, -8.25, 116.5)
    # reflection constants: star state of the wall problem and shock speeds
    plateau = (27.411764705882355, 0.0, 885.4)
    t_hit, sigma_r = 0.2, 3.4

    def reference(x, t):
        x = np.asarray(x, dtype=float)
        if t < t_hit:
            xs = 2.0 - 10.0 * t
            return _jump_initial(xs, left, right)(x)
        xs = sigma_r * (t - t_hit)
        return _jump_initial(xs, plateau, right)(x)

    return CaseConfig(
        name="shock-wall", dim=1, gamma=1.4, domain=(0.0, 10.0), cells=400,
        cfl=0.6, t_end=2.0, initial=_jump_initial(2.0, left, right),
        bc_left=bdy.wall(), bc_right=bdy.supersonic_inflow(_const_state(right)),
        reference=reference, output_times=(2.0,),
        extras={"plateau_rho": plateau[0], "plateau_p": plateau[2],
                "reflected_shock_speed": sigma_r, "wall_hit_time": t_hit})


def _woodward_colella():
    def init(x):
        x = np.asarray(x, dtype=float)
        p = np.where(x < 0.1, 1000.0, np.where(x > 0.9, 100.0, 0.01))
        return np.array([np.ones_like(x), np.zeros_like(x), p])

    return CaseConfig(
        name="woodward-colella", dim=1, gamma=1.4, domain=(0.0, 1.0), cells=400,
        cfl=0.6, t_end=0.038, initial=init,
        bc_left=bdy.wall(), bc_right=bdy.wall(), output_times=(0.038,))


def _nozzle(kind):
    g = 1.4
    p_ex = 0.0272237 if kind == "smooth" else 0.4
    area = nozzle_area()
    m0 = mach_from_area(A_IN, "sub", g)
    rho_in, v_in, p_in = _isentropic(m0, 1.0, 1.0, g)

    def init(x):
        x = np.asarray(x, dtype=float)
        rho = np.ones_like(x)
        p = np.where(x < 0.25, 1.0, (p_ex / 1.0) ** g)
        return np.array([rho, np.zeros_like(x), p])

    if kind == "smooth":
        # back pressure matching the steady exit value; inactive once the
        # exit flow becomes supersonic
        bc_right = bdy.pressure(p_ex)
        ref = lambda x, t: np.array(nozzle_exact(x, g))
    else:
        bc_right = bdy.pressure(p_ex)
        ref = lambda x, t: np.array(nozzle_exact(x, g, p_exit=p_ex))

    return CaseConfig(
        name=f"nozzle-{kind}", dim=1, gamma=g, domain=(0.0, 1.0), cells=22,
        cfl=0.6, t_end=5.0, initial=init,
        bc_left=bdy.inflow_rho_p(rho_in, p_in), bc_right=bc_right,
        area=area, source_kind="nozzle", reference=ref, output_times=(5.0,),
        extras={"p_exit": p_ex, "p_in": p_in, "rho_in": rho_in,
                "shock_x": standing_shock_position(p_ex, g) if kind == "shock" else None})


def _spherical_shock():
    left = (1.0, 0.0, 1.0 / 1.4)
    right = (1.69997, -0.578906, 1.528199)
    return CaseConfig(
        name="spherical-shock", dim=1, gamma=1.4, domain=(0.0, 10.0), cells=200,
        cfl=0.5, t_end=5.0, initial=_jump_initial(2.0, left, right),
        bc_left=bdy.wall(), bc_right=bdy.dirichlet(_const_state(right)),
        area=radial_area(2), source_kind="radial-2", output_times=(5.0,))


def _noh():
    g = 5.0 / 3.0

    def init(x):
        x = np.asarray(x, dtype=float)
        return np.array([np.ones_like(x), -np.ones_like(x),
                         np.full_like(x, NOH_FLOOR)])

    def outer_state(x, t):
        rho = (1.0 + t / x) ** 2 if x > 0 else 1.0
        return (rho, -1.0, NOH_FLOOR)

    return CaseConfig(
        name="noh", dim=1, gamma=g, domain=(0.0, 10.0), cells=400, cfl=0.6,
        t_end=5.0, initial=init,
        bc_left=bdy.wall(), bc_right=bdy.dirichlet(outer_state),
        area=radial_area(2), source_kind="radial-2",
        reference=lambda x, t: np.array(noh_exact(x, t, g)),
        output_times=(5.0,), extras={"plateau_rho": 64.0, "shock_speed": 1.0 / 3.0})


def _spherical_explosion():
    inside, outside = (21.7333, 0.0, 15.514), (2.0, 0.0, 1.0)
    return CaseConfig(
        name="spherical-explosion", dim=1, gamma=1.4, domain=(0.0, 50.0),
        cells=500, cfl=0.6, t_end=10.0,
        initial=_jump_initial(5.0, inside, outside),
        bc_left=bdy.wall(), bc_right=bdy.outflow(),
        area=radial_area(2), source_kind="radial-2", output_times=(10.0,))


def _smooth_wave():
    ref = lambda x, t: np.array(smooth_wave_exact(x, t))
    return CaseConfig(
        name="smooth-wave", dim=1, gamma=1.4, domain=(0.0, 1.0), cells=100,
        cfl=0.6, t_end=0.5, initial=lambda x: np.array(smooth_wave_exact(x, 0.0)),
        bc_left=bdy.dirichlet(lambda x, t: tuple(float(a) for a in
                                                 np.array(smooth_wave_exact(x, t))[:, 0])),
        bc_right=bdy.dirichlet(lambda x, t: tuple(float(a) for a in
                                                  np.array(smooth_wave_exact(x, t))[:, 0])),
        reference=ref, output_times=(0.5,))


def _burgers_ibvp():
    def init(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 1.0, -x, -1.0)

    return CaseConfig(
        name="burgers-ibvp", dim=0, gamma=1.4, domain=(0.0, 2.0), cells=100,
        cfl=0.6, t_end=2.0, initial=init,
        extras={"bc_value": lambda t: 0.0 if t < 1.0 else 2.0,
                "bc_switch_time": 1.0, "right_value": -1.0,
                "contour_interval": 0.01})


def _double_mach():
    g = 1.4
    pre = (1.4, 0.0, 0.0, 1.0)
    s60, c60 = math.sin(math.pi / 3.0), math.cos(math.pi / 3.0)
    post = (8.0, 8.25 * s60, -8.25 * c60, 116.5)
    x_foot = 1.0 / 6.0

    def shock_x(y, t):
        # incident shock line at time t: x = x_foot + (y + 20 t)/sqrt(3)
        return x_foot + (y + 20.0 * t) / math.sqrt(3.0)

    def init(X, Y):
        behind = X < shock_x(Y, 0.0)
        out = np.empty((4,) + X.shape)
        for k in range(4):
            out[k] = np.where(behind, post[k], pre[k])
        return out

    def top_state(x, t):
        return post if x < shock_x(1.0, t) else pre

    return CaseConfig(
        name="double-mach", dim=2, gamma=g,
        domain=((0.0, 4.0), (0.0, 1.0)), cells=(720, 180), cfl=0.6, t_end=0.2,
        initial=init,
        bc_left=bdy.supersonic_inflow(lambda x, t: post),
        bc_right=bdy.outflow(),
        bc_bottom=((0.0, x_foot, bdy.dirichlet(lambda x, t: post)),
                   (x_foot, 4.0, bdy.wall())),
        bc_top=bdy.dirichlet(top_state),
        output_times=(0.2,),
        extras={"post_state": post, "pre_state": pre, "shock_x": shock_x})


def _forward_step():
    state = (1.4, 3.0, 0.0, 1.0)

    def init(X, Y):
        out = np.empty((4,) + X.shape)
        for k in range(4):
            out[k] = np.full_like(X, state[k])
        return out

    return CaseConfig(
        name="forward-step", dim=2, gamma=1.4,
        domain=((0.0, 3.0), (0.0, 1.0)), cells=(900, 300), cfl=0.6, t_end=4.0,
        initial=init, solid=lambda X, Y: (X >= 0.6) & (Y <= 0.2),
        bc_left=bdy.supersonic_inflow(lambda x, t: state),
        bc_right=bdy.outflow(), bc_bottom=bdy.wall(), bc_top=bdy.wall(),
        output_times=(4.0,), extras={"inflow_state": state})


_BUILTINS = {
    "burgers-ibvp": _burgers_ibvp,
    "shock-wall": _shock_wall,
    "woodward-colella": _woodward_colella,
    "nozzle-smooth": lambda: _nozzle("smooth"),
    "nozzle-shock": lambda: _nozzle("shock"),
    "spherical-shock": _spherical_shock,
    "noh": _noh,
    "spherical-explosion": _spherical_explosion,
    "double-mach": _double_mach,
    "forward-step": _forward_step,
    "sod": _sod,
    "smooth-wave": _smooth_wave,
}


def case_names():
    return sorted(_BUILTINS)


def builtin(name: str) -> CaseConfig:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise UnknownCase(f"unknown case {name!r}; known: {', '.join(case_names())}")
    return factory()


# ---------------------------------------------------------------------------
# flat key = value case files

def export_case(cfg: CaseConfig) -> str:
    lines = []
    for key, val in cfg.scalars().items():
        if val is None:
            continue
        if isinstance(val, tuple):
            val = " ".join(repr(v) if not isinstance(v, tuple)
                           else " ".join(repr(w) for w in v) for v in val)
        lines.append(f"{key} = {val}")
    return "\n".join(lines) + "\n"


def load_case(text: str) -> CaseConfig:
    """Rebuild a case from its file form: builtin(name) + scalar overrides."""
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition("=")
        fields[key.strip()] = val.strip()
    if "case" not in fields:
        raise UnknownCase("case file lacks a 'case = <name>' line")
    cfg = builtin(fields["case"])
    over = {}
    if "cells" in fields:
        parts = fields["cells"].replace("(", " ").replace(")", " ").replace(",", " ").split()
        over["cells"] = int(parts[0]) if len(parts) == 1 else tuple(int(p) for p in parts)
    for key in ("cfl", "t_end", "gamma"):
        if key in fields:
            over[key] = float(fields[key])
    if "steady_stop" in fields:
        over["steady_stop"] = float(fields["steady_stop"])
    if "output_times" in fields:
        over["output_times"] = tuple(float(v) for v in fields["output_times"].split())
    return replace(cfg, **over) if over else cfg
