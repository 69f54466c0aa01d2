"""Boundary operators: the tagged partial-data conditions a run can impose.

A BoundarySpec names which combination of physical variables is prescribed on
a boundary and carries the data as callables of time (or of (x, t) for
full-state Dirichlet data). Rates default to zero for constant data.
"""

from dataclasses import dataclass, field
from typing import Callable

__all__ = ["BoundarySpec", "wall", "velocity", "mach", "pressure",
           "supersonic_inflow", "dirichlet", "outflow", "inflow_rho_p"]

_ZERO = lambda t: 0.0

KINDS = ("wall", "velocity", "mach", "pressure", "supersonic-inflow",
         "dirichlet", "outflow", "inflow-rho-p")


@dataclass(frozen=True)
class BoundarySpec:
    kind: str
    g: Callable | None = None            # scalar datum g(t)
    g_rate: Callable = field(default=_ZERO)
    rho_b: Callable | None = None        # supplemental inflow density rho_b(t)
    rho_b_rate: Callable = field(default=_ZERO)
    state: Callable | None = None        # full-state datum state(x, t) -> (rho, v, p[, vy])
    literal_mach: bool = False           # closure v + c = M_b instead of v/c = M_b

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown boundary kind {self.kind!r}")

    def datum(self, t):
        return self.g(t)

    def rate(self, t):
        return self.g_rate(t)


def wall() -> BoundarySpec:
    """Solid wall: prescribed velocity g(t) = 0."""
    return BoundarySpec("wall", g=lambda t: 0.0)


def velocity(g, g_rate=_ZERO, rho_b=None, rho_b_rate=_ZERO) -> BoundarySpec:
    if not callable(g):
        g_val = float(g)
        g = lambda t: g_val
    return BoundarySpec("velocity", g=g, g_rate=g_rate, rho_b=rho_b, rho_b_rate=rho_b_rate)


def mach(g, g_rate=_ZERO, literal=False) -> BoundarySpec:
    if not callable(g):
        g_val = float(g)
        g = lambda t: g_val
    return BoundarySpec("mach", g=g, g_rate=g_rate, literal_mach=literal)


def pressure(g, g_rate=_ZERO) -> BoundarySpec:
    if not callable(g):
        g_val = float(g)
        g = lambda t: g_val
    return BoundarySpec("pressure", g=g, g_rate=g_rate)


def inflow_rho_p(rho_val, p_val) -> BoundarySpec:
    """Subsonic inflow with (rho, p) prescribed (duct entrance data)."""
    return BoundarySpec("inflow-rho-p", g=lambda t: float(p_val),
                        rho_b=lambda t: float(rho_val))


def supersonic_inflow(state) -> BoundarySpec:
    """Full-state datum; state(x, t) -> (rho, v, p[, vy])."""
    return BoundarySpec("supersonic-inflow", state=state)


def dirichlet(state) -> BoundarySpec:
    """Exact full-state data evaluated at face positions and mid-step times."""
    return BoundarySpec("dirichlet", state=state)


def outflow() -> BoundarySpec:
    """Free outflow: no prescribed data, trace taken from the interior limit."""
    return BoundarySpec("outflow")
