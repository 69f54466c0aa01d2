"""Ideal-gas state algebra: EOS, conversions, fluxes, eigenstructure, invariants.

Everything here works elementwise on scalars or numpy arrays; states are plain
records over (rho, v, p) and (rho, mom, ene).
"""

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, InvalidState

__all__ = [
    "Eos",
    "PrimitiveState",
    "ConservedState",
    "CharacteristicSlopes",
    "AreaFunction",
    "straight_duct",
    "radial_area",
    "sound_speed",
    "prim_to_cons",
    "cons_to_prim",
    "flux",
    "flux_arrays",
    "eigenvalues",
    "riemann_invariants",
    "nozzle_source",
]


@dataclass(frozen=True)
class Eos:
    """Ideal-gas EOS, e = p / ((gamma - 1) rho)."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise InvalidState(f"gamma must exceed 1, got {self.gamma}")

    @property
    def mu2(self):
        """(gamma - 1) / (gamma + 1), the recurring wave-relation constant."""
        return (self.gamma - 1.0) / (self.gamma + 1.0)

    def internal_energy(self, rho, p):
        return p / ((self.gamma - 1.0) * rho)


@dataclass(frozen=True)
class PrimitiveState:
    """Gas state (rho, v, p); 2D flows carry the transverse velocity in vy."""

    rho: float
    v: float
    p: float
    vy: float | None = None

    def validate(self):
        if not (np.all(np.asarray(self.rho) > 0.0) and np.all(np.asarray(self.p) > 0.0)):
            raise InvalidState(f"non-physical primitive state rho={self.rho}, p={self.p}")
        return self


@dataclass(frozen=True)
class ConservedState:
    """Conserved vector (rho, rho v, rho E); 2D adds momy."""

    rho: float
    mom: float
    ene: float
    momy: float = 0.0

    def validate(self):
        rho = np.asarray(self.rho)
        eint = np.asarray(self.ene) - (np.asarray(self.mom) ** 2 + np.asarray(self.momy) ** 2) / (
            2.0 * rho
        )
        if not (np.all(rho > 0.0) and np.all(eint > 0.0)):
            raise InvalidState("non-physical conserved state (rho or internal energy <= 0)")
        return self


def sound_speed(s: PrimitiveState, eos: Eos):
    """c = sqrt(gamma p / rho)."""
    s.validate()
    return np.sqrt(eos.gamma * s.p / s.rho)


# array forms used by the finite-volume sweeps: W = (rho, v, p) rows,
# U = (rho, rho v, rho E) rows

def prims_from_conserved(U, g):
    rho = U[0]
    v = U[1] / rho
    p = (g - 1.0) * (U[2] - 0.5 * rho * v * v)
    return np.array([rho, v, p])


def conserved_from_prims(W, g):
    rho, v, p = W
    return np.array([rho, rho * v, p / (g - 1.0) + 0.5 * rho * v * v])


def flux_from_prims(W, g):
    rho, v, p = W
    ene = p / (g - 1.0) + 0.5 * rho * v * v
    return np.array([rho * v, rho * v * v + p, v * (ene + p)])


def prim_to_cons(s: PrimitiveState, eos: Eos) -> ConservedState:
    s.validate()
    vy = 0.0 if s.vy is None else s.vy
    ene = s.p / (eos.gamma - 1.0) + 0.5 * s.rho * (s.v**2 + vy**2)
    return ConservedState(s.rho, s.rho * s.v, ene, s.rho * vy)


def cons_to_prim(u: ConservedState, eos: Eos, two_d: bool = False) -> PrimitiveState:
    u.validate()
    v = u.mom / u.rho
    vy = u.momy / u.rho
    p = (eos.gamma - 1.0) * (u.ene - 0.5 * u.rho * (v**2 + vy**2))
    return PrimitiveState(u.rho, v, p, vy if two_d else None)


def flux(u: ConservedState, eos: Eos):
    """1D flux (rho v, rho v^2 + p, v(rho E + p)) of a conserved state.

    For 2D states (momy set and meaningful) use ``flux_arrays`` on components.
    """
    s = cons_to_prim(u, eos, two_d=True)
    f0 = u.mom
    f1 = u.mom * s.v + s.p
    f2 = s.v * (u.ene + s.p)
    return np.array([f0, f1, f2])


def flux_arrays(rho, v, p, ene):
    """Normal-direction flux triple from primitive arrays (ene = rho E)."""
    return rho * v, rho * v * v + p, v * (ene + p)


def flux2d(s: PrimitiveState, eos: Eos):
    """x- and y-direction flux 4-vectors of a 2D primitive state."""
    s.validate()
    vy = 0.0 if s.vy is None else s.vy
    ene = s.p / (eos.gamma - 1.0) + 0.5 * s.rho * (s.v**2 + vy**2)
    f = np.array([s.rho * s.v, s.rho * s.v**2 + s.p, s.rho * s.v * vy,
                  s.v * (ene + s.p)])
    gfl = np.array([s.rho * vy, s.rho * s.v * vy, s.rho * vy**2 + s.p,
                    vy * (ene + s.p)])
    return f, gfl


def eigenvalues(s: PrimitiveState, eos: Eos):
    """(v - c, v, v + c)."""
    c = sound_speed(s, eos)
    return s.v - c, s.v, s.v + c


def riemann_invariants(s: PrimitiveState, eos: Eos):
    """(phi, psi) = v -/+ 2c/(gamma-1); psi - phi = 4c/(gamma-1)."""
    c = sound_speed(s, eos)
    k = 2.0 / (eos.gamma - 1.0)
    return s.v - k * c, s.v + k * c


@dataclass(frozen=True)
class CharacteristicSlopes:
    """Spatial derivatives (rho', v', p') of a boundary-adjacent limit.

    Derived quantities are computed on demand from a matching state so the
    thermodynamic relation T S' = (p' - c^2 rho') / ((gamma-1) rho) can never
    be stored inconsistently.
    """

    drho: float
    dv: float
    dp: float

    def ts_prime(self, s: PrimitiveState, eos: Eos):
        c2 = eos.gamma * s.p / s.rho
        return (self.dp - c2 * self.drho) / ((eos.gamma - 1.0) * s.rho)

    def dc(self, s: PrimitiveState, eos: Eos):
        c = sound_speed(s, eos)
        return 0.5 * c * (self.dp / s.p - self.drho / s.rho)

    def psi_prime(self, s: PrimitiveState, eos: Eos):
        return self.dv + 2.0 * self.dc(s, eos) / (eos.gamma - 1.0)

    def phi_prime(self, s: PrimitiveState, eos: Eos):
        return self.dv - 2.0 * self.dc(s, eos) / (eos.gamma - 1.0)


@dataclass(frozen=True)
class AreaFunction:
    """Duct cross-section a(x) and its derivative for the geometric source."""

    a: callable
    da: callable

    def ratio(self, x):
        """a'(x)/a(x); raises if the area is non-positive."""
        ax = np.asarray(self.a(x), dtype=float)
        if np.any(ax <= 0.0):
            raise GeometryError(f"non-positive duct area at x={x}")
        return np.asarray(self.da(x), dtype=float) / ax


def straight_duct() -> AreaFunction:
    return AreaFunction(a=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                        da=lambda x: np.zeros_like(np.asarray(x, dtype=float)))


def radial_area(d: int) -> AreaFunction:
    """a(x) = x^d; d=1 cylindrical, d=2 spherical symmetry."""
    if d not in (1, 2):
        raise GeometryError(f"radial symmetry exponent must be 1 or 2, got {d}")
    return AreaFunction(a=lambda x: np.asarray(x, dtype=float) ** d,
                        da=lambda x: d * np.asarray(x, dtype=float) ** (d - 1))


def nozzle_source(s: PrimitiveState, x, area: AreaFunction, eos: Eos):
    """Geometric source -(a'/a) (rho v, rho v^2, v(rho E + p))."""
    s.validate()
    q = area.ratio(x)
    ene = s.p / (eos.gamma - 1.0) + 0.5 * s.rho * s.v**2
    return np.array([
        -q * s.rho * s.v,
        -q * s.rho * s.v**2,
        -q * s.v * (ene + s.p),
    ])
