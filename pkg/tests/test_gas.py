import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grpflow.errors import GeometryError, InvalidState
from grpflow.gas import (AreaFunction, CharacteristicSlopes, Eos,
                         PrimitiveState, cons_to_prim, eigenvalues, flux,
                         flux2d, nozzle_source, prim_to_cons,
                         riemann_invariants, radial_area, sound_speed,
                         straight_duct)

EOS = Eos(1.4)

def _state_from(rho, mach, p):
    # bounded Mach keeps kinetic/internal energy ratio moderate, so the
    # 1e-13 relative roundtrip bound is attainable in float64
    return PrimitiveState(rho, mach * math.sqrt(1.4 * p / rho), p)


state = st.builds(
    _state_from,
    rho=st.floats(0.01, 50.0),
    mach=st.floats(-8.0, 8.0),
    p=st.floats(0.01, 200.0),
)


def test_sound_speed_values():
    assert sound_speed(PrimitiveState(1.0, 0.0, 1.0), EOS) == pytest.approx(math.sqrt(1.4), rel=1e-15)
    assert sound_speed(PrimitiveState(1.4, 0.0, 1.0), EOS) == pytest.approx(1.0, rel=1e-15)
    assert sound_speed(PrimitiveState(8.0, -8.25, 116.5), EOS) == pytest.approx(
        math.sqrt(1.4 * 116.5 / 8.0), rel=1e-15)


def test_sound_speed_rejects_vacuum():
    with pytest.raises(InvalidState):
        sound_speed(PrimitiveState(-1.0, 0.0, 1.0), EOS)
    with pytest.raises(InvalidState):
        sound_speed(PrimitiveState(1.0, 0.0, 0.0), EOS)


def test_prim_to_cons_values():
    u = prim_to_cons(PrimitiveState(1.0, 0.0, 1.0), EOS)
    assert (u.rho, u.mom, u.ene) == pytest.approx((1.0, 0.0, 2.5))
    u = prim_to_cons(PrimitiveState(1.4, 3.0, 1.0), EOS)
    assert (u.rho, u.mom, u.ene) == pytest.approx((1.4, 4.2, 8.8))


def test_roundtrip_frozen_state():
    s = PrimitiveState(8.0, -8.25, 116.5)
    r = cons_to_prim(prim_to_cons(s, EOS), EOS)
    assert abs(r.rho - s.rho) / s.rho < 1e-13
    assert abs(r.v - s.v) / abs(s.v) < 1e-13
    assert abs(r.p - s.p) / s.p < 1e-13


@given(state)
@settings(max_examples=300, deadline=None)
def test_roundtrip_random(s):
    r = cons_to_prim(prim_to_cons(s, EOS), EOS)
    assert abs(r.rho - s.rho) <= 1e-13 * s.rho
    assert abs(r.v - s.v) <= 1e-13 * (1.0 + abs(s.v))
    # Mach <= 8 keeps the kinetic-cancellation error under 1e-13 relative
    assert abs(r.p - s.p) <= 1e-13 * s.p


def test_roundtrip_extreme_kinetic_ratio():
    # beyond that, the error is bounded relative to the total energy
    s = PrimitiveState(2.0, 80.0, 0.01)
    u = prim_to_cons(s, EOS)
    r = cons_to_prim(u, EOS)
    assert abs(r.p - s.p) <= 1e-13 * (EOS.gamma - 1.0) * u.ene


def test_cons_validation():
    from grpflow.gas import ConservedState
    with pytest.raises(InvalidState):
        ConservedState(1.0, 3.0, 1.0).validate()   # kinetic exceeds total


def test_flux_values():
    f = flux(prim_to_cons(PrimitiveState(1.0, 0.0, 1.0), EOS), EOS)
    assert f == pytest.approx([0.0, 1.0, 0.0])
    f = flux(prim_to_cons(PrimitiveState(1.4, 3.0, 1.0), EOS), EOS)
    assert f == pytest.approx([4.2, 13.6, 29.4])


def test_flux2d_gflux():
    _, gfl = flux2d(PrimitiveState(1.0, 2.0, 1.0, vy=0.0), EOS)
    assert gfl == pytest.approx([0.0, 0.0, 1.0, 0.0])


@given(state)
@settings(max_examples=200, deadline=None)
def test_flux_consistency(s):
    # flux(prim_to_cons(s)) equals the primitive-form assembly
    f = flux(prim_to_cons(s, EOS), EOS)
    ene = s.p / 0.4 + 0.5 * s.rho * s.v**2
    expected = np.array([s.rho * s.v, s.rho * s.v**2 + s.p, s.v * (ene + s.p)])
    assert np.all(np.abs(f - expected) <= 1e-13 * (1.0 + np.abs(expected)))


def test_eigenvalue_values():
    assert eigenvalues(PrimitiveState(1.4, 0.0, 1.0), EOS) == pytest.approx((-1.0, 0.0, 1.0))
    lam = eigenvalues(PrimitiveState(1.0, 2.0, 1.0), EOS)
    c = math.sqrt(1.4)
    assert lam == pytest.approx((2.0 - c, 2.0, 2.0 + c))


@given(state)
@settings(max_examples=200, deadline=None)
def test_eigenvalues_ordered(s):
    lm, l0, lp = eigenvalues(s, EOS)
    c = sound_speed(s, EOS)
    assert lm < l0 < lp
    assert lp - lm == pytest.approx(2.0 * c, rel=1e-12)


@given(state)
@settings(max_examples=200, deadline=None)
def test_invariant_gap(s):
    phi, psi = riemann_invariants(s, EOS)
    c = sound_speed(s, EOS)
    assert psi - phi == pytest.approx(4.0 * c / 0.4, rel=1e-12)


def test_slopes_thermodynamic_relation():
    s = PrimitiveState(2.0, 1.0, 3.0)
    sl = CharacteristicSlopes(drho=0.4, dv=-0.2, dp=0.9)
    c2 = 1.4 * s.p / s.rho
    expected = (sl.dp - c2 * sl.drho) / (0.4 * s.rho)
    assert sl.ts_prime(s, EOS) == pytest.approx(expected, rel=1e-14)
    # psi' - phi' = (4/(g-1)) dc
    dc = sl.dc(s, EOS)
    assert sl.psi_prime(s, EOS) - sl.phi_prime(s, EOS) == pytest.approx(
        4.0 * dc / 0.4, rel=1e-13)


def test_nozzle_source_zero_cases():
    s = PrimitiveState(1.0, 0.0, 1.0)
    area = radial_area(2)
    assert nozzle_source(s, 2.0, area, EOS) == pytest.approx([0.0, 0.0, 0.0])
    s2 = PrimitiveState(1.0, 3.0, 1.0)
    assert nozzle_source(s2, 2.0, straight_duct(), EOS) == pytest.approx([0.0, 0.0, 0.0])


def test_nozzle_source_spherical_signs():
    # inflow toward the center: mass source positive, momentum negative,
    # energy positive (sign pattern of -(a'/a)(rho v, rho v^2, v(rho E + p)))
    s = PrimitiveState(1.0, -1.0, 1e-8)
    h = nozzle_source(s, 2.0, radial_area(2), EOS)
    assert h[0] > 0.0 and h[1] < 0.0 and h[2] > 0.0
    # magnitude: a'/a = 2/r = 1 at r = 2
    assert h[0] == pytest.approx(1.0, rel=1e-12)


def test_nozzle_source_geometry_error():
    bad = AreaFunction(a=lambda x: -np.ones_like(np.asarray(x, float)),
                       da=lambda x: np.zeros_like(np.asarray(x, float)))
    with pytest.raises(GeometryError):
        nozzle_source(PrimitiveState(1.0, 1.0, 1.0), 0.5, bad, EOS)


def test_eos_gamma_guard():
    with pytest.raises(InvalidState):
        Eos(1.0)
