import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from viscowave.core import (ConfigError, ControlSignal, ModalState,
                            ProblemConfig, validate_config)
from viscowave.pde import (SYSTEMS, ModeDynamics, final_residual, modal_energy,
                           mode_propagate, simulate, stiffness_for,
                           viscous_root_ratio)


def _cfg(alpha=0.25, eps=0.1, **kw):
    return validate_config(ProblemConfig(alpha=alpha, epsilon=eps, **kw))


# ---------------------------------------------------------------------------
# roots and stiffness
# ---------------------------------------------------------------------------

def test_corrected_roots_literal():
    dyn = ModeDynamics.for_system("corrected", 3, 0.1, 0.25)
    b = 0.1 * 3 ** 0.5
    assert dyn.root_plus == complex(-b, 3.0)
    assert dyn.root_minus == complex(-b, -3.0)


def test_wave_roots():
    dyn = ModeDynamics.for_system("wave", 2, 0.0, 0.0)
    assert dyn.root_plus == 2j and dyn.root_minus == -2j


def test_viscous_roots_satisfy_characteristic():
    dyn = ModeDynamics.for_system("viscous", 5, 0.1, 0.75)
    b = 0.1 * 5 ** 1.5
    for r in (dyn.root_plus, dyn.root_minus):
        assert r * r + 2 * b * r + 25.0 == pytest.approx(0.0, abs=1e-10)


def test_viscous_root_ratio():
    # overdamped regime: both roots real, ratio in (0, 1]
    ratio = viscous_root_ratio(2, 0.9, 0.75)
    assert 0 < ratio <= 1
    with pytest.raises(ConfigError):
        viscous_root_ratio(50, 0.01, 0.25)    # underdamped: no real splitting


def test_stiffness_values():
    assert float(stiffness_for("corrected", 3, 0.1, 0.25)) == pytest.approx(
        9.0 + 0.01 * 3.0)                     # n^2 + eps^2 n^{4a}
    assert float(stiffness_for("viscous", 3, 0.1, 0.25)) == 9.0
    assert float(stiffness_for("wave", 3, 0.1, 0.25)) == 9.0
    with pytest.raises(ConfigError):
        stiffness_for("heat", 3, 0.1, 0.25)
    assert set(SYSTEMS) == {"corrected", "viscous", "wave"}


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------

def test_free_decay_oracle():
    # n = 1: u(t) = e^{-b t} cos t from u0 = 1, u1 = -b; at t = pi this is
    # -e^{-0.1 pi} for eps = 0.1 (any alpha, since 1^{2a} = 1)
    dyn = ModeDynamics.for_system("corrected", 1, 0.1, 0.25)
    u, ud = mode_propagate(dyn, (1.0 + 0j, complex(-0.1)), None, (0.0, math.pi))
    assert u == pytest.approx(-math.exp(-0.1 * math.pi), rel=1e-14)
    assert ud == pytest.approx(0.1 * math.exp(-0.1 * math.pi), rel=1e-12)


@given(t_mid=st.floats(0.1, 6.0), u0re=st.floats(-2, 2), u1im=st.floats(-2, 2))
@settings(max_examples=60, deadline=None)
def test_propagator_group_property(t_mid, u0re, u1im):
    dyn = ModeDynamics.for_system("corrected", 3, 0.1, 0.75)
    state = (complex(u0re, 0.3), complex(0.1, u1im))
    direct = mode_propagate(dyn, state, None, (0.0, 2 * math.pi))
    mid = mode_propagate(dyn, state, None, (0.0, t_mid))
    two_leg = mode_propagate(dyn, mid, None, (t_mid, 2 * math.pi))
    assert abs(direct[0] - two_leg[0]) < 1e-13
    assert abs(direct[1] - two_leg[1]) < 1e-13


def test_decay_envelope_exact():
    # the root-adapted variable y = u' - r_- u satisfies |y(t)| =
    # |y(0)| e^{-eps n^{2a} t} exactly for the corrected system
    for eps, alpha, n in [(0.1, 0.25, 4), (0.3, 0.75, 2)]:
        dyn = ModeDynamics.for_system("corrected", n, eps, alpha)
        state = (0.7 - 0.2j, 0.1 + 0.9j)
        y0 = state[1] - dyn.root_minus * state[0]
        t = 3.7
        u, ud = mode_propagate(dyn, state, None, (0.0, t))
        y = ud - dyn.root_minus * u
        assert abs(y) == pytest.approx(
            abs(y0) * math.exp(-eps * n ** (2 * alpha) * t), rel=1e-13)


def test_forced_resonant_wave_mode():
    # wave mode n = 1 driven by v(s) = sin(s)/pi with f_hat = 1 from rest:
    # u(t) = (sin t - t cos t) / (2 pi)
    dyn = ModeDynamics.for_system("wave", 1, 0.0, 0.0)
    t = np.linspace(0, 2 * math.pi, 2049)
    v = ControlSignal(0.0, 2 * math.pi, np.sin(t) / math.pi)
    # span ends must sit on the sample grid
    for t_end in (float(t[333]), float(t[1024]), float(t[2048])):
        u, ud = mode_propagate(dyn, (0.0 + 0j, 0.0 + 0j), v, (0.0, t_end))
        want = (math.sin(t_end) - t_end * math.cos(t_end)) / (2 * math.pi)
        assert u == pytest.approx(want, rel=1e-5, abs=1e-8)


def test_exponential_terms_match_samples():
    # the exact exponential representation and the sampled piecewise-linear
    # path integrate the same control up to the sampling error
    dyn = ModeDynamics.for_system("corrected", 2, 0.1, 0.25)
    t = np.linspace(0, 2.0, 4097)
    rate = complex(-0.3, 1.7)
    samples = 0.5 * np.exp(rate * (t - 1.0))
    sampled = ControlSignal(0.0, 2.0, samples)
    exact = ControlSignal(0.0, 2.0, samples,
                          exp_terms=(np.array([0.5 + 0j]), np.array([rate])),
                          exp_center=1.0, exp_support=(0.0, 2.0))
    state = (0.2 + 0j, -0.1 + 0j)
    u_s, ud_s = mode_propagate(dyn, state, sampled, (0.0, 2.0))
    u_e, ud_e = mode_propagate(dyn, state, exact, (0.0, 2.0))
    assert u_s == pytest.approx(u_e, rel=1e-7)
    assert ud_s == pytest.approx(ud_e, rel=1e-7)


def test_span_must_align_with_sample_grid():
    dyn = ModeDynamics.for_system("wave", 1, 0.0, 0.0)
    v = ControlSignal(0.0, 1.0, np.ones(11))
    with pytest.raises(ConfigError):
        mode_propagate(dyn, (0j, 0j), v, (0.0, 0.55))


# ---------------------------------------------------------------------------
# energy accounting
# ---------------------------------------------------------------------------

def test_modal_energy_formula():
    data = ModalState.from_arrays([1, 2], [1.0, 0.5], [0.0, 1.0], [1, 1])
    want = math.pi / 2 * ((1 + 0.01) * 1.0 + (4 + 0.01 * 2 ** 1.0) * 0.25 + 1.0)
    assert modal_energy(data, 0.1, 0.5 / 2) == pytest.approx(want)


def test_free_energy_monotone_and_dissipation():
    rng = np.random.default_rng(2)
    n = 10
    data = ModalState.from_arrays(range(1, n + 1), rng.normal(size=n),
                                  rng.normal(size=n), np.ones(n))
    for system in ("corrected", "viscous"):
        cfg = _cfg(alpha=0.75, eps=0.2, n_modes=n)
        traj = simulate(cfg, data, None, system=system)
        assert np.all(np.diff(traj.energy) <= 1e-12 * traj.energy[0])
        # energy balance: E(0) - E(T) equals the integrated dissipation
        drop = traj.energy[0] - traj.energy[-1]
        diss = float(np.trapezoid(traj.dissipation, traj.times))
        assert diss == pytest.approx(drop, rel=5e-3)


def test_wave_energy_constant():
    data = ModalState.from_arrays([1, 4], [1.0, 0.3], [0.5, -0.2], [1, 1])
    cfg = _cfg(alpha=0.25, eps=0.0)
    traj = simulate(cfg, data, None, system="wave")
    assert np.max(np.abs(traj.energy - traj.energy[0])) <= 1e-12 * traj.energy[0]


def test_final_residual_zero_for_null_state():
    data = ModalState.from_arrays([1], [1.0], [0.0], [1.0])
    zero = ModalState.from_arrays([1], [0.0], [0.0], [1.0])
    assert final_residual(zero, data, 0.1, 0.25) == 0.0
    assert final_residual(data, data, 0.1, 0.25) == pytest.approx(1.0)


def test_simulate_requires_covering_control():
    data = ModalState.from_arrays([1], [1.0], [0.0], [1.0])
    cfg = _cfg(horizon_T=4.0)
    v = ControlSignal(0.0, 2.0, np.zeros(33))
    with pytest.raises(ConfigError):
        simulate(cfg, data, v)
