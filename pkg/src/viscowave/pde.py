"""Exact per-mode propagation of the damped string variants.

Each sine mode n obeys a scalar second order ODE

    u'' + damping * u' + stiffness * u = v(t) * f_n

and the three systems differ only in those two coefficients:

  "corrected"  stiffness n^2 + eps^2 n^{4a}, damping 2 eps n^{2a};
               characteristic roots are exactly -eps n^{2a} +- i n, which is
               what makes this variant's spectrum align with the eigenvalue
               lattice the control construction interpolates on.
  "viscous"    stiffness n^2, same damping; roots -b +- sqrt(b^2 - n^2),
               real and split (one slow, one fast) once b = eps n^{2a}
               exceeds n, which happens for distant modes when a > 1/2.
  "wave"       eps = 0 limit, undamped.

There is no time discretization of the dynamics.  The homogeneous flow is
the closed-form 2x2 propagator built from the roots, and the forcing enters
through exact integrals of e^{r t} against the control: piecewise-linear
between samples (the only approximation in the pipeline, quadratic in the
control's curvature), or fully closed-form when the control carries its
exponential-sum representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigError, ControlSignal, ModalState, sinhc

SYSTEMS = ("corrected", "viscous", "wave")


@dataclass(frozen=True)
class ModeDynamics:
    """Coefficients and characteristic roots of one modal oscillator."""
    n: int
    stiffness: float
    damping: float
    root_plus: complex
    root_minus: complex
    f_coef: complex = 1.0

    @classmethod
    def for_system(cls, system: str, n: int, eps: float, alpha: float,
                   f_coef: complex = 1.0) -> "ModeDynamics":
        if n < 1:
            raise ConfigError("mode index must be a positive integer")
        if system not in SYSTEMS:
            raise ConfigError(f"unknown system '{system}'")
        b = eps * float(n) ** (2.0 * alpha)
        if system == "wave" or eps == 0:
            return cls(n=n, stiffness=float(n) ** 2, damping=0.0,
                       root_plus=1j * n, root_minus=-1j * n, f_coef=f_coef)
        if system == "corrected":
            # roots set literally, not through a discriminant
            return cls(n=n, stiffness=float(n) ** 2 + b * b, damping=2.0 * b,
                       root_plus=complex(-b, n), root_minus=complex(-b, -n),
                       f_coef=f_coef)
        disc = complex(b * b - float(n) ** 2)
        sq = np.sqrt(disc)
        if abs(sq) < 1e-12 * max(1.0, b):
            raise ConfigError("degenerate double root; propagator not defined")
        return cls(n=n, stiffness=float(n) ** 2, damping=2.0 * b,
                   root_plus=-b + sq, root_minus=-b - sq, f_coef=f_coef)


def _step_integrals(r: complex, h: float) -> tuple[complex, complex]:
    """J0 = int_0^h e^{r(h-s)} ds and J1 = same with an extra factor s."""
    rh = r * h
    j0 = h * np.exp(0.5 * rh) * sinhc(0.5 * rh)
    if abs(rh) < 0.5:
        # J1/h^2 = sum_{j>=0} (rh)^j / (j+2)!, the k=1 case of
        # int_0^h e^{r(h-s)} s^k ds = h^{k+1} sum_j (rh)^j k!/(k+j+1)!
        out = 0.0 + 0.0j
        p = 1.0 + 0.0j
        fact = 2.0
        for j in range(0, 24):
            if j > 0:
                p *= rh
                fact *= (j + 2)
            out += p / fact
            if abs(p) / fact < 1e-22:
                break
        j1 = h * h * out
    else:
        # recursion J1 = (J0 - h)/r, safe once rh is away from 0
        j1 = (j0 - h) / r
    return j0, j1


def _forcing_increment(r: complex, t_a: float, t_b: float,
                       control: ControlSignal) -> complex:
    """int_{t_a}^{t_b} e^{r (t_b - s)} v(s) ds, exactly per representation."""
    if control.exp_terms is not None:
        weights, rates = control.exp_terms
        lo0, hi0 = control.exp_support if control.exp_support is not None \
            else (control.t0, control.t1)
        lo, hi = max(t_a, lo0), min(t_b, hi0)
        if hi <= lo:
            return 0.0 + 0.0j
        length = hi - lo
        mid = 0.5 * (lo + hi)
        out = 0.0 + 0.0j
        for w_k, rho in zip(weights, rates):
            expo = r * (t_b - mid) + rho * (mid - control.exp_center)
            out += w_k * length * np.exp(expo) * sinhc(0.5 * (rho - r) * length)
        return out

    # piecewise-linear reconstruction on the sample grid
    grid = control.grid()
    dt = control.dt
    lo, hi = max(t_a, grid[0]), min(t_b, grid[-1])
    if hi <= lo + 1e-15:
        return 0.0 + 0.0j
    ia = int(round((lo - grid[0]) / dt))
    ib = int(round((hi - grid[0]) / dt))
    if abs(grid[ia] - lo) > 1e-9 * max(dt, 1.0) or abs(grid[ib] - hi) > 1e-9 * max(dt, 1.0):
        raise ConfigError("span endpoints must sit on the control sample grid")
    if ib <= ia:
        return 0.0 + 0.0j
    v = np.asarray(control.samples)
    j0, j1 = _step_integrals(r, dt)
    pref = np.exp(r * (t_b - grid[ia + 1:ib + 1]))
    vj = v[ia:ib]
    slope = (v[ia + 1:ib + 1] - vj) / dt
    return j0 * np.sum(pref * vj) + j1 * np.sum(pref * slope)


def mode_propagate(dyn: ModeDynamics, state, control: ControlSignal | None,
                   t_span) -> tuple[complex, complex]:
    """Advance (u, u') over t_span with the exact exponential integrator.

    Decouples through y = u' - r2 u and w = u' - r1 u, each first order;
    u and u' are recovered from the pair.  No stability constraint; piecewise
    control spans must have endpoints on the sample grid.
    """
    t_a, t_b = float(t_span[0]), float(t_span[1])
    if t_b < t_a:
        raise ConfigError("reversed time span")
    r1, r2 = dyn.root_plus, dyn.root_minus
    if r1 == r2:
        raise ConfigError("degenerate double root; propagator not defined")
    u0, v0 = complex(state[0]), complex(state[1])
    y = v0 - r2 * u0
    w = v0 - r1 * u0
    dt_span = t_b - t_a
    y = np.exp(r1 * dt_span) * y
    w = np.exp(r2 * dt_span) * w
    if control is not None:
        y += dyn.f_coef * _forcing_increment(r1, t_a, t_b, control)
        w += dyn.f_coef * _forcing_increment(r2, t_a, t_b, control)
    den = r1 - r2
    return complex((y - w) / den), complex((r1 * y - r2 * w) / den)


def stiffness_for(system: str, n, eps: float, alpha: float):
    if system not in SYSTEMS:
        raise ConfigError(f"unknown system '{system}'")
    n = np.asarray(n, dtype=float)
    if system == "corrected" and eps > 0:
        return n ** 2 + (eps * n ** (2.0 * alpha)) ** 2
    return n ** 2


def modal_energy(state: ModalState, eps: float, alpha: float,
                 system: str = "corrected") -> float:
    """E = (pi/2) sum_n [ stiffness_n |u_n|^2 + |u'_n|^2 ]."""
    ns = np.asarray(state.indices, dtype=float)
    s = stiffness_for(system, ns, eps, alpha)
    u0 = np.asarray(state.u0)
    u1 = np.asarray(state.u1)
    return float(np.pi / 2.0 * np.sum(s * np.abs(u0) ** 2 + np.abs(u1) ** 2))


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    energy: np.ndarray
    dissipation: np.ndarray  # -dE/dt; trapezoid-integrates against energy
    mode_abs: np.ndarray     # |u_n(t)|, shape (len(times), n_modes)
    final: ModalState


def simulate(cfg, data: ModalState, control: ControlSignal | None,
             system: str = "corrected", record_points: int | None = None) -> Trajectory:
    """Propagate every mode of `data` over [0, T] and record the energy.

    With a sampled control the record times are snapped onto the control's
    sample grid so each recording step integrates whole sample intervals.
    The dissipation channel is 2 pi eps sum n^{2a} |u'_n|^2, which is -dE/dt
    for all three systems (identically zero for "wave").
    """
    if system not in SYSTEMS:
        raise ConfigError(f"unknown system '{system}'")
    horizon = cfg.horizon_T
    if control is not None and control.exp_terms is None:
        if control.t0 > 1e-12 or control.t1 < horizon - 1e-9:
            raise ConfigError("control is not defined on the full horizon")
    n_rec = record_points if record_points is not None else cfg.time_grid
    if control is not None and control.exp_terms is None:
        grid = control.grid()
        stride = max(1, len(grid) // max(n_rec, 1))
        idx = np.arange(0, len(grid), stride)
        if idx[-1] != len(grid) - 1:
            idx = np.append(idx, len(grid) - 1)
        times = grid[idx]
        times = times[(times >= 0.0) & (times <= horizon + 1e-12)]
        if abs(times[-1] - horizon) > 1e-9:
            raise ConfigError("control grid does not reach the horizon")
    else:
        times = np.linspace(0.0, horizon, n_rec + 1)

    eps, alpha = cfg.epsilon, cfg.alpha
    dyns = [ModeDynamics.for_system(system, int(n), eps, alpha,
                                    f_coef=data.profile_for(int(n)))
            for n in data.indices]
    cur = [(complex(u), complex(v)) for u, v in zip(data.u0, data.u1)]
    n_modes = len(dyns)
    mode_abs = np.empty((len(times), n_modes))
    energy = np.empty(len(times))
    diss = np.empty(len(times))
    ns = np.asarray(data.indices, dtype=float)
    stiff = stiffness_for(system, ns, eps, alpha)

    for k, t in enumerate(times):
        if k > 0:
            span = (times[k - 1], t)
            cur = [mode_propagate(d, st, control, span) for d, st in zip(dyns, cur)]
        uu = np.array([c[0] for c in cur])
        vv = np.array([c[1] for c in cur])
        mode_abs[k] = np.abs(uu)
        energy[k] = np.pi / 2.0 * np.sum(stiff * np.abs(uu) ** 2 + np.abs(vv) ** 2)
        diss[k] = 2.0 * np.pi * eps * np.sum(ns ** (2.0 * alpha) * np.abs(vv) ** 2) \
            if system != "wave" and eps > 0 else 0.0

    final = ModalState(indices=tuple(int(n) for n in data.indices),
                       u0=tuple(c[0] for c in cur),
                       u1=tuple(c[1] for c in cur),
                       profile=tuple(data.profile))
    return Trajectory(times=times, energy=energy, dissipation=diss,
                      mode_abs=mode_abs, final=final)


def final_residual(final: ModalState, initial: ModalState, eps: float,
                   alpha: float, system: str = "corrected") -> float:
    """Energy ratio E(final)/E(initial); 0/0 counts as controlled."""
    e1 = modal_energy(final, eps, alpha, system)
    e0 = modal_energy(initial, eps, alpha, system)
    if e0 == 0.0:
        return 0.0
    return e1 / e0


def viscous_root_ratio(n: int, eps: float, alpha: float) -> float:
    """|slow root| / |fast root| for the viscous variant, defined once the
    discriminant is positive; decreases toward 0 in |n| for alpha > 1/2,
    which is the sense in which distant slow roots accumulate."""
    b = eps * float(n) ** (2.0 * alpha)
    disc = b * b - float(n) ** 2
    if disc <= 0:
        raise ConfigError("roots are complex; no slow/fast split")
    sq = np.sqrt(disc)
    return (b - sq) / (b + sq)
