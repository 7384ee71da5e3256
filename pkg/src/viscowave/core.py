"""Configuration, modal data model, and shared numeric helpers.

Fourier convention is un-normalized throughout: g_hat_n = int_0^pi g(x) sin(nx) dx,
so physical L2 norms carry a pi/2 factor (||g||^2 = (pi/2) sum |a_n|^2 when
g = sum a_n sin(nx)).  Initial data enter as coefficient lists, never as
sampled functions; all dynamics downstream are modal.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# alpha values this close to 1/2 are treated as the degenerate case
ALPHA_DEGENERACY_TOL = 1e-12


class ConfigError(ValueError):
    """Invalid problem configuration or modal data."""


class DegenerateAlphaError(ConfigError):
    """alpha = 1/2: the eigenvalue family is spectrally degenerate."""


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadBudget:
    """Quadrature budget for the frequency-side transform.

    half_width: truncation |x| <= half_width for the Fourier integral, or
        None to probe the integrand decay and pick the smallest width whose
        envelope falls below 1e-12.
    points_per_unit: sample density of the x grid (the actual spacing is
        refined so the FFT length is a power of two).
    """
    half_width: float | None = None
    points_per_unit: float = 20.0

    def __post_init__(self):
        if self.half_width is not None and self.half_width <= 0:
            raise ConfigError("quad half_width must be positive or None")
        if self.points_per_unit <= 0:
            raise ConfigError("quad points_per_unit must be positive")


@dataclass(frozen=True)
class ProblemConfig:
    """Single source of experiment parameters.

    alpha, epsilon: fractional exponent and viscosity strength, both in [0,1).
    horizon_T: control horizon (0,T).
    n_modes: truncation N of the modal system.
    delta: width of the sinc factor in the interpolant.
    omega_mode: "fitted" fits the envelope exponent from the product itself;
        "fixed" uses omega_value as given.
    decay_boost: extra sinc powers multiplied into the interpolant; each one
        adds delta to the declared exponential type and one power of 1/|x|
        decay on the real axis.
    time_grid: samples per unit time for sampled controls and trajectories.
    smoothing_a: half-width a of the triangle smoothing kernel.
    gamma_eps: branch point of the weight (filled by validate_config when
        alpha > 1/2 and epsilon > 0; derived, do not set by hand).
    """
    alpha: float
    epsilon: float
    horizon_T: float = TWO_PI
    n_modes: int = 8
    delta: float = 0.25
    omega_mode: str = "fitted"
    omega_value: float | None = None
    decay_boost: int = 7
    quad: QuadBudget = field(default_factory=QuadBudget)
    time_grid: int = 256
    smoothing_a: float = 0.5
    gamma_eps: float | None = None

    @property
    def alpha_is_degenerate(self) -> bool:
        return abs(self.alpha - 0.5) < ALPHA_DEGENERACY_TOL


def validate_config(cfg: ProblemConfig, for_synthesis: bool = False) -> ProblemConfig:
    """Normalize and check a config; idempotent.

    for_synthesis=True additionally rejects alpha = 1/2, which is only
    acceptable for degeneracy diagnostics (the modal moment equations are
    not solvable there).
    """
    if not 0.0 <= cfg.alpha < 1.0:
        raise ConfigError(f"alpha must be in [0,1), got {cfg.alpha}")
    if not 0.0 <= cfg.epsilon < 1.0:
        raise ConfigError(f"epsilon must be in [0,1), got {cfg.epsilon}")
    if cfg.horizon_T <= 0:
        raise ConfigError("horizon_T must be positive")
    if cfg.n_modes < 1:
        raise ConfigError("n_modes must be >= 1")
    if cfg.delta <= 0:
        raise ConfigError("delta must be positive")
    if cfg.decay_boost < 0:
        raise ConfigError("decay_boost must be >= 0")
    if cfg.time_grid < 1:
        raise ConfigError("time_grid must be >= 1")
    if cfg.smoothing_a < 0:
        raise ConfigError("smoothing_a must be >= 0")
    if cfg.omega_mode not in ("fitted", "fixed"):
        raise ConfigError(f"omega_mode must be 'fitted' or 'fixed', got {cfg.omega_mode!r}")
    if cfg.omega_mode == "fixed" and (cfg.omega_value is None or cfg.omega_value < 0):
        raise ConfigError("omega_mode 'fixed' requires a non-negative omega_value")
    if for_synthesis and cfg.alpha_is_degenerate:
        raise DegenerateAlphaError(
            "alpha = 1/2 is spectrally degenerate; control synthesis refused "
            "(degeneracy diagnostics still run)")
    gamma = None
    if cfg.alpha > 0.5 and cfg.epsilon > 0:
        # saturates to inf for denormal-scale epsilon; the outer weight
        # branch then simply never activates
        with np.errstate(over="ignore"):
            gamma = float(np.float_power(1.0 / cfg.epsilon,
                                         1.0 / (2.0 * cfg.alpha - 1.0)))
    if gamma != cfg.gamma_eps:
        cfg = replace(cfg, gamma_eps=gamma)
    return cfg


def load_config(path: str) -> ProblemConfig:
    """Read a ProblemConfig from an INI-style file.

    Sections [problem] and [quad] mirror the dataclass field names; missing
    keys keep their defaults.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    kw = {}
    if parser.has_section("problem"):
        sec = parser["problem"]
        for key, conv in (("alpha", float), ("epsilon", float), ("horizon_T", float),
                          ("n_modes", int), ("delta", float), ("omega_value", float),
                          ("decay_boost", int), ("time_grid", int), ("smoothing_a", float)):
            if key in sec:
                kw[key] = conv(sec[key])
        if "omega_mode" in sec:
            kw["omega_mode"] = sec["omega_mode"].strip()
    if "alpha" not in kw or "epsilon" not in kw:
        raise ConfigError("config must set problem.alpha and problem.epsilon")
    if parser.has_section("quad"):
        sec = parser["quad"]
        hw: float | None = None
        if "half_width" in sec and sec["half_width"].strip().lower() != "auto":
            hw = float(sec["half_width"])
        ppu = float(sec.get("points_per_unit", QuadBudget.points_per_unit))
        kw["quad"] = QuadBudget(half_width=hw, points_per_unit=ppu)
    return validate_config(ProblemConfig(**kw))


# ---------------------------------------------------------------------------
# modal data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModalState:
    """Finite modal data: per-mode (u0, u1) coefficients plus the profile.

    indices: strictly increasing positive mode numbers n.
    u0, u1: complex coefficients of position and velocity.
    profile: f_hat_n for the same indices; every value must be nonzero,
        a zero profile coefficient makes the mode uncontrollable.
    """
    indices: tuple[int, ...]
    u0: tuple[complex, ...]
    u1: tuple[complex, ...]
    profile: tuple[complex, ...]

    def __post_init__(self):
        n = len(self.indices)
        if not (len(self.u0) == len(self.u1) == len(self.profile) == n):
            raise ConfigError("indices, u0, u1, profile must have equal length")
        prev = 0
        for idx in self.indices:
            if idx <= prev:
                raise ConfigError("mode indices must be strictly increasing positive integers")
            prev = idx
        for idx, fh in zip(self.indices, self.profile):
            if fh == 0:
                raise ConfigError(f"profile coefficient for mode {idx} is zero; "
                                  "that mode cannot be controlled")

    @classmethod
    def from_arrays(cls, indices, u0, u1, profile) -> "ModalState":
        return cls(tuple(int(i) for i in indices),
                   tuple(complex(v) for v in u0),
                   tuple(complex(v) for v in u1),
                   tuple(complex(v) for v in profile))

    def profile_for(self, n: int) -> complex:
        """f_hat for mode |n|; raises if absent."""
        try:
            pos = self.indices.index(abs(n))
        except ValueError:
            raise ConfigError(f"no profile coefficient for mode {abs(n)}") from None
        return self.profile[pos]

    def is_real(self, tol: float = 0.0) -> bool:
        vals = np.concatenate([np.asarray(self.u0), np.asarray(self.u1),
                               np.asarray(self.profile)])
        return bool(np.max(np.abs(vals.imag), initial=0.0) <= tol)


@dataclass(frozen=True)
class ControlSignal:
    """Scalar control v(t) on a uniform grid over [t0, t1].

    samples: complex values; is_real_expected marks controls synthesized
    from conjugate-symmetric data, whose imaginary part must stay below the
    declared tolerance.

    exp_terms, when present, is an exact representation
        v(s) = sum_k weights[k] * exp(rates[k] * (s - center))
    valid on [exp_support[0], exp_support[1]] and zero outside; propagation
    can then integrate the forcing in closed form instead of reconstructing
    from samples.
    """
    t0: float
    t1: float
    samples: np.ndarray
    is_real_expected: bool = False
    exp_terms: tuple[np.ndarray, np.ndarray] | None = None   # (weights, rates)
    exp_center: float = 0.0
    exp_support: tuple[float, float] | None = None

    def __post_init__(self):
        if self.t1 <= self.t0:
            raise ConfigError("control interval must have t1 > t0")
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))
        if self.samples.ndim != 1 or len(self.samples) < 2:
            raise ConfigError("control needs at least two samples")

    @property
    def dt(self) -> float:
        return (self.t1 - self.t0) / (len(self.samples) - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, len(self.samples))

    def norm_l2(self) -> float:
        """Trapezoid L2 norm of the samples."""
        g = self.grid()
        return float(np.sqrt(np.trapezoid(np.abs(self.samples) ** 2, g)))

    def imag_residual(self) -> float:
        return float(np.max(np.abs(self.samples.imag)))


# ---------------------------------------------------------------------------
# norms and profiles
# ---------------------------------------------------------------------------

def h0_norm_sq(data: ModalState) -> float:
    """Weighted data norm: sum_n (n^2 |u0_n|^2 + |u1_n|^2) / |f_hat_n|^2."""
    total = 0.0
    for n, u0, u1, fh in zip(data.indices, data.u0, data.u1, data.profile):
        total += (n * n * abs(u0) ** 2 + abs(u1) ** 2) / abs(fh) ** 2
    return total


_PROFILE_RULES = {
    "unit": lambda n: 1.0,
    "inverse": lambda n: 1.0 / n,
    "inverse_square": lambda n: 1.0 / (n * n),
}


def project_profile(rule, N: int) -> tuple[complex, ...]:
    """Profile coefficients f_hat_1..f_hat_N from a named rule or explicit list.

    Named rules: "unit", "inverse", "inverse_square". An explicit sequence is
    validated for length and nonzero entries.
    """
    if N < 1:
        raise ConfigError("N must be >= 1")
    if isinstance(rule, str):
        try:
            fn = _PROFILE_RULES[rule]
        except KeyError:
            raise ConfigError(f"unknown profile rule {rule!r}; "
                              f"choices: {sorted(_PROFILE_RULES)}") from None
        return tuple(complex(fn(n)) for n in range(1, N + 1))
    vals = tuple(complex(v) for v in rule)
    if len(vals) != N:
        raise ConfigError(f"explicit profile has {len(vals)} entries, expected {N}")
    if any(v == 0 for v in vals):
        raise ConfigError("explicit profile contains a zero coefficient")
    return vals


# ---------------------------------------------------------------------------
# shared numeric helpers
# ---------------------------------------------------------------------------

def gauss_legendre_01(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(k)
    return 0.5 * (x + 1.0), 0.5 * w


def log1p_c(w: np.ndarray) -> np.ndarray:
    """Complex log(1+w) that keeps tiny w.

    numpy's complex log1p evaluates log(1+w) naively, so w below machine
    epsilon vanishes; here |w| < 1/4 goes through a 24-term alternating
    series (remainder < 0.25^25) and larger w through the plain log.
    """
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 0.25
    ws = np.where(small, w, 0.0)
    acc = np.zeros_like(w)
    for k in range(24, 0, -1):
        acc = acc * ws + ((-1.0) ** (k + 1)) / k
    big = np.where(small, 0.0, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(small, acc * ws, np.log(1.0 + big))


def sinhc(w: np.ndarray) -> np.ndarray:
    """sinh(w)/w with the removable singularity filled (complex-safe)."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-3
    ws = np.where(small, 0.0, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.sinh(ws) / np.where(small, 1.0, w)
    w2 = w * w
    series = 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0))
    return np.where(small, series, direct)


def sinc_c(w: np.ndarray) -> np.ndarray:
    """sin(w)/w for complex w (equals sinhc(iw))."""
    return sinhc(1j * np.asarray(w, dtype=complex))


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1)).bit_length()
