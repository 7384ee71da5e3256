"""Moment right-hand sides, control synthesis, and the Gram oracle.

A null control for the truncated system is exactly an L^2 function v on
(0, T) whose integrals against e^{conj(lambda_n) t} (time recentered to
(-T/2, T/2)) hit prescribed values c_n built from the initial data.  Two
independent routes are implemented:

  * series synthesis: v = sum_m c_m * family_m(t - T/2) with a biorthogonal
    family, the constructive route;
  * minimal-norm synthesis: v = sum_k beta_k e^{lambda_k (t - T/2)} with
    beta solved from the Hermitian Gram matrix, a classical finite moment
    problem that knows nothing about the family and therefore serves as an
    oracle for it.

The Gram matrix has the closed form G_{nk} = T sinhc((conj(lambda_n) +
lambda_k) T/2), diagonal-limit entry T included, so no quadrature enters
the oracle; its eigenvalue solve is also where spectral degeneracy (the
alpha = 1/2 collision) becomes visible as condition-number blowup, which is
reported and never regularized away.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .core import ConfigError, ControlSignal, ModalState, h0_norm_sq, sinhc
from .spectrum import lambda_vals


class SingularGramError(ConfigError):
    def __init__(self, cond: float):
        super().__init__(f"Gram matrix numerically singular (cond ~ {cond:.3e}); "
                         "refusing to regularize silently")
        self.cond = cond


def moment_rhs(n: int, data: ModalState, T: float, eps: float, alpha: float) -> complex:
    """c_n = -e^{-conj(lambda_n) T/2} (u1_|n| + lambda_n u0_|n|) / f_|n|."""
    if n == 0:
        raise ConfigError("index 0 is not in the lattice")
    an = abs(n)
    pos = list(data.indices).index(an) if an in data.indices else None
    if pos is None:
        raise ConfigError(f"data has no mode {an}")
    fh = data.profile[pos]
    if fh == 0:
        raise ConfigError(f"profile coefficient {an} vanishes")
    lam = complex(lambda_vals(n, eps, alpha))
    return -np.exp(-np.conj(lam) * T / 2.0) * (data.u1[pos] + lam * data.u0[pos]) / fh


@dataclass(frozen=True)
class MomentSystem:
    """Finite moment problem on (-T/2, T/2)."""
    indices: tuple
    eps: float
    alpha: float
    horizon: float
    rhs: tuple

    @classmethod
    def build(cls, data: ModalState, T: float, eps: float, alpha: float) -> "MomentSystem":
        idx = []
        for n in data.indices:
            idx.extend([-n, n])
        idx = tuple(sorted(idx))
        rhs = tuple(moment_rhs(n, data, T, eps, alpha) for n in idx)
        return cls(indices=idx, eps=eps, alpha=alpha, horizon=T, rhs=rhs)

    @property
    def lambdas(self) -> np.ndarray:
        return lambda_vals(np.asarray(self.indices), self.eps, self.alpha)

    def conjugate_symmetry_residual(self) -> float:
        idx = np.asarray(self.indices)
        rhs = np.asarray(self.rhs)
        res = 0.0
        for j, n in enumerate(idx):
            k = int(np.where(idx == -n)[0][0])
            res = max(res, float(abs(rhs[j] - np.conj(rhs[k]))))
        return res


def gram_matrix(indices, eps: float, alpha: float, T: float) -> np.ndarray:
    """G_{nk} = int_{-T/2}^{T/2} e^{conj(lambda_n) t} e^{lambda_k t} dt,
    closed form T sinhc(s T/2) with s the eigenvalue pair sum."""
    lams = lambda_vals(np.asarray(indices), eps, alpha)
    s = np.conj(lams)[:, None] + lams[None, :]
    return T * sinhc(s * T / 2.0)


@dataclass(frozen=True)
class MinNormResult:
    control: ControlSignal
    cond: float
    beta: np.ndarray
    norm: float            # exact sqrt(beta* G beta)
    moment_residual: float  # max |G beta - c|


def minnorm_control(system: MomentSystem, n_samples: int = 4097,
                    ridge: float = 0.0) -> MinNormResult:
    """Minimal-norm exponential-sum control for the moment system.

    ridge > 0 adds an exploratory Tikhonov term; it is never applied by
    default and the condition number always refers to the raw Gram.
    """
    T = system.horizon
    G = gram_matrix(system.indices, system.eps, system.alpha, T)
    c = np.asarray(system.rhs, dtype=complex)
    w, V = eigh(G)
    cond = float(w[-1] / w[0]) if w[0] > 0 else np.inf
    if ridge > 0.0:
        w = w + ridge
    elif w[0] <= 0 or not np.isfinite(cond):
        raise SingularGramError(cond)
    beta = V @ ((V.conj().T @ c) / w)
    resid = float(np.max(np.abs(G @ beta - c)))
    vnorm = float(np.sqrt(max(np.real(np.vdot(beta, G @ beta)), 0.0)))

    lams = system.lambdas
    grid = np.linspace(0.0, T, n_samples)
    v = np.sum(beta[:, None] * np.exp(lams[:, None] * (grid[None, :] - T / 2.0)), axis=0)
    sym = system.conjugate_symmetry_residual() < 1e-10
    ctrl = ControlSignal(t0=0.0, t1=T, samples=tuple(v),
                         is_real_expected=sym,
                         exp_terms=(tuple(beta), tuple(lams)),
                         exp_center=T / 2.0, exp_support=(0.0, T))
    return MinNormResult(control=ctrl, cond=cond, beta=beta, norm=vnorm,
                         moment_residual=resid)


@dataclass(frozen=True)
class SeriesResult:
    control: ControlSignal
    norm: float
    imag_residual: float
    h0_norm_sq: float


def synthesize_control_series(data: ModalState, family, T: float,
                              eps: float, alpha: float,
                              n_samples: int = 4097) -> SeriesResult:
    """v(t) = sum_m c_m * family_m(t - T/2) on (0, T).

    `family` provides indices, eval_time(m, tau) on recentered time, and
    exp_rep(m) -> (weights, rates, support) or None; when every member has
    an exponential representation on a common support the control carries
    the exact representation too, so downstream propagation has no
    interpolation error at all.
    """
    sys = MomentSystem.build(data, T, eps, alpha)
    fam_idx = set(family.indices)
    missing = [n for n in sys.indices if n not in fam_idx]
    if missing:
        raise ConfigError(f"family lacks indices {missing}")

    grid = np.linspace(0.0, T, n_samples)
    tau = grid - T / 2.0
    v = np.zeros(n_samples, dtype=complex)
    reps = []
    for n, cn in zip(sys.indices, sys.rhs):
        v += cn * family.eval_time(n, tau)
        reps.append(family.exp_rep(n))

    exp_terms = None
    exp_support = None
    if all(r is not None for r in reps):
        supports = {tuple(np.round(r[2], 12)) for r in reps}
        if len(supports) == 1:
            ws, rs = [], []
            for (wgt, rate, supp), cn in zip(reps, sys.rhs):
                for w_k, r_k in zip(wgt, rate):
                    ws.append(cn * w_k)
                    rs.append(r_k)
            lo, hi = reps[0][2]
            exp_terms = (tuple(ws), tuple(rs))
            exp_support = (lo + T / 2.0, hi + T / 2.0)

    sym = sys.conjugate_symmetry_residual() < 1e-10
    imag_res = float(np.max(np.abs(v.imag))) if sym else 0.0
    ctrl = ControlSignal(t0=0.0, t1=T, samples=tuple(v), is_real_expected=sym,
                         exp_terms=exp_terms, exp_center=T / 2.0,
                         exp_support=exp_support)
    norm = float(np.sqrt(np.trapezoid(np.abs(v) ** 2, grid)))
    return SeriesResult(control=ctrl, norm=norm, imag_residual=imag_res,
                        h0_norm_sq=h0_norm_sq(data))


def moment_verification(control: ControlSignal, system: MomentSystem) -> float:
    """max_n |int v(t+T/2) e^{conj(lambda_n) t} dt - c_n| by trapezoid (or
    exactly through the Gram identity when the control is an exponential sum)."""
    T = system.horizon
    lams = system.lambdas
    if control.exp_terms is not None:
        ws, rs = control.exp_terms
        ws = np.asarray(ws, dtype=complex)
        rs = np.asarray(rs, dtype=complex)
        lo, hi = control.exp_support if control.exp_support is not None \
            else (control.t0, control.t1)
        out = np.empty(len(lams), dtype=complex)
        for j, ln in enumerate(np.conj(lams)):
            # int_lo^hi e^{ln (s - T/2)} e^{r (s - center)} ds, per term
            length = hi - lo
            mid = 0.5 * (lo + hi)
            q = ln + rs
            vals = ws * length * np.exp(ln * (mid - T / 2.0)
                                        + rs * (mid - control.exp_center)) \
                * sinhc(0.5 * q * length)
            out[j] = np.sum(vals)
    else:
        grid = control.grid()
        v = np.asarray(control.samples)
        out = np.array([np.trapezoid(v * np.exp(ln * (grid - T / 2.0)), grid)
                        for ln in np.conj(lams)])
    return float(np.max(np.abs(out - np.asarray(system.rhs))))


def ingham_ratio(indices, coeffs, eps: float, alpha: float, T: float,
                 omega_weight: float, method: str = "gram") -> float:
    """int_{-T}^{T} |sum beta_n e^{lambda_n t}|^2 dt divided by the weighted
    coefficient mass sum |beta_n|^2 e^{-omega_weight eps |n|^{2a}}.

    The integral runs over (-T, T), twice the moment interval; each formula
    keeps its own interval convention.
    """
    idx = np.asarray(indices)
    b = np.asarray(coeffs, dtype=complex)
    if len(idx) != len(b):
        raise ConfigError("indices and coefficients disagree in length")
    if not np.any(b):
        raise ConfigError("all-zero coefficient sequence")
    lams = lambda_vals(idx, eps, alpha)
    if method == "gram":
        s = np.conj(lams)[:, None] + lams[None, :]
        g2 = 2.0 * T * sinhc(s * T)
        num = float(np.real(np.vdot(b, g2 @ b)))
    elif method == "quad":
        tg = np.linspace(-T, T, 40001)
        f = np.sum(b[:, None] * np.exp(lams[:, None] * tg[None, :]), axis=0)
        from scipy.integrate import simpson
        num = float(simpson(np.abs(f) ** 2, x=tg))
    else:
        raise ConfigError(f"unknown method '{method}'")
    den = float(np.sum(np.abs(b) ** 2 * np.exp(-omega_weight * eps
                                               * np.abs(idx) ** (2.0 * alpha))))
    return num / den


def ingham_trials(n_max: int, eps: float, alpha: float, T: float,
                  omega_weight: float, n_trials: int = 100,
                  seed: int = 123) -> np.ndarray:
    """Ratios over random complex-gaussian coefficient draws."""
    idx = np.array([n for n in range(-n_max, n_max + 1) if n != 0])
    rng = np.random.default_rng(seed)
    out = np.empty(n_trials)
    for k in range(n_trials):
        b = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        out[k] = ingham_ratio(idx, b, eps, alpha, T, omega_weight)
    return out
