"""Entire interpolants, their time profiles, smoothing, and biorthogonality.

The chain per index m:

    psi: product * (multiplier ratio)^omega * sinc(delta(z - node))^{1+k}
    theta(t) = (1/2pi) int psi(x) e^{+ixt} dx
    zeta = theta convolved with a modulated triangle kernel, renormalized

with node_m = i conj(lambda_m).  The sign convention e^{+ixt} makes

    int theta_m(t) e^{conj(lambda_n) t} dt = psi_m(i conj(lambda_n))

an identity, i.e. the biorthogonality matrix is exactly the interpolation
value matrix; all quadrature error lives in the transform.  The eps = 0
family has the closed form e^{imt}/(2pi) on (-pi, pi) and doubles as the
end-to-end oracle for the transform path.

The multiplier power omega must be an integer: the multiplier ratio is an
entire function, but a non-integer power of it is not (branch points at its
zeros), and the transform's support claim rests on entirety.  "fitted" mode
therefore fits the envelope exponent over the working index range and takes
the next integer above 1.25x the fit.

Half of the work in a family build is shared: the product's pair sums only
depend on m through one excluded index, and the multiplier factors from
node 1 are computed once on the grid, with the per-m starting node handled
by subtracting the short prefix of factor logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import (ConfigError, ProblemConfig, next_pow2, sinc_c, sinhc,
                   validate_config)
from .multiplier import MultiplierEvaluator
from .spectrum import lambda_conj_vals, node_start, node_sum_bound
from .weierstrass import ProductEvaluator, envelope_fit

LATTICE_TYPE = math.pi  # exponential type of the interpolation product:
# the node moduli |conj(lambda_n)| >= |n|, so the counting function stays
# below that of the integer lattice, whose canonical product has type pi


@dataclass(frozen=True)
class EntireInterpolant:
    """Assembled interpolant for one index m."""
    m: int
    eps: float
    alpha: float
    delta: float
    decay_boost: int
    omega: int
    product: ProductEvaluator
    mult: MultiplierEvaluator | None
    node: complex
    log_mult_node: complex  # omega * log M(node), 0 when no multiplier

    @property
    def declared_type(self) -> float:
        l2 = node_sum_bound(self.eps, self.alpha) if self.mult is not None else 0.0
        return LATTICE_TYPE + self.omega * l2 + (1 + self.decay_boost) * self.delta

    def log_psi(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = self.product.log_eval(self.m, z)
        if self.mult is not None:
            out = out + self.omega * self.mult.log_eval(self.m, z) - self.log_mult_node
        w = self.delta * (z - self.node)
        with np.errstate(divide="ignore"):
            out = out + (1 + self.decay_boost) * np.log(sinc_c(w))
        return out


def make_interpolant(m: int, cfg: ProblemConfig, omega: int,
                     product: ProductEvaluator | None = None,
                     mult: MultiplierEvaluator | None = None) -> EntireInterpolant:
    eps, alpha = cfg.epsilon, cfg.alpha
    if product is None:
        product = ProductEvaluator(eps, alpha)
    need_mult = eps > 0 and alpha > 0
    if need_mult and mult is None:
        mult = MultiplierEvaluator(eps, alpha)
    if not need_mult:
        mult = None
    node = 1j * complex(lambda_conj_vals(m, eps, alpha))
    log_node = 0.0 + 0.0j
    if mult is not None:
        log_node = omega * complex(mult.log_eval(m, node))
    return EntireInterpolant(m=m, eps=eps, alpha=alpha, delta=cfg.delta,
                             decay_boost=cfg.decay_boost, omega=omega,
                             product=product, mult=mult, node=node,
                             log_mult_node=log_node)


def psi_eval(interp: EntireInterpolant, z):
    """Interpolant value at complex z: 1 at its own node, 0 at the others."""
    res = np.exp(interp.log_psi(z))
    return complex(res[0]) if np.ndim(z) == 0 else res


def resolve_omega(cfg: ProblemConfig, m_range, product: ProductEvaluator,
                  fit_half_width: float = 400.0):
    """Multiplier power: fixed integer from config, or envelope-fitted.

    Returns (omega, omega_hats); omega_hats is empty in fixed mode.
    """
    if cfg.omega_mode == "fixed":
        val = cfg.omega_value
        if val != int(val):
            raise ConfigError("omega must be an integer (entirety of the "
                              "interpolant requires whole multiplier powers)")
        return int(val), ()
    xs = np.linspace(0.0, fit_half_width, 3000)
    hats = []
    for m in sorted({abs(m) for m in m_range}):
        fit = envelope_fit(m, cfg.epsilon, cfg.alpha, xs, product)
        hats.append(fit.omega_hat)
    omega = max(1, int(np.ceil(1.25 * max(hats))))
    return omega, tuple(hats)


# ---------------------------------------------------------------------------
# time side
# ---------------------------------------------------------------------------

def fourier_to_time(psi: np.ndarray, half_width: float, dx: float):
    """theta(t) = (1/2pi) int psi(x) e^{ixt} dx on the FFT's t grid."""
    n = len(psi)
    th = np.fft.ifft(psi) * n * dx / (2.0 * np.pi)
    tg = np.fft.fftfreq(n, d=dx) * 2.0 * np.pi
    th = np.fft.fftshift(th * np.exp(-1j * half_width * tg))
    return np.fft.fftshift(tg), th


@dataclass(frozen=True)
class BiorthogonalFamily:
    """Sampled family on a shared uniform time grid.

    kind: "theta" (raw transform), "zeta" (smoothed), "sinc_limit" (eps=0
    closed form).  values maps index m to samples; support_half is the
    declared half-support (T~/2, T0/2, or pi).
    """
    kind: str
    eps: float
    alpha: float
    indices: tuple
    t_grid: np.ndarray
    values: dict
    norms: dict
    support_half: float
    beta_hat: float
    c_hat: float
    omega: int
    omega_hats: tuple = ()
    meta: dict = field(default_factory=dict)

    @property
    def dt(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0])

    def member(self, m: int) -> np.ndarray:
        if m not in self.values:
            raise ConfigError(f"family has no index {m}")
        return self.values[m]

    def eval_time(self, m: int, tau) -> np.ndarray:
        """Linear interpolation of member m at times tau (0 outside)."""
        if self.kind == "sinc_limit":
            tau = np.asarray(tau, dtype=float)
            out = np.where(np.abs(tau) < np.pi,
                           np.exp(1j * m * tau) / (2.0 * np.pi), 0.0)
            return out
        v = self.member(m)
        tau = np.asarray(tau, dtype=float)
        re = np.interp(tau, self.t_grid, v.real, left=0.0, right=0.0)
        im = np.interp(tau, self.t_grid, v.imag, left=0.0, right=0.0)
        return re + 1j * im

    def exp_rep(self, m: int):
        """(weights, rates, support) when the member is exactly a finite
        exponential sum on its support; None otherwise."""
        if self.kind == "sinc_limit":
            return ((1.0 / (2.0 * np.pi),), (1j * m,), (-np.pi, np.pi))
        return None


def sinc_theta(m: int, t):
    """eps = 0 biorthogonal function on (-pi, pi): e^{imt}/(2pi)."""
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= np.pi):
        raise ConfigError("sinc_theta is defined for |t| < pi")
    res = np.exp(1j * m * t) / (2.0 * np.pi)
    return complex(res) if res.ndim == 0 else res


def build_sinc_family(m_range, points_per_unit: float = 64.0) -> BiorthogonalFamily:
    ms = tuple(sorted(m for m in m_range if m != 0))
    n = next_pow2(int(2.0 * np.pi * points_per_unit)) + 1
    tg = np.linspace(-np.pi, np.pi, n)
    vals = {m: np.exp(1j * m * tg) / (2.0 * np.pi) for m in ms}
    nrm = 1.0 / np.sqrt(2.0 * np.pi)
    return BiorthogonalFamily(kind="sinc_limit", eps=0.0, alpha=0.0, indices=ms,
                              t_grid=tg, values=vals,
                              norms={m: nrm for m in ms}, support_half=np.pi,
                              beta_hat=0.0, c_hat=nrm, omega=0)


def _probe_half_width(interps, lo: float = 100.0, hi: float = 2000.0,
                      step: float = 50.0, tol: float = 1e-12) -> float:
    """Smallest probe radius where every interpolant is below tol.

    Two slightly offset probes per side guard against landing on a sinc zero.
    """
    x = lo
    while x <= hi:
        pts = np.array([-x - 0.37, -x, x, x + 0.37], dtype=complex)
        worst = 0.0
        for it in interps:
            worst = max(worst, float(np.max(np.abs(np.exp(it.log_psi(pts))))))
        if worst < tol:
            return x + step  # one step of margin
        x += step
    raise ConfigError("interpolant envelope does not reach 1e-12 by |x| = 2000; "
                      "increase the quadrature budget explicitly")


def build_theta_family(cfg: ProblemConfig, m_range) -> BiorthogonalFamily:
    """Assemble interpolants for every index and transform them to time.

    One shared x grid serves the whole family; the per-m product is the only
    O(N) work, the multiplier bulk is computed once from node 1 and per-m
    prefixes are subtracted.
    """
    cfg = validate_config(cfg, for_synthesis=True)
    eps, alpha = cfg.epsilon, cfg.alpha
    ms = tuple(sorted(m for m in m_range if m != 0))
    if not ms:
        raise ConfigError("empty index range")

    product = ProductEvaluator(eps, alpha)
    need_mult = eps > 0 and alpha > 0
    if need_mult:
        omega, omega_hats = resolve_omega(cfg, ms, product)
    else:
        omega, omega_hats = 0, ()

    half = cfg.quad.half_width
    if half is None:
        # probe with a throwaway multiplier: probing visits large |x| and
        # would otherwise inflate the evaluator's direct-factor range far
        # beyond what the final grid needs
        probe_mult = MultiplierEvaluator(eps, alpha) if need_mult else None
        probe = [make_interpolant(m, cfg, omega, product=product, mult=probe_mult)
                 for m in ms]
        half = _probe_half_width(probe)
    mult = MultiplierEvaluator(eps, alpha, z_max=half) if need_mult else None
    interps = {m: make_interpolant(m, cfg, omega, product=product, mult=mult)
               for m in ms}

    n = next_pow2(int(2.0 * half * cfg.quad.points_per_unit))
    dx = 2.0 * half / n
    xg = -half + dx * np.arange(n)
    zg = xg.astype(complex)

    base_mult = mult.log_eval_start(1, zg) if mult is not None else None

    support_half = interps[ms[0]].declared_type
    values = {}
    norms = {}
    edge_worst = 0.0
    outside_mass = {}
    tg_kept = None
    for m in ms:
        it = interps[m]
        logpsi = product.log_eval(m, zg)
        if mult is not None:
            prefix = mult.log_factor_range(1, node_start(m, eps, alpha) - 1, zg)
            logpsi = logpsi + omega * (base_mult - prefix) - it.log_mult_node
        w = cfg.delta * (zg - it.node)
        with np.errstate(divide="ignore"):
            logpsi = logpsi + (1 + cfg.decay_boost) * np.log(sinc_c(w))
        psi = np.exp(logpsi)
        edge_worst = max(edge_worst, float(abs(psi[0])), float(abs(psi[-1])))
        tg, th = fourier_to_time(psi, half, dx)
        dt = tg[1] - tg[0]
        total = float(np.sum(np.abs(th) ** 2) * dt)
        inside = np.abs(tg) <= support_half
        outside_mass[m] = float(np.sum(np.abs(th[~inside]) ** 2) * dt / total) \
            if total > 0 else 0.0
        keep = np.abs(tg) <= min(tg[-1], support_half + 2.0 * cfg.smoothing_a + 4.0)
        if tg_kept is None:
            tg_kept = tg[keep]
        values[m] = th[keep]
        norms[m] = float(np.sqrt(np.sum(np.abs(values[m]) ** 2) * dt))
    if edge_worst > 1e-8:
        raise ConfigError(f"quadrature budget insufficient: |psi| = {edge_worst:.2e} "
                          "at the grid edge")

    pos = [m for m in ms if m > 0]
    re_l = np.array([eps * m ** (2.0 * alpha) for m in pos])
    log_n = np.array([np.log(norms[m]) for m in pos])
    if len(pos) >= 2 and np.ptp(re_l) > 0:
        beta_hat, log_c = np.polyfit(re_l, log_n, 1)
    else:
        beta_hat, log_c = 0.0, float(np.max(log_n))
    meta = {"half_width": half, "dx": dx, "n_fft": n, "psi_edge": edge_worst,
            "outside_mass": outside_mass, "points_per_unit": cfg.quad.points_per_unit}
    return BiorthogonalFamily(kind="theta", eps=eps, alpha=alpha, indices=ms,
                              t_grid=tg_kept, values=values, norms=norms,
                              support_half=support_half,
                              beta_hat=float(beta_hat), c_hat=float(np.exp(log_c)),
                              omega=omega, omega_hats=omega_hats, meta=meta)


def theta_eval(m: int, cfg: ProblemConfig, quad=None) -> BiorthogonalFamily:
    """Single-index family build (same pipeline, one member)."""
    if quad is not None:
        cfg = replace(cfg, quad=quad)
    return build_theta_family(cfg, [m])


def smoothing_kernel(a: float, x) -> np.ndarray:
    """Triangle kernel sqrt(2pi) (a - |x|)/a^2 on [-a, a]; integral sqrt(2pi)."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= a, np.sqrt(2.0 * np.pi) * (a - np.abs(x)) / a ** 2, 0.0)


def zeta_eval(theta_family: BiorthogonalFamily, a: float) -> BiorthogonalFamily:
    """Convolve every member with the modulated triangle kernel.

    rho_m(x) = e^{i x Im(lambda_m)} k_a(x); the normalizer is the discrete
    integral of rho_m against e^{conj(lambda_m) x} in the same Riemann-sum
    convention as the biorthogonality quadrature, so the m-th moment stays
    exactly 1 at the discrete level (closed form sqrt(2pi) sinhc^2(Re
    lambda_m a/2) serves as its oracle, not its definition).
    """
    if a <= 0:
        raise ConfigError("kernel half-width must be positive")
    fam = theta_family
    if fam.kind != "theta":
        raise ConfigError("smoothing applies to a theta family")
    dt = fam.dt
    k = int(np.floor(a / dt))
    if k < 1:
        raise ConfigError("kernel narrower than the time grid spacing")
    u = dt * np.arange(-k, k + 1)
    tri = smoothing_kernel(a, u)
    values = {}
    norms = {}
    normalizers = {}
    for m in fam.indices:
        im_l = float(m)  # Im lambda_m = m
        lam_c = complex(lambda_conj_vals(m, fam.eps, fam.alpha))
        rho = np.exp(1j * im_l * u) * tri
        normalizer = complex(np.sum(rho * np.exp(lam_c * u)) * dt)
        if abs(normalizer) < 1e-300:
            raise ConfigError(f"smoothing normalizer vanished for m = {m}")
        values[m] = np.convolve(fam.member(m), rho, mode="same") * dt / normalizer
        norms[m] = float(np.sqrt(np.sum(np.abs(values[m]) ** 2) * dt))
        normalizers[m] = normalizer
    pos = [m for m in fam.indices if m > 0]
    re_l = np.array([fam.eps * m ** (2.0 * fam.alpha) for m in pos])
    log_n = np.array([np.log(norms[m]) for m in pos])
    if len(pos) >= 2 and np.ptp(re_l) > 0:
        beta_hat, log_c = np.polyfit(re_l, log_n, 1)
    else:
        beta_hat, log_c = 0.0, float(np.max(log_n))
    meta = dict(fam.meta)
    meta["kernel_half_width"] = a
    meta["normalizers"] = normalizers
    return BiorthogonalFamily(kind="zeta", eps=fam.eps, alpha=fam.alpha,
                              indices=fam.indices, t_grid=fam.t_grid,
                              values=values, norms=norms,
                              support_half=fam.support_half + a,
                              beta_hat=float(beta_hat), c_hat=float(np.exp(log_c)),
                              omega=fam.omega, omega_hats=fam.omega_hats, meta=meta)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _cut_integral(tg: np.ndarray, th: np.ndarray, dt: float, lam_c: complex) -> complex:
    """Riemann sum of th * e^{lam_c t} between the per-side minima of the
    integrand magnitude.

    The transform's noise floor, multiplied by a growing exponential, would
    otherwise dominate the tails; cutting each side where the integrand is
    smallest is a stationary (first-order insensitive) truncation choice.
    """
    mag = np.abs(th) * np.exp(lam_c.real * tg)
    c = len(tg) // 2
    ip = c + int(np.argmin(mag[c:]))
    im_ = int(np.argmin(mag[:c + 1]))
    return complex(np.sum(th[im_:ip + 1] * np.exp(lam_c * tg[im_:ip + 1])) * dt)


def biorthogonality_matrix(family: BiorthogonalFamily, m_range, n_range,
                           t_int: float | None = None):
    """B_{mn} = int family_m(t) e^{conj(lambda_n) t} dt and max |B - I|.

    Exponential-sum members integrate in closed form; sampled members by
    Riemann sum with per-entry stationary cuts (or hard cuts at t_int).
    """
    ms = [m for m in m_range if m != 0]
    ns = [n for n in n_range if n != 0]
    lam_cs = [complex(lambda_conj_vals(n, family.eps, family.alpha)) for n in ns]
    out = np.empty((len(ms), len(ns)), dtype=complex)
    for i, m in enumerate(ms):
        rep = family.exp_rep(m)
        if rep is not None:
            ws, rs, (lo, hi) = rep
            length = hi - lo
            mid = 0.5 * (lo + hi)
            for j, lc in enumerate(lam_cs):
                acc = 0.0 + 0.0j
                for w_k, r_k in zip(ws, rs):
                    acc += w_k * length * np.exp((lc + r_k) * mid) \
                        * sinhc(0.5 * (lc + r_k) * length)
                out[i, j] = acc
        else:
            th = family.member(m)
            tg = family.t_grid
            if t_int is not None:
                keep = np.abs(tg) <= t_int
                tg, th = tg[keep], th[keep]
            for j, lc in enumerate(lam_cs):
                out[i, j] = _cut_integral(tg, th, family.dt, lc)
    target = np.equal.outer(ms, ns).astype(float)
    return out, float(np.max(np.abs(out - target)))


def stacked_norm_check(family: BiorthogonalFamily, n_draws: int = 50,
                       seed: int = 0):
    """Random-coefficient check of the stacked norm bound.

    For draws c ~ complex gaussian: ratio of int |sum c_m fam_m|^2 dt to
    sum |c_m|^2 e^{2 beta |Re lambda_m|}, beta the family's recorded fit.
    Returns (max ratio, all ratios); the bound holds with constant C(T0) =
    the max ratio, which the caller freezes and monitors.
    """
    rng = np.random.default_rng(seed)
    ms = list(family.indices)
    re_l = np.array([family.eps * abs(m) ** (2.0 * family.alpha) for m in ms])
    wgt = np.exp(2.0 * family.beta_hat * re_l)
    stack = np.array([family.member(m) for m in ms])
    dt = family.dt
    ratios = np.empty(n_draws)
    for k in range(n_draws):
        c = rng.normal(size=len(ms)) + 1j * rng.normal(size=len(ms))
        g = c @ stack
        lhs = float(np.sum(np.abs(g) ** 2) * dt)
        ratios[k] = lhs / float(np.sum(np.abs(c) ** 2 * wgt))
    return float(np.max(ratios)), ratios
