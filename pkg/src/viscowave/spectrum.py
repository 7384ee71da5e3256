"""Eigenvalue families, the spectral weight, its root map, and multiplier nodes.

Three families over nonzero integer index n:

    lambda_n = i n + eps |n|^{2 alpha}          damped-corrected system
    mu_n     = i n                              conservative limit
    nu_n     = eps |n|^{2a} + sgn(n) sqrt(eps^2 |n|^{4a} - n^2)   diagnostic

nu uses the complex square root so both regimes are representable: for
eps^2 |n|^{4a} < n^2 the root is imaginary (oscillatory regime), beyond the
branch index it is real.  The eps^2 factor under the root is what the
characteristic equation r^2 + 2 eps |n|^{2a} r + n^2 = 0 produces; nu is a
diagnostic family only and never enters synthesis.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .core import ALPHA_DEGENERACY_TOL, ConfigError, DegenerateAlphaError

E = math.e


def _check_alpha(alpha: float) -> None:
    if abs(alpha - 0.5) < ALPHA_DEGENERACY_TOL:
        raise DegenerateAlphaError("alpha = 1/2 has no usable weight/root map")


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def lambda_vals(ns, eps: float, alpha: float) -> np.ndarray:
    """lambda_n = i n + eps |n|^{2 alpha}, vectorized over n."""
    ns = np.asarray(ns)
    return eps * np.abs(ns) ** (2.0 * alpha) + 1j * ns


def lambda_conj_vals(ns, eps: float, alpha: float) -> np.ndarray:
    """conj(lambda_n) = eps |n|^{2 alpha} - i n."""
    ns = np.asarray(ns)
    return eps * np.abs(ns) ** (2.0 * alpha) - 1j * ns


def eigenvalue(family: str, n: int, eps: float, alpha: float) -> complex:
    """Single eigenvalue from one of the families 'lambda', 'mu', 'nu'."""
    if n == 0:
        raise ConfigError("mode index 0 is excluded")
    if family == "lambda":
        return complex(lambda_vals(n, eps, alpha))
    if family == "mu":
        return 1j * n
    if family == "nu":
        an = abs(n)
        rad = complex(eps * eps * an ** (4.0 * alpha) - n * n)
        return eps * an ** (2.0 * alpha) + math.copysign(1.0, n) * np.sqrt(rad)
    raise ConfigError(f"unknown eigenvalue family {family!r}")


# ---------------------------------------------------------------------------
# weight function and inverse
# ---------------------------------------------------------------------------

def gamma_eps(eps: float, alpha: float) -> float:
    """Branch point of the weight for alpha > 1/2: (1/eps)^{1/(2a-1)}."""
    if alpha <= 0.5:
        raise ConfigError("gamma_eps only defined for alpha > 1/2")
    if eps <= 0:
        raise ConfigError("gamma_eps needs eps > 0")
    return (1.0 / eps) ** (1.0 / (2.0 * alpha - 1.0))


def phi_eps(x, eps: float, alpha: float) -> np.ndarray:
    """The weight phi(x).

    alpha < 1/2: eps |x|^{2a} everywhere.
    alpha > 1/2: eps |x|^{2a} up to the branch point gamma, then
    (|x|/eps)^{1/(2a)}; the two branches agree at gamma.
    eps = 0 gives the zero weight.
    """
    _check_alpha(alpha)
    x = np.abs(np.asarray(x, dtype=float))
    if eps == 0:
        return np.zeros_like(x)
    if alpha < 0.5:
        return eps * x ** (2.0 * alpha)
    g = gamma_eps(eps, alpha)
    return np.where(x <= g, eps * x ** (2.0 * alpha),
                    (x / eps) ** (1.0 / (2.0 * alpha)))


def phi_eps_inverse(y, eps: float, alpha: float) -> np.ndarray:
    """Inverse of phi on [0, inf); branch selection at y = gamma uses
    phi(gamma) = gamma."""
    _check_alpha(alpha)
    if eps <= 0:
        raise ConfigError("phi inverse undefined for eps = 0")
    if alpha == 0:
        raise ConfigError("phi is constant at alpha = 0; no inverse")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ConfigError("phi inverse takes non-negative arguments")
    if alpha < 0.5:
        return (y / eps) ** (1.0 / (2.0 * alpha))
    g = gamma_eps(eps, alpha)
    return np.where(y <= g, (y / eps) ** (1.0 / (2.0 * alpha)),
                    eps * y ** (2.0 * alpha))


# ---------------------------------------------------------------------------
# root map
# ---------------------------------------------------------------------------

def xi_eps(x: float, eps: float, alpha: float) -> float:
    """Unique root xi >= 0 of x^2 = xi^2 + eps^2 xi^{4 alpha}.

    The left side is fixed, the right side strictly increasing in xi, so a
    bracketed solve on [0, x] converges; relative tolerance 1e-13.
    """
    _check_alpha(alpha)
    x = float(x)
    if x < 0:
        raise ConfigError("xi_eps takes x >= 0")
    if x == 0.0 or eps == 0.0:
        return x

    x2 = x * x

    def g(xi: float) -> float:
        return xi * xi + (eps * xi ** (2.0 * alpha)) ** 2 - x2

    # g(0) = -x^2 < 0 and g(x) >= 0, monotone in between
    return float(brentq(g, 0.0, x, rtol=8.9e-16, maxiter=200))


# ---------------------------------------------------------------------------
# multiplier node sequence
# ---------------------------------------------------------------------------

def node_start(m: int, eps: float, alpha: float) -> int:
    """First node index n_m = floor(phi(e |lambda_m|)) + 1."""
    lm = eigenvalue("lambda", m, eps, alpha)
    return int(np.floor(float(phi_eps(E * abs(lm), eps, alpha)))) + 1


def multiplier_nodes(m: int, eps: float, alpha: float, count: int):
    """Node sequence a_n = phi^{-1}(n)/e for n = n_m .. n_m + count - 1.

    Verifies a_{n_m} >= |lambda_m| (all nodes clear the eigenvalue radius,
    which the multiplier's lower bound at the node needs).
    """
    if alpha == 0:
        raise ConfigError("no multiplier nodes at alpha = 0 (no multiplier needed)")
    _check_alpha(alpha)
    if count < 1:
        raise ConfigError("count must be >= 1")
    nm = node_start(m, eps, alpha)
    ns = np.arange(nm, nm + count, dtype=float)
    an = np.asarray(phi_eps_inverse(ns, eps, alpha)) / E
    lm_abs = abs(eigenvalue("lambda", m, eps, alpha))
    if an[0] < lm_abs * (1.0 - 1e-12):
        raise ConfigError(
            f"first node a_{nm} = {an[0]:.6g} below |lambda_{m}| = {lm_abs:.6g}")
    return nm, an


# ---------------------------------------------------------------------------
# proof constants for the node sums
# ---------------------------------------------------------------------------

def node_sum_bound(eps: float, alpha: float) -> float:
    """L2: explicit bound on sum_n 1/a_n (exponential type of the multiplier).

    ((4a+1)/2a) eps^{1/2a} e for alpha < 1/2, ((2a+1)/(2a-1)) e above.
    """
    _check_alpha(alpha)
    if alpha == 0:
        raise ConfigError("node sums undefined at alpha = 0")
    if alpha < 0.5:
        return (4.0 * alpha + 1.0) / (2.0 * alpha) * eps ** (1.0 / (2.0 * alpha)) * E
    return (2.0 * alpha + 1.0) / (2.0 * alpha - 1.0) * E


def node_tail_sq_constant(alpha: float) -> float:
    """D: constant in sum_{n >= n_m} 1/a_n^2 <= D (1 + |Re lambda_m|)/|lambda_m|^2."""
    _check_alpha(alpha)
    if alpha == 0:
        raise ConfigError("node sums undefined at alpha = 0")
    if alpha < 0.5:
        return 2.0 ** alpha * E * E
    return 4.0 * alpha / (1.0 - alpha) * E * E
