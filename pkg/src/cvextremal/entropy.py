"""Generalized p-entropies of Gaussian states from symplectic spectra.

The order ``p`` is any real number greater than one. ``p == 1`` (available as
:data:`VON_NEUMANN`) selects the von Neumann limit; ``p = inf`` is rejected
since it gives an identically vanishing entropy.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.special import xlogy

from .errors import DomainError
from .rootfind import bisect
from .symplectic import as_matrix, symplectic_spectrum

VON_NEUMANN = 1.0


def _check_order(p, allow_vn=True):
    if not math.isfinite(p):
        raise DomainError("p = inf gives a trivial null entropy")
    if p == VON_NEUMANN and allow_vn:
        return
    if p <= 1.0:
        raise DomainError(f"entropy order must exceed 1, got {p}")


def g_p(p, x):
    """Trace of the p-th power of a single-mode thermal state with symplectic eigenvalue ``x``.

    ``2^p / ((x+1)^p - (x-1)^p)``, evaluated as
    ``(2/(x+1))^p / (1 - ((x-1)/(x+1))^p)`` to avoid overflow.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - 1e-12):
        raise DomainError("g_p needs x >= 1")
    x = np.maximum(x, 1.0)
    q = (x - 1.0) / (x + 1.0)
    out = (2.0 / (x + 1.0)) ** p / (1.0 - q ** p)
    return float(out) if out.ndim == 0 else out


def vn_f(x):
    """Von Neumann entropy of a single-mode thermal state, ``f(1) = 0``."""
    x = np.maximum(np.asarray(x, dtype=float), 1.0)
    hp, hm = 0.5 * (x + 1.0), 0.5 * (x - 1.0)
    out = xlogy(hp, hp) - xlogy(hm, hm)
    return float(out) if out.ndim == 0 else out


def trace_p(spectrum, p):
    """``Tr rho^p`` as the product of ``g_p`` over the symplectic spectrum."""
    return float(np.prod(g_p(p, np.atleast_1d(spectrum))))


def _spectrum(state):
    sigma = as_matrix(state)
    return symplectic_spectrum(sigma)


def purity(sigma):
    """Global purity ``1 / sqrt(det sigma)``."""
    det = float(np.linalg.det(as_matrix(sigma)))
    if det <= 0.0:
        raise DomainError("purity needs det(sigma) > 0")
    return 1.0 / math.sqrt(det)


def entropy_from_spectrum(spectrum, p):
    """``S_p`` (or von Neumann entropy for ``p == 1``) of a symplectic spectrum."""
    _check_order(p)
    spectrum = np.atleast_1d(np.asarray(spectrum, dtype=float))
    if p == VON_NEUMANN:
        return float(np.sum(vn_f(spectrum)))
    return (1.0 - trace_p(spectrum, p)) / (p - 1.0)


def s_p(sigma, p):
    """Generalized entropy ``(1 - Tr rho^p)/(p - 1)``; ``p == 1`` gives von Neumann."""
    return entropy_from_spectrum(_spectrum(sigma), p)


def s_renyi(sigma, p):
    """Renyi entropy ``ln Tr rho^p / (1 - p)``."""
    _check_order(p, allow_vn=False)
    return math.log(trace_p(_spectrum(sigma), p)) / (1.0 - p)


@dataclass(frozen=True)
class EntropyBounds:
    s_min: float
    s_max: float
    spectrum_min: tuple
    spectrum_max: tuple


def s_p_bounds_at_purity(mu, p, n=2):
    """Extremal ``S_p`` over ``n``-mode Gaussian states of purity ``mu``.

    The two candidate spectra are the one with all mixedness in one mode,
    ``(1, ..., 1, 1/mu)``, and the fully degenerate ``mu^(-1/n)``. The first
    minimises ``S_p`` for ``p < 2`` and maximises it for ``p > 2``.
    """
    _check_order(p)
    if not 0.0 < mu <= 1.0:
        raise DomainError(f"purity must lie in (0, 1], got {mu}")
    concentrated = (1.0,) * (n - 1) + (1.0 / mu,)
    degenerate = (mu ** (-1.0 / n),) * n
    s_conc = entropy_from_spectrum(concentrated, p)
    s_degen = entropy_from_spectrum(degenerate, p)
    if p <= 2.0:
        return EntropyBounds(s_conc, s_degen, concentrated, degenerate)
    return EntropyBounds(s_degen, s_conc, degenerate, concentrated)


def s_p_from_local_purity(mu_i, p):
    """Single-mode ``S_p`` at purity ``mu_i``."""
    if not 0.0 < mu_i <= 1.0:
        raise DomainError(f"local purity must lie in (0, 1], got {mu_i}")
    return entropy_from_spectrum((1.0 / mu_i,), p)


def local_purity_from_s_p(s, p, tol=1e-15):
    """Invert :func:`s_p_from_local_purity` by bisection on ``mu_i``."""
    _check_order(p)
    hi_s = 1.0 / (p - 1.0) if p != VON_NEUMANN else math.inf
    if s < 0.0 or s >= hi_s:
        raise DomainError(f"local entropy {s} outside [0, {hi_s})")
    if s == 0.0:
        return 1.0
    lo = 1e-12
    while s_p_from_local_purity(lo, p) < s:
        lo *= 1e-3
        if lo < 1e-300:
            raise DomainError("local entropy too large to invert")
    return bisect(lambda m: s_p_from_local_purity(m, p) - s, lo, 1.0, xtol=tol)
