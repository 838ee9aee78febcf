"""Extremally entangled two-mode states at fixed global and marginal mixedness.

GMEMS saturate the lower ``Delta`` bound and GLEMS the Heisenberg-limited
upper bound ``Delta = 1 + 1/mu^2``; GMEMMS sit at the largest global purity
allowed by the marginals, where the two families meet.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import nodal
from .entanglement import log_negativity
from .entropy import entropy_from_spectrum, g_p, local_purity_from_s_p, _check_order
from .errors import DomainError, NumericError
from .invariants import (SeparabilityClass, _check_purities, delta_bounds, mu_max,
                         mu_separable, _root)
from .rootfind import bisect
from .symplectic import StandardForm, two_mode_spectrum_closed_form


@dataclass(frozen=True)
class ExtremalStatePair:
    gmems: StandardForm
    glems: StandardForm  # None when no GLEMS exists at the requested entropies
    en_max: float
    en_min: float
    inverted: bool
    mu1: float = math.nan
    mu2: float = math.nan
    mu_gmems: float = math.nan
    mu_glems: float = math.nan
    nodal_inverted: bool = False  # swap predicted by the sign of kappa_p on the GLEMS line

    @property
    def average(self):
        return average_log_negativity(self.en_max, self.en_min)

    def asdict(self):
        return {"gmems": None if self.gmems is None else list(self.gmems.astuple()),
                "glems": None if self.glems is None else list(self.glems.astuple()),
                "en_max": self.en_max, "en_min": self.en_min, "inverted": self.inverted,
                "mu1": self.mu1, "mu2": self.mu2,
                "mu_gmems": self.mu_gmems, "mu_glems": self.mu_glems,
                "nodal_inverted": self.nodal_inverted}


def gmems(mu1, mu2, mu):
    """Maximally entangled state at fixed purities: ``c+- = +-sqrt(1/(mu1 mu2) - 1/mu)``."""
    _check_purities(mu1, mu2, mu)
    c = _root(1.0 / (mu1 * mu2) - 1.0 / mu, 1.0 / (mu1 * mu2), "mu >= mu1 mu2")
    return StandardForm(1.0 / mu1, 1.0 / mu2, c, -c)


def gmems_squeezed_thermal(mu1, mu2, mu):
    """Thermal parameters ``(nu_mode1, nu_mode2)`` and squeezing ``r`` of a GMEMS.

    The mode with the smaller marginal purity carries the larger thermal
    parameter.
    """
    _check_purities(mu1, mu2, mu)
    tanh2r = 2.0 * math.sqrt(max(0.0, mu1 * mu2 - (mu1 * mu2) ** 2 / mu)) / (mu1 + mu2)
    r = 0.5 * math.atanh(min(tanh2r, 1.0 - 1e-16))
    p12 = mu1 * mu2
    d = abs(mu1 - mu2) / p12
    base = 1.0 / mu + 0.5 * d * d
    spread = 0.5 * d * math.sqrt(d * d + 4.0 / mu)
    nu_m = math.sqrt(max(base - spread, 0.0))
    nu_p = math.sqrt(base + spread)
    return (nu_m, nu_p, r) if mu1 >= mu2 else (nu_p, nu_m, r)


def glems(mu1, mu2, mu):
    """Least entangled state at fixed purities; its spectrum is ``(1, 1/mu)``."""
    _check_purities(mu1, mu2, mu)
    lo, hi = delta_bounds(mu1, mu2, mu)
    target = 1.0 + 1.0 / mu ** 2
    if target > hi + 1e-9 * max(1.0, hi):
        raise DomainError("no GLEMS: Delta = 1 + 1/mu^2 exceeds the physical bound "
                          f"(mu={mu} not above {mu_separable(mu1, mu2)})")
    p12 = mu1 * mu2
    d = (mu1 - mu2) ** 2 / (p12 * p12)
    rad1 = p12 * (-4.0 / mu ** 2 + (1.0 + 1.0 / mu ** 2 - d) ** 2)
    rad2 = -4.0 * p12 + ((1.0 + mu ** 2) * p12 ** 2 - mu ** 2 * (mu1 + mu2) ** 2) ** 2 / (mu ** 2 * p12 ** 3)
    x = 0.25 * _root(rad1, p12 * target ** 2, "GLEMS radicand")
    eps = _root(rad2, 4.0 * p12 + (1.0 + mu ** 2) ** 2 / (mu ** 2 * p12), "GLEMS radicand") / (4.0 * mu)
    return StandardForm(1.0 / mu1, 1.0 / mu2, x + eps, x - eps)


def gmemms(mu1, mu2):
    """Maximally entangled state for fixed marginals (maximal global purity)."""
    if mu1 == mu2:
        a = 1.0 / mu1
        c = math.sqrt(a * a - 1.0)
        return StandardForm(a, a, c, -c)
    return gmems(mu1, mu2, mu_max(mu1, mu2))


def en_extremal_p2(mu1, mu2, mu):
    """Closed-form ``(E_N max, E_N min)`` at fixed global and marginal purities.

    Returns ``(0, 0)`` in the separable region; ``E_N min`` is clamped to zero
    in the coexistence region.
    """
    _check_purities(mu1, mu2, mu)
    if mu <= mu_separable(mu1, mu2):
        return 0.0, 0.0
    p12 = mu1 * mu2
    s = mu1 + mu2
    inner = s * s - 4.0 * p12 * p12 / mu
    arg_max = -1.0 / mu + s / (2.0 * p12 * p12) * (s - _root(inner, s * s, "E_N max radicand"))
    A = 1.0 / mu1 ** 2 + 1.0 / mu2 ** 2 - 0.5 / mu ** 2 - 0.5
    arg_min = A - _root(A * A - 1.0 / mu ** 2, A * A, "E_N min radicand")
    en_max = max(0.0, -0.5 * math.log(arg_max))
    en_min = max(0.0, -0.5 * math.log(arg_min))
    return en_max, en_min


def average_log_negativity(en_max, en_min):
    return 0.5 * (en_max + en_min)


def relative_error(en_max, en_min):
    """``(E_max - E_min) / (E_max + E_min)``; undefined when both vanish."""
    total = en_max + en_min
    if total <= 0.0:
        raise DomainError("relative error undefined when both extremal negativities vanish")
    return (en_max - en_min) / total


# -- generalized entropies ----------------------------------------------------

def _gmems_entropy(mu1, mu2, mu, p):
    d = (mu1 - mu2) ** 2 / (mu1 * mu2) ** 2
    nus = two_mode_spectrum_closed_form(2.0 / mu + d, 1.0 / mu ** 2)
    return entropy_from_spectrum(nus, p)


def _glems_purity(s_p, p):
    """Purity of the spectrum ``(1, x)`` whose entropy is ``s_p``."""
    if s_p == 0.0:
        return 1.0
    cap = math.inf if p == 1.0 else 1.0 / (p - 1.0)
    if not 0.0 < s_p < cap:
        raise DomainError(f"global entropy {s_p} outside [0, {cap})")
    hi = 2.0
    while entropy_from_spectrum((1.0, hi), p) < s_p:
        hi *= 4.0
        if hi > 1e300:
            raise DomainError("global entropy too large")
    x = bisect(lambda x: entropy_from_spectrum((1.0, x), p) - s_p, 1.0, hi, xtol=1e-13 * hi)
    return 1.0 / x


def gmems_purity_at_entropy(mu1, mu2, s_p, p, checks=64):
    """Global purity of the GMEMS with marginals ``mu1, mu2`` and entropy ``s_p``."""
    lo, hi = mu1 * mu2, mu_max(mu1, mu2)
    grid = np.linspace(lo, hi, checks)
    vals = np.array([_gmems_entropy(mu1, mu2, m, p) for m in grid])
    if np.any(np.diff(vals) > 1e-12):
        raise NumericError("GMEMS entropy is not monotone in the global purity")
    if s_p > vals[0] + 1e-12 or s_p < vals[-1] - 1e-12:
        raise DomainError(f"global entropy {s_p} outside the GMEMS range [{vals[-1]}, {vals[0]}]")
    s_p = min(max(s_p, vals[-1]), vals[0])
    return bisect(lambda m: _gmems_entropy(mu1, mu2, m, p) - s_p, lo, hi, xtol=1e-15)


def en_extremal_at_entropy(s_p1, s_p2, s_p, p):
    """Extremal logarithmic negativities at fixed marginal and global ``S_p``.

    The GLEMS branch fixes the global purity directly through its spectrum
    ``(1, 1/mu)``; the GMEMS branch solves the entropy along the lower
    ``Delta`` bound for ``mu``. For ``p > 2`` below the nodal surface the roles
    of the two families are exchanged; ``inverted`` reports the swap as
    measured from the two branch values and ``nodal_inverted`` as predicted by
    the nodal criterion. The two agree at ``p = 3`` and differ in a thin band
    of entropies otherwise, where the extremal negativities are attained
    between the two families.
    """
    _check_order(p)
    mu1 = local_purity_from_s_p(s_p1, p)
    mu2 = local_purity_from_s_p(s_p2, p)
    mu_m = gmems_purity_at_entropy(mu1, mu2, s_p, p)
    state_m = gmems(mu1, mu2, mu_m)
    en_m = log_negativity(state_m)

    mu_l = _glems_purity(s_p, p)
    if mu_l > mu_max(mu1, mu2) * (1.0 + 1e-9):
        raise DomainError("global entropy too small for the marginals on the GLEMS branch")
    if mu_l <= mu_separable(mu1, mu2):
        # GLEMS do not exist there and the branch carries no entanglement
        state_l, en_l = None, 0.0
    else:
        state_l = glems(mu1, mu2, min(mu_l, mu_max(mu1, mu2)))
        en_l = log_negativity(state_l)

    # the branches are ordered by value: the nodal surface predicts the swap
    # exactly only at p = 3 and is kept as a separate flag
    inverted = en_l > en_m
    nodal_inverted = False
    if p > 2.0:
        s_kappa = nodal.nodal_entropy(mu1, mu2, p)
        nodal_inverted = s_kappa is not None and s_p < s_kappa
    en_max, en_min = (en_l, en_m) if inverted else (en_m, en_l)
    return ExtremalStatePair(state_m, state_l, en_max, en_min, inverted,
                             mu1, mu2, mu_m, mu_l, nodal_inverted)


def classify_entropies_symmetric(s_pi, s_p, p):
    """Separability class of symmetric states from marginal and global ``S_p``."""
    _check_order(p, allow_vn=False)
    mu_i = local_purity_from_s_p(s_pi, p)
    x = (p - 1.0) * s_p
    entangled_edge = 1.0 - g_p(p, math.sqrt(2.0 - mu_i ** 2) / mu_i)
    separable_edge = 1.0 - g_p(p, math.sqrt((2.0 - mu_i) / mu_i)) ** 2
    product = 1.0 - g_p(p, 1.0 / mu_i) ** 2
    if x < 0.0:
        return SeparabilityClass.UNPHYSICAL_HIGH
    if x < entangled_edge:
        return SeparabilityClass.ENTANGLED
    if x < separable_edge:
        return SeparabilityClass.COEXISTENCE
    if x <= product + 1e-12:
        return SeparabilityClass.SEPARABLE
    return SeparabilityClass.UNPHYSICAL_LOW


__all__ = ["ExtremalStatePair", "gmems", "glems", "gmemms", "gmems_squeezed_thermal",
           "en_extremal_p2", "en_extremal_at_entropy", "average_log_negativity",
           "relative_error", "classify_entropies_symmetric", "gmems_purity_at_entropy"]
