"""Nodal analysis of ``d(nu~-^2)/dDelta`` at fixed marginal and global ``S_p``.

``kappa_p`` is that derivative (times two). Where it vanishes GMEMS and GLEMS
are equally entangled; for ``p > 2`` it changes sign across a leaf-shaped
surface, below which the two families exchange their roles. ``R = 2/mu``
throughout.
"""
from dataclasses import dataclass
import math

import numpy as np

from .entropy import entropy_from_spectrum, g_p
from .errors import DomainError
from .invariants import mu_max
from .rootfind import bisect, scan_bracket
from .symplectic import two_mode_spectrum_closed_form

TINY = 1e-300
#: below this relative size of sqrt(Delta - R) the 0/0 limit form of N_p/D_p is used
DEGENERATE = 1e-7


@dataclass(frozen=True)
class NodalPoint:
    mu1: float
    mu2: float
    mu_kappa: float
    s_p_kappa: float

    def asdict(self):
        return {"mu1": self.mu1, "mu2": self.mu2,
                "mu_kappa": self.mu_kappa, "s_p_kappa": self.s_p_kappa}


def _pow(base, e):
    """``base**e`` for non-negative bases, exact 0 for vanishing ones."""
    if base < TINY:
        if base < -1e-9 * max(1.0, abs(base)) - 1e-9:
            raise DomainError(f"negative base {base} in N_p/D_p (unphysical Delta, R)")
        return 0.0 if e > 0.0 else (1.0 if e == 0.0 else math.inf)
    return math.exp(e * math.log(base))


def _pow_diff(up, lo, diff, e):
    """``up**e - lo**e`` given ``diff = up - lo`` computed without cancellation."""
    if lo < TINY or diff > 0.5 * lo:
        return _pow(up, e) - _pow(lo, e)
    return _pow(lo, e) * math.expm1(e * math.log1p(diff / lo))


def np_dp_ratio(delta, R, p):
    """``N_p/D_p``, the ratio of the ``Delta``- and ``R``-derivatives of ``S_p``.

    At ``Delta = R`` (degenerate spectrum) both vanish; the finite limit is
    returned instead.
    """
    if delta < R - 1e-12 * max(1.0, R):
        raise DomainError(f"Delta={delta} < R={R}")
    if delta + R < 0.0:
        raise DomainError("Delta + R must be non-negative")
    if delta > 1.0 + 0.25 * R * R + 1e-12 * max(1.0, R * R):
        raise DomainError(f"Delta={delta} above the uncertainty bound 1 + R^2/4")
    e = p - 1.0
    sp = math.sqrt(delta + R)
    sm = math.sqrt(max(delta - R, 0.0))
    # R + 2 - 2 sp and R - 2 - 2 sm both equal gap / (their conjugates); this
    # form is exact on the uncertainty line, where the direct differences cancel
    gap = max(R * R + 4.0 - 4.0 * delta, 0.0)
    up_p = R + 2 + 2 * sp
    lo_p = gap / up_p
    up_m = R - 2 + 2 * sm
    lo_m = gap / up_m if up_m > 0.0 else 0.0
    A = _pow(up_p, e) - _pow(lo_p, e)
    C = (sp + 1) * _pow(up_p, e) + (sp - 1) * _pow(lo_p, e)
    # up_m^2 - gap = 4 sm (2 sm + R - 2): near Delta = R both bases approach R - 2
    diff_m = 4.0 * sm * (2.0 * sm + R - 2.0) / up_m if up_m > 0.0 else 0.0
    if sm < DEGENERATE * max(1.0, math.sqrt(R)):
        # divide N and D by sqrt(Delta - R) and let it go to zero
        d1 = 4.0 * e * _pow(R - 2, e - 1.0) if e != 1.0 else 4.0
        if math.isinf(d1):
            # pure state with p < 2: the d1 terms dominate both numerator and denominator
            return -1.0
        n_lim = A - d1 * sp
        d_lim = C - sp * (2.0 * _pow(R - 2, e) - d1)
        return n_lim / d_lim
    B = _pow_diff(up_m, lo_m, diff_m, e)
    N = A * sm - B * sp
    D = C * sm - (sm * (_pow(lo_m, e) + _pow(up_m, e)) - B) * sp
    return N / D


def f_p(p, R):
    """``N_p/D_p`` on the minimum-uncertainty line ``Delta = 1 + R^2/4``.

    Written with ``t = ((R-2)/(R+2))^(p-2)`` as ``2(1 - t)/((R+4) - (R-4) t)``.
    """
    if R < 2.0 - 1e-12:
        raise DomainError("f_p needs R >= 2 (mu <= 1)")
    if R - 2.0 < TINY:
        if p > 2.0:
            t = 0.0
        elif p == 2.0:
            return 0.0
        else:
            return 2.0 / (R - 4.0)
    else:
        t = math.exp((p - 2.0) * math.log((R - 2.0) / (R + 2.0)))
    if math.isinf(t):
        return 2.0 / (R - 4.0)
    return 2.0 * (1.0 - t) / ((R + 4.0) - (R - 4.0) * t)


def _dt_root(mu1, mu2, R, delta):
    dt = -delta + 2.0 / mu1 ** 2 + 2.0 / mu2 ** 2
    rad = dt * dt - R * R
    if dt <= 0.0 or rad <= 1e-14 * dt * dt:
        raise DomainError("Delta~ <= R: kappa_p undefined")
    return dt, math.sqrt(rad)


def kappa_2(mu1, mu2, mu, delta):
    R = 2.0 / mu
    dt, root = _dt_root(mu1, mu2, R, delta)
    return -1.0 + dt / root


def kappa_p(mu1, mu2, mu, delta, p):
    """``d(2 nu~-^2)/dDelta`` at fixed marginals and fixed global ``S_p``."""
    R = 2.0 / mu
    dt, root = _dt_root(mu1, mu2, R, delta)
    return -1.0 + dt / root - R / root * np_dp_ratio(delta, R, p)


def kappa_p_glems(mu1, mu2, mu, p):
    """``kappa_p`` on the minimum-uncertainty line ``Delta = 1 + R^2/4``."""
    R = 2.0 / mu
    dt = 2.0 / mu1 ** 2 + 2.0 / mu2 ** 2 - R * R / 4.0 - 1.0
    rad = dt * dt - R * R
    if dt <= 0.0 or rad <= 0.0:
        # dt < -R is the unphysical root with negative nu~-^2
        raise DomainError("Delta~ <= R on the minimum-uncertainty line")
    root = math.sqrt(rad)
    return -1.0 + dt / root - R / root * f_p(p, R)


def nodal_mu(mu1, mu2, p, steps=256, xtol=1e-12):
    """Global purity of the node ``kappa_p = 0`` at the given marginals, or ``None``.

    The physical purity interval is scanned on a log-spaced grid for a sign
    change and the bracket is bisected.
    """
    if not (0.0 < mu1 <= 1.0 and 0.0 < mu2 <= 1.0):
        raise DomainError("marginal purities must lie in (0, 1]")
    if p <= 2.0:
        return None
    lo = mu1 * mu2 * (1.0 + 1e-9)
    top = mu_max(mu1, mu2)
    hi = top * (1.0 - 1e-9)

    def k(m):
        try:
            return kappa_p_glems(mu1, mu2, m, p)
        except DomainError:
            return math.nan

    k_top = k(top)
    if math.isfinite(k_top) and abs(k_top) <= 1e-10:
        return top
    if hi <= lo:
        return None
    grid = np.geomspace(lo, hi, steps)
    grid = np.append(grid, top)
    bracket = scan_bracket(k, grid)
    if bracket is None:
        return None
    a, b = bracket
    if a == b:
        return float(a)
    return bisect(k, a, b, xtol=xtol)


def nodal_entropy(mu1, mu2, p):
    """Global ``S_p`` on the nodal surface, or ``None`` if no node exists."""
    m = nodal_mu(mu1, mu2, p)
    if m is None:
        return None
    return (1.0 - g_p(p, 1.0 / m)) / (p - 1.0)


def nodal_point(mu1, mu2, p):
    m = nodal_mu(mu1, mu2, p)
    if m is None:
        return None
    return NodalPoint(mu1, mu2, m, (1.0 - g_p(p, 1.0 / m)) / (p - 1.0))


def mu_kappa_3(mu1, mu2):
    """Closed form of the ``p = 3`` nodal purity."""
    return math.sqrt(6.0 / (3.0 / mu1 ** 2 + 3.0 / mu2 ** 2 - 2.0))


def mu_kappa_4(mu1, mu2):
    """Closed form of the ``p = 4`` nodal purity."""
    s2 = mu1 ** 2 + mu2 ** 2
    q = mu1 ** 2 * mu2 ** 2
    return math.sqrt(3.0) * mu1 * mu2 / math.sqrt(s2 - 2.0 * q + math.sqrt(s2 * (s2 - q) + q * q))


def entropy_at(mu, delta, p):
    """``S_p`` of a two-mode state with purity ``mu`` and invariant ``Delta``."""
    return entropy_from_spectrum(two_mode_spectrum_closed_form(delta, 1.0 / mu ** 2), p)


def nodal_consistency(mu1, mu2, p, fractions=(0.0, 0.5)):
    """``kappa_p`` at other points of the nodal level set ``S_p = S_p^kappa``.

    For each fraction ``f`` a ``Delta`` is chosen between the GMEMS value
    and the GLEMS value of the node, the global purity is solved so that the
    state keeps the nodal entropy, and ``kappa_p`` is evaluated there. All
    values should vanish if the node does not depend on ``Delta``.
    Returns ``None`` without a node.
    """
    from .extremal import gmems_purity_at_entropy

    m_l = nodal_mu(mu1, mu2, p)
    if m_l is None:
        return None
    s_k = (1.0 - g_p(p, 1.0 / m_l)) / (p - 1.0)
    m_m = gmems_purity_at_entropy(mu1, mu2, s_k, p)
    dlt = (mu1 - mu2) ** 2 / (mu1 * mu2) ** 2
    d_m = 2.0 / m_m + dlt
    d_l = 1.0 + 1.0 / m_l ** 2
    out = []
    for f in fractions:
        d = d_m + f * (d_l - d_m)

        def resid(m):
            return entropy_at(m, d, p) - s_k

        lo = min(m_m, m_l) * (1.0 - 1e-6)
        hi = max(m_m, m_l) * (1.0 + 1e-6)
        try:
            m = bisect(resid, lo, hi, xtol=1e-14)
        except DomainError:
            m = m_m if f == 0.0 else math.nan
        out.append(kappa_p(mu1, mu2, m, d, p) if math.isfinite(m) else math.nan)
    return out
