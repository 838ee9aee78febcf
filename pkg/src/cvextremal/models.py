"""Experimentally motivated two-mode families: squeezed thermal states,
dissipation into thermal reservoirs and beam-splitter mixing.

Units are ``hbar = k_B = 1``; temperatures enter only through the ratio
``x = omega / T``. Reservoir noise is stored as a quadrature variance
``n = 2 nbar + 1`` so that the asymptotic state is a physical covariance
matrix for every mean photon number ``nbar >= 0``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .entanglement import ppt_spectrum_numeric
from .entropy import purity
from .errors import DomainError, NumericError
from .rootfind import bisect
from .symplectic import StandardForm, as_matrix, beam_splitter, conjugate, thermal

#: default scan horizon for the death time, in units of 1/gamma
HORIZON = 20.0


@dataclass(frozen=True)
class SqueezedThermalSpec:
    nu_minus: float
    nu_plus: float
    r: float


def squeezed_thermal(nu_minus, nu_plus=None, r=None):
    """Standard form of a two-mode squeezed thermal state.

    Accepts ``(nu_minus, nu_plus, r)`` or a single :class:`SqueezedThermalSpec`.
    """
    if isinstance(nu_minus, SqueezedThermalSpec):
        nu_minus, nu_plus, r = nu_minus.nu_minus, nu_minus.nu_plus, nu_minus.r
    if nu_minus < 1.0 or nu_plus < 1.0:
        raise DomainError("thermal parameters must be >= 1")
    ch2, sh2 = math.cosh(r) ** 2, math.sinh(r) ** 2
    c = (nu_minus + nu_plus) * math.cosh(r) * math.sinh(r)
    return StandardForm(nu_minus * ch2 + nu_plus * sh2,
                        nu_minus * sh2 + nu_plus * ch2, c, -c)


def squeezed_vacuum(r):
    return squeezed_thermal(1.0, 1.0, r)


def fit_squeezed_thermal(state):
    """Best squeezed-thermal parameters for a state and the fit residual.

    The parameters follow from ``a + b``, ``a - b`` and the mean of
    ``c+`` and ``-c-``; the residual is the largest entrywise deviation
    between the state and the refitted squeezed thermal matrix.
    Returns ``(SqueezedThermalSpec, residual)``.
    """
    sigma = as_matrix(state)
    a, b = sigma[0, 0], sigma[2, 2]
    c = 0.5 * (sigma[0, 2] - sigma[1, 3])
    total = (a + b) ** 2 - 4.0 * c * c
    if total <= 0.0:
        raise DomainError("state is not of squeezed thermal type (a + b <= 2|c|)")
    s = math.sqrt(total)
    r = 0.5 * math.atanh(2.0 * c / (a + b))
    nu_m = 0.5 * (s + a - b)
    nu_p = 0.5 * (s - a + b)
    spec = SqueezedThermalSpec(nu_m, nu_p, r)
    if nu_m < 1.0 - 1e-12 or nu_p < 1.0 - 1e-12:
        raise DomainError(f"fitted thermal parameters below 1: {nu_m}, {nu_p}")
    refit = StandardForm(nu_m * math.cosh(r) ** 2 + nu_p * math.sinh(r) ** 2,
                         nu_m * math.sinh(r) ** 2 + nu_p * math.cosh(r) ** 2,
                         (nu_m + nu_p) * math.cosh(r) * math.sinh(r),
                         -(nu_m + nu_p) * math.cosh(r) * math.sinh(r)).matrix()
    return spec, float(np.max(np.abs(sigma - refit)))


# -- reservoirs --------------------------------------------------------------

def photon_number(x):
    """Mean thermal photon number ``1/(e^x - 1)`` at ``x = omega/T``; 0 at ``x = inf``."""
    if x <= 0.0:
        raise DomainError("omega/T must be positive")
    return 0.0 if math.isinf(x) else 1.0 / math.expm1(x)


def variance_from_photons(nbar):
    """Quadrature variance ``2 nbar + 1`` of a thermal mode."""
    if nbar < 0.0:
        raise DomainError("mean photon number must be non-negative")
    return 2.0 * nbar + 1.0


@dataclass(frozen=True)
class ReservoirSpec:
    """Thermal reservoir with rate ``gamma`` and noise variances ``n1, n2`` (vacuum = 1)."""

    gamma: float
    n1: float
    n2: float

    @classmethod
    def from_photon_numbers(cls, gamma, nbar1, nbar2):
        return cls(gamma, variance_from_photons(nbar1), variance_from_photons(nbar2))

    @classmethod
    def from_temperature(cls, gamma, omega1, omega2, T):
        x1 = math.inf if T == 0 else omega1 / T
        x2 = math.inf if T == 0 else omega2 / T
        return cls.from_photon_numbers(gamma, photon_number(x1), photon_number(x2))

    def asymptotic(self):
        if self.n1 < 1.0 or self.n2 < 1.0:
            raise DomainError(f"reservoir variances ({self.n1}, {self.n2}) below the vacuum level 1")
        return thermal((self.n1, self.n2))


def dissipative_evolve(sigma0, res, t):
    """``sigma(t) = e^{-gamma t} sigma0 + (1 - e^{-gamma t}) sigma_inf``."""
    if t < 0.0:
        raise DomainError("t must be non-negative")
    if res.gamma < 0.0:
        raise DomainError("gamma must be non-negative")
    sigma0 = as_matrix(sigma0)
    sigma_inf = res.asymptotic()
    if t == 0.0:
        return sigma0.copy()
    damp = math.exp(-res.gamma * t) if math.isfinite(t) else 0.0
    return damp * sigma0 + (1.0 - damp) * sigma_inf


def trajectory(sigma0, res, times):
    """Rows ``(t, E_N, mu, mu1, mu2)`` along a dissipative trajectory."""
    rows = []
    for t in times:
        s = dissipative_evolve(sigma0, res, float(t))
        nu = ppt_spectrum_numeric(s)[0]
        rows.append((float(t), max(0.0, -math.log(nu)), purity(s),
                     purity(s[:2, :2]), purity(s[2:, 2:])))
    return rows


def entanglement_death_time(r, res, horizon=HORIZON, steps=2001, xtol=1e-9):
    """First time at which a dissipating squeezed vacuum becomes separable.

    ``nu~-(t)`` is scanned on ``[0, horizon/gamma]`` and bisected where it
    crosses 1. ``E_N(t)`` must not increase on the way; after the crossing
    ``nu~-`` may overshoot and relax, which leaves ``E_N = 0`` untouched. Returns ``math.inf`` if
    the state stays entangled over the whole horizon (pure loss).
    """
    if r == 0.0:
        return 0.0
    if res.gamma <= 0.0:
        raise DomainError("gamma must be positive for a finite death time")
    sigma0 = squeezed_vacuum(r).matrix()

    def excess(t):
        return ppt_spectrum_numeric(dissipative_evolve(sigma0, res, t))[0] - 1.0

    ts = np.linspace(0.0, horizon / res.gamma, steps)
    vals = np.array([excess(t) for t in ts])
    if np.any(np.diff(np.minimum(vals, 0.0)) < -1e-12):
        raise NumericError("entanglement is not monotonically decreasing along the trajectory")
    hit = np.flatnonzero(vals >= 0.0)
    if hit.size == 0:
        return math.inf
    k = hit[0]
    if k == 0:
        return 0.0
    return bisect(excess, ts[k - 1], ts[k], xtol=xtol)


def death_time_symmetric(r, n, gamma):
    """Closed-form death time for ``n1 = n2 = n``: ``e^{-gamma t} = (n-1)/(n - e^{-2r})``."""
    if n <= 1.0:
        return math.inf
    return -math.log((n - 1.0) / (n - math.exp(-2.0 * r))) / gamma


# -- beam splitter -------------------------------------------------------------

def beam_splitter_glems(r, mu, transmittivity=0.5):
    """Output of a beam splitter fed by a squeezed vacuum and a thermal mode.

    The inputs are ``diag(e^{2r}, e^{-2r})`` and ``(1/mu) I``; the output has
    symplectic spectrum ``(1, 1/mu)``.
    """
    if not 0.0 < mu <= 1.0:
        raise DomainError("thermal purity must lie in (0, 1]")
    if not 0.0 < transmittivity < 1.0:
        raise DomainError("transmittivity must lie in (0, 1)")
    k = math.exp(2.0 * r)
    sigma_in = np.diag([k, 1.0 / k, 1.0 / mu, 1.0 / mu])
    return conjugate(sigma_in, beam_splitter(transmittivity).T)


def beam_splitter_entangled(r, mu):
    """Entanglement condition of the balanced beam-splitter output."""
    return math.cosh(2.0 * r) > (mu * mu + 1.0) / (2.0 * mu)


def thermal_purity_from_temperature(omega, T):
    """Purity ``(e^x - 1)/(e^x + 1) = tanh(x/2)`` of a thermal mode, ``x = omega/T``."""
    if omega <= 0.0 or T < 0.0:
        raise DomainError("need omega > 0 and T >= 0")
    if T == 0.0:
        return 1.0
    return math.tanh(0.5 * omega / T)
