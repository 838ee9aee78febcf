"""Parametrization of two-mode states by global/marginal purities and ``Delta``."""
from dataclasses import dataclass
from enum import Enum
import math

from .errors import DomainError
from .symplectic import StandardForm, as_matrix, invariants, CLAMP

#: resolution at which a purity sitting on a table threshold counts as equal
EDGE = 1e-12


@dataclass(frozen=True)
class InvariantCoordinates:
    mu1: float
    mu2: float
    mu: float
    delta: float

    def astuple(self):
        return (self.mu1, self.mu2, self.mu, self.delta)


class SeparabilityClass(str, Enum):
    UNPHYSICAL_LOW = "UNPHYSICAL_LOW"
    SEPARABLE = "SEPARABLE"
    COEXISTENCE = "COEXISTENCE"
    ENTANGLED = "ENTANGLED"
    UNPHYSICAL_HIGH = "UNPHYSICAL_HIGH"


def coords_from_state(sigma):
    """``(mu1, mu2, mu, Delta)`` of a two-mode covariance matrix."""
    det_s, det_a, det_b, det_g, delta, _ = invariants(as_matrix(sigma))
    if det_s <= 0.0 or det_a <= 0.0 or det_b <= 0.0:
        raise DomainError("state has a non-positive determinant")
    return InvariantCoordinates(1.0 / math.sqrt(det_a), 1.0 / math.sqrt(det_b),
                                1.0 / math.sqrt(det_s), delta)


# -- purity thresholds -------------------------------------------------------

def mu_max(mu1, mu2):
    """Largest global purity compatible with the marginals."""
    return mu1 * mu2 / (mu1 * mu2 + abs(mu1 - mu2))


def mu_separable(mu1, mu2):
    """Below (or at) this global purity every state is separable."""
    return mu1 * mu2 / (mu1 + mu2 - mu1 * mu2)


def mu_entangled(mu1, mu2):
    """Above this global purity every state is entangled."""
    return mu1 * mu2 / math.sqrt(mu1 ** 2 + mu2 ** 2 - mu1 ** 2 * mu2 ** 2)


def classify_purities(mu1, mu2, mu):
    """Separability class of the purity triple, row by row of the classification table."""
    if mu < mu1 * mu2 - EDGE:
        return SeparabilityClass.UNPHYSICAL_LOW
    if mu <= mu_separable(mu1, mu2) + EDGE:
        return SeparabilityClass.SEPARABLE
    if mu <= mu_entangled(mu1, mu2) + EDGE:
        return SeparabilityClass.COEXISTENCE
    if mu <= mu_max(mu1, mu2) + EDGE:
        return SeparabilityClass.ENTANGLED
    return SeparabilityClass.UNPHYSICAL_HIGH


def _check_purities(mu1, mu2, mu):
    for name, m in (("mu1", mu1), ("mu2", mu2), ("mu", mu)):
        if not 0.0 < m <= 1.0:
            raise DomainError(f"{name}={m} outside (0, 1]")
    if mu < mu1 * mu2 * (1.0 - 1e-12):
        raise DomainError(f"mu={mu} below mu1*mu2={mu1 * mu2} (less pure than product)")
    if mu > mu_max(mu1, mu2) * (1.0 + 1e-12):
        raise DomainError(f"mu={mu} above the maximal global purity {mu_max(mu1, mu2)}")


def delta_bounds(mu1, mu2, mu):
    """Physical interval ``[delta_min, delta_max]`` of ``Delta`` at fixed purities."""
    _check_purities(mu1, mu2, mu)
    p12 = mu1 * mu1 * mu2 * mu2
    lo = 2.0 / mu + (mu1 - mu2) ** 2 / p12
    hi = min((mu1 + mu2) ** 2 / p12 - 2.0 / mu, 1.0 + 1.0 / mu ** 2)
    if hi < lo:
        # the purity checks above admit relative rounding at mu_max
        if lo - hi <= 1e-9 * lo:
            hi = lo
        else:
            raise DomainError("empty Delta interval")
    return lo, hi


def _root(x, scale, what):
    if x < 0.0:
        if x >= -CLAMP * max(1.0, scale):
            return 0.0
        raise DomainError(f"{what} violated (radicand {x:.3g})")
    return math.sqrt(x)


def standard_form_from_coords(c):
    """Standard form with given purities and ``Delta``.

    ``c+ = X + eps`` and ``c- = X - eps`` with the two radicals evaluated and
    clamped separately.
    """
    mu1, mu2, mu, delta = c.astuple()
    lo, hi = delta_bounds(mu1, mu2, mu)
    tol = 1e-9 * max(1.0, hi)
    if delta < lo - tol:
        raise DomainError(f"Delta={delta} below lower bound {lo}")
    if delta > hi + tol:
        raise DomainError(f"Delta={delta} above upper bound {hi}")
    p12 = mu1 * mu2
    d = (mu1 - mu2) ** 2 / (p12 * p12)
    rad_x = p12 * ((delta - d) ** 2 - 4.0 / mu ** 2)
    rad_e = ((mu1 + mu2) ** 2 - p12 * p12 * delta) ** 2 / p12 ** 3 - 4.0 * p12 / mu ** 2
    scale = max(p12 * delta ** 2, 4.0 * p12 / mu ** 2)
    x = 0.25 * _root(rad_x, scale, "lower Delta bound")
    eps = 0.25 * _root(rad_e, scale, "upper Delta bound")
    return StandardForm(1.0 / mu1, 1.0 / mu2, x + eps, x - eps)


def delta_tilde(c):
    return -c.delta + 2.0 / c.mu1 ** 2 + 2.0 / c.mu2 ** 2


def nu_tilde_from_coords(c):
    """Smallest partially transposed symplectic eigenvalue from the coordinates."""
    dt = delta_tilde(c)
    rad = dt * dt - 4.0 / c.mu ** 2
    root = _root(rad, dt * dt, "PPT spectrum radicand")
    return math.sqrt(max(0.0, 0.5 * (dt - root)))


def d_nu_tilde_sq_d_delta(c):
    """Derivative of ``nu~-^2`` with respect to ``Delta`` at fixed purities."""
    dt = delta_tilde(c)
    rad = dt * dt - 4.0 / c.mu ** 2
    if rad <= CLAMP * dt * dt:
        raise DomainError("degenerate radicand: derivative undefined")
    return 0.5 * (dt / math.sqrt(rad) - 1.0)
