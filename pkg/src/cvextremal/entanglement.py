"""PPT separability, (logarithmic) negativity and EPR correlations of two-mode states."""
from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize

from . import kernels
from .errors import DomainError, NumericError
from .symplectic import (StandardForm, as_matrix, invariants, is_physical,
                         symplectic_spectrum, two_mode_spectrum_closed_form)

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class EntanglementReport:
    nu_tilde_minus: float
    negativity: float
    log_negativity: float
    separable: bool

    def asdict(self):
        return {"nu_tilde_minus": self.nu_tilde_minus,
                "negativity": self.negativity,
                "log_negativity": self.log_negativity,
                "separable": self.separable}


def ppt_spectrum(sigma):
    """Symplectic eigenvalues ``(nu~-, nu~+)`` of the partially transposed state."""
    sigma = as_matrix(sigma)
    if not is_physical(sigma):
        raise DomainError("PPT spectrum requested for an unphysical state")
    det_s, _, _, _, _, delta_t = invariants(sigma)
    return two_mode_spectrum_closed_form(delta_t, det_s)


def partial_transpose(sigma):
    """Mirror reflection ``p2 -> -p2`` of the second mode."""
    sigma = as_matrix(sigma)
    flip = np.ones(sigma.shape[0])
    flip[3] = -1.0
    return sigma * np.outer(flip, flip)


def ppt_spectrum_numeric(sigma):
    """PPT spectrum from the eigensolver; accurate also near a degenerate spectrum,
    where the closed form loses about half the digits."""
    sigma = as_matrix(sigma)
    if not is_physical(sigma):
        raise DomainError("PPT spectrum requested for an unphysical state")
    return tuple(symplectic_spectrum(partial_transpose(sigma)))


def log_negativity_from_nu(nu_tilde_minus):
    if nu_tilde_minus <= 0.0:
        raise DomainError("nu~- must be positive")
    en = -math.log(nu_tilde_minus)
    return en if en > 0.0 else 0.0


def negativity_from_nu(nu_tilde_minus):
    n = (1.0 - nu_tilde_minus) / (2.0 * nu_tilde_minus)
    return n if n > 0.0 else 0.0


def log_negativity(sigma):
    return log_negativity_from_nu(ppt_spectrum(sigma)[0])


def classify_ppt(sigma):
    """PPT classification of a two-mode state.

    The eigenvalue test ``nu~- >= 1`` and the invariant test
    ``Delta~ <= det(sigma) + 1`` are both evaluated and must agree.
    Boundary states (``nu~- == 1``) are separable. ``nu~-`` comes from the
    eigensolver so that near-degenerate spectra keep full precision.
    """
    sigma = as_matrix(sigma)
    nu_t = float(ppt_spectrum_numeric(sigma)[0])
    det_s, _, _, _, _, delta_t = invariants(sigma)
    by_nu = nu_t >= 1.0 - BOUNDARY_TOL
    by_inv = delta_t <= det_s + 1.0 + BOUNDARY_TOL * max(1.0, det_s)
    if by_nu != by_inv:
        raise NumericError(f"PPT tests disagree: nu~-={nu_t!r}, Delta~-det-1={delta_t - det_s - 1.0!r}")
    return EntanglementReport(nu_t, negativity_from_nu(nu_t),
                              log_negativity_from_nu(nu_t), bool(by_nu))


def symmetric_nu_tilde(sf):
    """``sqrt((a - |c+|)(a - |c-|))`` for a symmetric standard form."""
    if not sf.is_symmetric:
        raise DomainError("symmetric_nu_tilde needs a == b")
    return math.sqrt((sf.a - abs(sf.c_plus)) * (sf.a - abs(sf.c_minus)))


def squeezed_thermal_entangled(nu_minus, nu_plus, r):
    """Entanglement test for a two-mode squeezed thermal state."""
    if nu_minus < 1.0 or nu_plus < 1.0:
        raise DomainError("thermal parameters must be >= 1")
    rhs = (nu_plus ** 2 - 1.0) * (nu_minus ** 2 - 1.0) / (nu_minus + nu_plus) ** 2
    return math.sinh(2.0 * r) ** 2 > rhs


def epr_correlation(state):
    """``xi = Tr(sigma)/2 - sigma_13 + sigma_24``; equals ``a + b - c+ + c-`` in standard form."""
    if isinstance(state, StandardForm):
        return state.a + state.b - state.c_plus + state.c_minus
    sigma = as_matrix(state)
    return 0.5 * float(np.trace(sigma)) - sigma[0, 2] + sigma[1, 3]


def _xi_local(a, b, cp, cm, lv1, lv2):
    v1, v2 = math.exp(lv1), math.exp(lv2)
    return (0.5 * a * (v1 * v1 + 1.0 / (v1 * v1))
            + 0.5 * b * (v2 * v2 + 1.0 / (v2 * v2))
            - abs(cp * v1 * v2 - cm / (v1 * v2)))


def epr_minimized(sf, grid=121, span=(1e-2, 1e2), rtol=1e-8):
    """Minimum of the EPR correlation over local squeezings and rotations.

    The rotation angle is eliminated analytically (the cross term enters with
    its absolute value). The two squeezing factors are located on a
    log-spaced grid and then refined with Nelder-Mead in log variables.
    """
    a, b, cp, cm = sf.astuple()
    logv = np.linspace(math.log(span[0]), math.log(span[1]), grid)
    coarse, i, j = kernels.epr_grid_min(a, b, cp, cm, logv)
    res = optimize.minimize(lambda x: _xi_local(a, b, cp, cm, x[0], x[1]),
                            x0=[logv[i], logv[j]], method="Nelder-Mead",
                            options={"xatol": 1e-10, "fatol": rtol * max(1.0, abs(coarse)) * 1e-2,
                                     "maxiter": 4000, "initial_simplex": _simplex(logv[i], logv[j],
                                                                                  logv[1] - logv[0])})
    if not res.success:
        raise NumericError(f"EPR minimisation did not converge: {res.message} "
                           f"(x={res.x}, f={res.fun}, grid min={coarse})")
    if res.fun > coarse + rtol * max(1.0, abs(coarse)):
        raise NumericError("refinement worsened the grid minimum")
    return float(res.fun)


def _simplex(x, y, h):
    return np.array([[x, y], [x + h, y], [x, y + h]])
