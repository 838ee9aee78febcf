"""Covariance matrices, symplectic spectra and two-mode standard forms.

Conventions: quadratures are ordered ``(x1, p1, ..., xn, pn)`` and normalised
so that the vacuum covariance matrix is the identity. All quantities are
dimensionless.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, InvalidMatrixError
from . import kernels

#: radicands in ``[-CLAMP, 0)`` are treated as exact zeros
CLAMP = 1e-9


@dataclass(frozen=True)
class StandardForm:
    """Two-mode standard form ``(a, b, c_plus, c_minus)``.

    The covariance matrix is ``[[a,0,c+,0],[0,a,0,c-],[c+,0,b,0],[0,c-,0,b]]``.
    """

    a: float
    b: float
    c_plus: float
    c_minus: float

    def matrix(self):
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        return np.array([[a, 0.0, cp, 0.0],
                         [0.0, a, 0.0, cm],
                         [cp, 0.0, b, 0.0],
                         [0.0, cm, 0.0, b]])

    @property
    def is_symmetric(self):
        return math.isclose(self.a, self.b, rel_tol=1e-12, abs_tol=1e-12)

    @property
    def det_sigma(self):
        ab = self.a * self.b
        return (ab - self.c_plus ** 2) * (ab - self.c_minus ** 2)

    @property
    def det_gamma(self):
        return self.c_plus * self.c_minus

    def astuple(self):
        return (self.a, self.b, self.c_plus, self.c_minus)


def as_matrix(state):
    """Accept a :class:`StandardForm` or array-like and return a float matrix."""
    if isinstance(state, StandardForm):
        return state.matrix()
    sigma = np.asarray(state, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise InvalidMatrixError(f"expected a 2n x 2n matrix, got shape {sigma.shape}")
    return sigma


def check_symmetric(sigma, tol=1e-9):
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if np.max(np.abs(sigma - sigma.T)) > tol * scale:
        raise InvalidMatrixError("covariance matrix is not symmetric")


def symplectic_form(n):
    """Block-diagonal symplectic form for ``n`` modes."""
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n), omega)


def symplectic_spectrum(sigma):
    """Ascending symplectic eigenvalues of ``sigma``.

    For positive definite ``sigma = L L^T`` these are the positive
    eigenvalues of the Hermitian matrix ``L^T (i Omega) L``, which has the
    spectrum of ``i Omega sigma`` and is handled by the symmetric solver.
    Otherwise the moduli of the eigenvalues of ``Omega @ sigma`` are paired
    up, as they come in ``+-i nu`` pairs.
    """
    sigma = as_matrix(sigma)
    check_symmetric(sigma)
    n = sigma.shape[0] // 2
    omega = symplectic_form(n)
    try:
        L = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:  # not positive definite, hence unphysical
        moduli = np.sort(np.abs(np.linalg.eigvals(omega @ sigma)))
        return 0.5 * (moduli[0::2] + moduli[1::2])
    ev = np.linalg.eigvalsh(1j * (L.T @ omega @ L))
    # ascending +-nu pairs: the upper half holds the positive ones
    return ev[n:].copy()


def is_physical(sigma, tol=1e-9):
    """True iff the smallest symplectic eigenvalue is at least ``1 - tol``."""
    sigma = as_matrix(sigma)
    check_symmetric(sigma)
    # sigma + i Omega >= 0 also needs sigma > 0, which |eig(Omega sigma)| alone misses
    if np.linalg.eigvalsh(sigma)[0] <= 0.0:
        return False
    return bool(symplectic_spectrum(sigma)[0] >= 1.0 - tol)


def _clamped_sqrt(x, what):
    if x < 0.0:
        if x >= -CLAMP:
            return 0.0
        raise DomainError(f"negative radicand {x:.3g} in {what}")
    return math.sqrt(x)


def two_mode_spectrum_closed_form(delta, det_sigma):
    """Return ``(nu_minus, nu_plus)`` from the two-mode invariants."""
    root = _clamped_sqrt(delta * delta - 4.0 * det_sigma, "two-mode spectrum")
    lo = 0.5 * (delta - root)
    hi = 0.5 * (delta + root)
    return _clamped_sqrt(lo, "two-mode spectrum"), math.sqrt(hi)


def invariants(sigma):
    """Local symplectic invariants of a two-mode state.

    Returns ``(det_sigma, det_alpha, det_beta, det_gamma, delta, delta_tilde)``.
    """
    sigma = as_matrix(sigma)
    if sigma.shape != (4, 4):
        raise InvalidMatrixError("invariants are defined for two-mode states only")
    check_symmetric(sigma)
    d_s, d_a, d_b, d_g = (float(x[0]) for x in kernels.two_mode_invariants(sigma[None]))
    return d_s, d_a, d_b, d_g, d_a + d_b + 2.0 * d_g, d_a + d_b - 2.0 * d_g


def _unimodular_sqrt(block):
    """``L`` with ``L @ L = block / sqrt(det block)``; ``det L = 1`` so ``L`` is symplectic."""
    m = block / math.sqrt(np.linalg.det(block))
    return (m + np.eye(2)) / math.sqrt(np.trace(m) + 2.0), math.sqrt(np.linalg.det(block))


def to_standard_form(sigma):
    """Reduce a physical two-mode covariance matrix to its standard form.

    The local blocks are brought to ``a I`` and ``b I`` by symmetric
    unimodular (hence symplectic) maps; ``c+`` and ``|c-|`` are then the
    singular values of the transformed correlation block. This avoids the
    cancellation of solving for ``c+^2, c-^2`` from the invariants when
    ``|c+| = |c-|``.

    Convention: ``c_plus >= |c_minus|`` and ``c_plus >= 0``; the sign of
    ``c_minus`` is that of ``det(gamma)``.
    """
    sigma = as_matrix(sigma)
    if not is_physical(sigma):
        raise DomainError("standard form requested for an unphysical state")
    if sigma.shape != (4, 4):
        raise InvalidMatrixError("standard form is defined for two-mode states only")
    la, a = _unimodular_sqrt(sigma[:2, :2])
    lb, b = _unimodular_sqrt(sigma[2:, 2:])
    gamma = np.linalg.solve(la, np.linalg.solve(lb, sigma[:2, 2:].T).T)
    s = np.linalg.svd(gamma, compute_uv=False)
    return StandardForm(a, b, float(s[0]), math.copysign(float(s[1]), np.linalg.det(gamma)))


def wigner_eval(sigma, X):
    r"""Gaussian Wigner function ``exp(-X s^-1 X^T / 2) / (pi^n sqrt(det s))``.

    With this prefactor the function integrates to one against the measure
    :math:`\prod_i dx_i\,dp_i / 2`, i.e. to :math:`2^n` in plain Lebesgue
    measure.
    """
    sigma = as_matrix(sigma)
    check_symmetric(sigma)
    n = sigma.shape[0] // 2
    det = np.linalg.det(sigma)
    if det <= 0.0:
        raise DomainError("Wigner function needs an invertible covariance matrix")
    X = np.asarray(X, dtype=float)
    quad = np.einsum("...i,ij,...j->...", X, np.linalg.inv(sigma), X)
    return np.exp(-0.5 * quad) / (math.pi ** n * math.sqrt(det))


# ----------------------------------------------------------------------------
# symplectic building blocks, used for random conjugations and optics


def single_mode_squeezer(r):
    return np.diag([math.exp(-r), math.exp(r)])


def rotation(phi):
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def local_symplectic(s1, s2):
    """Direct sum of two single-mode symplectic matrices."""
    out = np.zeros((4, 4))
    out[:2, :2] = s1
    out[2:, 2:] = s2
    return out


def two_mode_squeezer(r):
    ch, sh = math.cosh(r), math.sinh(r)
    z = np.diag([1.0, -1.0])
    return np.block([[ch * np.eye(2), sh * z], [sh * z, ch * np.eye(2)]])


def beam_splitter(transmittivity):
    t = math.sqrt(transmittivity)
    u = math.sqrt(1.0 - transmittivity)
    return np.block([[t * np.eye(2), u * np.eye(2)], [-u * np.eye(2), t * np.eye(2)]])


def random_symplectic(rng, n=2, max_squeeze=1.0):
    """Random symplectic matrix built from rotations, squeezers and mixers."""
    S = np.eye(2 * n)
    for _ in range(2):
        local = np.zeros((2 * n, 2 * n))
        for k in range(n):
            local[2 * k:2 * k + 2, 2 * k:2 * k + 2] = (
                rotation(rng.uniform(0, 2 * math.pi))
                @ single_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze))
                @ rotation(rng.uniform(0, 2 * math.pi)))
        S = local @ S
        if n == 2:
            S = two_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze)) @ S
            S = beam_splitter(rng.uniform(0.05, 0.95)) @ S
    return S


def random_local_symplectic(rng, max_squeeze=1.0):
    blocks = [rotation(rng.uniform(0, 2 * math.pi))
              @ single_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze))
              @ rotation(rng.uniform(0, 2 * math.pi)) for _ in range(2)]
    return local_symplectic(*blocks)


def conjugate(sigma, S):
    """Return ``S^T sigma S``."""
    return S.T @ as_matrix(sigma) @ S


def thermal(nus):
    """Williamson normal form ``diag(nu1, nu1, ..., nun, nun)``."""
    return np.diag(np.repeat(np.asarray(nus, dtype=float), 2))
