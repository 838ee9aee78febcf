"""NumPy implementations of the batch kernels.

Used when the compiled ``_kernels`` extension is unavailable, and as the
reference the compiled versions are tested against.
"""
import numpy as np

CLAMP = 1e-9


def sympeig_batch(delta, det):
    """Closed-form two-mode symplectic eigenvalues for arrays of invariants.

    Radicands in ``[-CLAMP, 0)`` are clamped to zero; anything below gives NaN.
    """
    delta = np.ascontiguousarray(delta, dtype=np.float64)
    det = np.ascontiguousarray(det, dtype=np.float64)
    rad = delta * delta - 4.0 * det
    rad = np.where((rad < 0.0) & (rad >= -CLAMP), 0.0, rad)
    with np.errstate(invalid="ignore"):
        root = np.sqrt(rad)
        lo = 0.5 * (delta - root)
        hi = 0.5 * (delta + root)
        lo = np.where((lo < 0.0) & (lo >= -CLAMP), 0.0, lo)
        return np.sqrt(lo), np.sqrt(hi)


def two_mode_invariants(sigmas):
    """Return ``(det_sigma, det_alpha, det_beta, det_gamma)`` for an ``(N, 4, 4)`` stack."""
    s = np.ascontiguousarray(sigmas, dtype=np.float64)
    det_sigma = np.linalg.det(s)
    det_alpha = s[:, 0, 0] * s[:, 1, 1] - s[:, 0, 1] * s[:, 1, 0]
    det_beta = s[:, 2, 2] * s[:, 3, 3] - s[:, 2, 3] * s[:, 3, 2]
    det_gamma = s[:, 0, 2] * s[:, 1, 3] - s[:, 0, 3] * s[:, 1, 2]
    return det_sigma, det_alpha, det_beta, det_gamma


def epr_grid_min(a, b, c_plus, c_minus, logv):
    """Minimise the local-squeezing EPR objective over a square log-grid.

    Returns ``(value, i, j)`` where ``logv[i]`` and ``logv[j]`` are the
    log-squeezings of the two modes at the grid minimum.
    """
    v = np.exp(np.asarray(logv, dtype=np.float64))
    v1 = v[:, None]
    v2 = v[None, :]
    xi = (0.5 * a * (v1 * v1 + 1.0 / (v1 * v1))
          + 0.5 * b * (v2 * v2 + 1.0 / (v2 * v2))
          - np.abs(c_plus * v1 * v2 - c_minus / (v1 * v2)))
    k = int(np.argmin(xi))
    i, j = divmod(k, xi.shape[1])
    return float(xi[i, j]), i, j
