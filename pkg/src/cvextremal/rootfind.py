"""Bracketed root finding helpers."""
import numpy as np
from scipy import optimize

from .errors import DomainError, NumericError


def bisect(func, lo, hi, xtol=1e-12, maxiter=400):
    """Bisection on a sign-changing bracket; an endpoint root is returned as is."""
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise DomainError(f"no sign change on [{lo:.6g}, {hi:.6g}]")
    try:
        return optimize.bisect(func, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps,
                               maxiter=maxiter)
    except RuntimeError as exc:  # scipy signals non-convergence this way
        raise NumericError(str(exc)) from exc


def scan_bracket(func, grid):
    """First adjacent pair of grid points across which ``func`` changes sign.

    Non-finite values break the chain. Returns ``None`` if no change is found.
    """
    prev_x, prev_f = None, None
    for x in grid:
        fx = func(x)
        if not np.isfinite(fx):
            prev_x, prev_f = None, None
            continue
        if fx == 0.0:
            return x, x
        if prev_f is not None and np.sign(fx) != np.sign(prev_f):
            return prev_x, x
        prev_x, prev_f = x, fx
    return None
