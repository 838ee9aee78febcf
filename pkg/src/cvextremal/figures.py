"""CSV datasets behind the standard plots of extremal entanglement.

Every dataset is a pure function of its :class:`FigureRequest`; rows are
computed on an optional process pool but always written in grid order, so
the same request yields a byte-identical file.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from . import __version__
from .entropy import VON_NEUMANN, s_p, s_p_bounds_at_purity, s_p_from_local_purity
from .entanglement import log_negativity
from .errors import ConfigError, DomainError
from .extremal import (average_log_negativity, en_extremal_at_entropy, en_extremal_p2,
                       gmemms, relative_error)
from .invariants import classify_purities, mu_max
from .nodal import nodal_point
from .sampling import SamplerConfig, sample_standard_forms
from .serialization import write_table
from .symplectic import StandardForm


class FigureId(str, Enum):
    SV_VS_SL = "SV_VS_SL"
    DELTA_S_VS_P = "DELTA_S_VS_P"
    REGION_MAP = "REGION_MAP"
    EXTREMAL_SURFACES = "EXTREMAL_SURFACES"
    NODAL_LEAF = "NODAL_LEAF"
    ERROR_CURVES = "ERROR_CURVES"
    GMEMMS_SURFACE = "GMEMMS_SURFACE"


DEFAULT_P = {
    FigureId.SV_VS_SL: VON_NEUMANN,
    FigureId.DELTA_S_VS_P: 2.0,
    FigureId.REGION_MAP: 2.0,
    FigureId.EXTREMAL_SURFACES: 2.0,
    FigureId.NODAL_LEAF: 3.0,
    FigureId.ERROR_CURVES: 2.0,
    FigureId.GMEMMS_SURFACE: 2.0,
}

#: fixed linear-entropy slices of the entropy-gap plot
DELTA_S_SLICES = (0.1, 0.5, 0.8)


@dataclass(frozen=True)
class FigureRequest:
    """What to compute and where to put it.

    ``p=None`` picks the natural order of each figure. ``samples`` adds
    randomly sampled states to ``SV_VS_SL``; ``s_slice`` fixes the global
    entropy of ``ERROR_CURVES`` (default ``1/(2(p-1))``, or 1 for von Neumann).
    """

    figure_id: FigureId
    p: float = None
    grid: int = 50
    out: str = None
    seed: int = 0
    workers: int = 1
    samples: int = 0
    s_slice: float = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "figure_id", FigureId(self.figure_id))
        except ValueError:
            raise ConfigError(f"unknown figure {self.figure_id!r}") from None
        if int(self.grid) != self.grid or self.grid < 2:
            raise ConfigError("grid resolution must be an integer >= 2")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.samples < 0:
            raise ConfigError("samples must be >= 0")
        if self.p is None:
            object.__setattr__(self, "p", DEFAULT_P[self.figure_id])


def _map(func, items, workers):
    if workers == 1:
        return [func(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))


def _open_unit(n):
    """``n`` points in ``(0, 1]``."""
    return [(k + 1) / n for k in range(n)]


# -- row producers (module level so they pickle) ---------------------------

def _sv_row(args):
    mu, p = args
    b = s_p_bounds_at_purity(mu, p)
    return ("bound", 1.0 - mu, math.nan, b.s_min, b.s_max)


def _delta_s_row(args):
    s_l, p = args
    b = s_p_bounds_at_purity(1.0 - s_l, p)
    return (s_l, p, abs(b.s_max - b.s_min))


def _region_row(args):
    mu1, mu2, mu = args
    cls = classify_purities(mu1, mu2, mu)
    en_max, en_min = en_extremal_p2(mu1, mu2, mu)
    return (mu1, mu2, mu, cls.value, average_log_negativity(en_max, en_min))


def _surface_row(args):
    s_pi, s_glob, p = args
    try:
        pair = en_extremal_at_entropy(s_pi, s_pi, s_glob, p)
    except DomainError:
        return None
    return (s_pi, s_glob, pair.en_max, pair.en_min, pair.inverted)


def _leaf_row(args):
    mu1, mu2, p = args
    pt = nodal_point(mu1, mu2, p)
    if pt is None:
        return (mu1, mu2, None, None)
    return (mu1, mu2, pt.mu_kappa, pt.s_p_kappa)


def _error_row(args):
    ratio, s_glob, p = args
    try:
        pair = en_extremal_at_entropy(ratio * s_glob, ratio * s_glob, s_glob, p)
    except DomainError:
        return None
    if pair.en_max + pair.en_min <= 0.0:
        return (ratio, math.nan, 0.0, 0.0)
    return (ratio, relative_error(pair.en_max, pair.en_min), pair.en_max, pair.en_min)


def _gmemms_row(args):
    mu1, mu2, p = args
    sf = gmemms(mu1, mu2)
    return (mu1, mu2, s_p_from_local_purity(mu1, p), s_p_from_local_purity(mu2, p),
            mu_max(mu1, mu2), log_negativity(sf))


def _entropy_cap(p):
    return 3.0 if p == VON_NEUMANN else 1.0 / (p - 1.0)


# -- figures -----------------------------------------------------------------

def _sv_vs_sl(req):
    n = req.grid
    rows = _map(_sv_row, [(mu, req.p) for mu in _open_unit(n)[::-1]], req.workers)
    if req.samples:
        params = sample_standard_forms(SamplerConfig(req.samples, seed=req.seed))
        for row in params:
            sigma = StandardForm(*row).matrix()
            mu = 1.0 / math.sqrt(float(np.linalg.det(sigma)))
            b = s_p_bounds_at_purity(mu, req.p)
            rows.append(("state", 1.0 - mu, s_p(sigma, req.p), b.s_min, b.s_max))
    return ["kind", "s_l", "s_p", "s_p_min", "s_p_max"], rows


def _delta_s_vs_p(req):
    ps = np.linspace(1.0, 10.0, req.grid)
    items = [(s, float(p)) for s in DELTA_S_SLICES for p in ps]
    return ["s_l", "p", "delta_s"], _map(_delta_s_row, items, req.workers)


def _region_map(req):
    if req.p != 2.0:
        raise ConfigError("REGION_MAP is defined through purities only (p = 2)")
    items = []
    for mu1 in _open_unit(req.grid):
        for mu2 in _open_unit(req.grid):
            lo, hi = mu1 * mu2, mu_max(mu1, mu2)
            for k in range(req.grid):
                items.append((mu1, mu2, lo + (hi - lo) * k / (req.grid - 1)))
    return ["mu1", "mu2", "mu", "class", "e_bar_n"], _map(_region_row, items, req.workers)


def _extremal_surfaces(req):
    cap = _entropy_cap(req.p)
    items = []
    for s_pi in np.linspace(cap / req.grid, cap * (1.0 - 1.0 / req.grid), req.grid):
        # global entropy of the product state with these marginals
        s_prod = 2.0 * float(s_pi) if req.p == VON_NEUMANN else (
            1.0 - (1.0 - (req.p - 1.0) * float(s_pi)) ** 2) / (req.p - 1.0)
        for f in np.linspace(0.0, 1.0, req.grid + 2)[1:-1]:
            items.append((float(s_pi), float(f) * s_prod, req.p))
    rows = [r for r in _map(_surface_row, items, req.workers) if r is not None]
    return ["s_pi", "s_p", "en_max", "en_min", "inverted"], rows


def _nodal_leaf(req):
    if req.p <= 2.0:
        raise ConfigError("the nodal surface exists only for p > 2")
    items = [(m1, m2, req.p) for m1 in _open_unit(req.grid) for m2 in _open_unit(req.grid)]
    return ["mu1", "mu2", "mu_kappa", "s_p_kappa"], _map(_leaf_row, items, req.workers)


def _error_slice(req):
    if req.s_slice is not None:
        return req.s_slice
    return 1.0 if req.p == VON_NEUMANN else 1.0 / (2.0 * (req.p - 1.0))


def _error_curves(req):
    s_glob = _error_slice(req)
    hi = min(2.5, 0.995 * _entropy_cap(req.p) / s_glob) if req.p != VON_NEUMANN else 2.5
    items = [(float(r), s_glob, req.p) for r in np.linspace(0.5, hi, req.grid)]
    rows = [r for r in _map(_error_row, items, req.workers) if r is not None]
    return ["ratio", "delta_e_bar_n", "en_max", "en_min"], rows


def _gmemms_surface(req):
    items = [(m1, m2, req.p) for m1 in _open_unit(req.grid) for m2 in _open_unit(req.grid)]
    return (["mu1", "mu2", "s_p1", "s_p2", "mu", "en_gmemms"],
            _map(_gmemms_row, items, req.workers))


_BUILDERS = {
    FigureId.SV_VS_SL: _sv_vs_sl,
    FigureId.DELTA_S_VS_P: _delta_s_vs_p,
    FigureId.REGION_MAP: _region_map,
    FigureId.EXTREMAL_SURFACES: _extremal_surfaces,
    FigureId.NODAL_LEAF: _nodal_leaf,
    FigureId.ERROR_CURVES: _error_curves,
    FigureId.GMEMMS_SURFACE: _gmemms_surface,
}


def figure_rows(req):
    """``(header, rows)`` of a figure without writing anything."""
    return _BUILDERS[req.figure_id](req)


def emit_figure(req):
    """Write the figure CSV to ``req.out`` (if set) and return its text."""
    header, rows = figure_rows(req)
    meta = {"figure": req.figure_id.value, "p": float(req.p), "grid": req.grid,
            "seed": req.seed, "samples": req.samples, "version": __version__}
    if req.figure_id is FigureId.ERROR_CURVES:
        meta["s_slice"] = _error_slice(req)
    try:
        return write_table(req.out, header, rows, meta)
    except OSError as exc:
        raise ConfigError(f"cannot write {req.out}: {exc}") from exc


__all__ = ["FigureId", "FigureRequest", "emit_figure", "figure_rows"]
