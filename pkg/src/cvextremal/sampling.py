"""Random physical two-mode states by rejection sampling.

The measure is uniform over a box of standard-form parameters, restricted
to physical states. It is a convenience for envelope and region checks; no
claim is made about the density of states it produces.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import ConfigError, DomainError
from .invariants import InvariantCoordinates, delta_bounds, mu_max, standard_form_from_coords
from .symplectic import StandardForm, conjugate, random_local_symplectic

BATCH = 4096
MIN_ACCEPTANCE = 1e-4
#: draws before the acceptance rate is judged
WINDOW = 100_000


class SamplerMode(str, Enum):
    UNIFORM_STANDARD_FORM = "UNIFORM_STANDARD_FORM"
    FIXED_PURITY_SLICE = "FIXED_PURITY_SLICE"


@dataclass(frozen=True)
class SamplerConfig:
    """Rejection-sampler settings.

    ``mu`` is the global purity of the slice in ``FIXED_PURITY_SLICE`` mode
    and is ignored otherwise.
    """

    count: int
    a_max: float = 10.0
    seed: int = 0
    mode: SamplerMode = SamplerMode.UNIFORM_STANDARD_FORM
    mu: float = 0.5

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ConfigError(f"count must be a positive integer, got {self.count}")
        if not self.a_max > 1.0:
            raise ConfigError(f"a_max must exceed 1, got {self.a_max}")
        object.__setattr__(self, "mode", SamplerMode(self.mode))
        if self.mode is SamplerMode.FIXED_PURITY_SLICE and not 0.0 < self.mu <= 1.0:
            raise ConfigError(f"slice purity must lie in (0, 1], got {self.mu}")


def physical_mask(params):
    """Physicality of ``(N, 4)`` standard-form rows ``(a, b, c+, c-)``."""
    a, b, cp, cm = params.T
    ab = a * b
    positive = (a > 0.0) & (ab - cp * cp > 0.0) & (ab - cm * cm > 0.0)
    det = (ab - cp * cp) * (ab - cm * cm)
    lo, _ = kernels.sympeig_batch(a * a + b * b + 2.0 * cp * cm, det)
    with np.errstate(invalid="ignore"):
        return positive & np.isfinite(lo) & (lo >= 1.0)


def _uniform_batches(rng, a_max):
    while True:
        a = rng.uniform(1.0, a_max, BATCH)
        b = rng.uniform(1.0, a_max, BATCH)
        bound = np.sqrt(a * b)
        cp = rng.uniform(-1.0, 1.0, BATCH) * bound
        cm = rng.uniform(-1.0, 1.0, BATCH) * bound
        params = np.column_stack([a, b, cp, cm])
        yield params, physical_mask(params)


def _slice_batches(rng, mu):
    while True:
        mu1 = 1.0 - rng.uniform(0.0, 1.0, BATCH)
        mu2 = 1.0 - rng.uniform(0.0, 1.0, BATCH)
        u = rng.uniform(0.0, 1.0, BATCH)
        ok = (mu1 * mu2 <= mu) & (mu <= mu1 * mu2 / (mu1 * mu2 + np.abs(mu1 - mu2)))
        params = np.full((BATCH, 4), np.nan)
        for k in np.flatnonzero(ok):
            try:
                lo, hi = delta_bounds(mu1[k], mu2[k], mu)
                sf = standard_form_from_coords(
                    InvariantCoordinates(mu1[k], mu2[k], mu, lo + u[k] * (hi - lo)))
            except DomainError:
                ok[k] = False
                continue
            params[k] = sf.astuple()
        yield params, ok


def sample_standard_forms(cfg):
    """``(count, 4)`` array of physical standard forms, reproducible from ``cfg.seed``."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.mode is SamplerMode.UNIFORM_STANDARD_FORM:
        batches = _uniform_batches(rng, cfg.a_max)
    else:
        batches = _slice_batches(rng, cfg.mu)
    out, drawn, kept = [], 0, 0
    while kept < cfg.count:
        params, mask = next(batches)
        drawn += len(mask)
        take = params[mask][: cfg.count - kept]
        out.append(take)
        kept += len(take)
        if drawn >= WINDOW and kept / drawn < MIN_ACCEPTANCE:
            raise ConfigError(f"acceptance rate {kept / drawn:.2e} below {MIN_ACCEPTANCE}")
    return np.concatenate(out)


def sample_states(cfg, scramble=False):
    """Yield physical covariance matrices.

    With ``scramble`` each standard form is dressed by a random local
    symplectic transformation drawn from the same seeded stream, giving
    states that are not in standard form but have the same invariants.
    """
    params = sample_standard_forms(cfg)
    rng = np.random.default_rng([cfg.seed, 1])
    for row in params:
        sigma = StandardForm(*row).matrix()
        if scramble:
            sigma = conjugate(sigma, random_local_symplectic(rng))
        yield sigma


def sample_matrices(cfg, scramble=True):
    """``(count, 4, 4)`` array version of :func:`sample_states`."""
    return np.stack(list(sample_states(cfg, scramble=scramble)))


def random_coordinates(rng, count, mu_floor=1e-3):
    """Valid ``(mu1, mu2, mu, Delta)`` tuples drawn uniformly in purities and ``Delta``."""
    out = []
    while len(out) < count:
        mu1, mu2 = rng.uniform(mu_floor, 1.0, 2)
        lo_mu, hi_mu = mu1 * mu2, mu_max(mu1, mu2)
        if hi_mu - lo_mu < 1e-9:
            continue
        mu = rng.uniform(lo_mu, hi_mu)
        d_lo, d_hi = delta_bounds(mu1, mu2, mu)
        out.append(InvariantCoordinates(mu1, mu2, mu, d_lo + rng.uniform() * (d_hi - d_lo)))
    return out


__all__ = ["SamplerMode", "SamplerConfig", "physical_mask", "sample_standard_forms",
           "sample_states", "sample_matrices", "random_coordinates"]
