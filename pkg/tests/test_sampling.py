import numpy as np
import pytest

from cvextremal import sampling
from cvextremal.entropy import VON_NEUMANN, s_p, s_p_bounds_at_purity
from cvextremal.errors import ConfigError
from cvextremal.invariants import coords_from_state, delta_bounds, mu_max
from cvextremal.sampling import (SamplerConfig, SamplerMode, physical_mask,
                                 random_coordinates, sample_matrices, sample_standard_forms,
                                 sample_states)
from cvextremal.symplectic import StandardForm, is_physical, to_standard_form


class TestConfig:
    @pytest.mark.parametrize("kwargs", [{"count": 0}, {"count": 2.5}, {"count": 3, "a_max": 1.0},
                                        {"count": 3, "mode": "NOPE"},
                                        {"count": 3, "mode": "FIXED_PURITY_SLICE", "mu": 0.0}])
    def test_rejects(self, kwargs):
        with pytest.raises((ConfigError, ValueError)):
            SamplerConfig(**kwargs)

    def test_mode_from_string(self):
        assert SamplerConfig(1, mode="FIXED_PURITY_SLICE").mode is SamplerMode.FIXED_PURITY_SLICE


class TestPhysicalMask:
    def test_examples(self):
        rows = np.array([[1.0, 1.0, 0.0, 0.0], [2.0, 2.0, 1.0, -1.0], [0.5, 0.5, 0.0, 0.0],
                         [2.0, 2.0, 2.0, 2.0], [3.0, 3.0, 2.9, -2.9]])
        assert physical_mask(rows).tolist() == [True, True, False, False, False]

    def test_matches_scalar_test(self, rng):
        a, b = rng.uniform(1, 4, (2, 2000))
        cmax = np.sqrt(a * b)
        rows = np.column_stack([a, b, rng.uniform(-1, 1, 2000) * cmax,
                                rng.uniform(-1, 1, 2000) * cmax])
        mask = physical_mask(rows)
        for row, ok in zip(rows, mask):
            sf = StandardForm(*row)
            margin = abs(np.linalg.eigvalsh(sf.matrix() + 1j * _omega())[0])
            if margin > 1e-8:
                assert ok == is_physical(sf.matrix())
        assert 0 < mask.sum() < len(mask)


def _omega():
    w = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(2), w)


class TestUniformSampler:
    def test_deterministic(self):
        cfg = SamplerConfig(500, seed=42)
        assert np.array_equal(sample_standard_forms(cfg), sample_standard_forms(cfg))
        assert not np.array_equal(sample_standard_forms(cfg),
                                  sample_standard_forms(SamplerConfig(500, seed=43)))

    def test_single_state_reproducible(self):
        cfg = SamplerConfig(1, seed=5)
        assert np.array_equal(next(sample_states(cfg)), next(sample_states(cfg)))

    def test_prefix_stable(self):
        # a shorter run yields the head of a longer one
        short = sample_standard_forms(SamplerConfig(100, seed=9))
        long = sample_standard_forms(SamplerConfig(5000, seed=9))
        assert np.array_equal(short, long[:100])

    def test_all_physical_within_box(self):
        params = sample_standard_forms(SamplerConfig(10000, a_max=4.0, seed=1))
        assert params.shape == (10000, 4)
        a, b, cp, cm = params.T
        assert np.all((a >= 1) & (a <= 4) & (b >= 1) & (b <= 4))
        assert np.all(np.abs(cp) <= np.sqrt(a * b)) and np.all(np.abs(cm) <= np.sqrt(a * b))
        assert all(is_physical(StandardForm(*row).matrix()) for row in params)

    def test_scrambled_states_keep_invariants(self):
        cfg = SamplerConfig(200, seed=3)
        for plain, mixed in zip(sample_states(cfg), sample_states(cfg, scramble=True)):
            assert np.allclose(to_standard_form(mixed).astuple(),
                               to_standard_form(plain).astuple(), rtol=1e-7, atol=1e-7)
        assert sample_matrices(SamplerConfig(5, seed=3)).shape == (5, 4, 4)

    @pytest.mark.parametrize("p", [VON_NEUMANN, 1.5, 3.0])
    def test_entropy_envelope(self, p):
        for sigma in sample_states(SamplerConfig(10000, seed=11)):
            mu = coords_from_state(sigma).mu
            b = s_p_bounds_at_purity(mu, p)
            s = s_p(sigma, p)
            assert b.s_min - 1e-9 <= s <= b.s_max + 1e-9

    def test_low_acceptance_is_reported(self, monkeypatch):
        monkeypatch.setattr(sampling, "WINDOW", 4096)
        monkeypatch.setattr(sampling, "physical_mask", lambda params: np.zeros(len(params), bool))
        with pytest.raises(ConfigError, match="acceptance"):
            sample_standard_forms(SamplerConfig(3, seed=0))


class TestSliceSampler:
    @pytest.mark.parametrize("mu", [0.2, 0.5, 0.9])
    def test_fixed_purity(self, mu):
        params = sample_standard_forms(SamplerConfig(300, seed=2, mode="FIXED_PURITY_SLICE", mu=mu))
        for row in params:
            c = coords_from_state(StandardForm(*row))
            assert c.mu == pytest.approx(mu, rel=1e-8)
            assert c.mu1 * c.mu2 <= mu * (1 + 1e-9) <= mu_max(c.mu1, c.mu2) * (1 + 2e-9)

    def test_deterministic(self):
        cfg = SamplerConfig(50, seed=8, mode="FIXED_PURITY_SLICE", mu=0.4)
        assert np.array_equal(sample_standard_forms(cfg), sample_standard_forms(cfg))


class TestRandomCoordinates:
    def test_valid(self, rng):
        for c in random_coordinates(rng, 2000, mu_floor=0.05):
            assert c.mu1 * c.mu2 <= c.mu <= mu_max(c.mu1, c.mu2)
            lo, hi = delta_bounds(c.mu1, c.mu2, c.mu)
            assert lo <= c.delta <= hi
