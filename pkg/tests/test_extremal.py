import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import optimize

from cvextremal.entanglement import classify_ppt, log_negativity, ppt_spectrum_numeric
from cvextremal.entropy import VON_NEUMANN, entropy_from_spectrum, s_p, s_p_from_local_purity
from cvextremal.errors import DomainError
from cvextremal.extremal import (average_log_negativity, classify_entropies_symmetric,
                                 en_extremal_at_entropy, en_extremal_p2, glems, gmemms, gmems,
                                 gmems_purity_at_entropy, gmems_squeezed_thermal, relative_error)
from cvextremal.invariants import (InvariantCoordinates, SeparabilityClass, classify_purities,
                                   coords_from_state, delta_bounds, mu_entangled, mu_max,
                                   mu_separable, nu_tilde_from_coords)
from cvextremal.models import fit_squeezed_thermal, squeezed_thermal
from cvextremal.nodal import nodal_entropy
from cvextremal.sampling import SamplerConfig, sample_matrices
from cvextremal.symplectic import invariants, symplectic_spectrum
from strategies import purity_triples


def dense_delta_extremes(mu1, mu2, mu, n=4001):
    """``(max, min)`` of ``E_N`` over a uniform ``Delta`` grid at fixed purities."""
    lo, hi = delta_bounds(mu1, mu2, mu)
    nus = [nu_tilde_from_coords(InvariantCoordinates(mu1, mu2, mu, d))
           for d in np.linspace(lo, hi, n)]
    en = np.maximum(0.0, -np.log(nus))
    return float(en.max()), float(en.min())


def entropy_sweep_extremes(mu1, mu2, s_target, p, n=3000):
    """``(max, min)`` of ``E_N`` over all states with marginals ``mu1, mu2`` and ``S_p = s_target``.

    Sweeps ``nu-`` and solves ``S_p(nu-, nu+) = s_target`` for ``nu+``; each spectrum
    fixes ``mu = 1/(nu- nu+)`` and ``Delta = nu-^2 + nu+^2``, which are kept
    when they respect the physical bounds for the marginals.
    """
    def nu_plus(nm):
        f = lambda x: entropy_from_spectrum((nm, x), p) - s_target
        if f(nm) > 0:
            return None
        hi = 2.0 * nm
        while f(hi) < 0:
            hi *= 2.0
        return optimize.brentq(f, nm, hi, xtol=1e-14)

    nm_max = optimize.brentq(lambda x: entropy_from_spectrum((x, x), p) - s_target,
                             1.0, 1e3, xtol=1e-14)
    found = []
    for nm in np.linspace(1.0, nm_max, n):
        npl = nu_plus(nm)
        if npl is None:
            continue
        mu, delta = 1.0 / (nm * npl), nm * nm + npl * npl
        if not mu1 * mu2 <= mu <= mu_max(mu1, mu2):
            continue
        lo, hi = delta_bounds(mu1, mu2, mu)
        if lo - 1e-9 <= delta <= hi + 1e-9:
            c = InvariantCoordinates(mu1, mu2, mu, min(max(delta, lo), hi))
            found.append(max(0.0, -math.log(nu_tilde_from_coords(c))))
    return max(found), min(found)


class TestGMEMS:
    def test_examples(self):
        assert gmems(1, 1, 1).astuple() == pytest.approx((1, 1, 0, 0))
        sf = gmems(0.5, 0.5, 0.8)
        assert sf.astuple() == pytest.approx((2, 2, math.sqrt(2.75), -math.sqrt(2.75)))

    @given(purity_triples())
    def test_saturates_lower_delta_bound(self, t):
        lo, _ = delta_bounds(*t)
        assert invariants(gmems(*t).matrix())[4] == pytest.approx(lo, rel=1e-10)

    @given(purity_triples())
    def test_squeezed_thermal_family(self, t):
        nu1, nu2, r = gmems_squeezed_thermal(*t)
        target = gmems(*t)
        sf = squeezed_thermal(nu1, nu2, r)
        assert sf.astuple() == pytest.approx(target.astuple(), rel=1e-8, abs=1e-8)
        assert sorted((nu1, nu2)) == pytest.approx(symplectic_spectrum(target.matrix()), rel=1e-8)
        _, residual = fit_squeezed_thermal(target)
        assert residual < 1e-7

    @given(purity_triples())
    def test_separable_below_threshold(self, t):
        mu1, mu2, _ = t
        mu = mu1 * mu2 + 0.999 * (mu_separable(mu1, mu2) - mu1 * mu2)
        assert ppt_spectrum_numeric(gmems(mu1, mu2, mu))[0] >= 1.0 - 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            gmems(0.5, 0.5, 0.2)


class TestGLEMS:
    def test_pure(self):
        assert glems(1, 1, 1).astuple() == pytest.approx((1, 1, 0, 0), abs=1e-12)

    def test_example_spectrum(self):
        assert symplectic_spectrum(glems(0.5, 0.5, 0.8).matrix()) == pytest.approx((1, 1.25))

    @given(purity_triples())
    def test_minimum_uncertainty(self, t):
        mu1, mu2, mu = t
        if mu <= mu_separable(mu1, mu2) * (1 + 1e-9):
            with pytest.raises(DomainError):
                glems(*t)
            return
        sigma = glems(*t).matrix()
        nu = symplectic_spectrum(sigma)
        assert nu[0] == pytest.approx(1.0, abs=1e-9)
        assert nu[1] == pytest.approx(1.0 / mu, rel=1e-9)
        assert invariants(sigma)[4] == pytest.approx(1 + 1 / mu ** 2, rel=1e-9)

    @given(purity_triples())
    def test_separability_threshold(self, t):
        mu1, mu2, mu = t
        if mu <= mu_separable(mu1, mu2) * (1 + 1e-6):
            return
        edge = mu_entangled(mu1, mu2)
        if abs(mu - edge) < 1e-6:
            return
        assert classify_ppt(glems(*t).matrix()).separable == (mu <= edge)

    @pytest.mark.parametrize("p", [VON_NEUMANN, 1.5, 3.0, 4.0])
    def test_global_entropy_extremality(self, p):
        sigmas = sample_matrices(SamplerConfig(500, a_max=4.0, seed=21), scramble=False)
        for s in sigmas:
            mu = 1.0 / math.sqrt(np.linalg.det(s))
            ref = entropy_from_spectrum((1.0, 1.0 / mu), p)
            if p < 2.0:
                assert s_p(s, p) >= ref - 1e-10
            else:
                assert s_p(s, p) <= ref + 1e-10


class TestGMEMMS:
    def test_squeezed_vacuum(self):
        mu = 1 / math.cosh(2.0)
        sf = gmemms(mu, mu)
        assert log_negativity(sf) == pytest.approx(2.0, rel=1e-10)
        assert sf.c_plus == pytest.approx(math.sinh(2.0))

    def test_asymmetric_purity(self):
        sf = gmemms(0.6, 0.4)
        assert 1 / math.sqrt(sf.det_sigma) == pytest.approx(6 / 11)

    @given(st.floats(0.05, 0.99), st.floats(0.05, 0.99))
    def test_families_meet(self, mu1, mu2):
        if abs(mu1 - mu2) < 1e-6:
            return
        mu = mu_max(mu1, mu2)
        assert gmems(mu1, mu2, mu).astuple() == pytest.approx(glems(mu1, mu2, mu).astuple(),
                                                             rel=1e-6, abs=1e-6)
        assert gmemms(mu1, mu2).astuple() == pytest.approx(gmems(mu1, mu2, mu).astuple())

    def test_decreasing_with_purity_gap(self):
        prod = 0.25
        ratios = np.linspace(1.0, 3.5, 30)
        en = [log_negativity(gmemms(math.sqrt(prod * q), math.sqrt(prod / q))) for q in ratios]
        assert np.all(np.diff(en) < 0)


class TestExtremalP2:
    def test_examples(self):
        en_max, en_min = en_extremal_p2(0.5, 0.5, 0.8)
        assert en_max == pytest.approx(1.0739, abs=1e-4)
        assert en_max == pytest.approx(log_negativity(gmems(0.5, 0.5, 0.8)), abs=1e-9)
        assert en_extremal_p2(1, 1, 1) == (0.0, 0.0)
        en_max, en_min = en_extremal_p2(0.5, 0.5, 0.36)
        assert en_min == 0.0 and en_max > 0.0

    def test_separable_region(self):
        assert en_extremal_p2(0.5, 0.5, 0.3) == (0.0, 0.0)

    @given(purity_triples())
    def test_matches_extremal_states(self, t):
        mu1, mu2, mu = t
        en_max, en_min = en_extremal_p2(*t)
        if mu <= mu_separable(mu1, mu2):
            return
        assert en_max == pytest.approx(log_negativity(gmems(*t)), abs=1e-9)
        assert en_min == pytest.approx(log_negativity(glems(*t)), abs=1e-9)

    @given(purity_triples())
    def test_dense_delta_oracle(self, t):
        en_max, en_min = en_extremal_p2(*t)
        gmax, gmin = dense_delta_extremes(*t, n=201)
        assert en_max == pytest.approx(gmax, abs=1e-7)
        assert en_min == pytest.approx(gmin, abs=1e-7)

    def test_sandwich(self):
        sigmas = sample_matrices(SamplerConfig(10000, a_max=4.0, seed=9))
        entangled = 0
        for s in sigmas:
            rep = classify_ppt(s)
            if rep.separable:
                continue
            entangled += 1
            c = coords_from_state(s)
            mu = min(c.mu, mu_max(c.mu1, c.mu2))
            en_max, en_min = en_extremal_p2(c.mu1, c.mu2, mu)
            assert en_min - 1e-8 <= rep.log_negativity <= en_max + 1e-8
        assert entangled > 1000


class TestAverageAndError:
    def test_average(self):
        assert average_log_negativity(2, 2) == 2
        assert average_log_negativity(1.0739, 0.4) == pytest.approx(0.73695)
        assert average_log_negativity(0, 0) == 0

    def test_relative_error(self):
        assert relative_error(2, 2) == 0
        assert relative_error(0.3, 0.1) == pytest.approx(0.5)
        with pytest.raises(DomainError):
            relative_error(0, 0)

    def test_error_shrinks_with_entanglement(self):
        # symmetric slices at fixed global purity; entanglement grows as the marginals mix
        for mu in (0.3, 0.5, 0.8):
            lo = max(math.sqrt(mu), 1e-3)
            mus = np.linspace(0.999 * lo, 0.05, 200)
            errs = []
            for m in mus:
                if mu <= mu_entangled(m, m):
                    continue
                errs.append(relative_error(*en_extremal_p2(m, m, mu)))
            assert len(errs) > 20
            assert np.all(np.diff(errs) < 0)

    def test_symmetric_error_below_five_percent(self):
        # on the S_L = 1/2 slice, every symmetric state with S_L < S_Li
        mu = 0.5
        for m in np.linspace(0.01, 0.5 - 1e-9, 400):
            assert relative_error(*en_extremal_p2(m, m, mu)) < 0.05

    def test_five_percent_is_slice_specific(self):
        # strongly mixed slices exceed 5 % right above S_L = S_Li
        m = 0.0978
        assert 1 - 0.1 < 1 - m
        assert relative_error(*en_extremal_p2(m, m, 0.1)) > 0.05


class TestAtEntropy:
    @given(purity_triples(floor=0.1))
    def test_p2_reproduces_closed_form(self, t):
        mu1, mu2, mu = t
        pair = en_extremal_at_entropy(1 - mu1, 1 - mu2, 1 - mu, 2.0)
        en_max, en_min = en_extremal_p2(mu1, mu2, mu)
        assert pair.en_max == pytest.approx(en_max, abs=1e-8)
        assert pair.en_min == pytest.approx(en_min, abs=1e-8)
        assert not pair.inverted

    @pytest.mark.parametrize("p", [VON_NEUMANN, 1.5, 2.0, 3.0])
    def test_pure_global_state(self, p):
        s_i = s_p_from_local_purity(0.4, p)
        pair = en_extremal_at_entropy(s_i, s_i, 0.0, p)
        assert pair.en_max == pytest.approx(pair.en_min, abs=1e-7)
        assert pair.en_max == pytest.approx(log_negativity(gmemms(0.4, 0.4)), abs=1e-7)

    @pytest.mark.parametrize("p", [VON_NEUMANN, 1.5, 2.5, 3.0, 4.0])
    @pytest.mark.parametrize("frac", [0.3, 0.7])
    def test_sweep_oracle(self, p, frac):
        mu_i = 0.5
        s_i = s_p_from_local_purity(mu_i, p)
        s_lo = entropy_from_spectrum((1.0, 1.0), p)
        s_hi = entropy_from_spectrum((1 / mu_i, 1 / mu_i), p)
        s = s_lo + frac * (s_hi - s_lo)
        pair = en_extremal_at_entropy(s_i, s_i, s, p)
        gmax, gmin = entropy_sweep_extremes(mu_i, mu_i, s, p)
        assert pair.en_max == pytest.approx(gmax, abs=2e-3)
        assert pair.en_min == pytest.approx(gmin, abs=2e-3)
        assert pair.en_max >= pair.en_min >= 0.0

    def test_inversion_flips_at_nodal_line(self):
        mu_i, p = 0.5, 3.0
        s_i = s_p_from_local_purity(mu_i, p)
        s_k = nodal_entropy(mu_i, mu_i, p)
        below = en_extremal_at_entropy(s_i, s_i, 0.9 * s_k, p)
        above = en_extremal_at_entropy(s_i, s_i, s_k + 0.1 * (0.5 - s_k), p)
        assert below.inverted and not above.inverted
        for s, pair in ((0.9 * s_k, below), (s_k + 0.1 * (0.5 - s_k), above)):
            gmax, gmin = entropy_sweep_extremes(mu_i, mu_i, s, p)
            assert pair.en_max == pytest.approx(gmax, abs=2e-3)
            assert pair.en_min == pytest.approx(gmin, abs=2e-3)
            # the GMEMS branch is the maximum exactly when not inverted
            en_gmems = log_negativity(pair.gmems)
            assert (en_gmems == pytest.approx(pair.en_max)) != pair.inverted
        assert below.nodal_inverted == below.inverted
        assert above.nodal_inverted == above.inverted

    def test_nodal_prediction_lags_crossing_at_p4(self):
        # the branches cross at a slightly larger entropy than the GLEMS-line node
        mu_i, p = 0.5, 4.0
        s_i = s_p_from_local_purity(mu_i, p)
        s_k = nodal_entropy(mu_i, mu_i, p)

        def gap(s):
            pair = en_extremal_at_entropy(s_i, s_i, s, p)
            return log_negativity(pair.gmems) - log_negativity(pair.glems)

        s_eq = optimize.brentq(gap, 0.9 * s_k, 1.03 * s_k, xtol=1e-13)
        assert s_eq == pytest.approx(0.27868, abs=1e-5)
        assert s_eq - s_k > 2e-3
        mid = en_extremal_at_entropy(s_i, s_i, 0.5 * (s_k + s_eq), p)
        assert mid.inverted and not mid.nodal_inverted
        assert mid.en_max >= mid.en_min
        # in the band the maximum lies strictly between the two families
        gmax, _ = entropy_sweep_extremes(mu_i, mu_i, 0.5 * (s_k + s_eq), p, n=20000)
        assert gmax > mid.en_max + 5e-5

    @given(st.floats(1.05, 2.0), purity_triples(floor=0.1))
    def test_never_inverted_up_to_two(self, p, t):
        mu1, mu2, mu = t
        s = entropy_from_spectrum((1.0, 1.0 / mu), p)  # a GLEMS-compatible entropy
        try:
            pair = en_extremal_at_entropy(s_p_from_local_purity(mu1, p),
                                          s_p_from_local_purity(mu2, p), s, p)
        except DomainError:
            return
        assert not pair.inverted
        assert pair.en_max >= pair.en_min >= 0.0

    def test_gmems_purity_inversion(self):
        mu = gmems_purity_at_entropy(0.5, 0.4, s_p(gmems(0.5, 0.4, 0.3).matrix(), 3.0), 3.0)
        assert mu == pytest.approx(0.3, rel=1e-9)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            en_extremal_at_entropy(0.1, 0.1, 0.9, 2.0)

    def test_asdict(self):
        d = en_extremal_at_entropy(0.5, 0.5, 0.2, 2.0).asdict()
        assert d["inverted"] is False and len(d["gmems"]) == 4


class TestSymmetricEntropyClasses:
    def test_matches_purity_table_at_p2(self):
        for m in np.linspace(0.1, 0.95, 12):
            for mu in np.linspace(m * m * 1.001, 0.999, 25):
                expected = classify_purities(m, m, mu)
                got = classify_entropies_symmetric(1 - m, 1 - mu, 2.0)
                edge = min(abs(mu - mu_separable(m, m)), abs(mu - mu_entangled(m, m)))
                if edge > 1e-9:
                    assert got is expected

    def test_sentinel_rejected(self):
        with pytest.raises(DomainError):
            classify_entropies_symmetric(0.5, 0.5, VON_NEUMANN)

    def test_rows(self):
        assert classify_entropies_symmetric(0.5, -0.1, 2.0) is SeparabilityClass.UNPHYSICAL_HIGH
        assert classify_entropies_symmetric(0.5, 0.9, 2.0) is SeparabilityClass.UNPHYSICAL_LOW
