"""Density constants, admissibility checks and the main-term integral."""

import math

import pytest

from psl2count import arith, bhc, search

FAMS = {c: search.case_spec(c).polys for c in search.CASE_IDS}


class TestFamily:
    def test_value_and_values(self):
        fam = bhc.family((5, 12), (1, 3), (1, 2))
        assert fam.value(0, 2) == 29
        assert fam.values(2) == (29, 7, 5)
        assert fam.m == 3
        assert fam.degrees() == (1, 1, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            bhc.family()
        with pytest.raises(ValueError):
            bhc.family((0, 0))  # zero polynomial
        with pytest.raises(ValueError):
            bhc.family((0, 2**70))  # coefficient overflow

    def test_cubics_refused_by_admissibility_check(self):
        with pytest.raises(ValueError):
            bhc.check_sh(bhc.family((1, 1, 1, 1)))


class TestAdmissibility:
    def test_consecutive_integers_fail_at_two(self):
        rep = bhc.check_sh(bhc.family((0, 1), (1, 1)))
        assert not rep.ok
        assert not rep.no_fixed_prime_divisor
        assert rep.failing_prime == 2

    def test_twin_pattern_passes(self):
        assert bhc.check_sh(bhc.family((0, 1), (2, 1))).ok

    def test_case_families_pass(self):
        for case_id, fam in FAMS.items():
            rep = bhc.check_sh(fam)
            assert rep.ok, (case_id, rep)

    def test_quadratic_handling(self):
        assert bhc.check_sh(bhc.family((1, 0, 1))).ok           # t^2 + 1
        rep = bhc.check_sh(bhc.family((2, 1, 1)))               # t^2 + t + 2, even always
        assert not rep.ok and rep.failing_prime == 2
        rep = bhc.check_sh(bhc.family((-1, 0, 1)))              # t^2 - 1 splits
        assert not rep.ok and not rep.all_irreducible

    def test_constant_polynomial_rejected(self):
        rep = bhc.check_sh(bhc.family((7,)))
        assert not rep.ok


class TestRootCounting:
    def test_examples(self):
        fam = FAMS["a"]
        assert bhc.omega_roots(fam, 5) == 3
        assert bhc.omega_roots(fam, 2) == 1
        assert bhc.omega_roots(fam, 13) == 3

    def test_brute_matches_formula_all_small_primes(self):
        for case_id, fam in FAMS.items():
            for p in arith.primes_in_range(2, 97):
                brute = bhc.omega_roots(fam, p, brute_threshold=10**6)
                formula = bhc.omega_roots(fam, p, brute_threshold=0)
                assert brute == formula, (case_id, p)

    def test_quadratic_roots(self):
        fam = bhc.family((1, 0, 1))  # t^2 + 1
        for p in arith.primes_in_range(3, 200):
            expect = 2 if p % 4 == 1 else 0
            assert bhc.omega_roots(fam, p, brute_threshold=0) == expect, p

    def test_bounded_by_degree_sum(self):
        for fam in FAMS.values():
            for p in arith.primes_in_range(2, 500):
                assert 0 <= bhc.omega_roots(fam, p) <= min(3, p)


class TestConstant:
    def test_identity_family_telescopes(self):
        hc = bhc.hl_constant(bhc.family((0, 1)), 10**4)
        assert abs(hc.value - 1.0) < 1e-12

    def test_twin_constant(self):
        # 2 * prod (1 - 1/(p-1)^2) = 1.32032...
        hc = bhc.hl_constant(bhc.family((0, 1), (2, 1)), 10**6)
        assert abs(hc.value - 1.3203236316) < 2e-6

    def test_case_constants_agree(self):
        ha = bhc.hl_constant(FAMS["a"], 10**5)
        hb = bhc.hl_constant(FAMS["b"], 10**5)
        # both families share the local root counts at every prime
        assert math.isclose(ha.value, hb.value, rel_tol=1e-12)

    def test_stabilisation_within_tail_bound(self):
        fam = FAMS["a"]
        for trunc in (10**4, 10**5, 10**6):
            here = bhc.hl_constant(fam, trunc)
            there = bhc.hl_constant(fam, 2 * trunc)
            assert abs(there.value - here.value) < here.tail_bound, trunc

    def test_per_prime_factor_near_one(self):
        fam = FAMS["a"]
        for p in arith.primes_in_range(101, 1000):
            w = bhc.omega_roots(fam, p)
            factor = (1 - 1 / p) ** (-fam.m) * (1 - w / p)
            assert 0.9 < factor < 1.1, p

    def test_truncation_floor(self):
        with pytest.raises(ValueError):
            bhc.hl_constant(FAMS["a"], 999)

    def test_inadmissible_family_rejected(self):
        with pytest.raises(ValueError):
            bhc.hl_constant(bhc.family((0, 1), (1, 1)), 10**4)


class TestQuadrature:
    def test_polynomial_exact(self):
        val, err = bhc.integrate_adaptive(lambda x: x * x, 0.0, 1.0)
        assert abs(val - 1 / 3) < 1e-12

    def test_reciprocal(self):
        val, _ = bhc.integrate_adaptive(lambda x: 1.0 / x, 1.0, math.e)
        assert abs(val - 1.0) < 1e-10

    def test_wide_logarithmic_range(self):
        val, _ = bhc.integrate_adaptive(lambda x: 1.0 / x, 1.0, 1e9)
        assert abs(val - math.log(1e9)) < 1e-7 * math.log(1e9)

    def test_vectorised_callable(self):
        import numpy as np
        val, _ = bhc.integrate_adaptive(np.sin, 0.0, math.pi)
        assert abs(val - 2.0) < 1e-10


class TestEstimate:
    def test_lower_limits(self):
        assert bhc.integration_lower_limit(FAMS["a"]) == 1
        assert bhc.integration_lower_limit(FAMS["b"]) == 1
        assert bhc.integration_lower_limit(FAMS["c"]) == 1
        assert bhc.integration_lower_limit(FAMS["d"]) == 2

    def test_rejects_x_below_limit(self):
        hc = bhc.hl_constant(FAMS["a"], 10**4)
        with pytest.raises(ValueError):
            bhc.estimate_E(FAMS["a"], 1.0, hc)

    def test_desk_scale_prediction(self):
        # committed brute-force counts at t_max = 10**6
        hc = bhc.hl_constant(FAMS["a"], 10**6)
        est = bhc.estimate_E(FAMS["a"], 10**6, hc)
        assert abs(est.e_value / 2064 - 1) < 0.05
        hcb = bhc.hl_constant(FAMS["b"], 10**6)
        estb = bhc.estimate_E(FAMS["b"], 10**6, hcb)
        assert abs(estb.e_value / 2051 - 1) < 0.05

    def test_large_x_target(self):
        hc = bhc.hl_constant(FAMS["a"], 10**6)
        est = bhc.estimate_E(FAMS["a"], 10**9, hc)
        assert abs(est.e_value - 615580.7) / 615580.7 < 5e-4
        assert est.quadrature_error < 1e-3

    def test_compare_sign(self):
        hc = bhc.hl_constant(FAMS["a"], 10**4)
        est = bhc.estimate_E(FAMS["a"], 10**6, hc)
        assert bhc.compare(2064, est) > 0          # prediction runs high here
        assert bhc.compare(10**9, est) < 0
