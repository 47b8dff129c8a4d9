"""Limit formulas, rigorous bounds, and tail estimates."""

import math

import numpy as np
import pytest

from pspinlab import (
    BETA_CRITICAL,
    HamiltonianOperator,
    ModelParameters,
    Phase,
    SpinConfiguration,
    VertexSet,
    apply_boundary,
    cluster_failure_bound,
    critical_field,
    gaussian_min_bound,
    gibbs_lower_bound,
    golden_thompson_upper_bound,
    h_function,
    operator_norm_estimate,
    par_pressure,
    pressure_classical,
    pressure_exact,
    qrem_pressure,
    ray_count_bound,
    ray_covariance_cap,
    ray_covariance_sum,
    ray_event_bound,
    rem_pressure,
    sample_field,
)


class TestRemPressure:
    def test_critical_inverse_temperature(self):
        assert BETA_CRITICAL == pytest.approx(1.1774100225154747, abs=1e-15)

    def test_low_beta_branch(self):
        assert rem_pressure(1.0) == pytest.approx(0.5, abs=1e-15)
        assert rem_pressure(0.0) == 0.0

    def test_frozen_branch(self):
        # beta beta_c - ln 2 above the transition
        assert rem_pressure(2.0) == pytest.approx(1.661672864471004, abs=1e-12)

    def test_branches_join_continuously(self):
        eps = 1e-9
        below = rem_pressure(BETA_CRITICAL - eps)
        above = rem_pressure(BETA_CRITICAL + eps)
        assert abs(below - above) < 1e-8
        assert rem_pressure(BETA_CRITICAL) == pytest.approx(math.log(2.0), abs=1e-14)

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError):
            rem_pressure(-0.5)


class TestParPressure:
    def test_closed_form(self):
        assert par_pressure(0.0) == 0.0
        assert par_pressure(1.6) == pytest.approx(0.9468061526024851, abs=1e-14)

    def test_overflow_safe_tail(self):
        x = 500.0
        assert par_pressure(x) == pytest.approx(x - math.log(2.0), abs=1e-12)
        assert math.isfinite(par_pressure(5000.0))


class TestQremPressure:
    def test_classical_paramagnet_point(self):
        point = qrem_pressure(0.5, 0.0)
        assert point.phase is Phase.REM_PARAMAGNET
        assert point.qrem == pytest.approx(0.125)

    def test_frozen_point(self):
        point = qrem_pressure(2.0, 0.0)
        assert point.phase is Phase.REM_FROZEN
        assert point.qrem == pytest.approx(1.661672864471004)

    def test_quantum_paramagnet_point(self):
        point = qrem_pressure(1.0, 2.0)
        assert point.phase is Phase.QUANTUM_PARAMAGNET
        assert point.qrem == pytest.approx(math.log(math.cosh(2.0)))

    def test_max_is_piecewise(self):
        for beta in (0.3, 0.8, 1.5, 3.0):
            for gamma in (0.0, 0.5, 1.0, 2.0):
                point = qrem_pressure(beta, gamma)
                assert point.qrem == pytest.approx(max(point.rem, point.par))

    def test_tie_resolves_to_paramagnet(self):
        beta = 1.0
        point = qrem_pressure(beta, critical_field(beta))
        assert abs(point.rem - point.par) < 1e-12
        assert point.phase is Phase.QUANTUM_PARAMAGNET


class TestCriticalField:
    def test_defining_identity(self):
        for beta in (0.1, 0.5, 1.0, BETA_CRITICAL, 2.0, 5.0, 50.0):
            gamma_c = critical_field(beta)
            assert par_pressure(beta * gamma_c) == pytest.approx(
                rem_pressure(beta), abs=1e-12
            )

    def test_weak_field_limit(self):
        assert critical_field(0.0) == 1.0
        assert critical_field(1e-8) == pytest.approx(1.0, abs=1e-6)

    def test_strong_field_limit(self):
        assert critical_field(50.0) == pytest.approx(BETA_CRITICAL, abs=1e-2)
        assert critical_field(500.0) == pytest.approx(BETA_CRITICAL, abs=1e-3)

    def test_known_value(self):
        # beta = 1: gamma_c = arccosh(e^{1/2})
        assert critical_field(1.0) == pytest.approx(1.0850385019483877, abs=1e-13)

    def test_monotone_increasing(self):
        betas = np.linspace(0.01, 6.0, 60)
        values = [critical_field(b) for b in betas]
        assert np.all(np.diff(values) > 0)


class TestBoundSandwich:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_lower_and_upper_enclose_exact(self, seed):
        n = 8
        field = sample_field(ModelParameters.sk(n, 3), seed=seed)
        op = HamiltonianOperator(field=field, gamma=1.0)
        for beta, gamma in [(0.5, 0.5), (1.0, 1.0), (2.0, 1.5)]:
            exact = pressure_exact(field, beta=beta, gamma=gamma).value
            lower = gibbs_lower_bound(field, beta=beta, gamma=gamma)
            assert lower <= exact + 1e-10
            for eps in (0.1, 0.3, 0.5):
                low_set = VertexSet.from_mask(field.values < -eps * n)
                norm_a = (
                    operator_norm_estimate(
                        lambda x: apply_boundary(low_set, x), dim=1 << n, seed=1
                    )
                    if low_set.size
                    else 0.0
                )
                upper = golden_thompson_upper_bound(
                    pressure_classical(field, beta=beta).value,
                    eps=eps,
                    norm_a=norm_a,
                    beta=beta,
                    gamma=gamma,
                    n=n,
                )
                assert exact <= upper + 1e-10

    def test_lower_bound_components(self):
        field = sample_field(ModelParameters.sk(6, 2), seed=3)
        beta, gamma = 1.2, 0.8
        classical = pressure_classical(field, beta=beta).value
        gibbs = par_pressure(beta * gamma) - beta * field.values.mean() / 6
        assert gibbs_lower_bound(field, beta=beta, gamma=gamma) == pytest.approx(
            max(classical, gibbs)
        )

    def test_upper_bound_validates(self):
        with pytest.raises(ValueError):
            golden_thompson_upper_bound(0.0, eps=0.0, norm_a=1.0, beta=1.0, gamma=1.0, n=8)
        with pytest.raises(ValueError):
            golden_thompson_upper_bound(0.0, eps=0.5, norm_a=-1.0, beta=1.0, gamma=1.0, n=8)


class TestHFunction:
    def test_values(self):
        assert h_function(0.0) == 1.0
        assert h_function(1.0) == pytest.approx(1 / (1 - math.exp(-1)), abs=1e-15)

    def test_shift_identity(self):
        # h(x) - h(-x) = x
        for x in (0.25, 1.0, 3.0):
            assert h_function(x) - h_function(-x) == pytest.approx(x, abs=1e-12)

    def test_increasing(self):
        xs = np.linspace(-3, 3, 25)
        values = [h_function(x) for x in xs]
        assert np.all(np.diff(values) > 0)


class TestGaussianMinBound:
    def test_formula(self):
        assert gaussian_min_bound(3, 1.0, 1.0) == pytest.approx(-1.5)
        assert gaussian_min_bound(8, 0.5, 4.0) == pytest.approx(-0.25)

    def test_iid_case_dominates_true_probability(self):
        # L iid standard normals: P(all < -delta) = Phi(-delta)^L
        from math import erfc, sqrt

        for count, delta in [(2, 0.5), (4, 1.0), (3, 2.0)]:
            exact = (0.5 * erfc(delta / sqrt(2.0))) ** count
            assert math.log(exact) <= gaussian_min_bound(count, delta, 1.0)

    def test_validates(self):
        with pytest.raises(ValueError):
            gaussian_min_bound(0, 1.0, 1.0)
        with pytest.raises(ValueError):
            gaussian_min_bound(2, -1.0, 1.0)
        with pytest.raises(ValueError):
            gaussian_min_bound(2, 1.0, 0.0)


def _ray(bits_list, n):
    return [SpinConfiguration(bits=b, n=n) for b in bits_list]


class TestRayCovariance:
    def test_hand_computed_row_sums(self):
        # p=1: cov(d) = n - 2d; middle vertex of a 3-ray sees 2 + 4 + 2
        params = ModelParameters.sk(4, 1)
        out = ray_covariance_sum(_ray([0b0000, 0b0001, 0b0011], 4), params)
        assert out.exact == pytest.approx(8.0)

    def test_singleton_row_sum_is_variance(self):
        params = ModelParameters.sk(6, 3)
        out = ray_covariance_sum(_ray([0], 6), params)
        assert out.exact == pytest.approx(6.0)

    def test_cap_formula(self):
        n, p = 10, 3
        assert ray_covariance_cap(n, p) == pytest.approx(
            2 * n / (1 - math.exp(-2 * p / n))
        )

    def test_cap_below_h_form_when_applicable(self):
        # 2p <= n: the cap is (n^2/p) h(2p/n) <= (n^2/p) h(1)
        for n, p in [(8, 2), (10, 5), (12, 3)]:
            assert ray_covariance_cap(n, p) <= h_function(1.0) * n * n / p + 1e-12

    def test_exact_within_bounds(self):
        params = ModelParameters.sk(6, 2)
        out = ray_covariance_sum(_ray([0, 1, 3, 7], 6), params)
        assert out.exact <= out.cap + 1e-12
        assert out.h_bound is not None
        assert out.exact <= out.h_bound + 1e-12

    def test_h_bound_absent_when_p_large(self):
        params = ModelParameters.sk(4, 3)
        out = ray_covariance_sum(_ray([0, 1], 4), params)
        assert out.h_bound is None

    def test_rejects_non_ray(self):
        params = ModelParameters.sk(4, 2)
        with pytest.raises(ValueError):
            ray_covariance_sum(_ray([0, 1, 0], 4), params)

    def test_rejects_non_sk(self):
        with pytest.raises(ValueError):
            ray_covariance_sum(_ray([0], 4), ModelParameters.rem(4))


class TestTailBounds:
    def test_ray_count_bound_formula(self):
        assert ray_count_bound(3, 8) == pytest.approx(8 * math.log(2) + 6 * math.log(8))

    def test_ray_event_bound_combines_parts(self):
        n, p, length, eps = 10, 2, 4, 0.5
        want = ray_count_bound(length, n) + gaussian_min_bound(
            length, eps * n, h_function(1.0) * n * n / p
        )
        assert ray_event_bound(length, n, p, eps) == pytest.approx(want)

    def test_ray_event_bound_gated(self):
        with pytest.raises(ValueError):
            ray_event_bound(3, 10, 6, 0.5)

    def test_cluster_failure_bound_formula(self):
        k, n, p, eps = 4.0, 16, 16, 1.0
        h1 = h_function(1.0)
        want = n * (2 + k * math.log(n) / p - k * eps**2 / (4 * h1)) + (
            k + 1
        ) * math.log(n)
        assert cluster_failure_bound(k, n, p, eps) == pytest.approx(want)

    def test_cluster_failure_bound_allows_p_equal_n(self):
        # the p = n regime the geometry experiments use
        out = cluster_failure_bound(4.0, 16, 16, 1.0)
        assert math.isfinite(out)

    def test_cluster_failure_bound_validates(self):
        with pytest.raises(ValueError):
            cluster_failure_bound(0.5, 8, 2, 0.5)
        with pytest.raises(ValueError):
            cluster_failure_bound(2.0, 8, 2, 0.0)
        with pytest.raises(ValueError):
            cluster_failure_bound(2.0, 1, 1, 0.5)
