#!/usr/bin/env python3
"""
Kernel tests: evaluation, grid values, finite-n moments and their limits
"""
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from errors import GridIndexOutOfRange, InvalidModelParameter, KernelDomainError
from kernels import (
    ConstantKernel,
    ExponentialProductKernel,
    KernelMoments,
    clear_moment_cache,
    eval_kernel,
    expected_degree_spread,
    expected_degrees,
    gamma_limit_exponential,
    gamma_moment,
    get_moments,
    grid_value,
    lambda_limit_exponential,
    lambda_moment,
    row_means,
)


def brute_force_moments(kernel, n, k, l):
    """O(n^2) reference straight from the definitions"""
    f = np.array([[grid_value(kernel, n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    off = ~np.eye(n, dtype=bool)
    fi = (f * off).sum(axis=1) / n
    lam = (fi[:, None] ** k * f ** l)[off].sum() / n ** 2
    gam = (fi[:, None] ** k * fi[None, :] ** k * f ** l)[off].sum() / n ** 2
    return fi, lam, gam


class TestEvaluation:

    def test_exponential_kappa_zero(self):
        assert eval_kernel(ExponentialProductKernel(0.0), 0.3, 0.7) == 1.0

    def test_exponential_value(self):
        assert eval_kernel(ExponentialProductKernel(1.0), 0.5, 0.5) == pytest.approx(0.3678794, abs=1e-7)

    def test_constant_value(self):
        assert eval_kernel(ConstantKernel(0.4), 0.0, 1.0) == 0.4

    def test_symmetry(self):
        k = ExponentialProductKernel(3.0)
        for x, y in [(0.1, 0.9), (0.25, 0.5), (1.0, 0.0)]:
            assert eval_kernel(k, x, y) == eval_kernel(k, y, x)

    def test_domain(self):
        with pytest.raises(KernelDomainError):
            eval_kernel(ConstantKernel(1.0), 1.1, 0.5)
        with pytest.raises(KernelDomainError):
            eval_kernel(ExponentialProductKernel(1.0), 0.5, -0.1)

    def test_parameter_ranges(self):
        with pytest.raises(InvalidModelParameter):
            ConstantKernel(0.0)
        with pytest.raises(InvalidModelParameter):
            ConstantKernel(1.5)
        with pytest.raises(InvalidModelParameter):
            ExponentialProductKernel(-1.0)

    def test_lower_bounds(self):
        assert ConstantKernel(0.3).lower_bound == 0.3
        assert ExponentialProductKernel(4.0).lower_bound == pytest.approx(math.exp(-8.0))

    def test_describe(self):
        assert ExponentialProductKernel(4.0).describe() == "exp(kappa=4)"
        assert ConstantKernel(0.5).describe() == "constant(c=0.5)"


class TestGrid:

    def test_constant_grid(self):
        assert grid_value(ConstantKernel(1.0), 7, 3, 5) == 1.0

    def test_exponential_grid(self):
        k = ExponentialProductKernel(4.0)
        assert grid_value(k, 2, 1, 2) == pytest.approx(0.00247875, rel=1e-5)
        assert grid_value(k, 2, 2, 2) == pytest.approx(0.000335463, rel=1e-5)

    @pytest.mark.parametrize("i, j", [(0, 1), (1, 3), (3, 3)])
    def test_out_of_range(self, i, j):
        with pytest.raises(GridIndexOutOfRange):
            grid_value(ConstantKernel(1.0), 2, i, j)


class TestRowMeans:

    def test_constant_one(self):
        assert np.allclose(row_means(ConstantKernel(1.0), 5), 0.8, rtol=0, atol=1e-15)

    def test_constant_c(self):
        n = 40
        assert np.allclose(row_means(ConstantKernel(0.3), n), 0.3 * (n - 1) / n, rtol=1e-14)

    def test_exponential_riemann(self):
        f = row_means(ExponentialProductKernel(4.0), 1000)
        assert f[0] == pytest.approx(0.245421 * math.exp(-0.004), rel=0.01)

    def test_lower_bound_holds(self):
        k = ExponentialProductKernel(2.0)
        n = 50
        assert np.all(row_means(k, n) >= k.lower_bound * (n - 1) / n)


class TestMoments:

    def setup_method(self):
        clear_moment_cache()

    def test_constant_lambda_01(self):
        for n in (2, 10, 1000):
            assert lambda_moment(ConstantKernel(1.0), n, 0, 1) == pytest.approx((n - 1) / n, rel=1e-15)

    def test_constant_small_cases(self):
        assert lambda_moment(ConstantKernel(1.0), 2, 2, 0) == pytest.approx(1 / 8, rel=1e-15)
        assert gamma_moment(ConstantKernel(1.0), 2, 1, 0) == pytest.approx(1 / 8, rel=1e-15)

    def test_lambda_00(self):
        for kernel in (ConstantKernel(0.2), ExponentialProductKernel(4.0)):
            n = 37
            assert lambda_moment(kernel, n, 0, 0) == (n - 1) / n
            assert gamma_moment(kernel, n, 0, 0) == lambda_moment(kernel, n, 0, 0)

    @pytest.mark.parametrize("c", [1.0, 0.3])
    @pytest.mark.parametrize("k, l", [(0, 1), (2, 0), (0.5, 2), (2.5, 1), (10, 0)])
    def test_constant_closed_form(self, c, k, l):
        n = 250
        expected = c ** (k + l) * (n - 1) ** (k + 1) / n ** (k + 1)
        assert lambda_moment(ConstantKernel(c), n, k, l) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("l", [0, 1, 2, 3])
    def test_gamma_0l_equals_lambda_0l(self, l):
        for kernel in (ConstantKernel(0.7), ExponentialProductKernel(4.0)):
            a = lambda_moment(kernel, 300, 0, l)
            b = gamma_moment(kernel, 300, 0, l)
            assert a == pytest.approx(b, rel=1e-14)

    def test_monotone_in_l(self):
        kernel = ExponentialProductKernel(4.0)
        for k in (0, 0.5, 2):
            values = [lambda_moment(kernel, 200, k, l) for l in range(5)]
            assert all(b <= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("kernel", [ExponentialProductKernel(4.0), ExponentialProductKernel(0.7), ConstantKernel(0.6)])
    @pytest.mark.parametrize("k, l", [(0, 1), (2, 0), (0.5, 1), (1.5, 2)])
    def test_matches_brute_force(self, kernel, k, l):
        n = 40
        fi, lam, gam = brute_force_moments(kernel, n, k, l)
        assert np.allclose(row_means(kernel, n), fi, rtol=1e-12)
        assert lambda_moment(kernel, n, k, l) == pytest.approx(lam, rel=1e-12)
        assert gamma_moment(kernel, n, k, l) == pytest.approx(gam, rel=1e-12)

    def test_in_unit_interval(self):
        kernel = ExponentialProductKernel(25.0)
        for k, l in [(0, 1), (0.5, 0), (10, 0), (2, 3)]:
            assert 0 < lambda_moment(kernel, 500, k, l) <= 1
            assert 0 < gamma_moment(kernel, 500, k, l) <= 1

    def test_exponential_lambda_01_limit(self):
        expected = ((1 - math.exp(-4)) / 4) ** 2
        assert expected == pytest.approx(0.0602313, rel=5e-3)
        assert lambda_moment(ExponentialProductKernel(4.0), 4000, 0, 1) == pytest.approx(expected, rel=0.005)

    def test_limits_converge_at_rate_one_over_n(self):
        kernel = ExponentialProductKernel(4.0)
        for k, l in [(2.0, 0), (0, 1), (0.5, 0)]:
            limit = lambda_limit_exponential(4.0, k, l)
            errors = [abs(lambda_moment(kernel, n, k, l) - limit) for n in (250, 500, 1000, 2000)]
            for a, b in zip(errors, errors[1:]):
                assert b / a == pytest.approx(0.5, abs=0.1)

    def test_gamma_limit(self):
        kernel = ExponentialProductKernel(4.0)
        assert gamma_moment(kernel, 4000, 1.0, 1) == pytest.approx(gamma_limit_exponential(4.0, 1.0, 1), rel=0.01)

    def test_lambda_alpha_0_limit_closed_form(self):
        kappa, alpha = 4.0, 2.5
        m1 = (1 - math.exp(-kappa)) / kappa
        expected = m1 ** alpha * (1 - math.exp(-kappa * alpha)) / (kappa * alpha)
        assert lambda_limit_exponential(kappa, alpha, 0) == pytest.approx(expected, rel=1e-14)

    def test_invalid_orders(self):
        with pytest.raises(InvalidModelParameter):
            lambda_moment(ConstantKernel(1.0), 10, -1, 0)
        with pytest.raises(InvalidModelParameter):
            lambda_moment(ConstantKernel(1.0), 10, 1, 0.5)
        with pytest.raises(InvalidModelParameter):
            KernelMoments(ConstantKernel(1.0), 1)

    def test_cache_is_shared(self):
        kernel = ExponentialProductKernel(4.0)
        assert get_moments(kernel, 100) is get_moments(ExponentialProductKernel(4.0), 100)

    def test_concurrent_queries_agree(self):
        kernel = ExponentialProductKernel(3.0)
        orders = [(k, l) for k in (0, 0.5, 1, 2, 2.5) for l in (0, 1, 2)] * 8
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda kl: lambda_moment(kernel, 500, *kl), orders))
        clear_moment_cache()
        sequential = [lambda_moment(kernel, 500, k, l) for k, l in orders]
        assert results == sequential


class TestExpectedDegrees:

    def test_sum(self):
        kernel = ExponentialProductKernel(4.0)
        n, p = 100, 0.1
        mu = expected_degrees(kernel, n, p)
        f = np.array([[grid_value(kernel, n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
        np.fill_diagonal(f, 0.0)
        assert np.allclose(mu, p * f.sum(axis=1), rtol=1e-12)

    def test_spread(self):
        n = 1000
        kernel = ExponentialProductKernel(4.0)
        mu = expected_degrees(kernel, n, 0.5)
        assert expected_degree_spread(kernel, n) == pytest.approx(mu[0] / mu[-1], rel=1e-12)
        assert expected_degree_spread(kernel, n) == pytest.approx(math.exp(4.0), rel=0.01)
        assert expected_degree_spread(ConstantKernel(0.5), n) == pytest.approx(1.0)
