"""Pair statistics tests: brute-force equivalence, windows, GUE, asymptotics."""

import math

import numpy as np
import pytest

import oracles
from zetalab.errors import CoverageError, DomainError, RangeError
from zetalab.pair_correlation import (FGrid, f_alpha, f_grid,
                                      f_window_integral, gue_integral,
                                      montgomery_asymptotic, pair_count,
                                      pair_weight)


def brute_f(ordinates, t, alpha):
    log_t = math.log(t)
    acc = 0.0
    for gi in ordinates:
        for gj in ordinates:
            d = gi - gj
            acc += math.cos(alpha * log_t * d) * 4.0 / (4.0 + d * d)
    return 2.0 * math.pi / (t * log_t) * acc


class TestFAlpha:
    def test_brute_force_all_pairs_at_100(self, zero_source):
        tab = zero_source.table(100.0)
        assert len(tab) == 29
        for alpha in (0.0, 0.35, 1.5):
            assert f_alpha(tab, 100.0, alpha) == pytest.approx(
                brute_f(tab.ordinates, 100.0, alpha), rel=1e-12)

    def test_even_in_alpha(self, zero_source):
        tab = zero_source.table(100.0)
        for alpha in (0.2, 0.9, 3.7):
            assert f_alpha(tab, 100.0, alpha) == f_alpha(tab, 100.0, -alpha)

    def test_nonnegative_sampled(self, zero_source):
        tab = zero_source.table(1000.0)
        for alpha in np.linspace(0.0, 6.0, 61):
            assert f_alpha(tab, 1000.0, float(alpha)) >= -1e-9

    def test_coverage_and_domain(self, zero_source):
        tab = zero_source.table(100.0)
        with pytest.raises(CoverageError):
            f_alpha(tab, 200.0, 1.0)
        with pytest.raises(DomainError):
            f_alpha(tab, 30.0, 1.0)

    def test_diagonal_dominance_logged(self, zero_source):
        """Large-alpha behavior: off-diagonal decoheres toward the diagonal.

        Exploratory (logged, not asserted): the pair sum should sit within
        a factor of a few of the pure diagonal value.
        """
        tab = zero_source.table(1000.0)
        diag = 2 * math.pi * len(tab) / (1000.0 * math.log(1000.0))
        for alpha in (6.0, 8.0):
            val = f_alpha(tab, 1000.0, alpha)
            print(f"\nF({alpha}, 1000) = {val:.4f}; diagonal alone = {diag:.4f}")


class TestFGrid:
    def test_matches_pointwise(self, zero_source):
        tab = zero_source.table(100.0)
        grid = f_grid(tab, 100.0, 1.0, 0.5)
        assert grid.alphas.tolist() == [0.0, 0.5, 1.0]
        for a, v in zip(grid.alphas, grid.values):
            assert v == pytest.approx(f_alpha(tab, 100.0, float(a)), rel=1e-12)

    def test_degenerate_grid(self, zero_source):
        tab = zero_source.table(100.0)
        grid = f_grid(tab, 100.0, 0.0, 0.5)
        assert grid.alphas.tolist() == [0.0]

    def test_validation(self, zero_source):
        tab = zero_source.table(100.0)
        with pytest.raises(DomainError):
            f_grid(tab, 100.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            f_grid(tab, 100.0, 9.0, 0.5)
        with pytest.raises(DomainError):
            FGrid(100.0, np.array([0.0, 1.0]), np.array([1.0, -1.0]))

    def test_threads_do_not_change_values(self, zero_source):
        tab = zero_source.table(100.0)
        serial = f_grid(tab, 100.0, 2.0, 0.05, threads=1)
        threaded = f_grid(tab, 100.0, 2.0, 0.05, threads=4)
        assert np.array_equal(serial.values, threaded.values)


class TestWindowIntegral:
    def test_exact_on_constant(self):
        alphas = np.linspace(0.0, 4.0, 401)
        grid = FGrid(100.0, alphas, np.full_like(alphas, 2.5))
        assert f_window_integral(grid, 1.0, 2.0) == pytest.approx(5.0, rel=1e-12)
        assert f_window_integral(grid, 0.37, 1.11) == pytest.approx(2.5 * 1.11, rel=1e-12)

    def test_interpolated_endpoints(self):
        alphas = np.array([0.0, 1.0, 2.0])
        grid = FGrid(100.0, alphas, np.array([0.0, 1.0, 2.0]))  # F = alpha
        assert f_window_integral(grid, 0.5, 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_window_bounds(self):
        grid = FGrid(100.0, np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        with pytest.raises(RangeError):
            f_window_integral(grid, 0.5, 1.0)
        with pytest.raises(RangeError):
            f_window_integral(grid, 0.5, 0.0)

    def test_unit_window_scale_at_2000(self, zero_source):
        """Desk-scale check that the mass in [1, 2] is of unit size."""
        tab = zero_source.table(2000.0)
        grid = f_grid(tab, 2000.0, 3.0, 0.02)
        val = f_window_integral(grid, 1.0, 1.0)
        assert 0.5 <= val <= 1.6
        print(f"\nwindow integral [1,2] at T=2000: {val:.4f}")


class TestPairCount:
    def test_brute_force_at_100(self, zero_source):
        tab = zero_source.table(100.0)
        g = tab.ordinates
        for beta in (0.5, 2.0, 10.0):
            s = 2 * math.pi * beta / math.log(100.0)
            brute = sum(1 for gi in g for gj in g if 0 < gi - gj <= s)
            assert pair_count(tab, 100.0, beta) == brute

    def test_empty_at_tiny_beta(self, zero_source):
        tab = zero_source.table(100.0)
        assert pair_count(tab, 100.0, 1e-12) == 0

    def test_monotone_in_beta(self, zero_source):
        tab = zero_source.table(100.0)
        counts = [pair_count(tab, 100.0, b) for b in np.linspace(0.1, 12.0, 40)]
        assert all(b >= a for a, b in zip(counts, counts[1:]))


class TestGueIntegral:
    def test_zero(self):
        assert gue_integral(0.0) == 0.0

    def test_large_beta_closed_form(self):
        # int_0^50 = 49.5 + tail, tail ~ 1/(2 pi^2 50) ~ 1.01e-3
        assert abs(gue_integral(50.0) - 49.5) < 2.1e-3

    def test_against_simpson_oracle(self):
        for beta in (1.0, 2.5):
            ref = oracles.composite_simpson(
                lambda u: 1.0 - float(np.sinc(u)) ** 2, 0.0, beta, 4000)
            got = gue_integral(beta)
            assert got == pytest.approx(ref, abs=1e-9)
            assert 0.0 < gue_integral(1.0) < 1.0


class TestMontgomeryAsymptotic:
    def test_plug_in_values(self):
        assert montgomery_asymptotic(0.0, 100.0) == pytest.approx(math.log(100.0))
        t = math.exp(10.0)
        assert montgomery_asymptotic(1.0, t) == pytest.approx(
            math.exp(-20.0) * 10.0 + 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            montgomery_asymptotic(1.2, 100.0)
        with pytest.raises(DomainError):
            montgomery_asymptotic(0.5, 10.0)

    def test_tracks_empirical_at_depth(self, zero_source):
        tab = zero_source.table(1000.0)
        emp = f_alpha(tab, 1000.0, 0.5)
        asym = montgomery_asymptotic(0.5, 1000.0)
        assert abs(emp - asym) < 0.3


class TestWeight:
    def test_weight_shape(self):
        assert pair_weight(0.0) == 1.0
        assert pair_weight(2.0) == pytest.approx(0.5)
        u = np.linspace(-10, 10, 21)
        assert np.all(pair_weight(u) > 0)
