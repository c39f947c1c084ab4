import math

import numpy as np
import pytest

from wdiv.arith import make_phase
from wdiv.errors import OutOfRangeError
from wdiv.meansquare import (
    empirical_mean_square,
    mean_square_report,
    theorem2_main,
    theorem4_main,
)
from wdiv.voronoi import main_term_params, riesz_main_term


class TestEmpirical:
    def test_no_support_matches_adaptive_quadrature(self, table10k):
        # below x = 4 the direct sum vanishes: the integrand is |main(x)|^2
        from scipy.integrate import quad

        phase = make_phase(1, 1)
        params = main_term_params(phase, 0)
        val = empirical_mean_square(3.99, phase, 0, table10k, params)
        ref, err = quad(lambda x: abs(riesz_main_term(x, params)) ** 2,
                        1.0, 3.99, limit=200)
        assert val == pytest.approx(ref, rel=1e-8)
        assert err < 1e-8 * ref

    def test_additivity(self, table10k):
        phase = make_phase(1, 2)
        params = main_term_params(phase, 0)
        whole = empirical_mean_square(800.0, phase, 0, table10k, params)
        first = empirical_mean_square(357.25, phase, 0, table10k, params)
        slice_ = empirical_mean_square(800.0, phase, 0, table10k, params,
                                       x_from=357.25)
        assert whole - first == pytest.approx(slice_, rel=1e-9)

    def test_monotone_in_x(self, table10k):
        phase = make_phase(1, 3)
        params = main_term_params(phase, 0)
        vals = [empirical_mean_square(x, phase, 0, table10k, params)
                for x in (200.0, 500.0, 1000.0, 5000.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_node_doubling(self, table10k):
        phase = make_phase(1, 1)
        params = main_term_params(phase, 0)
        v4 = empirical_mean_square(1000.0, phase, 0, table10k, params,
                                   gl_nodes=4)
        v8 = empirical_mean_square(1000.0, phase, 0, table10k, params,
                                   gl_nodes=8)
        assert abs(v4 - v8) <= 1e-6 * abs(v8)

    def test_out_of_range(self, table10k):
        with pytest.raises(OutOfRangeError):
            empirical_mean_square(20000.0, make_phase(1, 1), 0, table10k)


class TestTheoremMains:
    def test_single_term_bracket_arithmetic(self, table10k):
        # cutoff = 1, X = e: only n = 1 contributes (f1 = f2 = 0, d = 1) and
        # the bracket reduces to the inner sum over (-2/3)^i 4!/(4-i)!
        import dataclasses

        tiny = dataclasses.replace(table10k, xmax=1, d=table10k.d[:2],
                                   D1=table10k.D1[:2], d01=table10k.d01[:2])
        val, _ = theorem2_main(math.e, 1, tiny, cutoff=1)
        inner = sum((-2 / 3) ** i * math.factorial(4)
                    / math.factorial(4 - i) for i in range(5))
        ref = (1 / (6 * math.pi**2)) * math.e**1.5 * inner / 16.0
        assert val == pytest.approx(ref, rel=1e-13)

    def test_theorem4_single_term_prefactor(self, table10k):
        import dataclasses

        tiny = dataclasses.replace(table10k, xmax=1, d=table10k.d[:2],
                                   D1=table10k.D1[:2], d01=table10k.d01[:2])
        a = 1
        p = a + 1.5
        val, _ = theorem4_main(math.e, 1, a, tiny, cutoff=1)
        inner = sum((-1 / p) ** i * math.factorial(4)
                    / math.factorial(4 - i) for i in range(5))
        ref = (1 / (2 * math.pi * p)) * (1 / (2 * math.pi)) ** 3 \
            * math.e**p * inner / 16.0
        assert val == pytest.approx(ref, rel=1e-13)

    def test_k_scaling_linear(self, table10k):
        v1, _ = theorem2_main(5000.0, 1, table10k)
        v3, _ = theorem2_main(5000.0, 3, table10k)
        assert v3 == pytest.approx(3 * v1, rel=1e-13)

    def test_tail_reported_and_shrinking(self, table10k):
        _, t_small = theorem2_main(1e4, 1, table10k, cutoff=1000)
        v, t_big = theorem2_main(1e4, 1, table10k, cutoff=10_000)
        assert t_small.tail_bound > t_big.tail_bound > 0
        assert t_big.tail_bound < 0.25 * v  # informative at this cutoff

    def test_theorem4_tail_small(self, table10k):
        v, tail = theorem4_main(1e3, 1, 1, table10k, cutoff=10_000)
        assert tail.tail_bound < 1e-6 * v


class TestReports:
    def test_band_a0(self, table10k):
        rep = mean_square_report(5000.0, make_phase(1, 1), 0, table10k)
        assert 0.7 <= rep.ratio <= 1.3
        assert rep.empirical > 0 and rep.theorem_main > 0

    def test_band_a1(self, table10k):
        rep = mean_square_report(5000.0, make_phase(1, 1), 1, table10k)
        assert 0.7 <= rep.ratio <= 1.3

    def test_ratio_definition(self, table10k):
        rep = mean_square_report(2000.0, make_phase(1, 2), 0, table10k)
        assert rep.ratio == pytest.approx(rep.empirical / rep.theorem_main)
