import math

import numpy as np
import pytest

from wdiv.tails import divisor_sq_tail, divisor_tail, log_power_integral


def test_log_power_integral_closed_form():
    # against numerical quadrature
    from scipy.integrate import quad

    for sigma, q, m_cut in ((1.5, 0, 50.0), (2.5, 2, 20.0), (4.0, 3, 10.0)):
        ref, _ = quad(lambda t: math.log(t) ** q * t**-sigma, m_cut, np.inf,
                      limit=400)
        assert log_power_integral(m_cut, sigma, q) == pytest.approx(ref,
                                                                    rel=1e-9)


def test_prefix_estimates_hold():
    # the two prefix inequalities the tail bounds rest on, swept to 2e6
    big = 2_000_000
    d = np.zeros(big + 1, dtype=np.int64)
    for e in range(1, int(math.isqrt(big)) + 1):
        q_hi = big // e
        d[e * e::e] += 2
        d[e * e] -= 1
    cum_d = np.cumsum(d[1:], dtype=np.float64)
    t = np.arange(1, big + 1, dtype=np.float64)
    assert np.all(cum_d <= t * np.log(t) + t)
    cum_sq = np.cumsum(d[1:].astype(np.float64) ** 2)
    assert np.all(cum_sq <= t * (1 + np.log(t)) ** 3)


def test_divisor_tail_is_upper_bound(table100k):
    # compare against the directly summed tail inside the sieved range
    for sigma, j in ((1.5, 0), (2.0, 1), (2.5, 2)):
        m_cut = 1000
        n = np.arange(m_cut + 1, table100k.xmax + 1, dtype=np.float64)
        actual = float(np.sum(table100k.d[m_cut + 1:] * np.log(n) ** j
                              * n**-sigma))
        bound = divisor_tail(m_cut, sigma, j)
        assert actual <= bound
        assert bound <= 50 * actual  # not absurdly loose


def test_divisor_sq_tail_is_upper_bound(table100k):
    for sigma, j in ((1.5, 0), (2.5, 2)):
        m_cut = 1000
        n = np.arange(m_cut + 1, table100k.xmax + 1, dtype=np.float64)
        actual = float(np.sum(table100k.d[m_cut + 1:].astype(np.float64) ** 2
                              * np.log(n) ** j * n**-sigma))
        bound = divisor_sq_tail(m_cut, sigma, j)
        assert actual <= bound


def test_domain_guards():
    with pytest.raises(ValueError):
        log_power_integral(10.0, 1.0, 2)
    with pytest.raises(ValueError):
        log_power_integral(0.5, 2.0, 1)
