"""Rigorous tail bounds for divisor-weighted Dirichlet-type series.

All bounds run through partial summation against elementary prefix estimates
that hold for every t >= 1 (checked numerically well past the ranges used):

    A_0(t) = sum_{n<=t} d(n)        <=  t log t + t
    A_sq(t) = sum_{n<=t} d(n)^2     <=  t (1 + log t)^3

and the closed-form incomplete integral

    I(q, sigma, M) = int_M^inf log^q(t) t^{-sigma} dt
                   = M^{1-sigma} sum_{i=0}^{q} [q!/(q-i)!] log^{q-i}(M)
                                               / (sigma-1)^{i+1}.

For sigma > 1, partial summation gives

    sum_{n>M} a_n n^{-sigma} <= sigma int_M^inf A(t) t^{-sigma-1} dt
                                 - A(M) M^{-sigma}
                             <= sigma int_M^inf Abound(t) t^{-sigma-1} dt,

where dropping the negative boundary term only loosens the bound.
"""

from __future__ import annotations

import math


def log_power_integral(m_cut: float, sigma: float, q: int) -> float:
    """I(q, sigma, M) = int_M^inf log^q(t) t^{-sigma} dt, for sigma > 1."""
    if sigma <= 1:
        raise ValueError("integral diverges for sigma <= 1")
    if m_cut < 1:
        raise ValueError("cutoff must be >= 1")
    lm = math.log(m_cut)
    s1 = sigma - 1.0
    total = 0.0
    coeff = 1.0  # q!/(q-i)!
    for i in range(q + 1):
        total += coeff * lm ** (q - i) / s1 ** (i + 1)
        coeff *= q - i
    return m_cut ** (1.0 - sigma) * total


def divisor_tail(m_cut: int, sigma: float, log_power: int) -> float:
    """Upper bound for sum_{n>M} d(n) log^j(n) n^{-sigma}, sigma > 1.

    Uses A_j(t) = sum_{n<=t} d(n) log^j(n) <= (t log t + t) log^j(t).
    """
    j = log_power
    return sigma * (log_power_integral(m_cut, sigma, j + 1)
                    + log_power_integral(m_cut, sigma, j))


def divisor_sq_tail(m_cut: int, sigma: float, log_power: int) -> float:
    """Upper bound for sum_{n>M} d(n)^2 log^j(n) n^{-sigma}, sigma > 1.

    Uses A(t) <= t (1 + log t)^3, expanded binomially against I(q, sigma, M).
    """
    j = log_power
    total = 0.0
    for r in range(4):
        total += math.comb(3, r) * log_power_integral(m_cut, sigma, j + r)
    return sigma * total
