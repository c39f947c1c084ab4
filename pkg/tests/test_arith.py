import io
import math

import numpy as np
import pytest

from oracles import brute_divisor_triplet
from wdiv.arith import (
    make_phase,
    phase_array,
    point_eval,
    riesz_sum,
    sieve_tables,
    twisted_partial_sum,
)
from wdiv.errors import CapExceededError, NonCoprimeError, OutOfRangeError

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


class TestMakePhase:
    def test_untwisted(self):
        p = make_phase(1, 1)
        assert (p.h, p.k, p.h_inv) == (1, 1, 1)

    def test_inverse(self):
        p = make_phase(3, 10)
        assert (p.h, p.k, p.h_inv) == (3, 10, 7)
        assert (p.h * p.h_inv) % p.k == 1

    def test_non_coprime(self):
        with pytest.raises(NonCoprimeError):
            make_phase(4, 10)

    def test_normalization(self):
        assert make_phase(13, 10).h == 3
        assert make_phase(-7, 10).h == 3

    def test_conjugate(self):
        p = make_phase(3, 10)
        assert p.conjugate().h == 7
        assert make_phase(1, 1).conjugate().h == 1

    def test_inverse_invariant_random(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            k = int(rng.integers(1, 200))
            h = int(rng.integers(1, k + 1))
            if math.gcd(h, k) != 1:
                continue
            p = make_phase(h, k)
            assert (p.h * p.h_inv) % p.k == 1 % p.k or p.k == 1


class TestSieve:
    def test_examples(self, table10k):
        t = table10k
        assert t.d[1] == 1 and t.D1[1] == 0.0 and t.d01[1] == 0.0
        assert t.D1[4] == pytest.approx(LOG2**2, rel=1e-14)
        assert t.D1[6] == pytest.approx(2 * LOG2 * LOG3, rel=1e-14)
        assert t.d01[4] == pytest.approx(-3 * LOG2, rel=1e-14)
        assert t.d[12] == 6

    def test_prime_rows(self, table10k):
        for p in (2, 3, 97, 9973):
            assert table10k.D1[p] == 0.0
            assert table10k.d01[p] == pytest.approx(-math.log(p), rel=1e-14)

    def test_sign_invariants(self, table10k):
        assert np.all(table10k.D1[1:] >= 0.0)
        assert np.all(table10k.d01[1:] <= 0.0)

    def test_against_point_eval(self, table10k):
        # module-level slice; the full n <= 1e4 sweep runs in acceptance
        for n in range(1, 2001):
            d, d1, d01 = point_eval(n)
            assert table10k.d[n] == d
            assert abs(table10k.D1[n] - d1) <= 1e-12 * max(1.0, abs(d1))
            assert abs(table10k.d01[n] - d01) <= 1e-12 * max(1.0, abs(d01))

    def test_cap(self):
        with pytest.raises(CapExceededError):
            sieve_tables(101, cap=100)

    def test_csv_dump(self):
        t = sieve_tables(3)
        buf = io.StringIO()
        t.dump_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "n,d,D1,d01"
        assert lines[1] == "1,1,0,0"
        assert len(lines) == 4


class TestPointEval:
    def test_one(self):
        assert point_eval(1) == (1, 0.0, 0.0)

    def test_nine(self):
        d, d1, d01 = point_eval(9)
        assert d == 3
        assert d1 == pytest.approx(LOG3**2, rel=1e-14)
        assert d01 == pytest.approx(-3 * LOG3, rel=1e-14)

    def test_prime(self):
        d, d1, d01 = point_eval(97)
        assert d == 2 and d1 == 0.0
        assert d01 == pytest.approx(-math.log(97), rel=1e-14)

    def test_against_brute(self):
        rng = np.random.default_rng(1)
        ns = list(range(1, 300)) + [int(v) for v in rng.integers(10**6, 10**9, 10)]
        for n in ns:
            d, d1, d01 = point_eval(n)
            bd, bd1, bd01 = brute_divisor_triplet(n) if n < 10**6 else (None,) * 3
            if bd is None:
                continue
            assert d == bd
            assert d1 == pytest.approx(bd1, abs=1e-12, rel=1e-12)
            assert d01 == pytest.approx(bd01, abs=1e-12, rel=1e-12)

    def test_large(self):
        d, _, _ = point_eval(999_999_937)  # prime near 1e9
        assert d == 2


class TestTwistedSums:
    def test_empty_support(self, table10k):
        assert twisted_partial_sum(table10k, "D1", 1.5, make_phase(1, 1)) == 0

    def test_halved_endpoint(self, table10k):
        v = twisted_partial_sum(table10k, "D1", 4.0, make_phase(1, 1))
        assert v == pytest.approx(0.5 * LOG2**2, rel=1e-14)

    def test_alternating(self, table10k):
        v = twisted_partial_sum(table10k, "d", 3.5, make_phase(1, 2))
        assert v == pytest.approx(-1.0 + 0j, abs=1e-12)

    def test_real_at_k1(self, table10k):
        v = twisted_partial_sum(table10k, "D1", 8765.5, make_phase(1, 1))
        assert v.imag == 0.0

    def test_conjugation(self, table10k):
        rng = np.random.default_rng(2)
        for _ in range(10):
            k = int(rng.integers(2, 40))
            h = int(rng.integers(1, k))
            if math.gcd(h, k) != 1:
                continue
            p = make_phase(h, k)
            x = float(rng.uniform(100, 9000)) + 0.5
            a = twisted_partial_sum(table10k, "D1", x, p)
            b = twisted_partial_sum(table10k, "D1", x, p.conjugate())
            assert abs(a - b.conjugate()) <= 1e-10 * (1 + abs(a))

    def test_out_of_range(self, table10k):
        with pytest.raises(OutOfRangeError):
            twisted_partial_sum(table10k, "D1", 10001.0, make_phase(1, 1))


class TestRieszSum:
    def test_empty(self, table10k):
        assert riesz_sum(table10k, 3.0, make_phase(1, 3), 1) == 0

    def test_single_term(self, table10k):
        v = riesz_sum(table10k, 5.0, make_phase(1, 1), 1)
        assert v == pytest.approx(LOG2**2, rel=1e-14)

    def test_quadratic(self, table10k):
        v = riesz_sum(table10k, 4.5, make_phase(1, 1), 2)
        assert v == pytest.approx(0.5 * LOG2**2 * 0.25, rel=1e-14)

    def test_a0_matches_sharp_sum(self, table10k):
        p = make_phase(2, 7)
        for x in (100.5, 999.0, 5432.5):
            a = riesz_sum(table10k, x, p, 0)
            b = twisted_partial_sum(table10k, "D1", x, p)
            assert abs(a - b) <= 1e-12 * (1 + abs(b))

    def test_a_cap(self, table10k):
        with pytest.raises(ValueError):
            riesz_sum(table10k, 10.0, make_phase(1, 1), 9)


def test_phase_array_exact_conjugacy():
    p = make_phase(3, 7)
    fwd = phase_array(p, 21)
    bwd = phase_array(p.conjugate(), 21)
    assert np.array_equal(fwd, np.conj(bwd))  # mirrored table: exact floats
