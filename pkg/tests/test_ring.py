import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakeyalab.ring import (DualFrequency, Profinite, RingContext,
                            ScaleOverflowError, ScaleUndefinedError, crt_combine,
                            crt_split, dual_frequency, dual_valuation, factorize,
                            scale)


def trial_division_oracle(n):
    out = []
    d = 2
    while n > 1:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    return out


class TestFactorize:
    def test_examples(self):
        assert factorize(12) == [(2, 2), (3, 1)]
        assert factorize(1) == []
        assert factorize(720) == [(2, 4), (3, 2), (5, 1)]

    def test_against_oracle(self):
        for n in range(1, 400):
            assert factorize(n) == trial_division_oracle(n)

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=50, deadline=None)
    def test_product_reconstructs(self, n):
        assert math.prod(p**r for p, r in factorize(n)) == n
        primes = [p for p, _ in factorize(n)]
        assert primes == sorted(primes)


class TestCrt:
    def test_scalar_example(self):
        ctx = RingContext.generic(12, 1)
        assert crt_split((7,), ctx) == ((3,), (1,))
        assert crt_combine([(3,), (1,)], ctx) == (7,)

    def test_zero_vector(self):
        ctx = RingContext.generic(30, 3)
        parts = crt_split((0, 0, 0), ctx)
        assert all(all(c == 0 for c in part) for part in parts)
        assert crt_combine(parts, ctx) == (0, 0, 0)

    def test_round_trip_mod_30(self):
        import random

        rng = random.Random(2024)
        ctx = RingContext.generic(30, 2)
        for _ in range(1000):
            x = (rng.randrange(30), rng.randrange(30))
            assert crt_combine(crt_split(x, ctx), ctx) == x

    def test_componentwise_ring_map(self):
        ctx = RingContext.generic(12, 2)
        x, y = (5, 7), (10, 3)
        sx, sy = crt_split(x, ctx), crt_split(y, ctx)
        total = tuple((a + b) % 12 for a, b in zip(x, y))
        split_sum = tuple(tuple((a + b) % q for a, b in zip(px, py))
                          for (px, py), q in zip(zip(sx, sy), (4, 3)))
        assert crt_split(total, ctx) == split_sum


class TestDualValuation:
    def scan_oracle(self, a, N):
        for m in range(1, N + 1):
            if all(m * c % N == 0 for c in a):
                return m
        raise AssertionError("no annihilator found")

    def test_examples(self):
        assert dual_valuation((2, 0), 4) == 2 == self.scan_oracle((2, 0), 4)
        assert dual_valuation((0, 0, 0), 9) == 1
        assert dual_valuation((3, 0), 9) == 3 == self.scan_oracle((3, 0), 9)

    def test_scan_oracle_everywhere(self):
        for N in (4, 6, 9, 12):
            for a0 in range(N):
                for a1 in range(N):
                    v = dual_valuation((a0, a1), N)
                    assert v == self.scan_oracle((a0, a1), N)
                    assert N % v == 0

    @given(st.integers(min_value=2, max_value=60),
           st.lists(st.integers(min_value=0, max_value=59), min_size=1, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_minimality(self, N, a):
        v = dual_valuation(a, N)
        assert all(v * c % N == 0 for c in a)
        for m in range(1, v):
            assert any(m * c % N != 0 for c in a)

    def test_frequency_wrapper(self):
        f = dual_frequency((2, 0), 4)
        assert f == DualFrequency((2, 0), 2)


class TestScales:
    def test_padic_example(self):
        ctx = RingContext.padic(2, 3, 2)
        assert scale(3, ctx) == 8

    def test_profinite_examples(self):
        ctx = RingContext.profinite(3, 2)
        assert scale(0, ctx) == 1
        assert scale(3, ctx) == 24

    def test_overflow_reported(self):
        ctx = RingContext.padic(2, 2, 2)
        with pytest.raises(ScaleOverflowError):
            scale(3, ctx)
        assert scale(3, ctx, beyond_truncation=True) == 8

    def test_generic_has_no_scales(self):
        ctx = RingContext.generic(12, 2)
        with pytest.raises(ScaleUndefinedError):
            scale(0, ctx)

    def test_divisibility_chain(self):
        for ctx in (RingContext.padic(3, 3, 2), RingContext.profinite(3, 2)):
            ms = [scale(i, ctx) for i in range(ctx.num_bands)]
            assert ms[0] == 1
            assert all(b % a == 0 and b > a for a, b in zip(ms, ms[1:]))

    def test_every_divisor_reached_within_truncation(self):
        for ctx in (RingContext.padic(2, 3, 2), RingContext.profinite(2, 2)):
            ms = [scale(i, ctx) for i in range(ctx.num_bands)]
            for d in ctx.divisors():
                assert any(m % d == 0 for m in ms)


class TestRingContext:
    def test_mode_modulus_consistency(self):
        assert RingContext.padic(2, 3, 2).modulus == 8
        assert RingContext.profinite(2, 2).modulus == 6
        with pytest.raises(ValueError):
            RingContext(8, ((2, 3),), 2, Profinite(2), RingContext.padic(2, 3, 2).scale_semantics)

    def test_rank_unrank_lexicographic(self):
        ctx = RingContext.generic(5, 3)
        pts = list(ctx.points())
        assert pts == sorted(pts)
        for i, x in enumerate(pts):
            assert ctx.rank(x) == i
            assert ctx.unrank(i) == x

    def test_quotient(self):
        ctx = RingContext.padic(2, 2, 3)
        q = ctx.quotient()
        assert q.dimension == 2 and q.modulus == 4 and q.mode == ctx.mode

    def test_divisors(self):
        assert RingContext.generic(12, 1).divisors() == (1, 2, 3, 4, 6, 12)
