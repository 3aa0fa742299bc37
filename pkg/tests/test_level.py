"""Theorem dispatch: (e,f) table, alpha case tree, congruence table."""

import itertools
import random

import pytest

from s4levels.factor2 import factor_two
from s4levels.level import level_e4_f1, level_from_ef, level_main2
from s4levels.numberfield import is_square_free, make_field


class TestEfDispatch:
    def test_split_unramified_is_fifteen(self):
        for prime in factor_two(make_field(17, 33)).primes:
            res = level_from_ef(prime)
            assert res.s == 15 and res.route == "e1f1"

    def test_even_inertia_is_two(self):
        for m, n in [(5, 3), (5, -7)]:
            for prime in factor_two(make_field(m, n)).primes:
                assert level_from_ef(prime).s == 2

    def test_e2f1_pi_squared_criterion(self):
        res = [level_from_ef(p) for p in factor_two(make_field(17, 2)).primes]
        assert all(r.s == 6 and r.route == "e2f1_pi2_eq_2" for r in res)
        res = [level_from_ef(p) for p in factor_two(make_field(17, 3)).primes]
        assert all(r.s == 4 and r.route == "e2f1_pi2_ne_2" for r in res)


class TestAlphaTree:
    def test_case31_alpha6_s3(self):
        (prime,) = factor_two(make_field(-2, -6)).primes
        res = level_e4_f1(prime)
        assert (res.alpha, res.s) == (6, 3)
        assert res.route == "e4f1_a6_s3"

    def test_level_one_instance(self):
        (prime,) = factor_two(make_field(2, -34)).primes
        res = level_e4_f1(prime)
        assert (res.alpha, res.s) == (6, 1)

    def test_tau_independence(self):
        """50+ random uniformizers give the same (alpha, s)."""
        (prime,) = factor_two(make_field(-2, -6)).primes
        base = level_e4_f1(prime)
        ring = prime.ring
        p1, p2 = prime.power(1), prime.power(2)
        rng = random.Random(0)
        found = 0
        while found < 50:
            tau = tuple(rng.randrange(ring.mod) for _ in range(4))
            if not p1.contains(tau) or p2.contains(tau):
                continue
            found += 1
            res = level_e4_f1(prime, tau=tau)
            assert (res.alpha, res.s) == (base.alpha, base.s)

    def test_biquadratic_range(self):
        """Every e=4,f=1 level for a biquadratic field is in {1,...,6}."""
        values = [v for v in range(-30, 31)
                  if v not in (0, 1) and is_square_free(v)]
        for m, n in itertools.combinations(values, 2):
            try:
                fac = factor_two(make_field(m, n))
            except Exception:
                continue
            if fac.shape != (4, 1, 1):
                continue
            res = level_e4_f1(fac.primes[0])
            assert res.s in {1, 2, 3, 4, 5, 6}
            assert 5 <= res.alpha <= 13


class TestCongruenceTable:
    @pytest.mark.parametrize("m,n,s,route", [
        (-2, -6, 3, "m3n2k2_v8"),
        (2, -34, 1, "m3n2k2_v32_nk15"),
        (-1, 2, 1, "m3n2k2_v32_nk15"),
        (17, 2, 6, "m1n2k2_m1mod8"),
        (13, 2, 2, "m1n2k2_m5mod8"),
        (17, 3, 4, "m1n3k3_m1mod8"),
        (5, 3, 2, "m1n3k3_m5mod8"),
        (17, 33, 15, "m1n1k1_all1mod8"),
        (5, -7, 2, "m1n1k1_other"),
    ])
    def test_rows(self, m, n, s, route):
        res = level_main2(make_field(m, n))
        assert (res.s, res.route) == (s, route)

    def test_value_range(self):
        values = [v for v in range(-40, 41)
                  if v not in (0, 1) and is_square_free(v)]
        for m, n in itertools.combinations(values, 2):
            try:
                fld = make_field(m, n)
            except Exception:
                continue
            assert level_main2(fld).s in {1, 2, 3, 4, 6, 15}


class TestThreeWayAgreement:
    def test_table_matches_dispatch_up_to_30(self):
        values = [v for v in range(-30, 31)
                  if v not in (0, 1) and is_square_free(v)]
        for m, n in itertools.combinations(values, 2):
            try:
                fld = make_field(m, n)
            except Exception:
                continue
            table = level_main2(fld)
            for prime in factor_two(fld).primes:
                assert level_from_ef(prime).s == table.s, (m, n)

    def test_galois_uniformity(self):
        for m, n in [(17, 33), (17, 2), (5, -7), (-10, -7)]:
            results = {level_from_ef(p).s
                       for p in factor_two(make_field(m, n)).primes}
            assert len(results) == 1
