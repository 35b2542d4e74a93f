import math

import numpy as np
import pytest

from tmixest import (
    ArgumentError,
    dobrushin_coefficient,
    exact_generalized_contraction,
    exact_kappa_s,
    exact_mixing_time,
    sandwich_bounds,
    skipped_mixing_time,
    stationary_distribution,
)
from tmixest.oracle import distance_to_stationarity

from conftest import FUNNEL, TWO_STATE

RANK_ONE = np.tile([0.2, 0.3, 0.5], (3, 1))


def scan_truncated(M, s_max=200):
    """Independent reference: numpy matrix powers over a fixed range of skips."""
    M = np.asarray(M)
    values = [(1.0 - dobrushin_coefficient(np.linalg.matrix_power(M, s))) / s for s in range(1, s_max + 1)]
    best = max(values)
    return 1.0 - best, values.index(best) + 1


class TestDistanceToStationarity:
    def test_rank_one(self):
        assert distance_to_stationarity(RANK_ONE, 1) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("t", [1, 2, 3, 7])
    def test_two_state_closed_form(self, t):
        # eigenvalue 1/2 on (1, -1): h(t) = 2^-(t+1)
        assert distance_to_stationarity(TWO_STATE, t) == pytest.approx(2.0 ** -(t + 1), abs=1e-12)

    def test_monotone(self, corpus):
        for M in corpus:
            h = [distance_to_stationarity(M, t) for t in range(1, 15)]
            assert all(b <= a + 1e-12 for a, b in zip(h, h[1:]))


class TestMixingTime:
    def test_rank_one(self):
        assert exact_mixing_time(RANK_ONE) == 1

    def test_strict_inequality(self):
        # h(1) = 0.25 is not < 0.25
        assert exact_mixing_time(TWO_STATE, 0.25) == 2

    def test_looser_threshold(self):
        assert exact_mixing_time(TWO_STATE, 0.3) == 1

    @pytest.mark.parametrize("xi", [0.0, 0.5, -0.1, 0.7])
    def test_xi_range(self, xi):
        with pytest.raises(ArgumentError):
            exact_mixing_time(TWO_STATE, xi)

    def test_matches_brute_definition(self, corpus):
        for M in corpus[:10]:
            M = np.asarray(M)
            pi = stationary_distribution(M)
            t = 1
            while 0.5 * np.abs(np.linalg.matrix_power(M, t) - pi).sum(axis=1).max() >= 0.1:
                t += 1
            assert exact_mixing_time(M, 0.1) == t


class TestKappaS:
    def test_s1_is_dobrushin(self):
        assert exact_kappa_s(FUNNEL, 1) == dobrushin_coefficient(FUNNEL)

    def test_two_state_square(self):
        assert exact_kappa_s(TWO_STATE, 2) == pytest.approx(0.25, abs=1e-12)

    def test_funnel_square_disjoint(self):
        assert exact_kappa_s(FUNNEL, 2) == pytest.approx(1.0, abs=1e-12)

    def test_submultiplicative(self, corpus):
        for M in corpus:
            k = [None] + [exact_kappa_s(M, s) for s in range(1, 9)]
            for s in range(1, 5):
                for t in range(1, 5):
                    assert k[s + t] <= k[s] * k[t] + 1e-12


class TestGeneralizedContraction:
    def test_rank_one(self):
        res = exact_generalized_contraction(RANK_ONE)
        assert (res.kappa_gen, res.k_gen) == (0.0, 1)

    def test_two_state(self):
        res = exact_generalized_contraction(TWO_STATE)
        assert res.kappa_gen == pytest.approx(0.5, abs=1e-12)
        assert res.k_gen == 1

    def test_funnel(self):
        res = exact_generalized_contraction(FUNNEL)
        kappas = {s: k for s, k, _ in res.per_s}
        for s, expected in [(1, 1.0), (2, 1.0), (3, 0.5), (4, 0.25)]:
            assert kappas[s] == pytest.approx(expected, abs=1e-12)
        assert res.kappa_gen == pytest.approx(0.8125, abs=1e-12)
        assert res.k_gen == 4

    def test_record_invariants(self, corpus):
        for M in corpus:
            res = exact_generalized_contraction(M)
            best = max(v for _, _, v in res.per_s)
            assert res.kappa_gen == 1.0 - best
            assert res.k_gen == min(s for s, _, v in res.per_s if v == best)
            assert res.kappa_gen < 1.0
            assert res.scanned_up_to == res.per_s[-1][0]

    def test_agrees_with_truncated_scan(self, corpus):
        for M in corpus:
            if M.d > 5:
                continue
            res = exact_generalized_contraction(M)
            kappa, k = scan_truncated(M)
            assert res.kappa_gen == pytest.approx(kappa, abs=1e-10)
            assert res.k_gen == k


class TestSandwich:
    def test_two_state(self):
        b = sandwich_bounds(TWO_STATE, 0.25)
        assert b.lower == pytest.approx(1.0, abs=1e-12)
        assert b.upper == pytest.approx((1 + math.log(4)) / 0.5, abs=1e-12)
        assert b.upper == pytest.approx(4.77, abs=5e-3)
        assert b.tmix == 2 and b.holds

    def test_rank_one(self):
        b = sandwich_bounds(RANK_ONE, 0.25)
        assert b.lower == pytest.approx(0.5)
        assert b.upper == pytest.approx(2.386, abs=1e-3)
        assert b.tmix == 1 and b.holds

    @pytest.mark.parametrize("xi", [0.05, 0.1, 0.25, 0.4])
    def test_corpus(self, corpus, xi):
        for M in corpus:
            assert sandwich_bounds(M, xi).holds


class TestSkippedMixing:
    def test_no_skip(self, corpus):
        for M in corpus[:5]:
            assert skipped_mixing_time(M, 1) == exact_mixing_time(M)

    def test_two_state_square(self):
        assert skipped_mixing_time(TWO_STATE, 2, 0.25) == 1

    def test_bound(self, corpus):
        for M in corpus:
            tmix = exact_mixing_time(M)
            for s in range(1, 6):
                assert skipped_mixing_time(M, s) <= math.ceil(tmix / s)
