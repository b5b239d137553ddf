import random
from fractions import Fraction

from oracles import exhaustive_bottleneck
from stairdist.bottleneck import (CostProfile, bottleneck_distance,
                                  delta_matched, interleaving_lower_bound,
                                  pairwise_costs)
from stairdist.generate import random_rectangles, random_staircase
from stairdist.interleaving import di_interval, triv_distance
from stairdist.scalars import INF, is_inf

from conftest import square


class TestPairwiseCosts:
    def test_squares(self):
        prof = pairwise_costs([square(0, 4)], [square(1, 3)])
        assert prof.costs == [[1]]
        assert prof.triv_m == [2]
        assert prof.triv_n == [1]

    def test_closed_form_matches_decision(self, rng, thick_l):
        prof = pairwise_costs([thick_l], [square(1, 3)])
        assert prof.costs[0][0] == di_interval(thick_l, square(1, 3))


class TestDeltaMatched:
    def test_feasible_at_one(self):
        prof = pairwise_costs([square(0, 4)], [square(1, 3)])
        res = delta_matched(prof, Fraction(1))
        assert res is not None and res.pairs == [(0, 0)]

    def test_infeasible_below(self):
        prof = pairwise_costs([square(0, 4)], [square(1, 3)])
        assert delta_matched(prof, Fraction(9, 10)) is None

    def test_monotone(self, rng):
        for _ in range(10):
            M = random_rectangles(rng, rng.randint(0, 3))
            N = random_rectangles(rng, rng.randint(0, 3))
            prof = pairwise_costs(M, N)
            feas = [delta_matched(prof, Fraction(k, 2)) is not None
                    for k in range(0, 30)]
            assert feas == sorted(feas)


class TestBottleneckDistance:
    def test_nested_squares(self):
        res = bottleneck_distance([square(0, 4)], [square(1, 3)])
        assert res.delta == 1
        assert res.pairs == [(0, 0)]

    def test_trivialized_extra_summand(self):
        res = bottleneck_distance([square(0, 4), square(10, 11)],
                                  [square(1, 3)])
        assert res.delta == 1
        assert res.pairs == [(0, 0)]
        assert res.unmatched_m == [(1, Fraction(1, 2))]

    def test_empty_side(self):
        res = bottleneck_distance([square(0, 1)], [])
        assert res.delta == Fraction(1, 2)
        assert res.pairs == []

    def test_identical(self, thick_l, thin_l):
        assert bottleneck_distance([thick_l, thin_l],
                                   [thick_l, thin_l]).delta == 0

    def test_matches_exhaustive(self, rng):
        for _ in range(30):
            M = random_rectangles(rng, rng.randint(0, 4), hi=6)
            N = random_rectangles(rng, rng.randint(0, 4), hi=6)
            prof = pairwise_costs(M, N)
            want = exhaustive_bottleneck(prof.costs, prof.triv_m,
                                         prof.triv_n)
            got = bottleneck_distance(M, N)
            assert got.delta == want
            # the reported matching certifies the value
            cert = Fraction(0)
            for i, j in got.pairs:
                cert = max(cert, prof.costs[i][j])
            for _, t in got.unmatched_m + got.unmatched_n:
                cert = max(cert, t)
            assert cert == got.delta

    def test_infinite_when_shapes_cannot_pair(self):
        from stairdist.geometry import StaircaseInterval, point
        Q = StaircaseInterval.from_antichains([point(0, 0)],
                                              [point(INF, INF)])
        res = bottleneck_distance([Q], [square(0, 1)])
        assert is_inf(res.delta)


class TestLowerBound:
    def test_nested_squares(self):
        rep = interleaving_lower_bound([square(0, 4)], [square(1, 3)])
        assert rep.d_b == 1
        assert rep.eps_star_m == 0 and rep.eps_star_n == 0
        assert rep.lower_bound == Fraction(1, 3)

    def test_thick_l_vs_own_box(self, thick_l):
        box = square(0, Fraction(7, 2))
        rep = interleaving_lower_bound([thick_l], [box])
        assert rep.d_b == Fraction(1, 2)
        assert rep.eps_star_m == Fraction(1, 2)
        assert rep.eps_star_n == 0
        assert rep.raw == Fraction(-1, 2)
        assert rep.lower_bound == 0

    def test_lower_bound_below_distance(self, rng):
        for _ in range(10):
            M = [random_staircase(rng, size=6) for _ in range(2)]
            N = [random_staircase(rng, size=6) for _ in range(2)]
            rep = interleaving_lower_bound(M, N)
            assert rep.lower_bound <= rep.d_b
            assert rep.lower_bound >= 0
