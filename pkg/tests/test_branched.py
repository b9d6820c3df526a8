"""Cyclic branched cover invariants: torsion, signatures, Casson-Walker."""

import math
from fractions import Fraction

import pytest

from knotcovers.branched import (
    BranchedReport,
    NotPRegular,
    alexander_growth_rate,
    branched_report,
    casson_growth,
    casson_walker,
    is_p_regular,
    signature_average,
    torsion_growth,
    torsion_order,
    total_sigma_p,
)
from knotcovers.theta import ThetaClass


class TestRegularity:
    def test_trefoil_irregular_exactly_at_multiples_of_six(self, trefoil):
        regular = [p for p in range(1, 20) if is_p_regular(trefoil, p)]
        assert [p for p in range(1, 20) if p not in regular] == [6, 12, 18]

    def test_figure8_always_regular(self, figure8):
        assert all(is_p_regular(figure8, p) for p in range(1, 40))


class TestTorsion:
    def test_trefoil_frozen_values(self, trefoil):
        assert torsion_order(trefoil, 2) == 3
        assert torsion_order(trefoil, 3) == 4
        assert torsion_order(trefoil, 5) == 1

    def test_figure8_frozen_values(self, figure8):
        assert [torsion_order(figure8, p) for p in (2, 3, 4, 5)] == [5, 16, 45, 121]

    def test_both_routes_agree_on_corpus(self, trefoil, figure8):
        for A in (trefoil, figure8):
            for p in range(2, 9):
                if is_p_regular(A, p):
                    torsion_order(A, p, check_det=True)

    def test_irregular_p_rejected(self, trefoil):
        with pytest.raises(NotPRegular):
            torsion_order(trefoil, 6)

    def test_growth_rows_skip_irregular(self, trefoil):
        rows = torsion_growth(trefoil, 13)
        assert [r[0] for r in rows] == [1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 13]

    def test_growth_limit_is_mahler(self, figure8):
        m = alexander_growth_rate(figure8)
        assert m == pytest.approx(math.log((3 + math.sqrt(5)) / 2), abs=1e-12)
        rows = torsion_growth(figure8, 60, ps=[30, 60])
        assert rows[-1][2] == pytest.approx(m, abs=1e-9)


class TestTotalSignature:
    def test_methods_agree(self, trefoil, figure8):
        for A in (trefoil, figure8):
            for p in (2, 3, 5, 8):
                assert total_sigma_p(A, p, method="exact") == total_sigma_p(
                    A, p, method="roots"
                )

    def test_trefoil_values(self, trefoil):
        assert [total_sigma_p(trefoil, p) for p in (2, 3, 4, 5)] == [-2, -4, -6, -8]

    def test_large_p_uses_roots_route(self, figure8):
        # auto dispatch must stay fast and match the known figure-8 pattern:
        # sigma is -2 on the middle third of the circle
        got = total_sigma_p(figure8, 201)
        by_roots = total_sigma_p(figure8, 201, method="roots")
        assert got == by_roots

    def test_irregular_p_rejected(self, trefoil):
        with pytest.raises(NotPRegular):
            total_sigma_p(trefoil, 6)


class TestAverages:
    def test_trefoil_signature_average(self, trefoil):
        assert signature_average(trefoil) == pytest.approx(-4.0 / 3.0, abs=1e-9)

    def test_figure8_signature_average(self, figure8):
        # roots of -t + 3 - 1/t on the circle at angle +-acos(3/2 - 1)... none:
        # all roots are real (golden-ratio-squared), so sigma is 0 everywhere
        assert signature_average(figure8) == pytest.approx(0.0, abs=1e-12)

    def test_unknot(self):
        assert signature_average([]) == pytest.approx(0.0, abs=1e-12)


class TestCassonWalker:
    def test_trefoil_with_zero_two_loop_part(self, trefoil):
        val = casson_walker(trefoil, ThetaClass.zero(), 2)
        assert val == Fraction(-1, 4)

    def test_growth_value(self, trefoil):
        got = casson_growth(trefoil, ThetaClass.zero())
        assert got == pytest.approx(-1.0 / 6.0, abs=1e-9)

    def test_converges(self, trefoil):
        Q = ThetaClass.monomial(1, 2, -1, Fraction(1, 2))
        lim = casson_growth(trefoil, Q)
        p = 200
        val = casson_walker(trefoil, Q, p)
        assert abs(float(val) / p - lim) < 0.02

    def test_exactness_for_polynomial_classes(self, figure8):
        val = casson_walker(figure8, ThetaClass.constant(Fraction(3)), 4)
        assert isinstance(val, Fraction)


class TestReport:
    def test_blank_fills_irregular_rows(self, trefoil):
        rows = branched_report(trefoil, [5, 6, 7])
        assert [r.p for r in rows] == [5, 6, 7]
        assert rows[1].regular is False
        assert rows[1].sigma_p is None and rows[1].beta_p is None
        assert rows[0] == BranchedReport(
            p=5, regular=True, sigma_p=-8, beta_p=1, log_beta_over_p=0.0
        )

    def test_casson_column_present_only_with_q(self, trefoil):
        rows = branched_report(trefoil, [2], Q=ThetaClass.zero())
        assert rows[0].casson == Fraction(-1, 4)
        rows = branched_report(trefoil, [2])
        assert rows[0].casson is None

    def test_q_singular_at_p_leaves_cell_blank(self, trefoil):
        from knotcovers.exactalg import LaurentPoly, RatFun

        t = LaurentPoly.t()
        one = LaurentPoly.one()
        # denominator t^2 + t + 1 vanishes at primitive cube roots of unity
        f = RatFun(one, t ** 2 + t + one)
        Q = ThetaClass([(f, f, f, Fraction(1))])
        rows = branched_report(trefoil, [3], Q=Q)
        assert rows[0].regular is True
        assert rows[0].casson is None
