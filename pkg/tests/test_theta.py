"""2-loop classes: canonical form, symmetry, residues, torus averages."""

from fractions import Fraction
from itertools import permutations

import pytest

from knotcovers.exactalg import LaurentPoly, RatFun
from knotcovers.theta import (
    QSingularAtP,
    SingularOnTorus,
    ThetaClass,
    res_p_theta,
    torus_average,
)

t = LaurentPoly.t()
one = LaurentPoly.one()


def _mono(a, b, c, coeff=1):
    return ThetaClass.monomial(a, b, c, Fraction(coeff))


class TestCanonicalForm:
    def test_terms_merge(self):
        Q = _mono(1, 2, 3) + _mono(1, 2, 3)
        assert Q == _mono(1, 2, 3, 2)

    def test_cancellation_gives_zero(self):
        Q = _mono(1, 2, 3) - _mono(1, 2, 3)
        assert Q == ThetaClass.zero()
        assert not Q.terms

    def test_scale(self):
        assert _mono(0, 0, 0).scale(Fraction(5)) == _mono(0, 0, 0, 5)

    def test_is_polynomial(self):
        assert _mono(1, -2, 3).is_polynomial
        f = RatFun(one, t - 2 * one)
        assert not ThetaClass([(f, f, f, Fraction(1))]).is_polynomial


class TestSymmetryMoves:
    def test_push_moves_exponents(self):
        # pushing a vertex multiplies every slot by t^k; on the torus the
        # three factors cancel (z1 z2 / (z1 z2) = 1), so nothing observable
        # changes even though the stored terms differ
        Q = _mono(1, 2, 3)
        moved = Q.pushed(2)
        assert moved == _mono(3, 4, 5)
        assert moved != Q
        assert moved.functionally_equal(Q)

    def test_push_invariance_of_residue(self, rng):
        for _ in range(25):
            Q = _mono(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5),
                      Fraction(rng.randint(-6, 6) or 1, rng.randint(1, 6)))
            for p in (2, 3, 5):
                base = res_p_theta(Q, p)
                assert res_p_theta(Q.pushed(1), p) == base
                assert res_p_theta(Q.pushed(-2), p) == base

    def test_permutation_and_bar_invariance(self, rng):
        for _ in range(10):
            Q = _mono(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4))
            for p in (2, 3):
                base = res_p_theta(Q, p)
                for perm in permutations(range(3)):
                    assert res_p_theta(Q.permuted(perm), p) == base
                assert res_p_theta(Q.barred(), p) == base

    def test_symmetrize_is_projection(self):
        Q = _mono(1, 2, 3, 12)
        S = Q.symmetrize()
        assert S.symmetrize() == S
        assert res_p_theta(S, 3) == res_p_theta(Q, 3)

    def test_functionally_equal_catches_symmetry(self):
        Q = _mono(1, 2, 3)
        assert Q.functionally_equal(Q.pushed(1))
        assert Q.symmetrize().functionally_equal(Q)
        assert not Q.functionally_equal(_mono(1, 2, 3, 2))


class TestResidue:
    def test_exact_value_for_monomial(self):
        # res_p of a monomial (a, b, c): p if a = b = c mod p, else 0
        Q = _mono(1, 1, 1, Fraction(3, 2))
        assert res_p_theta(Q, 2) == 3
        assert res_p_theta(_mono(0, 1, 0), 2) == 0

    def test_matches_numeric_route_for_rational_slots(self):
        f = RatFun(one, t - 2 * one)
        Q = ThetaClass([(f, f, f, Fraction(1))])
        for p in (2, 3):
            exactish = res_p_theta(Q, p)
            assert exactish == pytest.approx(_brute_res(Q, p), abs=1e-9)

    def test_singular_at_p_raises(self):
        f = RatFun(one, t ** 2 + t + one)
        Q = ThetaClass([(f, one, one, Fraction(1))])
        with pytest.raises(QSingularAtP):
            res_p_theta(Q, 3)
        assert res_p_theta(Q, 2) is not None  # fine away from the bad roots


def _brute_res(Q, p):
    """Independent route: (1/p) * sum of Q over all pairs of p-th roots."""
    import cmath

    total = 0.0
    for a in range(p):
        for b in range(p):
            z1 = cmath.exp(2j * cmath.pi * a / p)
            z2 = cmath.exp(2j * cmath.pi * b / p)
            total += Q.evaluate_raw(z1, z2).real
    return total / p


class TestTorusAverage:
    def test_exact_for_polynomial_classes(self):
        Q = _mono(1, 1, 1, Fraction(3, 2)) + _mono(0, 2, -1, Fraction(-1, 3))
        assert torus_average(Q) == Fraction(3, 2)

    def test_quadrature_matches_exact(self):
        # rational slots take the quadrature path; a trapezoid grid is an
        # independent oracle (exponentially accurate on smooth integrands)
        f = RatFun(one, t - 2 * one)
        Q = ThetaClass([(f, f, f, Fraction(1))])
        assert torus_average(Q) == pytest.approx(_grid_average(Q), abs=1e-6)

    def test_poles_on_torus_rejected(self):
        f = RatFun(one, t ** 2 + t + one)
        Q = ThetaClass([(f, f, f, Fraction(1))])
        with pytest.raises(SingularOnTorus):
            torus_average(Q)


def _grid_average(Q, n=128):
    import cmath

    total = 0.0
    for a in range(n):
        for b in range(n):
            z1 = cmath.exp(2j * cmath.pi * a / n)
            z2 = cmath.exp(2j * cmath.pi * b / n)
            total += Q.evaluate_raw(z1, z2).real
    return total / n ** 2


class TestSerialization:
    def test_roundtrip(self):
        f = RatFun(t + one, t - 2 * one)
        Q = ThetaClass([(f, one, t ** -1, Fraction(1, 2))])
        assert ThetaClass.from_json(Q.to_json()) == Q

    def test_bare_polynomial_shorthand(self):
        obj = {"terms": [{"f": {"1": "1"}, "g": {"1": "1"}, "h": {"1": "1"}, "c": "3/2"}]}
        assert ThetaClass.from_json(obj) == _mono(1, 1, 1, Fraction(3, 2))
