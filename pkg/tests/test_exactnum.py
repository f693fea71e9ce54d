import random
from fractions import Fraction

import pytest

from chiralforms.exactnum import (PrecisionError, QSeries, Scalar, TWO_PI,
                                  rebase, tau_derivative, theta)


def qs(coeffs, prec=10, denom=1):
    return QSeries(coeffs, prec=prec, denom=denom)


class TestScalar:
    def test_ring_basics(self):
        a = Scalar(2, pi_deg=1) + Scalar(Fraction(1, 3))
        b = Scalar(-5, pi_deg=-2)
        assert a * b == b * a
        assert a + b == b + a
        assert a * (Scalar(1)) == a
        assert (a - a).is_zero()

    def test_pi_is_invertible(self):
        pi = Scalar.pi(1)
        assert pi * Scalar.pi(-1) == Scalar(1)
        assert TWO_PI ** -2 * TWO_PI ** 2 == Scalar(1)

    def test_no_zero_divisors_among_monomials(self):
        rng = random.Random(5)
        for _ in range(40):
            a = Scalar.pi(rng.randint(-3, 3), rng.choice([1, -2, 7]))
            b = Scalar.pi(rng.randint(-3, 3), rng.choice([3, -1, 5]))
            assert not (a * b).is_zero()

    def test_conjugation_negates_odd_degrees(self):
        s = Scalar.pi(1, 3) + Scalar.pi(2, 5) + Scalar(7)
        assert s.conjugate() == Scalar.pi(1, -3) + Scalar.pi(2, 5) + Scalar(7)
        assert s.conjugate().conjugate() == s

    def test_division_by_monomial(self):
        s = Scalar.pi(3, 6)
        assert s / Scalar.pi(1, 2) == Scalar.pi(2, 3)
        with pytest.raises(ValueError):
            (Scalar(1)) / (Scalar(1) + Scalar.pi(1))

    def test_json_roundtrip(self):
        s = Scalar.pi(-2, Fraction(22, 7)) + Scalar(3)
        assert Scalar.from_json(s.to_json()) == s


class TestQSeries:
    def test_polynomial_multiplication(self):
        x = qs({0: 1, 1: -24})
        y = qs({0: 1, 1: 240})
        assert x * y == qs({0: 1, 1: 216, 2: -5760})

    def test_additive_identity(self):
        x = qs({0: 1, 3: Fraction(5, 7)})
        assert x + QSeries.zero(10) == x

    def test_scale_by_pi_inverts(self):
        x = qs({1: 4, 2: -3})
        assert x.scale(Scalar.pi(1)).scale(Scalar.pi(-1)) == x

    def test_min_precision_propagates(self):
        x = qs({0: 1}, prec=5)
        y = qs({0: 1}, prec=9)
        assert (x + y).prec == 5
        assert (x * y).prec == 5

    def test_product_precision_uses_valuations(self):
        x = qs({2: 1}, prec=5)      # q^2 + O(q^5)
        y = qs({3: 1}, prec=7)      # q^3 + O(q^7)
        assert (x * y).prec == min(5 + 3, 7 + 2)

    def test_precision_underflow(self):
        with pytest.raises(PrecisionError):
            QSeries({}, prec=0)

    def test_denominator_normalizes(self):
        x = QSeries({2: 1, 4: 5}, prec=4, denom=2)
        assert x.denom == 1
        assert x.coefficient(1) == Scalar(1)

    def test_laurent_exponents(self):
        x = qs({-2: 3, 1: 1})
        assert x.has_negative_exponents()
        assert x.coefficient(-2) == Scalar(3)

    def test_json_roundtrip(self):
        x = QSeries({1: Scalar.pi(1, 2), 3: Scalar(-7)}, prec=6, denom=3)
        assert QSeries.from_json(x.to_json()) == x


class TestTheta:
    def test_on_powers(self):
        assert theta(qs({5: 1})) == qs({5: 5})
        assert theta(QSeries.one(10)).is_zero()

    def test_fractional_exponents(self):
        x = QSeries({3: 1}, prec=4, denom=2)
        assert theta(x).coefficient(3, denom=2) == Scalar(Fraction(3, 2))

    def test_leibniz_on_random_series(self):
        rng = random.Random(17)
        for _ in range(15):
            x = qs({rng.randint(0, 4): rng.randint(-5, 5) for _ in range(3)},
                   prec=12)
            y = qs({rng.randint(0, 4): rng.randint(-5, 5) for _ in range(3)},
                   prec=12)
            assert theta(x * y) == theta(x) * y + x * theta(y)


class TestTauDerivative:
    def test_constants_die(self):
        assert tau_derivative(QSeries.one(8)).is_zero()

    def test_q_gets_two_pi(self):
        assert tau_derivative(qs({1: 1})) == qs({1: TWO_PI})

    def test_iterate_matches_theta_powers(self):
        from chiralforms.modforms import eisenstein
        e4 = eisenstein(4, 20)
        lhs = tau_derivative(e4, 3)
        rhs = theta(theta(theta(e4))).scale(TWO_PI ** 3)
        assert lhs == rhs


class TestRebase:
    def test_identity(self):
        x = qs({0: 2, 3: -1})
        assert rebase(x, 1) == x

    def test_doubling_eisenstein(self):
        from chiralforms.modforms import eisenstein
        r = rebase(eisenstein(2, 10), 2)
        assert r.coefficient(2) == Scalar(-24)
        assert r.coefficient(1).is_zero()

    def test_half(self):
        r = rebase(qs({1: 1}), Fraction(1, 2))
        assert r.denom == 2
        assert r.coefficient(1, denom=2) == Scalar(1)

    def test_round_trip(self):
        x = qs({0: 1, 2: 5, 3: -2}, prec=9)
        back = rebase(rebase(x, 3), Fraction(1, 3))
        assert back == x

    def test_underflow(self):
        with pytest.raises(PrecisionError):
            rebase(qs({0: 1}, prec=5), Fraction(1, 6))
