from fractions import Fraction
from math import factorial

import pytest

from chiralforms.brackets import (JacobiLikeSeries, ck_lift, ck_lift_const,
                                  expected_bracket_vector, ext_binom,
                                  fact_ext, jacobi_product, membership_kernel,
                                  modified_bracket, one_derivative,
                                  rankin_cohen, theta_power, uniqueness_probe)
from chiralforms.exactnum import QSeries, Scalar, TWO_PI, tau_derivative
from chiralforms.modforms import (ModularForm, NotMemberError, SL2Z,
                                  discriminant, eisenstein, quasimodular_E)


def e4(prec=36):
    return ModularForm(4, eisenstein(4, prec))


def e6(prec=36):
    return ModularForm(6, eisenstein(6, prec))


def delta(prec=40):
    return ModularForm(12, discriminant(prec))


class TestExtendedBinomials:
    def test_minus_one_factorial(self):
        assert fact_ext(-1) == 1
        assert fact_ext(0) == 1
        assert fact_ext(4) == 24
        with pytest.raises(ValueError):
            fact_ext(-2)

    def test_boundary_binomials(self):
        # C(n-1, n) = 1/n under the convention (-1)! = 1
        for n in range(1, 8):
            assert ext_binom(n - 1, n) == Fraction(1, n)
        assert ext_binom(-1, 0) == 1
        assert ext_binom(5, 2) == 10


class TestRankinCohen:
    def test_zeroth_is_multiplication(self):
        b = rankin_cohen(e4(), e6(), 0)
        assert b.series == eisenstein(4, 30) * eisenstein(6, 30)
        assert b.weight == 10

    def test_first_bracket_is_discriminant(self):
        b = rankin_cohen(e4(), e6(), 1)
        assert b.series == discriminant(31).scale(-3456)

    def test_swap_antisymmetry(self):
        for n in range(0, 5):
            left = rankin_cohen(e4(), e6(), n, check=False).series
            right = rankin_cohen(e6(), e4(), n, check=False).series
            assert left == right.scale((-1) ** n)

    def test_output_is_pi_free_and_modular(self):
        b = rankin_cohen(e4(), delta(), 2)
        assert b.series.is_pi_free()
        assert b.weight == 20


class TestModifiedBracket:
    def test_zeroth_of_one(self):
        assert modified_bracket(1, e4(), 0).series == eisenstein(4, 36)

    def test_one_e4_first(self):
        out = modified_bracket(1, e4(), 1)
        assert out.series == eisenstein(6, 30).scale(Fraction(-1, 3))

    def test_one_one_second(self):
        out = modified_bracket(1, 1, 2)
        assert out.series == eisenstein(4, 12).scale(Fraction(-1, 144))

    def test_one_one_odd_vanishes(self):
        for n in (1, 3, 5, 7, 9):
            assert modified_bracket(1, 1, n).series.is_zero()

    def test_reversed_constant_sign(self):
        for n in (1, 2, 3):
            left = modified_bracket(e4(), 1, n).series
            right = modified_bracket(1, e4(), n).series
            assert left == right.scale((-1) ** n)

    def test_matches_classical_when_nonconstant(self):
        for n in (0, 1, 2):
            assert modified_bracket(e4(), e6(), n).series == \
                rankin_cohen(e4(), e6(), n).series

    def test_constant_scaling(self):
        assert modified_bracket(3, e4(), 1).series == \
            modified_bracket(1, e4(), 1).series.scale(3)

    def test_unified_formula_agrees_with_case_split(self):
        # the single display with extended binomials and 1^(r) = E^(r-1)
        prec = 30
        for f, h, k, l in ((1, e4(prec), 0, 4), (e4(prec), 1, 4, 0),
                           (1, 1, 0, 0)):
            for n in (1, 2, 3):
                total = QSeries.zero(prec)
                for r in range(n + 1):
                    s = n - r
                    coeff = ext_binom(n + k - 1, s) * ext_binom(n + l - 1, r)
                    if r % 2:
                        coeff = -coeff
                    fr = one_derivative(r, prec) if k == 0 else \
                        tau_derivative(eisenstein(4, prec), r)
                    hs = one_derivative(s, prec) if l == 0 else \
                        tau_derivative(eisenstein(4, prec), s)
                    total = total + (fr * hs).scale(coeff)
                total = total.scale(TWO_PI ** (-n)).truncate(prec - 8)
                split = modified_bracket(f, h, n, check=False,
                                         prec=prec).series
                assert total == split.truncate(prec - 8)

    def test_intro_display_equals_section_formula(self):
        # the introduction's [1,1]~ display (written with derivatives of
        # E2 and the 1/144 prefactor, summation over r+s = n-2) and the
        # in-text definition (derivatives of E, r+s = n, shifted range)
        # agree exactly: the index shift lands on the same binomials by
        # the symmetry C(n-1, r+1) = C(n-1, s)
        prec = 26
        e2 = eisenstein(2, prec)
        for n in range(2, 10):
            intro = QSeries.zero(prec)
            for r in range(0, n - 1):
                s = n - 2 - r
                coeff = -ext_binom(n - 1, r) * ext_binom(n - 1, s)
                if r % 2:
                    coeff = -coeff
                term = tau_derivative(e2, r) * tau_derivative(e2, s)
                intro = intro + term.scale(coeff)
            intro = intro.scale(TWO_PI ** (-(n - 2)) * Fraction(1, 144))
            tail_c = Fraction((-1) ** n + 1, 12 * n)
            tail = tau_derivative(e2, n - 1).scale(
                tail_c * TWO_PI ** (-(n - 1)))
            total = (intro + tail).truncate(prec - n)
            section = modified_bracket(1, 1, n, prec=prec).series
            assert total == section.truncate(prec - n)


class TestCohenKuznetsov:
    def test_x0_coefficient(self):
        lifted = ck_lift(e4(), 3)
        assert lifted.coefficient(0) == \
            eisenstein(4, 36).scale(Fraction(1, factorial(3)))

    def test_x1_coefficient(self):
        lifted = ck_lift(e4(), 3)
        expected = tau_derivative(eisenstein(4, 36)).scale(
            Fraction(1, factorial(1) * factorial(4)))
        assert lifted.coefficient(1) == expected

    def test_delta_x2_coefficient(self):
        lifted = ck_lift(delta(), 2)
        expected = tau_derivative(discriminant(40), 2).scale(
            Fraction(1, factorial(2) * factorial(13)))
        assert lifted.coefficient(2) == expected

    def test_const_x0_x1_x2(self):
        lifted = ck_lift_const(4, 30)
        assert lifted.coefficient(0) == QSeries.one(30)
        e = quasimodular_E(30)
        assert lifted.coefficient(1) == e
        assert lifted.coefficient(2) == tau_derivative(e).scale(
            Fraction(1, 2))

    def test_normalized_entries_are_pi_free(self):
        lifted = ck_lift_const(6, 30)
        for n in range(7):
            assert lifted.normalized(n).is_pi_free()


class TestJacobiProducts:
    def test_const_times_e4_x0(self):
        prods = jacobi_product(ck_lift_const(6, 40), ck_lift(e4(40), 6))
        weight, series = prods[0]
        assert weight == 4
        assert series == eisenstein(4, 40).scale(Fraction(1, 6))

    def test_const_const_odd_cancellation(self):
        prods = jacobi_product(ck_lift_const(6, 40), ck_lift_const(6, 40))
        assert prods[1][1].is_zero()
        assert prods[3][1].is_zero()

    def test_const_const_x2_matches_bracket(self):
        prods = jacobi_product(ck_lift_const(6, 40), ck_lift_const(6, 40))
        assert prods[2][1] == eisenstein(4, 12).scale(Fraction(-1, 144))

    def test_membership_for_all_powers(self):
        # every X^n coefficient lands in the declared weight space
        prec = 37
        const = ck_lift_const(6, prec)
        for f in (e4(prec), e6(prec), delta(prec)):
            jacobi_product(const, ck_lift(f, 6))  # raises on failure

    def test_mismatched_truncations_rejected(self):
        with pytest.raises(ValueError):
            jacobi_product(ck_lift_const(3, 30), ck_lift(e4(30), 4))


def _proportional(kv, v):
    ratio = None
    for a, b in zip(kv, v):
        if b == 0:
            if a != 0:
                return False
        elif ratio is None:
            ratio = Fraction(a) / Fraction(b)
        elif Fraction(a) != ratio * Fraction(b):
            return False
    return True


class TestUniquenessProbe:
    def test_kernel_is_one_dimensional(self):
        for k in (4, 6, 12):
            for n in range(0, 7):
                dim, kernel = uniqueness_probe(k, n)
                assert dim == 1
                assert _proportional(kernel[0], expected_bracket_vector(k, n))

    def test_constant_map_at_n_zero(self):
        dim, kernel = uniqueness_probe(4, 0)
        assert dim == 1 and kernel[0] == [Fraction(1)]

    def test_membership_kernel_contains_bracket_vector(self):
        # the literal per-form probe can have extra kernel directions
        # because products of derivatives of a specific form collide;
        # the bracket vector is always present
        for (k, n), expected_dim in (((4, 1), 1), ((4, 2), 1), ((4, 3), 2),
                                     ((4, 4), 3), ((6, 3), 2)):
            dim, kernel = membership_kernel(k, n)
            assert dim == expected_dim
            v = expected_bracket_vector(k, n)
            if dim == 1:
                assert _proportional(kernel[0], v)
