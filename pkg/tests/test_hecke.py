from fractions import Fraction

import pytest

from chiralforms.exactnum import PrecisionError, QSeries
from chiralforms.fock import FourTuple
from chiralforms.lifting import hecke_commutation_check, lift
from chiralforms.modforms import (ModularForm, SL2Z, discriminant,
                                  eisenstein, hecke_T, hecke_T_cosets,
                                  hecke_T_series, sigma)


def form(k, prec):
    if k == 12:
        return ModularForm(12, discriminant(prec))
    return ModularForm(k, eisenstein(k, prec))


class TestCoefficientFormula:
    def test_eigenvalues_on_e4(self):
        e4 = form(4, 41)
        assert hecke_T(4, 2, e4).series == eisenstein(4, 20).scale(9)
        e4 = form(4, 61)
        assert hecke_T(4, 3, e4).series == eisenstein(4, 20).scale(28)

    def test_identity_operator(self):
        e6 = form(6, 15)
        assert hecke_T(6, 1, e6).series == e6.series

    def test_tau_of_two(self):
        delta = form(12, 41)
        assert hecke_T(12, 2, delta).series == discriminant(20).scale(-24)

    def test_eisenstein_eigenvalue_general(self):
        # T_k(n) E_k = sigma_{k-1}(n) E_k for level 1
        for k, n in ((4, 5), (6, 4)):
            f = form(k, 20 * n + 1)
            assert hecke_T(k, n, f).series == \
                eisenstein(k, 20).scale(sigma(n, k - 1))

    def test_precision_drops_by_the_index(self):
        out = hecke_T_series(4, 30, eisenstein(4, 20))
        assert out.prec == 1
        with pytest.raises(PrecisionError):
            out.coefficient(1)


class TestCosetAgreement:
    def test_formula_vs_cosets(self):
        for k, n in ((4, 2), (4, 3), (6, 2), (6, 3), (12, 2), (12, 3)):
            f = form(k, 20 * n + 1)
            assert hecke_T_cosets(k, n, f.series) == \
                hecke_T_series(k, n, f.series)


class TestMultiplicativity:
    def test_coprime_composition(self):
        for k in (4, 6, 12):
            f = form(k, 95)
            t6 = hecke_T_series(k, 6, f.series)
            t2_t3 = hecke_T_series(k, 2, hecke_T_series(k, 3, f.series))
            assert t6.truncate(15) == t2_t3.truncate(15)


class TestLiftingCommutation:
    def test_weight4_leading_tuple(self):
        e4 = ModularForm(4, eisenstein(4, 44))
        ok, _, _ = hecke_commutation_check(FourTuple(mu=(1,), chi=(1,)), e4,
                                           2, prec=44, target_prec=10)
        assert ok

    def test_constant_with_anomaly(self):
        ok, _, _ = hecke_commutation_check(FourTuple(mu=(1,), nu=(1,)), 1, 2,
                                           prec=44, target_prec=10)
        assert ok

    def test_trivial_index(self):
        ok, _, _ = hecke_commutation_check(FourTuple(mu=(1,), nu=(1,)), 1, 1,
                                           prec=24, target_prec=10)
        assert ok

    def test_index_three(self):
        ok, _, _ = hecke_commutation_check(FourTuple(mu=(1,), nu=(1,)), 1, 3,
                                           prec=63, target_prec=10)
        assert ok
