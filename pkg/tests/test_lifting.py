import itertools
import random
from fractions import Fraction

import pytest

from chiralforms.envelope import EnvelopeElement
from chiralforms.exactnum import QSeries, Scalar, tau_derivative
from chiralforms.fock import (CoeffFn, FockState, FourTuple, VACUUM_TUPLE,
                              enumerate_fourtuples, nth_product, state_G,
                              state_J, state_Q, state_virasoro)
from chiralforms.lifting import (Lifting, chiral_differential,
                                 chiral_differential_plain,
                                 cohomology_weight0, decompose_liftings,
                                 hermitian_form, ideal_filter, lift,
                                 lifting_basis, lifting_coefficients,
                                 state_J_tilde, state_Q_tilde,
                                 structure_constants, verify_invariance,
                                 _state_rank)
from chiralforms.modforms import (ModularForm, NotMemberError, SL2Z,
                                  build_gamma0_2, eisenstein)

P = 20

J_TUPLE = FourTuple(mu=(1,), nu=(1,))
Q_TUPLE = FourTuple(lam=(1,), mu=(1,))
G_TUPLE = FourTuple(nu=(1,), chi=(1,))


def e4_form(prec=P):
    return ModularForm(4, eisenstein(4, prec))


class TestDistinguishedLiftings:
    def test_J_tilde_display(self):
        expected = (state_J(P)
                    + FockState.monomial(
                        FourTuple(chi=(1,)),
                        eisenstein(2, P).scale(Scalar.pi(1, Fraction(1, 3)))))
        assert state_J_tilde(P) == expected

    def test_Q_tilde_display(self):
        e2 = eisenstein(2, P)
        minus_third = Scalar.pi(1, Fraction(-1, 3))
        expected = (state_Q(P)
                    + FockState.monomial(FourTuple(mu=(2,)),
                                         e2.scale(minus_third))
                    + FockState.monomial(FourTuple(mu=(1,), chi=(1,)),
                                         tau_derivative(e2).scale(
                                             minus_third)))
        assert state_Q_tilde(P) == expected

    def test_invariant_vectors_lift_to_themselves(self):
        # omega and G are already invariant: their liftings of 1 add
        # nothing
        omega_parts = [FourTuple(lam=(1,), chi=(1,)), FourTuple(mu=(2,),
                                                                nu=(1,))]
        total = FockState.zero()
        for t in omega_parts:
            total = total + lift(t, 1, prec=P).state
        assert total == state_virasoro(P)
        assert lift(G_TUPLE, 1, prec=P).state == state_G(P)


class TestLiftMechanics:
    def test_coefficient_sequence(self):
        c = lifting_coefficients(2)
        assert c(0) == 1 and c(1) == Fraction(1, 4)
        assert c(2) == Fraction(6, 2 * 120)

    def test_alpha_projection_recovers_form(self):
        L = lift(FourTuple(mu=(1,), chi=(1,)), e4_form())
        assert L.alpha_projection() == eisenstein(4, P)

    def test_weight_mismatch_gives_zero(self):
        L = lift(FourTuple(chi=(1,)), e4_form())
        assert L.is_zero()
        L = lift(FourTuple(mu=(1,), chi=(1,)), 1, prec=P)
        assert L.is_zero()

    def test_constant_scaling(self):
        three = lift(J_TUPLE, 3, prec=P)
        one = lift(J_TUPLE, 1, prec=P)
        assert three.state == one.state.scale(3)

    def test_weight0_form_routes_to_constant(self):
        f = ModularForm(0, QSeries.constant(2, P))
        assert lift(J_TUPLE, f, prec=P).state == \
            lift(J_TUPLE, 2, prec=P).state

    def test_liftings_are_b_free_and_holomorphic(self):
        for L in lifting_basis(SL2Z, 2, None, prec=P):
            assert L.state.is_holomorphic()

    def test_t_invariance_integral_exponents(self):
        for L in lifting_basis(SL2Z, 2, None, prec=P):
            for f in L.state.terms.values():
                assert f.series().has_integral_exponents()


class TestVerifyInvariance:
    def test_constructed_liftings_pass(self):
        cases = [(J_TUPLE, 1), (Q_TUPLE, 1),
                 (FourTuple(mu=(1,), chi=(1,)), e4_form()),
                 (FourTuple(mu=(2, 1)), e4_form())]
        for w, f in cases:
            L = lift(w, f, prec=P)
            n0 = w.part()
            ok, report = verify_invariance(L.operator, n0,
                                           w=w if n0 == 0 else None)
            assert ok, report

    def test_bare_J_fails(self):
        ok, report = verify_invariance(EnvelopeElement.from_tuple(J_TUPLE), 0)
        assert not ok
        assert report["F"] is False

    def test_identity_word_trivial(self):
        ok, _ = verify_invariance(EnvelopeElement.zero(), 0, w=VACUUM_TUPLE)
        assert ok


class TestLiftingBasis:
    def test_weight_zero(self):
        basis = lifting_basis(SL2Z, 0, 0, prec=P)
        assert len(basis) == 1
        assert basis[0].leading == VACUUM_TUPLE

    def test_weight_one_census(self):
        basis = lifting_basis(SL2Z, 1, None, prec=P)
        leadings = sorted(repr(L.leading) for L in basis)
        assert leadings == sorted(["phi[0]psi[-1]", "a[-1]phi[0]",
                                   "phi[0]b[-1]", "phi[-1]phi[0]"])

    def test_zero_dims_table_lifts_only_part_zero(self):
        from chiralforms.modforms import GammaDescriptor
        gamma = GammaDescriptor(
            "user", name="onlyconst",
            dims={k: (1 if k == 0 else 0) for k in range(0, 20, 2)},
            bases={0: [QSeries.one(P)]}, prec=P)
        basis = lifting_basis(gamma, 1, None, prec=P)
        assert all(L.part() == 0 for L in basis)
        assert len(basis) == 2

    def test_counts_match_census_formula(self):
        for weight in (0, 1, 2, 3):
            basis = lifting_basis(SL2Z, weight, None, prec=P)
            expected = 0
            for t in enumerate_fourtuples(weight):
                expected += SL2Z.dim(2 * t.part()) if t.part() >= 0 else 0
            assert len(basis) == expected

    def test_family_is_linearly_independent(self):
        for weight, charge in ((1, 0), (2, 0), (2, 1)):
            basis = lifting_basis(SL2Z, weight, charge, prec=16)
            if basis:
                rank = _state_rank([L.state for L in basis])
                assert rank == len(basis)


class TestDecomposeLiftings:
    def test_single_basis_lifting(self):
        dec = decompose_liftings(state_J_tilde(P))
        assert len(dec) == 1
        assert dec[0][0].leading == J_TUPLE
        assert dec[0][1] == Scalar(1)

    def test_linear_combination_recovery(self):
        L1 = lift(FourTuple(mu=(1,), chi=(1,)), e4_form())
        combo = (state_J_tilde(P).scale(Scalar(3))
                 + L1.state.scale(Scalar.pi(2, Fraction(5, 7))))
        dec = decompose_liftings(combo)
        coeffs = {repr(L.leading): c for L, c in dec}
        assert coeffs["phi[0]psi[-1]"] == Scalar(3)
        assert coeffs["phi[0]b[-1]"] == Scalar.pi(2, Fraction(5, 7))

    def test_non_invariant_state_rejected(self):
        bad = FockState.monomial(FourTuple(mu=(1,), chi=(1,)),
                                 eisenstein(2, P))
        with pytest.raises(NotMemberError):
            decompose_liftings(bad)

    def test_negative_part_rejected(self):
        bad = FockState.monomial(FourTuple(lam=(1,)), QSeries.one(P))
        with pytest.raises(NotMemberError):
            decompose_liftings(bad)

    def test_closure_under_products(self):
        # omega_(n) L terminates with zero residual for basis liftings
        omega = state_virasoro(16)
        for L in lifting_basis(SL2Z, 2, None, prec=16):
            for n in (0, 1):
                p = nth_product(omega, n, L.state)
                if not p.is_zero():
                    decompose_liftings(p, margin=4)


class TestIdealFilter:
    def test_examples(self):
        assert ideal_filter(state_J_tilde(P), 0)
        assert not ideal_filter(state_J_tilde(P), 1)
        L = lift(FourTuple(mu=(1,), chi=(1,)), e4_form())
        assert ideal_filter(L.state, 2)

    def test_products_stay_in_ideal(self):
        rng = random.Random(31)
        members = [L for L in lifting_basis(SL2Z, 1, None, prec=16)
                   + lifting_basis(SL2Z, 2, None, prec=16)
                   if L.part() >= 1]
        pairs = 0
        while pairs < 10:
            L1, L2 = rng.choice(members), rng.choice(members)
            n = rng.randint(0, 2)
            p = nth_product(L1.state, n, L2.state)
            if p.is_zero():
                continue
            assert ideal_filter(p, 1, margin=4)
            pairs += 1


class TestHermitianForm:
    def test_normalization(self):
        one = FockState.vacuum(P)
        assert hermitian_form(one, one) == Scalar(1)

    def test_orthogonality_of_monomials(self):
        tuples = enumerate_fourtuples(2)
        for t1, t2 in itertools.combinations(tuples, 2):
            s1 = FockState.monomial(t1, QSeries.one(P))
            s2 = FockState.monomial(t2, QSeries.one(P))
            assert hermitian_form(s1, s2).is_zero()

    def test_two_step_reduction(self):
        s = FockState.monomial(FourTuple(lam=(1,), chi=(1,)), QSeries.one(P))
        assert hermitian_form(s, s) == Scalar(1)

    def test_antilinear_in_second_argument(self):
        one = FockState.vacuum(P)
        scaled = one.scale(Scalar.pi(1, 2))
        assert hermitian_form(one, scaled) == Scalar.pi(1, -2)
        assert hermitian_form(scaled, one) == Scalar.pi(1, 2)

    def test_gram_on_part0_weight_le_3(self):
        # diagonal and positive: simplicity evidence for the quotient
        for w in range(0, 4):
            tuples = enumerate_fourtuples(w, part=0)
            states = [FockState.monomial(t, QSeries.one(8)) for t in tuples]
            for i, s1 in enumerate(states):
                for j, s2 in enumerate(states):
                    g = hermitian_form(s1, s2)
                    if i == j:
                        assert g.is_rational() and g.as_fraction() > 0
                    else:
                        assert g.is_zero()

    def test_nonconstant_coefficients_rejected(self):
        s = FockState.monomial(J_TUPLE, eisenstein(2, P))
        with pytest.raises(ValueError):
            hermitian_form(s, s)


class TestChiralDifferential:
    def test_kills_vacuum(self):
        assert chiral_differential(FockState.vacuum(P)).is_zero()

    def test_squares_to_zero_weight_le_3(self):
        for w in range(0, 4):
            for t in enumerate_fourtuples(w):
                s = FockState.monomial(t, QSeries.one(8))
                dd = chiral_differential(chiral_differential(s, 8), 8)
                assert dd.is_zero(), t

    def test_tilde_and_plain_agree(self):
        for w in range(0, 3):
            for t in enumerate_fourtuples(w):
                s = FockState.monomial(t, QSeries.one(8))
                assert chiral_differential(s, 8) == \
                    chiral_differential_plain(s, 8)

    def test_supercommutator_with_G_is_weight(self):
        G = state_G(8)
        Qt = state_Q_tilde(8)
        L = state_virasoro(8)
        for w in range(0, 4):
            for t in enumerate_fourtuples(w):
                s = FockState.monomial(t, QSeries.one(8))
                lhs = (nth_product(Qt, 0, nth_product(G, 1, s))
                       + nth_product(G, 1, nth_product(Qt, 0, s)))
                assert lhs == nth_product(L, 1, s), t

    def test_cohomology_level_one(self):
        assert cohomology_weight0(SL2Z, prec=12) == {0: 1, 1: 0}

    def test_cohomology_user_table(self):
        # a group with one weight-2 form: H^1 picks it up
        gamma = build_gamma0_2(prec=16, max_weight=8)
        assert cohomology_weight0(gamma, prec=12) == {0: 1, 1: 1}


class TestStructureConstants:
    def test_vacuum_identity(self):
        vac = lift(VACUUM_TUPLE, 1, prec=16)
        L = lift(FourTuple(mu=(1,), chi=(1,)), e4_form(16))
        assert nth_product(vac.state, -1, L.state) == L.state

    def test_J_tilde_charge_eigenvector(self):
        jt = state_J_tilde(16)
        assert nth_product(jt, 0, jt).is_zero()

    def test_J_tilde_pairing_constant(self):
        rep = structure_constants(J_TUPLE, 1, J_TUPLE, 1, 1, prec=16,
                                  margin=4)
        assert rep == [(VACUUM_TUPLE, 0, Scalar(1), True)]

    def test_products_of_basis_liftings_match_brackets(self):
        basis = []
        for w in (0, 1, 2):
            basis.extend((L.leading, L.form)
                         for L in lifting_basis(SL2Z, w, None, prec=16))
        rng = random.Random(53)
        samples = rng.sample(list(itertools.product(basis, basis)), 24)
        for (w1, f1), (w2, f2) in samples:
            for n in (0, 1, 2):
                report = structure_constants(w1, f1, w2, f2, n, prec=16,
                                             margin=4)
                assert all(ok for (_, _, _, ok) in report), (w1, f1, w2,
                                                             f2, n, report)
