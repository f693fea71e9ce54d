"""Exact computer algebra for the chiral de Rham complex on the upper
half plane: free-field Fock calculus, liftings of modular forms,
modified Rankin-Cohen brackets, Hecke operators, and character
formulas, all over exact rationals with a formal pi*i symbol."""

from .exactnum import PrecisionError, QSeries, Scalar, rebase, tau_derivative, theta
from .fock import (CoeffFn, FockState, FourTuple, apply_fn_mode, apply_mode,
                   enumerate_fourtuples, nth_product, sl2_zero_mode)
from .modforms import (GammaDescriptor, ModularForm, NotMemberError, SL2Z,
                       basis_M, decompose, dim_M, discriminant, eisenstein,
                       hecke_T, load_gamma_table, slash_sum_b, slash_upper,
                       t_prime)
from .brackets import (JacobiLikeSeries, ck_lift, ck_lift_const,
                       jacobi_product, modified_bracket, rankin_cohen,
                       uniqueness_probe)
from .envelope import (EnvelopeElement, adjoint, apply_operator, casimir,
                       normal_order, operator_D)
from .lifting import (Lifting, chiral_differential, cohomology_weight0,
                      decompose_liftings, hecke_commutation_check,
                      hermitian_form, ideal_filter, lift, lifting_basis,
                      structure_constants, verify_invariance)
from .character import (CharacterSeries, char_closed, char_enumerate,
                        char_from_basis)

__version__ = "0.1.0"
