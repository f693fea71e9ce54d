"""Liftings of modular forms to invariant global sections.

A four-tuple w of part n0 and a modular form f of weight 2n0 determine
a unique invariant state with leading term w f: correction terms pair
iterates of the nilpotent operator D with derivatives of f (or, for
constant f, with derivatives of the quasimodular combination
E = (Pi/6) E2).  This module builds those liftings, verifies the
operator-side invariance systems, assembles the graded basis, peels
invariant states back into basis liftings, extracts structure
constants against the modified Rankin-Cohen brackets, computes the
contravariant Hermitian form, drives the chiral differential, and
checks that Hecke operators commute with lifting.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .brackets import modified_bracket
from .envelope import (EnvelopeElement, adjoint, apply_operator, d_chain,
                       operator_D, rmul_zero_word)
from .exactnum import QSeries, Scalar, tau_derivative
from .fock import (CoeffFn, FockState, FourTuple, VACUUM_TUPLE, apply_mode,
                   enumerate_fourtuples, nth_product, state_G, state_J,
                   state_Q, state_virasoro)
from .modforms import (ModularForm, NotMemberError, SL2Z, basis_M, decompose,
                       hecke_T_series, quasimodular_E)


class Lifting:
    """An invariant state with a designated leading term.

    The minimal-part layer of the state is the leading tuple times the
    form; the whole state has b-degree zero, integral exponents and no
    poles at infinity.
    """

    def __init__(self, leading, form, state, operator, gamma, prec):
        self.leading = leading
        self.form = form            # ModularForm, or Scalar for constants
        self.state = state
        self.operator = operator    # the PBW operator behind the state
        self.gamma = gamma
        self.prec = prec
        if not state.is_zero() and not state.is_holomorphic():
            raise ArithmeticError("lifting failed holomorphy/b-degree checks")

    def is_zero(self):
        return self.state.is_zero()

    def part(self):
        return self.leading.part()

    def form_series(self, prec=None):
        prec = prec or self.prec
        if isinstance(self.form, Scalar):
            return QSeries.constant(self.form, prec)
        return self.form.series.truncate(min(prec, self.form.series.prec))

    def alpha_projection(self):
        """The minimal-part coefficient at the leading tuple."""
        coeff = self.state.terms.get(self.leading)
        if coeff is None:
            return QSeries.zero(self.prec)
        return coeff.series()

    def __repr__(self):
        return ("Lifting(%r, part=%d, form=%r)"
                % (self.leading, self.part(), self.form))


def _constant_scalar(c):
    c = c if isinstance(c, Scalar) else Scalar(c)
    if not c.is_rational():
        raise ValueError("constant modular forms are rational")
    return c


def lifting_coefficients(n0):
    """The c_n sequence (2n0-1)!/(n! (n+2n0-1)!) for positive part."""
    def c(n):
        return Fraction(factorial(2 * n0 - 1),
                        factorial(n) * factorial(n + 2 * n0 - 1))
    return c


def lifting_operator(w, n0):
    """The PBW operator whose application to the form gives the lifting.

    For n0 >= 1 this is sum c_n D^n(w) a_0^n including the n = 0 term;
    for n0 = 0 it is the correction sum d_n D^n(w) a_0^(n-1) (n >= 1),
    to be applied to E.  Both are finite because D kills iterates of
    creation words.
    """
    A = EnvelopeElement.zero()
    chain = d_chain(w)
    if n0 >= 1:
        c = lifting_coefficients(n0)
        for n, current in enumerate(chain):
            A = A + rmul_zero_word(current, [("a", 0)] * n).scale(c(n))
        return A
    for n, current in enumerate(chain):
        if n == 0:
            continue
        dn = Fraction(1, factorial(n) * factorial(n - 1))
        A = A + rmul_zero_word(current, [("a", 0)] * (n - 1)).scale(dn)
    return A


def lift(w, f, gamma=SL2Z, prec=None):
    """The lifting L(w, f); the zero lifting on weight mismatch.

    Nonconstant forms of weight twice the part of w enter through
    their tau-derivatives; constants enter through derivatives of
    E = (Pi/6) E2 and the d_n = 1/(n! (n-1)!) coefficients.
    """
    n0 = w.part()
    if isinstance(f, ModularForm):
        if prec is None:
            prec = f.series.prec
        if f.weight != 2 * n0:
            return Lifting(w, f, FockState.zero(), EnvelopeElement.zero(),
                           gamma, prec)
        if f.weight == 0:
            return lift(w, f.series.coefficient(0), gamma, prec)
        state = FockState.zero()
        c = lifting_coefficients(n0)
        for n, current in enumerate(d_chain(w)):
            deriv = CoeffFn.from_series(tau_derivative(f.series, n))
            state = state + apply_operator(current, deriv).scale(Scalar(c(n)))
        return Lifting(w, f, state, lifting_operator(w, n0), gamma, prec)
    # constant branch
    cval = _constant_scalar(f)
    if prec is None:
        raise ValueError("lifting a constant needs an explicit precision")
    if n0 != 0:
        return Lifting(w, cval, FockState.zero(), EnvelopeElement.zero(),
                       gamma, prec)
    e_series = quasimodular_E(prec)
    state = FockState({w: CoeffFn({0: QSeries.constant(cval, prec)})})
    for n, current in enumerate(d_chain(w)):
        if n == 0:
            continue
        dn = cval * Scalar(Fraction(1, factorial(n) * factorial(n - 1)))
        deriv = CoeffFn.from_series(tau_derivative(e_series, n - 1))
        state = state + apply_operator(current, deriv).scale(dn)
    return Lifting(w, cval, state, lifting_operator(w, 0), gamma, prec)


def state_J_tilde(prec):
    """The invariant replacement of J: the lifting of 1 with leading J."""
    return lift(FourTuple(mu=(1,), nu=(1,)), 1, prec=prec).state


def state_Q_tilde(prec):
    """The invariant replacement of Q."""
    return lift(FourTuple(lam=(1,), mu=(1,)), 1, prec=prec).state


# ---------------------------------------------------------------------------
# Invariance verification
# ---------------------------------------------------------------------------

def verify_invariance(A, n0, w=None, prec=8):
    """Check the operator equations that force Gamma-invariance.

    E.A = 0, H.A = -2 n0 A and F.A = 2 n0 A b_0; for n0 = 0 the
    equations take the constant-lifting form and, when the leading
    word is supplied, the twisted-action condition that the F zero
    mode of the leading state equals A applied to 1 is checked at the
    state level too.  Returns (ok, report dict).
    """
    report = {}
    report["E"] = adjoint("E", A).is_zero()
    report["H"] = adjoint("H", A) == A.scale(-2 * n0) if n0 else \
        adjoint("H", A) == A.scale(-2)
    rhs = rmul_zero_word(A, [("b", 0)]).scale(2 * n0 if n0 else 2)
    report["F"] = adjoint("F", A) == rhs
    if n0 == 0 and w is not None:
        from .fock import sl2_zero_mode
        lead = FockState({w: CoeffFn.one(prec)})
        lhs = sl2_zero_mode("F", lead)
        report["F0_leading"] = lhs == apply_operator(A, CoeffFn.one(prec))
    return all(report.values()), report


# ---------------------------------------------------------------------------
# Basis and decomposition
# ---------------------------------------------------------------------------

def lifting_basis(gamma, weight, charge=None, prec=30):
    """One lifting per (tuple, basis form of weight twice its part).

    Tuples of negative part never lift (no modular forms of negative
    weight); missing table data for a needed weight is an error.
    """
    out = []
    for t in enumerate_fourtuples(weight, charge=charge):
        p = t.part()
        if p < 0 or gamma.dim(2 * p) == 0:
            continue
        if p == 0:
            out.append(lift(t, 1, gamma, prec))
        else:
            for bf in basis_M(gamma, 2 * p, prec):
                out.append(lift(t, ModularForm(2 * p, bf, gamma), gamma, prec))
    return out


def decompose_liftings(s, gamma=SL2Z, margin=10):
    """Peel an invariant state into basis liftings, bottom layer first.

    The minimal-part layer's coefficient functions are decomposed in
    the modular forms of the matching weight, the corresponding
    liftings are subtracted, and the process repeats on the strictly
    higher layers.  A NotMemberError at any layer means the state is
    not an invariant section; a nonzero terminal residual is reported
    the same way.
    """
    out = []
    residual = s
    while not residual.is_zero():
        p = residual.min_part()
        layer = [(t, f) for t, f in residual.sorted_terms()
                 if t.part() == p]
        if 2 * p < 0 or gamma.dim(2 * p) == 0:
            raise NotMemberError(p, "part-%d layer has no modular forms "
                                    "to match" % p)
        for t, f in layer:
            series = f.series()
            coords = decompose(series, gamma, 2 * p, margin=margin)
            if p == 0:
                basis_lifts = [lift(t, 1, gamma, series.prec)]
            else:
                basis_lifts = [lift(t, ModularForm(2 * p, bf, gamma), gamma,
                                    series.prec)
                               for bf in basis_M(gamma, 2 * p, series.prec)]
            for coord, bl in zip(coords, basis_lifts):
                if not coord.is_zero():
                    out.append((bl, coord))
                    residual = residual - bl.state.scale(coord)
        new_min = residual.min_part()
        if new_min is not None and new_min <= p:
            raise NotMemberError(p, "layer at part %d did not clear" % p)
    return out


def ideal_filter(s, n, gamma=SL2Z, margin=10):
    """True iff every lifting in the decomposition has part >= n."""
    return all(bl.part() >= n for bl, _ in
               decompose_liftings(s, gamma, margin=margin))


# ---------------------------------------------------------------------------
# Structure constants against the modified brackets
# ---------------------------------------------------------------------------

def structure_constants(w, f1, v, f2, n, gamma=SL2Z, prec=24, margin=6):
    """Decompose a product of liftings and match modified brackets.

    Computes L(w, f1)_(n) L(v, f2), peels it into basis liftings, and
    for every output tuple checks that the attached form is a scalar
    multiple of the modified bracket of f1 and f2 whose index is the
    part jump.  Returns a list of (tuple, bracket index, constant,
    matched) entries; a False entry is a failed proportionality.
    """
    L1 = lift(w, f1, gamma, prec)
    L2 = lift(v, f2, gamma, prec)
    product = nth_product(L1.state, n, L2.state)
    if product.is_zero():
        return []
    decomp = decompose_liftings(product, gamma, margin=margin)
    k, l = w.part(), v.part()
    per_tuple = {}
    for bl, coord in decomp:
        entry = per_tuple.setdefault(bl.leading, [])
        entry.append((bl, coord))
    report = []
    for t, entries in sorted(per_tuple.items(), key=lambda kv: kv[0].sort_key()):
        m = t.part() - k - l
        total = None
        for bl, coord in entries:
            piece = bl.form_series().scale(coord)
            total = piece if total is None else total + piece
        if m < 0:
            report.append((t, m, None, total is None or total.is_zero()))
            continue
        bracket = modified_bracket(f1 if not isinstance(f1, Scalar) else f1,
                                   f2 if not isinstance(f2, Scalar) else f2,
                                   m, check=False).series
        const, matched = _proportionality(total, bracket)
        report.append((t, m, const, matched))
    return report


def _proportionality(series, reference):
    """Solve series = c * reference exactly; c may carry Pi powers."""
    if reference.is_zero():
        return None, series.is_zero()
    if series.is_zero():
        return Scalar.zero(), True
    pivot = min(reference.coeffs)
    ref_lead = reference.coeffs[pivot]
    lead = series.coeffs.get(pivot)
    if lead is None:
        return None, False
    c = lead / Scalar(ref_lead.as_fraction())
    return c, series == reference.scale(c)


# ---------------------------------------------------------------------------
# Hermitian form
# ---------------------------------------------------------------------------

_ALPHA = {
    # anti-involution on modes: alpha(a_n) = n b_{-n}, alpha(b_n) = -a_{-n}/n,
    # alpha(psi_n) = phi_{-n}, alpha(phi_n) = psi_{-n}
    "a": lambda j: ("b", -j, Fraction(j)),
    "b": lambda j: ("a", -j, Fraction(-1, j)),
    "psi": lambda j: ("phi", -j, Fraction(1)),
    "phi": lambda j: ("psi", -j, Fraction(1)),
}


def hermitian_form(u, v):
    """The contravariant Hermitian form on constant-coefficient states.

    Linear in the first slot, antilinear in the second, normalized by
    (1, 1) = 1; creation monomials are orthogonal.  Reduction moves
    modes off the first argument through the anti-involution.
    """
    total = Scalar.zero()
    for t, f in u.terms.items():
        cu = _constant_coefficient(f)
        total = total + _form_term(t, v) * cu
    return total


def _constant_coefficient(f):
    if not f.is_b_free():
        raise ValueError("the form is defined on constant coefficients")
    series = f.series()
    for e, c in series.coeffs.items():
        if e != 0:
            raise ValueError("the form is defined on constant coefficients")
    return series.coefficient(0)


def _form_term(t, v):
    word = t.modes()
    if not word:
        vac = v.terms.get(VACUUM_TUPLE)
        if vac is None:
            return Scalar.zero()
        return _constant_coefficient(vac).conjugate()
    sym, idx = word[0]
    asym, aidx, acoeff = _ALPHA[sym](idx)
    reduced = apply_mode(asym, aidx, v).scale(Scalar(acoeff))
    rest = FourTuple(*_strip_first(t))
    return _form_term(rest, reduced)


def _strip_first(t):
    if t.lam:
        return t.lam[1:], t.mu, t.nu, t.chi
    if t.mu:
        return t.lam, t.mu[1:], t.nu, t.chi
    if t.nu:
        return t.lam, t.mu, t.nu[1:], t.chi
    return t.lam, t.mu, t.nu, t.chi[1:]


# ---------------------------------------------------------------------------
# Chiral differential and weight-zero cohomology
# ---------------------------------------------------------------------------

def chiral_differential(s, prec=None):
    """d^ch = -(Q-tilde zero mode); equals -(Q zero mode) on all states."""
    if prec is None:
        precs = [f.prec() for f in s.terms.values()]
        prec = min(precs) if precs else 8
    return nth_product(state_Q_tilde(prec), 0, s).scale(Scalar(-1))


def chiral_differential_plain(s, prec=None):
    """The same differential through the bare odd vector Q."""
    if prec is None:
        precs = [f.prec() for f in s.terms.values()]
        prec = min(precs) if precs else 8
    return nth_product(state_Q(prec), 0, s).scale(Scalar(-1))


def cohomology_weight0(gamma=SL2Z, prec=20):
    """Dimensions of the weight-zero cohomology in charges 0 and 1.

    The weight-zero complex is the span of the vacuum in charge zero
    and the liftings of weight-2 forms with leading term phi_0 in
    charge one; the differential is evaluated honestly and ranks are
    taken exactly.
    """
    c0 = [FockState.vacuum(prec)]
    c1 = [lift(FourTuple(mu=(1,)), ModularForm(2, bf, gamma), gamma,
               prec).state
          for bf in basis_M(gamma, 2, prec)] if gamma.dim(2) else []
    d0 = [chiral_differential(s, prec) for s in c0]
    d1 = [chiral_differential(s, prec) for s in c1]
    rank_d0 = _state_rank(d0)
    rank_d1 = _state_rank(d1)
    h0 = len(c0) - rank_d0
    h1 = len(c1) - rank_d1 - rank_d0
    return {0: h0, 1: h1}


def _state_rank(states):
    states = [s for s in states if not s.is_zero()]
    if not states:
        return 0
    columns = {}
    for s in states:
        for t, f in s.terms.items():
            for j, g in f.terms.items():
                for e, c in g.coeffs.items():
                    for d in c.pi_degrees():
                        columns.setdefault((t, j, e, d), len(columns))
    rows = []
    for s in states:
        row = [Fraction(0)] * len(columns)
        for t, f in s.terms.items():
            for j, g in f.terms.items():
                for e, c in g.coeffs.items():
                    for d, val in c.terms.items():
                        row[columns[(t, j, e, d)]] = val
        rows.append(row)
    return linalg.rank(rows)


# ---------------------------------------------------------------------------
# Hecke action on invariant states
# ---------------------------------------------------------------------------

def hecke_state(state, weight_k, n):
    """T_k(n) on an invariant state via upper-triangular cosets.

    Summing the action over the shears b mod d multiplies each
    monomial by (n/d^2)^part and filters its coefficient exactly like
    the weight-zero coset sum of q-series; the n^(k/2 - 1) prefactor
    matches the classical normalization.
    """
    from .modforms import slash_sum_b, _det_power
    pref = _det_power(n, weight_k) / Fraction(n)
    total = FockState.zero()
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for t, f in state.terms.items():
            if not f.is_b_free():
                raise ValueError("Hecke action needs b-degree-0 states")
            summed = slash_sum_b(f.series(), 0, a, d)
            scalar = Fraction(n, d * d) ** t.part()
            piece = FockState({t: CoeffFn.from_series(summed)})
            total = total + piece.scale(Scalar(scalar))
    return total.scale(Scalar(pref))


def hecke_commutation_check(w, f, n, gamma=SL2Z, prec=40, target_prec=10):
    """Prop-style commutation: T(n) of a lifting is the lifting of T(n) f.

    Both sides are computed independently: the left through the coset
    action on the invariant state, the right by lifting the Hecke
    image of the form.  Returns (ok, lhs, rhs) at the target precision.
    """
    if isinstance(f, ModularForm):
        weight = f.weight
        L = lift(w, f, gamma, prec)
        tf = ModularForm(weight, hecke_T_series(weight, n, f.series), gamma)
        rhs = lift(w, tf, gamma, tf.series.prec).state
    else:
        weight = 0
        L = lift(w, f, gamma, prec)
        image = hecke_T_series(0, n, QSeries.constant(_constant_scalar(f),
                                                      prec))
        rhs = lift(w, image.coefficient(0), gamma, image.prec).state
    lhs = hecke_state(L.state, weight, n)
    ok = _truncate_state(lhs, target_prec) == _truncate_state(rhs, target_prec)
    return ok, lhs, rhs


def _truncate_state(s, prec):
    terms = {}
    for t, f in s.terms.items():
        terms[t] = CoeffFn({j: g.truncate(min(prec, g.prec))
                            for j, g in f.terms.items()})
    return FockState(terms)
