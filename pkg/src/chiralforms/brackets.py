"""Rankin-Cohen brackets, modified brackets, and Jacobi-like series.

The classical n-th bracket sends M_k x M_l to M_{k+l+2n}.  Extending it
to constant arguments requires the quasimodular combination
E = (Pi/6) E2, whose derivatives play the role of "derivatives of 1":
1^(r) means E^(r-1) for r >= 1.  All derivative bookkeeping is done with
theta and explicit powers of 2*Pi, so the 1/(2 pi i)^n prefactors cancel
symbolically and every bracket output is Pi-free.

Combinatorial convention: (-1)! := 1, so the extended binomial
C(n-1, n) = 1/n; this is what makes the r = 0 term of the modified
bracket come out as f^(n)/n.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .exactnum import QSeries, Scalar, TWO_PI, tau_derivative, theta
from .modforms import (ModularForm, NotMemberError, SL2Z, basis_M, decompose,
                       quasimodular_E)


def fact_ext(m):
    """Factorial with the convention (-1)! = 1."""
    if m == -1:
        return Fraction(1)
    if m < -1:
        raise ValueError("(%d)! is not defined" % m)
    return Fraction(factorial(m))


def ext_binom(a, b):
    """Extended binomial a!/(b! (a-b)!), allowing a - b = -1."""
    if b < 0:
        raise ValueError("lower index must be nonnegative")
    return fact_ext(a) / (fact_ext(b) * fact_ext(a - b))


def one_derivative(r, prec):
    """The formal r-th derivative of the constant 1: E^(r-1) for r >= 1."""
    if r == 0:
        return QSeries.one(prec)
    return tau_derivative(quasimodular_E(prec), r - 1)


def _is_constant(f):
    return isinstance(f, (int, Fraction, Scalar))


def _constant_scalar(f):
    c = f if isinstance(f, Scalar) else Scalar(f)
    if not c.is_rational():
        raise ValueError("constant modular forms are rational")
    return c


def _common_gamma(f, h):
    gammas = [x.gamma for x in (f, h) if isinstance(x, ModularForm)]
    if len(gammas) == 2 and gammas[0] is not gammas[1]:
        raise ValueError("bracket arguments live on different groups")
    return gammas[0] if gammas else SL2Z


def rankin_cohen(f, h, n, check=True, margin=10):
    """The n-th Rankin-Cohen bracket of two modular forms.

    Constant arguments delegate to the modified bracket.  The result is
    decomposed in M_{k+l+2n} as a self-check; failure there is an
    implementation fault and is raised loudly.
    """
    if _is_constant(f) or _is_constant(h):
        return modified_bracket(f, h, n, check=check, margin=margin)
    gamma = _common_gamma(f, h)
    k, l = f.weight, h.weight
    prec = min(f.series.prec, h.series.prec)
    total = QSeries.zero(prec)
    for r in range(n + 1):
        s = n - r
        coeff = ext_binom(n + k - 1, s) * ext_binom(n + l - 1, r)
        if r % 2:
            coeff = -coeff
        term = tau_derivative(f.series, r) * tau_derivative(h.series, s)
        total = total + term.scale(coeff)
    return _finish_bracket(total, n, k + l + 2 * n, gamma, check, margin)


def modified_bracket(f, h, n, check=True, margin=10, prec=None):
    """The n-th modified Rankin-Cohen bracket, allowing constants.

    Case split: both nonconstant gives the classical bracket; a single
    constant factors out and contributes derivatives of E in place of
    its own derivatives; two constants give the quasimodular bracket
    [1,1]~_n, which is nonzero exactly for even n.  The precision
    argument matters only for the constant-constant case, where no
    operand carries one.
    """
    if not _is_constant(f) and not _is_constant(h):
        return rankin_cohen(f, h, n, check=check, margin=margin)
    gamma = _common_gamma(f, h)
    if _is_constant(f) and _is_constant(h):
        c = _constant_scalar(f) * _constant_scalar(h)
        if prec is None:
            prec = _default_bracket_prec(n, margin)
        series = _one_one_bracket(n, prec).scale(c)
        return _finish_bracket(series, n, 2 * n, gamma, check, margin)
    if _is_constant(f):
        c = _constant_scalar(f)
        base = _one_f_bracket(h, n)
    else:
        c = _constant_scalar(h)
        base = _one_f_bracket(f, n)
        if n % 2:
            c = -c
    weight = (h.weight if _is_constant(f) else f.weight) + 2 * n
    return _finish_bracket(base.scale(c), n, weight, gamma, check, margin)


def _one_f_bracket(f, n):
    """[1, f]~_n before the (2 Pi)^(-n) normalization strip."""
    k = f.weight
    prec = f.series.prec
    total = QSeries.zero(prec)
    for r in range(n + 1):
        s = n - r
        coeff = ext_binom(n - 1, s) * ext_binom(n + k - 1, r)
        if r % 2:
            coeff = -coeff
        term = one_derivative(r, prec) * tau_derivative(f.series, s)
        total = total + term.scale(coeff)
    return total


def _one_one_bracket(n, prec):
    total = QSeries.zero(prec)
    for r in range(n + 1):
        s = n - r
        coeff = ext_binom(n - 1, s) * ext_binom(n - 1, r)
        if r % 2:
            coeff = -coeff
        term = one_derivative(r, prec) * one_derivative(s, prec)
        total = total + term.scale(coeff)
    return total


def _default_bracket_prec(n, margin):
    from .modforms import dim_sl2z
    return max(2 * n + dim_sl2z(2 * n) + margin, 12)


def _finish_bracket(series, n, weight, gamma, check, margin):
    series = series.scale(TWO_PI ** (-n)) if n else series
    if not series.is_pi_free():
        raise ArithmeticError("bracket left a nonzero Pi-degree residue; "
                              "this is an internal fault")
    form = ModularForm(weight, series, gamma)
    if check:
        decompose(series, gamma, weight, margin=margin)
    return form


# ---------------------------------------------------------------------------
# Jacobi-like series
# ---------------------------------------------------------------------------

class JacobiLikeSeries:
    """X-truncated Jacobi-like series of a declared weight.

    The coefficient of X^n is stored divided by (2 Pi)^n, which keeps
    every entry Pi-free; ``coefficient`` reinstates the powers.
    """

    def __init__(self, weight, xcoeffs, gamma=SL2Z):
        self.weight = weight
        self.xcoeffs = list(xcoeffs)
        self.gamma = gamma
        for s in self.xcoeffs:
            if not s.is_pi_free():
                raise ValueError("normalized X-coefficients must be Pi-free")

    @property
    def xmax(self):
        return len(self.xcoeffs) - 1

    def normalized(self, n):
        return self.xcoeffs[n]

    def coefficient(self, n):
        """The true coefficient of X^n, carrying its (2 Pi)^n weight."""
        return self.xcoeffs[n].scale(TWO_PI ** n)

    def __repr__(self):
        return ("JacobiLikeSeries(weight=%d, xmax=%d)"
                % (self.weight, self.xmax))


def ck_lift(f, xmax):
    """Cohen-Kuznetsov lifting: X^n carries f^(n)/(n! (n+k-1)!)."""
    if not isinstance(f, ModularForm) or f.weight < 1:
        raise ValueError("ck_lift needs a modular form of positive weight")
    k = f.weight
    coeffs = []
    for n in range(xmax + 1):
        c = Fraction(1, factorial(n) * factorial(n + k - 1))
        coeffs.append(theta_power(f.series, n).scale(c))
    return JacobiLikeSeries(k, coeffs, f.gamma)


def ck_lift_const(xmax, prec):
    """Generalized Cohen-Kuznetsov lifting of the constant 1.

    X^0 is 1 and X^n carries E^(n-1)/(n! (n-1)!); normalized by
    (2 Pi)^n this is theta^(n-1) E2 / (12 n! (n-1)!).
    """
    coeffs = [QSeries.one(prec)]
    e2 = None
    for n in range(1, xmax + 1):
        if e2 is None:
            from .modforms import eisenstein
            e2 = eisenstein(2, prec)
        c = Fraction(1, 12 * factorial(n) * factorial(n - 1))
        coeffs.append(theta_power(e2, n - 1).scale(c))
    return JacobiLikeSeries(0, coeffs)


def theta_power(series, n):
    """theta^n of a series: the Pi-free normalization of d^n/dtau^n."""
    out = series
    for _ in range(n):
        out = theta(out)
    return out


def jacobi_product(phi, psi, check=True, margin=10):
    """Coefficients of phi(tau, -X) * psi(tau, X), with declared weights.

    Returns a list of (weight, series) pairs where the series is the
    Pi-free normalized X^n coefficient; each one must decompose in the
    space of its declared weight, and a failure reports the X-power.
    """
    if phi.xmax != psi.xmax:
        raise ValueError("factors must share the same X-truncation")
    out = []
    for n in range(phi.xmax + 1):
        total = None
        for i in range(n + 1):
            term = phi.normalized(i) * psi.normalized(n - i)
            if i % 2:
                term = -term
            total = term if total is None else total + term
        weight = phi.weight + psi.weight + 2 * n
        if check:
            try:
                decompose(total, _common_jacobi_gamma(phi, psi), weight,
                          margin=margin)
            except NotMemberError as exc:
                raise NotMemberError(
                    exc.exponent,
                    "X^%d coefficient is not modular of weight %d "
                    "(first failing exponent %s)" % (n, weight, exc.exponent))
        out.append((weight, total))
    return out


def _common_jacobi_gamma(phi, psi):
    if phi.gamma is not psi.gamma and not (phi.gamma.is_sl2z()
                                           and psi.gamma.is_sl2z()):
        raise ValueError("factors live on different groups")
    return phi.gamma


# ---------------------------------------------------------------------------
# Uniqueness of the modified bracket (numeric kernel probe)
# ---------------------------------------------------------------------------

def uniqueness_probe(k, n):
    """Kernel of the universal-combination constraints (formal form).

    Unknown coefficients c_{r,s} (r + s = n) multiply 1^(r) f^(s) for a
    weight-k modular form f whose derivatives are treated as formal
    symbols.  Requiring the combination to transform with weight k+2n
    under a generic group element, using the exact transformation laws
    of E and of derivatives of modular forms, yields a rational linear
    system on the c's.  Returns (kernel dimension, kernel vectors); the
    kernel is one-dimensional, spanned by the modified-bracket vector.

    A literal per-form probe on q-coefficients is membership_kernel;
    its kernel can be larger because specific products of derivatives
    collide as functions, but every combination it admits is still a
    scalar multiple of the bracket.
    """
    equations = {}    # (symbol m, symbol t, gamma power, u power) -> row
    for r in range(n + 1):
        s = n - r
        for (m, a1, b1), c1 in _one_transform(r).items():
            for (t, a2, b2), c2 in _deriv_transform(s, k).items():
                key = (m, t, a1 + a2, b1 + b2)
                row = equations.setdefault(key, [Fraction(0)] * (n + 1))
                row[r] += c1 * c2
        key = (r, s, 0, k + 2 * n)
        row = equations.setdefault(key, [Fraction(0)] * (n + 1))
        row[r] -= 1
    kernel = linalg.kernel_basis(list(equations.values()), n + 1)
    return len(kernel), kernel


def _one_transform(r):
    """Transformation of 1^(r) as monomials gamma^a u^b times symbols 1^(m).

    u stands for (gamma tau + delta); the m = 0 entry is the
    inhomogeneous quasimodular anomaly term.
    """
    if r == 0:
        return {(0, 0, 0): Fraction(1)}
    out = {}
    norm = factorial(r - 1) * factorial(r)
    for m in range(1, r + 1):
        c = Fraction(norm, factorial(r - m) * factorial(m - 1) * factorial(m))
        out[(m, r - m, m + r)] = c
    out[(0, r, r)] = Fraction(norm, factorial(r))
    return out


def _deriv_transform(s, k):
    """Transformation of f^(s) for f of weight k, as gamma^a u^b f^(t)."""
    out = {}
    norm = factorial(s) * factorial(s + k - 1)
    for t in range(s + 1):
        c = Fraction(norm, factorial(s - t) * factorial(t)
                     * factorial(t + k - 1))
        out[(t, s - t, k + s + t)] = c
    return out


def membership_kernel(k, n, prec=None, margin=10):
    """Kernel of the literal q-coefficient membership constraints.

    For each basis form f of M_k(SL2Z), membership of the combination
    in M_{k+2n}(SL2Z) is imposed coefficientwise.  This is the blunt
    version of uniqueness_probe: products of derivatives of a specific
    form can coincide, so the kernel may pick up directions whose
    combination is the identically-zero function.
    """
    if prec is None:
        prec = 2 * (n + 1) + dim_target(k, n) + margin + 10
    target_basis = basis_M(SL2Z, k + 2 * n, prec)
    rows = []
    for f in basis_M(SL2Z, k, prec):
        residuals = []
        for r in range(n + 1):
            s = n - r
            term = one_derivative(r, prec) * tau_derivative(f, s)
            term = term.scale(TWO_PI ** (-n)).truncate(prec)
            residuals.append(_residual_against(term, target_basis))
        exponents = sorted(set().union(*[set(res) for res in residuals]))
        for e in exponents:
            rows.append([res.get(e, Fraction(0)) for res in residuals])
    kernel = linalg.kernel_basis(rows, n + 1)
    return len(kernel), kernel


def dim_target(k, n):
    from .modforms import dim_sl2z
    return dim_sl2z(k + 2 * n)


def expected_bracket_vector(k, n):
    """The (r, s = n - r) coefficient vector of [1, f]~_n."""
    out = []
    for r in range(n + 1):
        c = ext_binom(n - 1, n - r) * ext_binom(n + k - 1, r)
        out.append(-c if r % 2 else c)
    return out


def _residual_against(series, echelon_basis):
    """Series minus its projection onto an echelonized basis, as a dict."""
    if not series.is_pi_free():
        raise ArithmeticError("expected a Pi-free series")
    residual = series
    for b in echelon_basis:
        pivot = min(b.coeffs)
        c = residual.coefficient(pivot)
        if not c.is_zero():
            residual = residual - b.scale(c)
    return {e: c.as_fraction() for e, c in residual.coeffs.items()}
