"""Exact scalar and q-series arithmetic.

Scalars are Laurent polynomials in a formal symbol ``Pi`` standing for the
constant pi*i, with arbitrary-precision rational coefficients.  No relation
is imposed on ``Pi``: it is an invertible formal variable, so quantities
like ``(2 pi i)^{-n}`` stay symbolic and cancellations happen exactly.

On top of the scalars live truncated q-expansions with a single global
exponent denominator per series: a ``QSeries`` with denominator ``M``
stores the coefficient of ``q^(e/M)`` at integer key ``e``.  Precision is
an exclusive truncation order measured in whole powers of q and is
propagated pessimistically through every operation.
"""

from fractions import Fraction
from math import gcd


class PrecisionError(ArithmeticError):
    """Raised when an operation would leave no known coefficients."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (x,))


class Scalar:
    """Laurent polynomial in the formal symbol Pi = pi*i over Q.

    Stored as a map from Pi-degree (possibly negative) to a nonzero
    Fraction; the empty map is the canonical zero.  Instances are
    immutable: all arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, value=0, pi_deg=0):
        if isinstance(value, Scalar):
            terms = dict(value.terms)
            if pi_deg:
                terms = {d + pi_deg: c for d, c in terms.items()}
        elif isinstance(value, dict):
            terms = {int(d): _as_fraction(c) for d, c in value.items()
                     if c != 0}
            if pi_deg:
                terms = {d + pi_deg: c for d, c in terms.items()}
        else:
            c = _as_fraction(value)
            terms = {pi_deg: c} if c != 0 else {}
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return _SCALAR_ZERO

    @staticmethod
    def one():
        return _SCALAR_ONE

    @staticmethod
    def pi(deg=1, coeff=1):
        """The monomial coeff * Pi^deg."""
        return Scalar(coeff, pi_deg=deg)

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return not self.terms or set(self.terms) == {0}

    def is_monomial(self):
        return len(self.terms) == 1

    def pi_degrees(self):
        return sorted(self.terms)

    def rational_part(self):
        return self.terms.get(0, Fraction(0))

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("scalar %s is not rational" % self)
        return self.rational_part()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for d, c in other.terms.items():
            s = terms.get(d, Fraction(0)) + c
            if s:
                terms[d] = s
            else:
                terms.pop(d, None)
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_scalar(other) + (-self)

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.terms) == 1 and len(other.terms) == 1:
            (d1, c1), = self.terms.items()
            (d2, c2), = other.terms.items()
            out = Scalar.__new__(Scalar)
            object.__setattr__(out, "terms", {d1 + d2: c1 * c2})
            return out
        terms = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1 + d2
                s = terms.get(d, Fraction(0)) + c1 * c2
                if s:
                    terms[d] = s
                else:
                    terms.pop(d, None)
        return Scalar(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a rational or by a Pi-monomial scalar."""
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if not other.is_monomial():
            raise ValueError("can only divide by a Pi-monomial scalar")
        (d0, c0), = other.terms.items()
        return Scalar({d - d0: c / c0 for d, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial scalar")
            (d0, c0), = self.terms.items()
            return Scalar({n * d0: c0 ** n})
        out = Scalar.one()
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self):
        """Complex conjugation: Pi = pi*i maps to -Pi."""
        return Scalar({d: (-c if d % 2 else c) for d, c in self.terms.items()})

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for d in sorted(self.terms):
            c = self.terms[d]
            if d == 0:
                bits.append(str(c))
            elif d == 1:
                bits.append("%s*Pi" % c)
            else:
                bits.append("%s*Pi^%d" % (c, d))
        return " + ".join(bits)

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return [{"pi_deg": d, "num": str(c.numerator), "den": str(c.denominator)}
                for d, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(data):
        terms = {}
        for item in data:
            terms[int(item["pi_deg"])] = Fraction(int(item["num"]),
                                                  int(item["den"]))
        return Scalar(terms)


_SCALAR_ZERO = Scalar.__new__(Scalar)
object.__setattr__(_SCALAR_ZERO, "terms", {})
_SCALAR_ONE = Scalar.__new__(Scalar)
object.__setattr__(_SCALAR_ONE, "terms", {0: Fraction(1)})

#: 2*Pi, the scalar by which theta differs from d/dtau.
TWO_PI = Scalar(2, pi_deg=1)


def _coerce_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return NotImplemented


class QSeries:
    """Truncated q^(1/M)-expansion with Scalar coefficients.

    ``coeffs[e]`` is the coefficient of ``q^(e/denom)``; every stored
    exponent satisfies ``e < prec * denom``.  ``prec`` is exclusive and
    measured in whole powers of q; operations propagate the minimum of
    the operand precisions.  Exponents may be negative.
    """

    __slots__ = ("denom", "prec", "coeffs")

    def __init__(self, coeffs=None, prec=None, denom=1):
        if prec is None:
            raise ValueError("QSeries requires an explicit precision")
        if denom < 1:
            raise ValueError("denominator must be a positive integer")
        if prec <= 0:
            raise PrecisionError("series precision %d <= 0" % prec)
        clean = {}
        if coeffs:
            bound = prec * denom
            for e, c in coeffs.items():
                c = c if isinstance(c, Scalar) else Scalar(c)
                if not c.is_zero() and e < bound:
                    clean[int(e)] = c
        denom, clean = _reduce_denominator(denom, clean)
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *_):
        raise AttributeError("QSeries is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(prec):
        return QSeries({}, prec=prec)

    @staticmethod
    def one(prec):
        return QSeries({0: 1}, prec=prec)

    @staticmethod
    def q_power(exponent, prec, denom=1, coeff=1):
        return QSeries({exponent: coeff}, prec=prec, denom=denom)

    @staticmethod
    def constant(c, prec):
        return QSeries({0: c}, prec=prec)

    # -- accessors --------------------------------------------------------

    def coefficient(self, exponent, denom=1):
        """Coefficient of q^(exponent/denom), as a Scalar."""
        num = exponent * self.denom
        if num % denom:
            return Scalar.zero()
        e = num // denom
        if e >= self.prec * self.denom:
            raise PrecisionError("exponent %s/%s beyond precision %d"
                                 % (exponent, denom, self.prec))
        return self.coeffs.get(e, Scalar.zero())

    def is_zero(self):
        return not self.coeffs

    def min_exponent(self):
        """Least stored exponent as a Fraction, or None for the zero series."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.denom)

    def is_pi_free(self):
        return all(c.is_rational() for c in self.coeffs.values())

    def has_integral_exponents(self):
        return self.denom == 1

    def has_negative_exponents(self):
        return any(e < 0 for e in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = QSeries.constant(other, self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        denom = self.denom * other.denom // gcd(self.denom, other.denom)
        fa, fb = denom // self.denom, denom // other.denom
        coeffs = {e * fa: c for e, c in self.coeffs.items()}
        for e, c in other.coeffs.items():
            k = e * fb
            s = coeffs.get(k, Scalar.zero()) + c
            if s.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = s
        return QSeries(coeffs, prec=prec, denom=denom)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()},
                       prec=self.prec, denom=self.denom)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = QSeries.constant(other, self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply every coefficient by the scalar c."""
        c = c if isinstance(c, Scalar) else Scalar(c)
        if c.is_zero():
            return QSeries.zero(self.prec)
        return QSeries({e: k * c for e, k in self.coeffs.items()},
                       prec=self.prec, denom=self.denom)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        denom = self.denom * other.denom // gcd(self.denom, other.denom)
        fa, fb = denom // self.denom, denom // other.denom
        prec = _product_precision(self, other)
        bound = prec * denom
        coeffs = {}
        for e1, c1 in self.coeffs.items():
            k1 = e1 * fa
            for e2, c2 in other.coeffs.items():
                e = k1 + e2 * fb
                if e >= bound:
                    continue
                s = coeffs.get(e, Scalar.zero()) + c1 * c2
                if s.is_zero():
                    coeffs.pop(e, None)
                else:
                    coeffs[e] = s
        return QSeries(coeffs, prec=prec, denom=denom)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QSeries.one(self.prec)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, prec):
        """Forget coefficients at or beyond q^prec."""
        if prec > self.prec:
            raise PrecisionError("cannot raise precision %d to %d"
                                 % (self.prec, prec))
        return QSeries(self.coeffs, prec=prec, denom=self.denom)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        """Equality of all coefficients on the common known range."""
        if isinstance(other, (int, Fraction, Scalar)):
            other = QSeries.constant(other, self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        denom = self.denom * other.denom // gcd(self.denom, other.denom)
        fa, fb = denom // self.denom, denom // other.denom
        bound = prec * denom
        left = {e * fa: c for e, c in self.coeffs.items() if e * fa < bound}
        right = {e * fb: c for e, c in other.coeffs.items() if e * fb < bound}
        return left == right

    def __hash__(self):
        raise TypeError("QSeries is unhashable; compare with ==")

    def __repr__(self):
        if not self.coeffs:
            return "O(q^%d)" % self.prec
        bits = []
        for e in sorted(self.coeffs)[:8]:
            c = self.coeffs[e]
            if self.denom == 1:
                bits.append("(%s)q^%d" % (c, e))
            else:
                bits.append("(%s)q^(%d/%d)" % (c, e, self.denom))
        if len(self.coeffs) > 8:
            bits.append("...")
        return " + ".join(bits) + " + O(q^%d)" % self.prec

    # -- serialization -----------------------------------------------------------

    def to_json(self):
        return {"denom": self.denom, "prec": self.prec,
                "coeffs": [[e, self.coeffs[e].to_json()]
                           for e in sorted(self.coeffs)]}

    @staticmethod
    def from_json(data):
        coeffs = {int(e): Scalar.from_json(s) for e, s in data["coeffs"]}
        return QSeries(coeffs, prec=int(data["prec"]), denom=int(data["denom"]))


def _reduce_denominator(denom, coeffs):
    """Collapse the exponent denominator to the minimal one (1 when integral)."""
    if denom == 1:
        return denom, coeffs
    g = denom
    for e in coeffs:
        g = gcd(g, e)
        if g == 1:
            return denom, coeffs
    if not coeffs:
        return 1, coeffs
    return denom // g, {e // g: c for e, c in coeffs.items()}


def _product_precision(x, y):
    """Pessimistic precision of x*y in whole powers of q."""
    vx = x.min_exponent()
    vy = y.min_exponent()
    if vx is None and vy is None:
        return x.prec + y.prec
    if vx is None:
        return x.prec + _floor(vy)
    if vy is None:
        return y.prec + _floor(vx)
    return min(x.prec + _floor(vy), y.prec + _floor(vx))


def _floor(fr):
    return fr.numerator // fr.denominator


def theta(x):
    """The normalized derivative q * d/dq: q^(e/M) picks up a factor e/M."""
    coeffs = {e: c * Fraction(e, x.denom) for e, c in x.coeffs.items()}
    return QSeries(coeffs, prec=x.prec, denom=x.denom)


def tau_derivative(x, order=1):
    """d/dtau = 2*Pi * theta; each application raises Pi-degrees by one."""
    out = x
    for _ in range(order):
        out = theta(out).scale(TWO_PI)
    return out


def rebase(x, a):
    """Substitute tau -> a*tau, i.e. q -> q^a, for a positive rational a."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("rebase factor must be positive")
    p, d = a.numerator, a.denominator
    new_prec = (x.prec * p) // d
    if new_prec <= 0:
        raise PrecisionError("rebase by %s exhausts precision %d" % (a, x.prec))
    coeffs = {e * p: c for e, c in x.coeffs.items()}
    return QSeries(coeffs, prec=new_prec, denom=x.denom * d)
