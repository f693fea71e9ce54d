"""Modular forms as exact q-expansions.

Provides the Eisenstein series E2/E4/E6 from divisor sums, the level-1
ring of modular forms with echelonized monomial bases, dimension data for
user-supplied congruence subgroups, weight-k slash operators for
upper-triangular rational matrices, coset sums, and Hecke operators.

General congruence subgroups enter only through table files carrying
dimensions and basis q-expansions; the engine never computes dimensions
for subgroups itself.
"""

import json
from fractions import Fraction
from math import isqrt

from .exactnum import PrecisionError, QSeries, Scalar


class NotMemberError(ValueError):
    """A q-series failed membership in a space of modular forms."""

    def __init__(self, exponent, message=None):
        self.exponent = exponent
        super().__init__(message or
                         "not a modular form: first failing exponent %s"
                         % (exponent,))


# ---------------------------------------------------------------------------
# Eisenstein series and friends
# ---------------------------------------------------------------------------

def sigma(n, power=1):
    """Divisor power sum: sum of d^power over divisors d of n."""
    if n < 1:
        raise ValueError("sigma needs a positive integer")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d ** power
            e = n // d
            if e != d:
                total += e ** power
    return total


_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def eisenstein(k, prec):
    """Normalized Eisenstein series E_k for k in {2, 4, 6}, to q^prec."""
    if k not in _EISENSTEIN:
        raise ValueError("eisenstein weight must be one of 2, 4, 6")
    if prec < 1:
        raise PrecisionError("eisenstein precision must be >= 1")
    mult, power = _EISENSTEIN[k]
    coeffs = {0: Scalar(1)}
    for n in range(1, prec):
        coeffs[n] = Scalar(mult * sigma(n, power))
    return QSeries(coeffs, prec=prec)


def discriminant(prec):
    """The cusp form Delta = (E4^3 - E6^2)/1728."""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    return (e4 ** 3 - e6 ** 2).scale(Fraction(1, 1728))


def quasimodular_E(prec):
    """The weight-2 quasimodular combination (Pi/6) * E2.

    Its tau-derivatives are what the lifting of constants and the
    modified brackets are built from; the Pi normalization makes the
    slash anomaly a rational function with no stray constants.
    """
    return eisenstein(2, prec).scale(Scalar.pi(1, Fraction(1, 6)))


# ---------------------------------------------------------------------------
# Gamma descriptors
# ---------------------------------------------------------------------------

class GammaDescriptor:
    """Dimension and basis data for a congruence subgroup.

    The level-1 group is built in and computes everything on demand;
    any other group is described by a table of dimensions and basis
    q-expansions (weights are even, exponents integral, coefficients
    rational).
    """

    def __init__(self, kind, name="SL2Z", dims=None, bases=None, prec=None):
        if kind not in ("sl2z", "user"):
            raise ValueError("kind must be 'sl2z' or 'user'")
        self.kind = kind
        self.name = name
        self._dims = dict(dims) if dims else {}
        self._bases = dict(bases) if bases else {}
        self.prec = prec
        if kind == "user":
            if prec is None:
                raise ValueError("user tables need an explicit precision")
            for k in list(self._dims) + list(self._bases):
                if k % 2:
                    raise ValueError("odd weight %d in gamma table" % k)
            for k, basis in self._bases.items():
                if k in self._dims and self._dims[k] != len(basis):
                    raise ValueError("weight %d: %d basis series but dim %d"
                                     % (k, len(basis), self._dims[k]))
                for s in basis:
                    if not s.has_integral_exponents():
                        raise ValueError("fractional exponents in basis")
                    if not s.is_pi_free():
                        raise ValueError("non-rational basis coefficients")

    def is_sl2z(self):
        return self.kind == "sl2z"

    def dim(self, k):
        """dim M_k; zero for negative or odd k."""
        if k < 0 or k % 2:
            return 0
        if self.kind == "sl2z":
            return dim_sl2z(k)
        if k not in self._dims:
            raise KeyError("gamma table %r has no dimension for weight %d"
                           % (self.name, k))
        return self._dims[k]

    def basis(self, k, prec):
        """Echelonized basis of M_k to precision prec."""
        if k < 0 or k % 2:
            return []
        if self.kind == "sl2z":
            return sl2z_basis(k, prec)
        if self.dim(k) == 0:
            return []
        if k not in self._bases:
            raise KeyError("gamma table %r has no basis for weight %d"
                           % (self.name, k))
        if self.prec < prec:
            raise PrecisionError("gamma table %r holds %d coefficients, "
                                 "need %d" % (self.name, self.prec, prec))
        rows = [s.truncate(prec) for s in self._bases[k]]
        out = echelonize(rows)
        if len(out) != len(rows):
            raise ValueError("basis for weight %d is linearly dependent" % k)
        return out

    def to_json(self):
        if self.kind == "sl2z":
            return {"name": "SL2Z"}
        return {
            "name": self.name,
            "prec": self.prec,
            "dims": {str(k): v for k, v in sorted(self._dims.items())},
            "bases": {str(k): [_series_to_table_json(s) for s in basis]
                      for k, basis in sorted(self._bases.items())},
        }


SL2Z = GammaDescriptor("sl2z")


def dim_sl2z(k):
    """Classical dimension of M_k(SL2Z)."""
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def sl2z_monomial_basis(k, prec):
    """All E4^a E6^b with 4a + 6b = k, in lexicographic (a, b) order."""
    if k < 0 or k % 2:
        return []
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    out = []
    for a in range(k // 4 + 1):
        rem = k - 4 * a
        if rem % 6 == 0:
            out.append(e4 ** a * e6 ** (rem // 6))
    return out


def sl2z_basis(k, prec):
    return echelonize(sl2z_monomial_basis(k, prec))


def dim_M(gamma, k):
    return gamma.dim(k)


def basis_M(gamma, k, prec):
    return gamma.basis(k, prec)


# ---------------------------------------------------------------------------
# Exact linear algebra on integral-exponent series
# ---------------------------------------------------------------------------

def echelonize(rows):
    """Reduced echelon form of rational integral-exponent series.

    Returns independent series with strictly increasing leading
    exponents, each normalized to leading coefficient 1 and reduced
    against the others.  Truncates to the least input precision.
    """
    if not rows:
        return []
    prec = min(r.prec for r in rows)
    work = []
    for r in rows:
        if not r.has_integral_exponents():
            raise ValueError("echelonize needs integral exponents")
        work.append({e: c.as_fraction() for e, c in r.coeffs.items()
                     if e < prec})
    pivots = []   # (exponent, row-dict)
    for row in work:
        for pe, pr in pivots:
            c = row.get(pe)
            if c:
                for e, v in pr.items():
                    nv = row.get(e, Fraction(0)) - c * v
                    if nv:
                        row[e] = nv
                    else:
                        row.pop(e, None)
        if not row:
            continue
        lead = min(row)
        lc = row[lead]
        row = {e: v / lc for e, v in row.items()}
        pivots.append((lead, row))
    pivots.sort(key=lambda p: p[0])
    # back-substitution for the reduced form
    for i, (pe, pr) in enumerate(pivots):
        for j in range(i):
            qe, qr = pivots[j]
            c = qr.get(pe)
            if c:
                for e, v in pr.items():
                    nv = qr.get(e, Fraction(0)) - c * v
                    if nv:
                        qr[e] = nv
                    else:
                        qr.pop(e, None)
    return [QSeries(row, prec=prec) for _, row in pivots]


def decompose(f, gamma, k, margin=10):
    """Exact coordinates of f in the echelon basis of M_k(gamma).

    Raises NotMemberError with the first failing exponent when f is not
    in the span, and PrecisionError when the available precision cannot
    support a decision (fewer than dim + margin coefficients).
    Coordinates are Scalars, so Pi-laden multiples of rational bases
    decompose exactly.
    """
    if f.has_negative_exponents():
        raise NotMemberError(f.min_exponent(), "negative exponent")
    if not f.has_integral_exponents():
        bad = min(e for e in f.coeffs if e % f.denom)
        raise NotMemberError(Fraction(bad, f.denom), "fractional exponent")
    dim = gamma.dim(k)
    if dim == 0:
        if f.is_zero():
            return []
        raise NotMemberError(f.min_exponent(),
                             "nonzero series in a zero-dimensional space")
    if f.prec < dim + margin:
        raise PrecisionError("need %d coefficients to decompose in "
                             "dimension %d, have %d" % (dim + margin, dim,
                                                        f.prec))
    basis = gamma.basis(k, min(f.prec, _gamma_prec(gamma, f.prec)))
    residual = f
    coords = []
    for b in basis:
        pivot = min(b.coeffs)
        c = residual.coefficient(pivot)
        coords.append(c)
        if not c.is_zero():
            residual = residual - b.scale(c)
    if not residual.is_zero():
        raise NotMemberError(residual.min_exponent())
    return coords


def is_member(f, gamma, k, margin=10):
    try:
        decompose(f, gamma, k, margin=margin)
        return True
    except NotMemberError:
        return False


def _gamma_prec(gamma, requested):
    if gamma.is_sl2z():
        return requested
    return min(requested, gamma.prec)


class ModularForm:
    """A weight-graded holomorphic q-expansion for a fixed group."""

    def __init__(self, weight, series, gamma=SL2Z):
        if weight % 2:
            raise ValueError("only even weights are supported")
        if series.has_negative_exponents():
            raise ValueError("modular forms are holomorphic at infinity")
        if not series.is_pi_free():
            raise ValueError("modular form coefficients must be rational")
        if not series.has_integral_exponents():
            raise ValueError("modular forms have integral exponents")
        self.weight = weight
        self.series = series
        self.gamma = gamma

    def coordinates(self, margin=10):
        return decompose(self.series, self.gamma, self.weight, margin=margin)

    def __repr__(self):
        return "ModularForm(weight=%d, %r)" % (self.weight, self.series)


# ---------------------------------------------------------------------------
# Slash operators and coset sums
# ---------------------------------------------------------------------------

def _det_power(det, k):
    """det^(k/2) as an exact Fraction; rejects irrational powers."""
    if k % 2 == 0:
        return Fraction(det) ** (k // 2)
    r = isqrt(det)
    if r * r != det:
        raise ValueError("det^(%d/2) is irrational for det=%d" % (k, det))
    return Fraction(r) ** k


def slash_upper(f, k, g):
    """Weight-k slash by an upper-triangular integral matrix [[a,b],[0,d]].

    (f[g]_k)(tau) = det(g)^(k/2) d^(-k) f((a tau + b)/d).  The shear b
    multiplies the coefficient of q^(e/M) by a root of unity of order
    dividing dM; only the rational roots (+1 and -1) exist in this
    coefficient ring, so any exponent carrying a deeper phase is an
    error.  b = 0 always works.
    """
    (a, b), (c, d) = g
    if c != 0:
        raise ValueError("slash_upper needs an upper-triangular matrix")
    if a <= 0 or d <= 0:
        raise ValueError("diagonal entries must be positive")
    det = a * d
    scale = _det_power(det, k) / Fraction(d) ** k
    md = f.denom * d
    coeffs = {}
    for e, cf in f.coeffs.items():
        phase = (e * b) % md
        if phase == 0:
            coeffs[e * a] = cf * scale
        elif 2 * phase == md:
            coeffs[e * a] = cf * (-scale)
        else:
            raise ValueError("shear b=%d introduces a cyclotomic scalar "
                             "at exponent %d/%d" % (b, e, f.denom))
    new_prec = (f.prec * a) // d
    if new_prec <= 0:
        raise PrecisionError("slash exhausts precision")
    return QSeries(coeffs, prec=new_prec, denom=md)


def slash_sum_b(f, k, a, d):
    """Sum of f[[[a,b],[0,d]]]_k over the shears b mod d.

    For integral-exponent input the phase sum keeps exactly the
    exponents divisible by d, scaled by d, so the result lives in the
    original integral-exponent ring with no cyclotomic scalars.
    """
    if a <= 0 or d <= 0:
        raise ValueError("a and d must be positive integers")
    if not f.has_integral_exponents():
        raise ValueError("coset sums need integral exponents")
    scale = _det_power(a * d, k) * d / Fraction(d) ** k
    coeffs = {}
    for e, cf in f.coeffs.items():
        if e % d == 0:
            coeffs[(e // d) * a] = cf * scale
    new_prec = ((f.prec - 1) // d) * a + 1
    return QSeries(coeffs, prec=new_prec)


def upper_coset_representatives(n):
    """The matrices [[a,b],[0,d]], ad=n, 0 <= b < d; their count is sigma(n)."""
    reps = []
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            for b in range(d):
                reps.append(((a, b), (0, d)))
    return reps


# ---------------------------------------------------------------------------
# Hecke operators
# ---------------------------------------------------------------------------

def hecke_T(k, n, f):
    """The Hecke operator T_k(n) on a level-1 modular form.

    Coefficientwise: a_m picks up sum over d | gcd(m, n) of
    d^(k-1) a(m n / d^2).  Precision drops by the factor n.
    """
    if not isinstance(f, ModularForm):
        raise TypeError("hecke_T acts on ModularForm values")
    if not f.gamma.is_sl2z():
        raise ValueError("hecke_T is implemented for level 1")
    series = hecke_T_series(k, n, f.series)
    return ModularForm(f.weight, series, f.gamma)


def hecke_T_series(k, n, f):
    if n < 1:
        raise ValueError("Hecke index must be positive")
    new_prec = (f.prec - 1) // n + 1
    if new_prec <= 0:
        raise PrecisionError("Hecke T(%d) exhausts precision %d"
                             % (n, f.prec))
    coeffs = {}
    for m in range(new_prec):
        total = Scalar.zero()
        for d in range(1, n + 1):
            if n % d == 0 and (m == 0 or m % d == 0):
                idx = m * n // (d * d)
                c = f.coeffs.get(idx)
                if c is not None:
                    total = total + c * (Fraction(d) ** (k - 1))
        if not total.is_zero():
            coeffs[m] = total
    return QSeries(coeffs, prec=new_prec)


def hecke_T_cosets(k, n, f):
    """T_k(n) evaluated literally as n^(k/2-1) times the coset sum.

    Independent of the coefficient formula; the two must agree.
    """
    pref = _det_power(n, k) / Fraction(n)
    total = None
    for a in range(1, n + 1):
        if n % a == 0:
            term = slash_sum_b(f, k, a, n // a)
            total = term if total is None else total + term
    return total.scale(pref)


def t_prime(n, f):
    """Average of the weight-2 coset slashes; fixes E2.

    With upper-triangular representatives the non-holomorphic
    correction term of the twisted action vanishes, leaving
    (1/sigma(n)) * sum over ad=n of the shear-summed weight-2 slash.
    """
    if n < 1:
        raise ValueError("t_prime index must be positive")
    total = None
    count = 0
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            count += d
            term = slash_sum_b(f, 2, a, d)
            total = term if total is None else total + term
    return total.scale(Fraction(1, count))


# ---------------------------------------------------------------------------
# Gamma table files
# ---------------------------------------------------------------------------

def _series_to_table_json(s):
    out = []
    for e in sorted(s.coeffs):
        c = s.coeffs[e].as_fraction()
        out.append([e, "%d/%d" % (c.numerator, c.denominator)])
    return {"denom": s.denom, "prec": s.prec, "coeffs": out}


def _series_from_table_json(data):
    coeffs = {}
    for e, c in data["coeffs"]:
        if isinstance(c, str):
            num, _, den = c.partition("/")
            frac = Fraction(int(num), int(den) if den else 1)
        else:
            frac = Fraction(c)
        coeffs[int(e)] = Scalar(frac)
    return QSeries(coeffs, prec=int(data["prec"]),
                   denom=int(data.get("denom", 1)))


def load_gamma_table(source):
    """Read a gamma descriptor from a JSON file path or parsed dict."""
    if isinstance(source, (str, bytes)):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    if data.get("name") == "SL2Z" and "dims" not in data:
        return SL2Z
    dims = {int(k): int(v) for k, v in data.get("dims", {}).items()}
    bases = {int(k): [_series_from_table_json(s) for s in basis]
             for k, basis in data.get("bases", {}).items()}
    return GammaDescriptor("user", name=data["name"], dims=dims,
                           bases=bases, prec=int(data["prec"]))


def save_gamma_table(gamma, path):
    with open(path, "w") as fh:
        json.dump(gamma.to_json(), fh, indent=1)


def build_gamma0_2(prec=40, max_weight=24):
    """Descriptor for Gamma_0(2), generated in weights 2 and 4.

    The weight-2 generator is 2 E2(2 tau) - E2(tau); together with E4
    it generates the ring freely, which the builder checks degreewise
    by echelon rank.
    """
    from .exactnum import rebase

    e2 = eisenstein(2, prec)
    x2 = rebase(e2, 2).scale(2).truncate(prec) - e2
    x4 = eisenstein(4, prec)
    dims = {}
    bases = {}
    for k in range(0, max_weight + 1, 2):
        monos = []
        for i in range(k // 2 + 1):
            rem = k - 2 * i
            if rem % 4 == 0:
                monos.append(x2 ** i * x4 ** (rem // 4))
        rows = echelonize([m.truncate(prec) for m in monos])
        if len(rows) != len(monos):
            raise ValueError("monomials degenerate at weight %d" % k)
        expected = k // 4 + 1 if k % 2 == 0 else 0
        if len(rows) != expected:
            raise ValueError("weight %d: rank %d but dim %d"
                             % (k, len(rows), expected))
        dims[k] = len(rows)
        bases[k] = rows
    return GammaDescriptor("user", name="Gamma0(2)", dims=dims,
                           bases=bases, prec=prec)
