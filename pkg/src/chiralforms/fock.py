"""The rank-1 free-field Fock module over the upper half plane.

States are finite sums of creation monomials a_{-lambda} phi_{-mu}
psi_{-nu} b_{-chi} indexed by four-tuples of partitions, with
coefficients that are polynomials in b = b_0 tensored with q-series
(q = exp(2 pi i b)).  The module implements single-mode actions with
Koszul signs, the modes of function fields Y(f, z), the n-th vertex
algebra products through the Borcherds identity, the sl2 vectors and
their zero modes, the part filtration, and four-tuple enumeration.

Mode and Fourier indices: the four basic fields expand as
    Y(a, z)   = sum a_n   z^(-n-1),     Y(b, z)   = sum b_n   z^(-n),
    Y(phi, z) = sum phi_n z^(-n),       Y(psi, z) = sum psi_n z^(-n-1),
so a and psi modes coincide with their (n)-product indices while b and
phi modes are shifted by one.  The conversion lives in np_index /
mode_index only; sign or offset bugs here are the dominant failure
mode, so those two functions are unit-tested in isolation.

Annihilators: a_n, b_n, phi_n for n >= 1 and psi_n for n >= 0.  The
zero modes act on coefficient functions: a_0 as d/db, b_0 as
multiplication by b.
"""

from fractions import Fraction

from .exactnum import QSeries, Scalar, tau_derivative
from .partitions import distinct_partitions, partitions

SYMBOLS = ("a", "phi", "psi", "b")
_ODD = {"phi": True, "psi": True, "a": False, "b": False}

#: conformal weight of the generator state of each symbol
_GEN_WEIGHT = {"a": 1, "b": 0, "phi": 0, "psi": 1}


def is_annihilator(symbol, index):
    if symbol == "psi":
        return index >= 0
    return index >= 1


def np_index(symbol, mode):
    """(n)-product index of the mode operator X_mode."""
    if symbol in ("a", "psi"):
        return mode
    return mode - 1


def mode_index(symbol, n):
    """Mode operator index realizing the (n)-product coefficient X_(n)."""
    if symbol in ("a", "psi"):
        return n
    return n + 1


def _check_partition(parts, distinct):
    parts = tuple(int(p) for p in parts)
    for p in parts:
        if p < 1:
            raise ValueError("partition parts must be positive")
    for x, y in zip(parts, parts[1:]):
        if distinct and x <= y:
            raise ValueError("parts must be strictly decreasing")
        if not distinct and x < y:
            raise ValueError("parts must be weakly decreasing")
    return parts


class FourTuple:
    """Partitions (lambda, mu, nu, chi) indexing a creation monomial.

    lambda and chi are ordinary partitions, mu and nu have distinct
    parts.  The monomial is a_{-lambda} phi_{-mu+1} psi_{-nu} b_{-chi}
    (each phi index is -mu_i + 1, so a part mu_i = 1 names phi_0).
    """

    __slots__ = ("lam", "mu", "nu", "chi")

    def __init__(self, lam=(), mu=(), nu=(), chi=()):
        object.__setattr__(self, "lam", _check_partition(lam, False))
        object.__setattr__(self, "mu", _check_partition(mu, True))
        object.__setattr__(self, "nu", _check_partition(nu, True))
        object.__setattr__(self, "chi", _check_partition(chi, False))

    @staticmethod
    def _raw(lam, mu, nu, chi):
        """Unchecked constructor for internally produced partitions."""
        t = FourTuple.__new__(FourTuple)
        object.__setattr__(t, "lam", lam)
        object.__setattr__(t, "mu", mu)
        object.__setattr__(t, "nu", nu)
        object.__setattr__(t, "chi", chi)
        return t

    def __setattr__(self, *_):
        raise AttributeError("FourTuple is immutable")

    def weight(self):
        return (sum(self.lam) + sum(self.mu) + sum(self.nu) + sum(self.chi)
                - len(self.mu))

    def charge(self):
        return len(self.mu) - len(self.nu)

    def part(self):
        return -len(self.lam) + len(self.mu) - len(self.nu) + len(self.chi)

    def parity(self):
        return (len(self.mu) + len(self.nu)) % 2

    def modes(self):
        """Canonical mode word: a, phi, psi, b blocks, deepest first."""
        word = [("a", -p) for p in self.lam]
        word += [("phi", -p + 1) for p in self.mu]
        word += [("psi", -p) for p in self.nu]
        word += [("b", -p) for p in self.chi]
        return word

    def sort_key(self):
        return (self.part(), self.lam, self.mu, self.nu, self.chi)

    def __eq__(self, other):
        return (isinstance(other, FourTuple) and self.lam == other.lam
                and self.mu == other.mu and self.nu == other.nu
                and self.chi == other.chi)

    def __hash__(self):
        return hash((self.lam, self.mu, self.nu, self.chi))

    def __repr__(self):
        if self is VACUUM_TUPLE or self == VACUUM_TUPLE:
            return "1"
        bits = []
        for p in self.lam:
            bits.append("a[-%d]" % p)
        for p in self.mu:
            bits.append("phi[%d]" % (-p + 1))
        for p in self.nu:
            bits.append("psi[-%d]" % p)
        for p in self.chi:
            bits.append("b[-%d]" % p)
        return "".join(bits)


VACUUM_TUPLE = FourTuple()


class CoeffFn:
    """Finite sum of b^j tensor (q-series), j >= 0.

    The variable b is the coordinate tau; q = exp(2 pi i b), so the
    tau-derivative is j b^(j-1) g + b^j (2 Pi theta g).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for j, g in terms.items():
                if j < 0:
                    raise ValueError("negative powers of b are not allowed")
                if not g.is_zero():
                    clean[int(j)] = g
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("CoeffFn is immutable")

    @staticmethod
    def from_series(g):
        return CoeffFn({0: g})

    @staticmethod
    def one(prec):
        return CoeffFn({0: QSeries.one(prec)})

    @staticmethod
    def b_power(j, prec, coeff=1):
        return CoeffFn({j: QSeries.constant(coeff, prec)})

    def is_zero(self):
        return not self.terms

    def b_degree(self):
        """Largest b-power, or None when zero."""
        return max(self.terms) if self.terms else None

    def is_b_free(self):
        return set(self.terms) <= {0}

    def series(self):
        """The pure q-series part; requires b-degree 0."""
        if not self.terms:
            raise ValueError("the zero coefficient has no defined precision")
        if not self.is_b_free():
            raise ValueError("coefficient has positive b-degree")
        return self.terms[0]

    def prec(self):
        return min(g.prec for g in self.terms.values()) if self.terms else None

    def __add__(self, other):
        terms = dict(self.terms)
        for j, g in other.terms.items():
            terms[j] = terms[j] + g if j in terms else g
        return CoeffFn(terms)

    def __neg__(self):
        return CoeffFn({j: -g for j, g in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CoeffFn):
            terms = {}
            for j1, g1 in self.terms.items():
                for j2, g2 in other.terms.items():
                    j = j1 + j2
                    p = g1 * g2
                    terms[j] = terms[j] + p if j in terms else p
            return CoeffFn(terms)
        return self.scale(other)

    def scale(self, c):
        return CoeffFn({j: g.scale(c) for j, g in self.terms.items()})

    def mul_b(self, power=1):
        """Multiply by b^power."""
        return CoeffFn({j + power: g for j, g in self.terms.items()})

    def derivative(self, order=1):
        """d/db, which is d/dtau."""
        out = self
        for _ in range(order):
            terms = {}
            for j, g in out.terms.items():
                if j:
                    prev = terms.get(j - 1)
                    scaled = g.scale(j)
                    terms[j - 1] = prev + scaled if prev else scaled
                dg = tau_derivative(g)
                if not dg.is_zero():
                    prev = terms.get(j)
                    terms[j] = prev + dg if prev else dg
            out = CoeffFn(terms)
        return out

    def __eq__(self, other):
        if not isinstance(other, CoeffFn):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for j in keys:
            if j not in self.terms or j not in other.terms:
                return False
            if self.terms[j] != other.terms[j]:
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for j in sorted(self.terms):
            head = "" if j == 0 else ("b*" if j == 1 else "b^%d*" % j)
            bits.append("%s(%r)" % (head, self.terms[j]))
        return " + ".join(bits)


class FockState:
    """Finite linear combination of monomials with CoeffFn coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for t, f in terms.items():
                if not f.is_zero():
                    clean[t] = f
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("FockState is immutable")

    @staticmethod
    def zero():
        return FockState()

    @staticmethod
    def vacuum(prec):
        return FockState({VACUUM_TUPLE: CoeffFn.one(prec)})

    @staticmethod
    def monomial(tuple_, coeff):
        if isinstance(coeff, QSeries):
            coeff = CoeffFn.from_series(coeff)
        return FockState({tuple_: coeff})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for t, f in other.terms.items():
            terms[t] = terms[t] + f if t in terms else f
        return FockState(terms)

    def __neg__(self):
        return FockState({t: -f for t, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FockState({t: f.scale(c) for t, f in self.terms.items()})

    def mul_coeff_raw(self, f):
        """O(H)-module multiplication of every coefficient by f.

        This is the leading term of the zeroth function-field mode,
        not the full vertex operator action.
        """
        return FockState({t: g * f for t, g in self.terms.items()})

    def weights(self):
        return sorted({t.weight() for t in self.terms})

    def weight(self):
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("state is not weight-homogeneous: %s" % ws)
        return ws[0]

    def charge(self):
        cs = sorted({t.charge() for t in self.terms})
        if len(cs) != 1:
            raise ValueError("state is not charge-homogeneous: %s" % cs)
        return cs[0]

    def min_part(self):
        """Filtration degree: least part over the support."""
        if not self.terms:
            return None
        return min(t.part() for t in self.terms)

    def is_holomorphic(self):
        """b-degree 0 everywhere and no negative q-exponents."""
        for f in self.terms.values():
            if not f.is_b_free():
                return False
            if f.terms and f.terms[0].has_negative_exponents():
                return False
        return True

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for t in keys:
            if t not in self.terms or t not in other.terms:
                return False
            if self.terms[t] != other.terms[t]:
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "FockState(0)"
        bits = ["[%r] (%r)" % (t, f) for t, f in self.sorted_terms()]
        return "FockState(" + " + ".join(bits) + ")"

    def to_json(self):
        out = []
        for t, f in self.sorted_terms():
            out.append({
                "tuple": {"lambda": list(t.lam), "mu": list(t.mu),
                          "nu": list(t.nu), "chi": list(t.chi)},
                "coeff": [[j, f.terms[j].to_json()] for j in sorted(f.terms)],
            })
        return out

    @staticmethod
    def from_json(data):
        terms = {}
        for item in data:
            tu = item["tuple"]
            t = FourTuple(tu["lambda"], tu["mu"], tu["nu"], tu["chi"])
            terms[t] = CoeffFn({int(j): QSeries.from_json(g)
                                for j, g in item["coeff"]})
        return FockState(terms)


# ---------------------------------------------------------------------------
# Single-mode actions
# ---------------------------------------------------------------------------

def apply_mode(symbol, index, state):
    """Apply the mode X_index to a state, with Koszul signs."""
    out = FockState.zero()
    for t, f in state.terms.items():
        out = out + _apply_mode_term(symbol, index, t, f)
    return out


def _apply_mode_term(symbol, index, t, f):
    if symbol == "a" and index == 0:
        df = f.derivative()
        return FockState({t: df}) if not df.is_zero() else FockState.zero()
    if symbol == "b" and index == 0:
        return FockState({t: f.mul_b()})
    if is_annihilator(symbol, index):
        return _annihilate(symbol, index, t, f)
    return _create(symbol, index, t, f)


_CONTRACTIONS = {
    # moving annihilator X through creation Y picks up this scalar
    ("a", "b"): 1,      # [a_n, b_{-n}] = 1
    ("b", "a"): -1,     # [b_n, a_{-n}] = -1
    ("phi", "psi"): 1,  # {phi_n, psi_{-n}} = 1
    ("psi", "phi"): 1,  # {psi_n, phi_{-n}} = 1
}


def _annihilate(symbol, index, t, f):
    """Move an annihilator right through the canonical word.

    Contractions remove the matched creation mode; a term whose
    annihilator reaches the coefficient dies (vacuum rules; zero modes
    never take this path).
    """
    word = t.modes()
    odd = _ODD[symbol]
    sign = 1
    out = FockState.zero()
    for pos, (ysym, yidx) in enumerate(word):
        c = _CONTRACTIONS.get((symbol, ysym))
        if c is not None and index + yidx == 0:
            reduced = word[:pos] + word[pos + 1:]
            coeff = f.scale(Scalar(sign * c))
            out = out + FockState({_tuple_from_word(reduced): coeff})
        if odd and _ODD[ysym]:
            sign = -sign
    return out


def _create(symbol, index, t, f):
    """Insert a creation mode into the canonical word with its sign."""
    if symbol == "a":
        lam = _insert_sorted(t.lam, -index)
        return FockState({FourTuple._raw(lam, t.mu, t.nu, t.chi): f})
    if symbol == "b":
        chi = _insert_sorted(t.chi, -index)
        return FockState({FourTuple._raw(t.lam, t.mu, t.nu, chi): f})
    if symbol == "phi":
        depth = 1 - index          # the mu-part naming phi_index
        if depth in t.mu:
            return FockState.zero()
        mu, passed = _insert_distinct(t.mu, depth)
        sign = -1 if passed % 2 else 1
        return FockState({FourTuple._raw(t.lam, mu, t.nu, t.chi):
                          f.scale(Scalar(sign))})
    # psi crosses the whole phi block and the deeper psi modes
    depth = -index
    if depth in t.nu:
        return FockState.zero()
    nu, passed = _insert_distinct(t.nu, depth)
    sign = -1 if (len(t.mu) + passed) % 2 else 1
    return FockState({FourTuple._raw(t.lam, t.mu, nu, t.chi):
                      f.scale(Scalar(sign))})


def _insert_sorted(parts, value):
    out = list(parts)
    for i, p in enumerate(out):
        if value > p:
            out.insert(i, value)
            break
    else:
        out.append(value)
    return tuple(out)


def _insert_distinct(parts, value):
    out = list(parts)
    for i, p in enumerate(out):
        if value > p:
            out.insert(i, value)
            return tuple(out), i
    out.append(value)
    return tuple(out), len(parts)


def _tuple_from_word(word):
    lam, mu, nu, chi = [], [], [], []
    for sym, idx in word:
        if sym == "a":
            lam.append(-idx)
        elif sym == "phi":
            mu.append(1 - idx)
        elif sym == "psi":
            nu.append(-idx)
        else:
            chi.append(-idx)
    return FourTuple._raw(tuple(lam), tuple(mu), tuple(nu), tuple(chi))


# ---------------------------------------------------------------------------
# Function-field modes
# ---------------------------------------------------------------------------

def apply_fn_mode(f, k, state):
    """The mode f(b)_k of the field Y(f, z) applied to a state.

    For k = 0 this is multiplication by f plus b-mode corrections; for
    k != 0 only the corrections survive.  Every correction term pairs
    derivatives of f with words of nonzero b-modes whose indices sum to
    k; positive indices must contract against a-modes of the target
    monomial, so the sum truncates exactly.
    """
    out = FockState.zero()
    if k == 0:
        out = out + state.mul_coeff_raw(f)
    for t, g in state.terms.items():
        out = out + _fn_mode_corrections(f, k, t, g)
    return out


def _fn_mode_corrections(f, k, t, g):
    out = FockState.zero()
    lam = t.lam
    for pos_multiset, falling in _multiset_subsets(lam):
        excess = sum(pos_multiset) - k
        if excess < 0:
            continue
        for neg in partitions(excess):
            length = len(pos_multiset) + len(neg)
            if length == 0:
                continue
            denom = _multiplicity_factorial(pos_multiset) \
                * _multiplicity_factorial(neg)
            sign = -1 if len(pos_multiset) % 2 else 1
            scalar = Fraction(sign * falling, denom)
            new_lam = _remove_multiset(lam, pos_multiset)
            new_chi = tuple(sorted(t.chi + neg, reverse=True))
            new_tuple = FourTuple(new_lam, t.mu, t.nu, new_chi)
            coeff = (f.derivative(length) * g).scale(scalar)
            out = out + FockState({new_tuple: coeff})
    return out


def _multiset_subsets(parts):
    """Sub-multisets of a partition with the falling-factorial count.

    Yields (submultiset, product over values of m*(m-1)*...*(m-r+1))
    where m is the multiplicity in parts and r in the subset; this is
    the number of ways the contractions can choose distinct a-modes.
    """
    values = sorted(set(parts), reverse=True)
    counts = [parts.count(v) for v in values]

    def rec(i):
        if i == len(values):
            yield (), 1
            return
        v, m = values[i], counts[i]
        for rest, ways in rec(i + 1):
            ff = 1
            for r in range(m + 1):
                if r:
                    ff *= m - r + 1
                yield (v,) * r + rest, ff * ways

    yield from rec(0)


def _multiplicity_factorial(multiset):
    out = 1
    current = None
    run = 0
    for v in sorted(multiset):
        if v == current:
            run += 1
        else:
            current, run = v, 1
        out *= run
    return out


def _remove_multiset(parts, sub):
    out = list(parts)
    for v in sub:
        out.remove(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# n-th products via the Borcherds identity
# ---------------------------------------------------------------------------

def binom_z(n, i):
    """Generalized binomial coefficient for integer n, i >= 0."""
    out = Fraction(1)
    for t in range(i):
        out *= Fraction(n - t, t + 1)
    return out


def nth_product(u, n, v):
    """The vertex algebra product u_(n) v, computed exactly.

    The left factor is peeled one generator mode at a time and the
    Borcherds identity rewrites each (X_(k) u')_(n) in terms of modes
    of X acting before and after products with u'; both sums truncate
    because conformal weights are bounded below by zero.  The base
    case is a pure function state, whose field is given by the
    function-field modes.
    """
    if v.is_zero() or u.is_zero():
        return FockState.zero()
    out = FockState.zero()
    for t, f in u.terms.items():
        out = out + _nth_product_term(t, f, n, v)
    return out


def _nth_product_term(t, f, m, v):
    if not t.modes():
        return apply_fn_mode(f, m + 1, v)
    (xsym, xmode), rest = t.modes()[0], t.modes()[1:]
    u_rest = FockState({_tuple_from_word(rest): f})
    k = np_index(xsym, xmode)
    wt_rest = _tuple_from_word(rest).weight()
    wt_v = max(t2.weight() for t2 in v.terms)
    px_prest = (1 if _ODD[xsym] else 0) * _tuple_from_word(rest).parity()
    out = FockState.zero()
    # sum of (-1)^i C(k, i) X_(k-i) (u'_(m+i) v)
    for i in range(0, wt_rest + wt_v - m):
        c = binom_z(k, i)
        if c == 0:
            continue
        if i % 2:
            c = -c
        inner = nth_product(u_rest, m + i, v)
        if inner.is_zero():
            continue
        term = apply_mode(xsym, mode_index(xsym, k - i), inner)
        out = out + term.scale(Scalar(c))
    # minus sum of (-1)^(p(X)p(u') + k + i) C(k, i) u'_(m+k-i) (X_(i) v)
    for i in range(0, _GEN_WEIGHT[xsym] + wt_v):
        c = binom_z(k, i)
        if c == 0:
            continue
        inner = apply_mode(xsym, mode_index(xsym, i), v)
        if inner.is_zero():
            continue
        term = nth_product(u_rest, m + k - i, inner)
        sign = -1 if (px_prest + k + i) % 2 else 1
        out = out + term.scale(Scalar(-sign * c))
    return out


# ---------------------------------------------------------------------------
# Distinguished states
# ---------------------------------------------------------------------------

def state_E(prec):
    """E = -a_{-1}; upper-triangular sl2 generator."""
    return FockState({FourTuple(lam=(1,)): CoeffFn({0: QSeries.constant(-1, prec)})})


def state_F(prec):
    """F = a_{-1} b_0^2 + 2 b_0 phi_0 psi_{-1}."""
    return FockState({
        FourTuple(lam=(1,)): CoeffFn.b_power(2, prec),
        FourTuple(mu=(1,), nu=(1,)): CoeffFn.b_power(1, prec, coeff=2),
    })


def state_H(prec):
    """H = -2 a_{-1} b_0 - 2 phi_0 psi_{-1}."""
    return FockState({
        FourTuple(lam=(1,)): CoeffFn.b_power(1, prec, coeff=-2),
        FourTuple(mu=(1,), nu=(1,)): CoeffFn({0: QSeries.constant(-2, prec)}),
    })


def state_virasoro(prec):
    """omega = a_{-1} b_{-1} + phi_{-1} psi_{-1}."""
    return FockState({
        FourTuple(lam=(1,), chi=(1,)): CoeffFn.one(prec),
        FourTuple(mu=(2,), nu=(1,)): CoeffFn.one(prec),
    })


def state_J(prec):
    """J = phi_0 psi_{-1}."""
    return FockState({FourTuple(mu=(1,), nu=(1,)): CoeffFn.one(prec)})


def state_Q(prec):
    """Q = a_{-1} phi_0."""
    return FockState({FourTuple(lam=(1,), mu=(1,)): CoeffFn.one(prec)})


def state_G(prec):
    """G = psi_{-1} b_{-1}."""
    return FockState({FourTuple(nu=(1,), chi=(1,)): CoeffFn.one(prec)})


def translate(state):
    """The translation operator T = L_{-1}, applied directly.

    T is a derivation sending the mode X_(m) to -m X_(m-1) and a pure
    function state f to b_{-1} f'.  Independent of nth_product, so
    translation covariance of the engine can be tested against it.
    """
    out = FockState.zero()
    for t, f in state.terms.items():
        out = out + _translate_word(t.modes(), f)
    return out


def _translate_word(word, f):
    if not word:
        df = f.derivative()
        if df.is_zero():
            return FockState.zero()
        return apply_mode("b", -1, FockState({VACUUM_TUPLE: df}))
    (sym, idx) = word[0]
    rest = word[1:]
    shifted = apply_mode(sym, idx - 1,
                         FockState({_tuple_from_word(rest): f}))
    out = shifted.scale(Scalar(-np_index(sym, idx)))
    tail = _translate_word(rest, f)
    if not tail.is_zero():
        out = out + apply_mode(sym, idx, tail)
    return out


_SL2_STATES = {"E": state_E, "F": state_F, "H": state_H}


def sl2_zero_mode(name, state, prec=None):
    """x_(0) acting on a state, for x in {E, H, F}, via nth_product."""
    if prec is None:
        prec = _state_prec(state)
    return nth_product(_SL2_STATES[name](prec), 0, state)


def _state_prec(state):
    precs = [f.prec() for f in state.terms.values() if f.prec() is not None]
    if not precs:
        raise ValueError("cannot infer precision from the zero state")
    return min(precs)


def graded_sl2(name, t, f):
    """The induced sl2 action on the graded algebra: monomial fixed.

    E sends f to -f'; H to -2 n f - 2 b f'; F to 2 n b f + b^2 f',
    where n is the part of the tuple.
    """
    n = t.part()
    df = f.derivative()
    if name == "E":
        return t, -df
    if name == "H":
        return t, (-f.scale(2 * n)) - df.mul_b().scale(2)
    if name == "F":
        return t, f.mul_b().scale(2 * n) + df.mul_b(2)
    raise ValueError("unknown sl2 generator %r" % name)


# ---------------------------------------------------------------------------
# Enumeration of four-tuples
# ---------------------------------------------------------------------------

def _mu_partitions(weight_contrib):
    """Distinct partitions mu with |mu| - p(mu) equal to the given weight.

    Subtracting one from every part gives distinct nonnegative parts
    with at most one zero, i.e. a distinct partition of the weight,
    optionally with an extra final 1 appended to mu (the one zero).
    """
    for d in distinct_partitions(weight_contrib):
        mu = tuple(p + 1 for p in d)
        yield mu
        yield mu + (1,)


def enumerate_fourtuples(weight, charge=None, part=None):
    """All four-tuples of the given conformal weight, optionally filtered.

    Deterministically ordered by (part, lambda, mu, nu, chi).
    """
    if weight < 0:
        return []
    out = []
    for wl in range(weight + 1):
        for lam in partitions(wl):
            for wm in range(weight - wl + 1):
                for mu in _mu_partitions(wm):
                    if charge is not None and len(mu) - charge < 0:
                        continue
                    for wn in range(weight - wl - wm + 1):
                        for nu in distinct_partitions(wn):
                            if charge is not None and \
                                    len(mu) - len(nu) != charge:
                                continue
                            wc = weight - wl - wm - wn
                            for chi in partitions(wc):
                                t = FourTuple(lam, mu, nu, chi)
                                if part is not None and t.part() != part:
                                    continue
                                out.append(t)
    out.sort(key=lambda t: t.sort_key())
    return out


# ---------------------------------------------------------------------------
# OPE table and commutator checks
# ---------------------------------------------------------------------------

def ope_products(usym, vsym, prec):
    """Paper OPE table at rank 1: the products u_(i) v for i >= 0.

    Covers the topological quartet (omega written L) and the affine
    sl2 triple at level zero.  Entries absent from the table are zero.
    """
    L, J, Q, G = (state_virasoro(prec), state_J(prec), state_Q(prec),
                  state_G(prec))
    E, F, H = state_E(prec), state_F(prec), state_H(prec)
    one = FockState.vacuum(prec)
    table = {
        ("L", "L"): {0: translate(L), 1: L.scale(2)},
        ("L", "J"): {0: translate(J), 1: J, 2: one.scale(-1)},
        ("L", "Q"): {0: translate(Q), 1: Q},
        ("L", "G"): {0: translate(G), 1: G.scale(2)},
        ("J", "J"): {1: one},
        ("J", "Q"): {0: Q},
        ("J", "G"): {0: G.scale(-1)},
        ("Q", "Q"): {},
        ("Q", "G"): {0: L, 1: J, 2: one},
        ("G", "G"): {},
        ("E", "F"): {0: H},
        ("F", "E"): {0: H.scale(-1)},
        ("H", "E"): {0: E.scale(2)},
        ("H", "F"): {0: F.scale(-2)},
        ("E", "H"): {0: E.scale(-2)},
        ("F", "H"): {0: F.scale(2)},
        ("H", "H"): {},
        ("E", "E"): {},
        ("F", "F"): {},
    }
    return table[(usym, vsym)]


_STATE_BUILDERS = {
    "L": state_virasoro, "J": state_J, "Q": state_Q, "G": state_G,
    "E": state_E, "F": state_F, "H": state_H,
}

_STATE_PARITY = {"L": 0, "J": 0, "Q": 1, "G": 1, "E": 0, "F": 0, "H": 0}


def named_state(name, prec):
    return _STATE_BUILDERS[name](prec)


def mode_commutator_check(usym, vsym, m, n, probes, prec):
    """Compare [u_(m), v_(n)] on probe states with the OPE prediction.

    The super-commutator is evaluated through nth_product on each
    probe; the right side is the Borcherds commutator formula fed with
    the tabulated OPE products.  Returns (ok, failures).
    """
    u = named_state(usym, prec)
    v = named_state(vsym, prec)
    sign = -1 if (_STATE_PARITY[usym] * _STATE_PARITY[vsym]) % 2 else 1
    products = ope_products(usym, vsym, prec)
    failures = []
    for s in probes:
        lhs = (nth_product(u, m, nth_product(v, n, s))
               - nth_product(v, n, nth_product(u, m, s)).scale(Scalar(sign)))
        rhs = FockState.zero()
        for i, uv in products.items():
            c = binom_z(m, i)
            if c and not uv.is_zero():
                rhs = rhs + nth_product(uv, m + n - i, s).scale(Scalar(c))
        if not lhs == rhs:
            failures.append((s, lhs, rhs))
    return not failures, failures
