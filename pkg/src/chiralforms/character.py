"""The graded character of the invariant sections, three ways.

The closed form is a quadruple sum of partition products against the
dimension data; the enumeration form counts four-tuples per conformal
weight bucketed by part and pairs each bucket with the dimension of
the modular forms of twice that weight; the basis form counts actual
liftings.  All three must agree coefficientwise.

The bivariate trace of the free module tracks the sl2 torus weight:
a and psi modes raise it, b and phi modes lower it, so the part of a
four-tuple is minus one half of the torus exponent.  The enumeration
is cross-checked against the product expansion of that trace.
"""

from .fock import enumerate_fourtuples
from .partitions import (count_distinct_exact_parts,
                         count_partitions_exact_parts)


class CharacterSeries:
    """q-expansion of a graded dimension: nonnegative integers."""

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)
        for c in self.coeffs:
            if c < 0 or c != int(c):
                raise ValueError("character coefficients are nonnegative "
                                 "integers, got %r" % (c,))

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            other = CharacterSeries(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return self.coeffs[:n] == other.coeffs[:n]

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return "CharacterSeries(%r)" % (self.coeffs,)


def _poly_mul(p, q, qmax):
    out = [0] * (qmax + 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if i + j > qmax:
                    break
                out[i + j] += a * b
    return out


def _inv_one_minus(i, qmax):
    """1/(1 - q^i) truncated."""
    out = [0] * (qmax + 1)
    for j in range(0, qmax + 1, i):
        out[j] = 1
    return out


def _partition_product(count, qmax):
    """Product over i = 1..count of 1/(1 - q^i), truncated."""
    out = [1] + [0] * qmax
    for i in range(1, count + 1):
        out = _poly_mul(out, _inv_one_minus(i, qmax), qmax)
    return out


def char_closed(gamma, qmax):
    """The closed-form character as a quadruple partition-product sum.

    Dimensions of weight 2m are consulted for m up to qmax + 1 (the
    exponent can dip one below m through the v-statistic).
    """
    coeffs = [0] * (qmax + 1)
    for m in range(0, qmax + 2):
        dim = gamma.dim(2 * m)
        if dim == 0:
            continue
        for n in range(0, qmax + 1):
            if m + 2 * n - 1 > qmax:
                break
            for u in range(0, n + 1):
                for v in range(0, m + n + 1):
                    exponent = (m + 2 * n + u * (u - 1) // 2
                                + v * (v - 3) // 2)
                    if exponent > qmax:
                        continue
                    prod = [1] + [0] * qmax
                    for count in (u, v, n - u, m + n - v):
                        prod = _poly_mul(prod, _partition_product(
                            count, qmax), qmax)
                    for j, c in enumerate(prod):
                        if exponent + j <= qmax and c:
                            coeffs[exponent + j] += dim * c
    return CharacterSeries(coeffs)


def four_tuple_part_counts(weight):
    """Count of four-tuples of the given weight, keyed by part."""
    counts = {}
    for t in enumerate_fourtuples(weight):
        counts[t.part()] = counts.get(t.part(), 0) + 1
    return counts


def bivariate_trace_counts(weight):
    """Coefficients c(m, n) of the free-module trace at q^weight.

    c(m, weight) counts four-tuples with torus exponent m = -2 part,
    computed from the product of the four mode families' generating
    functions; this is the independent cross-check of the raw
    enumeration.
    """
    out = {}
    # a modes: ordinary partitions, torus weight +2 per part
    # b modes: ordinary partitions, torus weight -2 per part
    # psi modes: distinct partitions, torus weight +2 per part
    # phi modes: mu-partitions (weight |mu| - p(mu)), torus weight -2
    for wa in range(weight + 1):
        for ka in range(wa + 1):
            ca = count_partitions_exact_parts(wa, ka)
            if not ca:
                continue
            for wb in range(weight - wa + 1):
                for kb in range(wb + 1):
                    cb = count_partitions_exact_parts(wb, kb)
                    if not cb:
                        continue
                    for wp in range(weight - wa - wb + 1):
                        for kp in range(wp + 1):
                            cp = count_distinct_exact_parts(wp, kp)
                            if not cp:
                                continue
                            wm = weight - wa - wb - wp
                            for km in range(wm + weight + 2):
                                cm = _mu_count(wm, km)
                                if not cm:
                                    continue
                                m = 2 * (ka - km + kp - kb)
                                key = m
                                out[key] = out.get(key, 0) + ca * cb * cp * cm
    return out


def _mu_count(weight, parts):
    """Distinct partitions mu with |mu| - p(mu) = weight and p(mu) = parts.

    Shifting every part down by one gives distinct partitions of the
    weight into parts - 1 or parts nonzero parts (at most one zero).
    """
    if parts == 0:
        return 1 if weight == 0 else 0
    return (count_distinct_exact_parts(weight, parts)
            + count_distinct_exact_parts(weight, parts - 1))


def char_enumerate(gamma, qmax):
    """Character by four-tuple enumeration paired with dimensions.

    The raw tally per part is cross-checked against the bivariate
    trace product; disagreement is an internal error.
    """
    coeffs = []
    for w in range(qmax + 1):
        tally = four_tuple_part_counts(w)
        product = bivariate_trace_counts(w)
        for part, count in tally.items():
            if product.get(-2 * part, 0) != count:
                raise ArithmeticError(
                    "enumeration tally and trace product disagree at "
                    "weight %d part %d: %d vs %d"
                    % (w, part, count, product.get(-2 * part, 0)))
        total = 0
        for part, count in tally.items():
            if part >= 0:
                total += count * gamma.dim(2 * part)
        coeffs.append(total)
    return CharacterSeries(coeffs)


def char_from_basis(gamma, qmax, prec=None):
    """Character by counting actual basis liftings (cost-guarded)."""
    from .lifting import lifting_basis
    if qmax > 6:
        raise ValueError("basis counting is limited to q^6")
    if prec is None:
        prec = 16
    coeffs = []
    for w in range(qmax + 1):
        coeffs.append(len(lifting_basis(gamma, w, None, prec=prec)))
    return CharacterSeries(coeffs)
