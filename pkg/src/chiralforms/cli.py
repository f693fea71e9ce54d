"""Command-line surface for batch computation and verification.

Commands: character, lift, bracket, hecke, basis, verify.  Results go
to stdout (JSON by default, or aligned text); diagnostics go to
stderr.  Given the same configuration and seed the output is
byte-identical across runs.
"""

import argparse
import json
import sys
from fractions import Fraction

from .brackets import modified_bracket
from .exactnum import QSeries, Scalar
from .fock import FourTuple
from .lifting import lift, lifting_basis, verify_invariance
from .modforms import (ModularForm, SL2Z, basis_M, decompose, discriminant,
                       eisenstein, hecke_T_cosets, hecke_T_series,
                       load_gamma_table)
from .suites import SUITES, run_suites


def _load_gamma(spec):
    if spec is None or spec.lower() == "sl2z":
        return SL2Z
    return load_gamma_table(spec)


def parse_tuple_spec(spec):
    """Four-tuples as colon-joined entries like a[2]:phi[1]:b[1].

    Every entry names a partition part (for phi the part mu_i, whose
    mode is phi_{-mu_i + 1}); '1' or an empty string is the vacuum.
    """
    spec = spec.strip()
    if spec in ("", "1"):
        return FourTuple()
    parts = {"a": [], "phi": [], "psi": [], "b": []}
    for bit in spec.split(":"):
        bit = bit.strip()
        if not bit.endswith("]") or "[" not in bit:
            raise ValueError("bad tuple entry %r; want symbol[part]" % bit)
        sym, val = bit[:-1].split("[", 1)
        sym = sym.strip()
        if sym not in parts:
            raise ValueError("unknown symbol %r" % sym)
        parts[sym].append(int(val))
    return FourTuple(tuple(sorted(parts["a"], reverse=True)),
                     tuple(sorted(parts["phi"], reverse=True)),
                     tuple(sorted(parts["psi"], reverse=True)),
                     tuple(sorted(parts["b"], reverse=True)))


def tuple_spec_json(t):
    """Both the partition-part form and the displayed mode indices."""
    return {
        "lambda": list(t.lam), "mu": list(t.mu), "nu": list(t.nu),
        "chi": list(t.chi),
        "modes": ["%s[%d]" % (sym, idx) for sym, idx in t.modes()],
        "weight": t.weight(), "charge": t.charge(), "part": t.part(),
    }


def parse_form_spec(spec, gamma, prec):
    """Form specs: E4, E6, Delta, a rational constant, or M<k>:<index>."""
    spec = spec.strip()
    if spec in ("E4", "E6"):
        return ModularForm(int(spec[1]), eisenstein(int(spec[1]), prec),
                           gamma)
    if spec.lower() == "delta":
        return ModularForm(12, discriminant(prec), gamma)
    if spec.upper().startswith("M") and ":" in spec:
        weight, index = spec[1:].split(":")
        basis = basis_M(gamma, int(weight), prec)
        return ModularForm(int(weight), basis[int(index)], gamma)
    if "/" in spec:
        num, den = spec.split("/")
        return Fraction(int(num), int(den))
    return int(spec)


def _emit(data, fmt, text_renderer):
    if fmt == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        for line in text_renderer(data):
            print(line)


def cmd_character(args):
    from .character import char_closed, char_enumerate, char_from_basis
    gamma = _load_gamma(args.gamma)
    closed = char_closed(gamma, args.qmax)
    enum = char_enumerate(gamma, args.qmax)
    agree = closed == enum
    data = {
        "gamma": gamma.name,
        "qmax": args.qmax,
        "coeffs": closed.coeffs,
        "methods_agree": agree,
    }
    if args.qmax <= 6:
        basis = char_from_basis(gamma, args.qmax, prec=max(args.prec, 12))
        data["basis_coeffs"] = basis.coeffs
        data["methods_agree"] = agree and basis == closed

    def text(d):
        yield "character of invariant sections for %s" % d["gamma"]
        for n, c in enumerate(d["coeffs"]):
            yield "  q^%-2d %d" % (n, c)
        yield "methods agree: %s" % d["methods_agree"]

    _emit(data, args.format, text)
    return 0 if data["methods_agree"] else 1


def cmd_lift(args):
    gamma = _load_gamma(args.gamma)
    w = parse_tuple_spec(args.tuple)
    form = parse_form_spec(args.form, gamma, args.prec)
    L = lift(w, form, gamma, prec=args.prec)
    if L.is_zero():
        print("warning: weight/part mismatch, zero lifting", file=sys.stderr)
    ok = None
    if not L.is_zero():
        n0 = w.part()
        ok, _ = verify_invariance(L.operator, n0, w=w if n0 == 0 else None)
    data = {
        "leading": tuple_spec_json(w),
        "form": str(args.form),
        "zero": L.is_zero(),
        "invariant": ok,
        "state": L.state.to_json(),
    }

    def text(d):
        yield "lifting with leading tuple %s" % ":".join(d["leading"]["modes"]) \
            if d["leading"]["modes"] else "lifting of the vacuum"
        yield "zero: %s, invariant: %s" % (d["zero"], d["invariant"])
        for term in d["state"]:
            yield "  %s : %s" % (term["tuple"], term["coeff"])

    _emit(data, args.format, text)
    return 0


def cmd_bracket(args):
    gamma = _load_gamma(args.gamma)
    f = parse_form_spec(args.f, gamma, args.prec)
    h = parse_form_spec(args.h, gamma, args.prec)
    out = modified_bracket(f, h, args.n, margin=min(10, args.prec // 2))
    coords = decompose(out.series, gamma, out.weight,
                       margin=min(10, args.prec // 2))
    data = {
        "weight": out.weight,
        "series": out.series.to_json(),
        "decomposition": [c.to_json() for c in coords],
    }

    def text(d):
        yield "bracket of weight %d" % d["weight"]
        yield "series: %r" % out.series
        yield "coordinates in the echelon basis: %s" % (
            ["%s" % c for c in coords],)

    _emit(data, args.format, text)
    return 0


def cmd_hecke(args):
    gamma = _load_gamma(args.gamma)
    form = parse_form_spec(args.form, gamma, args.prec)
    if not isinstance(form, ModularForm):
        form = ModularForm(0, QSeries.constant(Scalar(form), args.prec),
                           gamma)
    image = hecke_T_series(form.weight, args.n, form.series)
    data = {
        "weight": form.weight,
        "n": args.n,
        "series": image.to_json(),
    }
    if gamma.is_sl2z():
        coset = hecke_T_cosets(form.weight, args.n, form.series)
        data["coset_path_agrees"] = coset == image

    def text(d):
        yield "T_%d(%d) image:" % (d["weight"], d["n"])
        yield "%r" % image
        if "coset_path_agrees" in d:
            yield "coset path agrees: %s" % d["coset_path_agrees"]

    _emit(data, args.format, text)
    return 0 if data.get("coset_path_agrees", True) else 1


def cmd_basis(args):
    gamma = _load_gamma(args.gamma)
    out = []
    for weight in range(args.qmax + 1):
        basis = lifting_basis(gamma, weight, args.charge, prec=args.prec)
        out.append({
            "weight": weight,
            "count": len(basis),
            "liftings": [{"leading": tuple_spec_json(L.leading),
                          "part": L.part()} for L in basis],
        })
    data = {"gamma": gamma.name, "weights": out}

    def text(d):
        for row in d["weights"]:
            yield "weight %d: %d liftings" % (row["weight"], row["count"])
            for item in row["liftings"]:
                modes = ":".join(item["leading"]["modes"]) or "1"
                yield "  part %d  %s" % (item["part"], modes)

    _emit(data, args.format, text)
    return 0


def cmd_verify(args):
    names = [args.suite] if args.suite != "all" else ["all"]
    ok, lines = run_suites(names, seed=args.seed)
    for suite, check, passed, detail in lines:
        print("[%s] %s.%s (%s)" % ("PASS" if passed else "FAIL",
                                   suite, check, detail))
    print("result: %s" % ("all passed" if ok else "FAILURES"),
          file=sys.stderr)
    return 0 if ok else 1


def _add_common(parser, suppress=False):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prec", type=int,
                        default=d if suppress else 24,
                        help="q-expansion precision (default 24)")
    parser.add_argument("--gamma",
                        default=d if suppress else "sl2z",
                        help="'sl2z' or a path to a gamma table JSON file")
    parser.add_argument("--format", choices=("json", "text"),
                        default=d if suppress else "json")
    parser.add_argument("--seed", type=int,
                        default=d if suppress else 0,
                        help="seed for randomized property sampling")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chiralforms",
        description="exact computations in the invariant sections of the "
                    "chiral de Rham complex on the upper half plane")
    _add_common(parser)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("character", parents=[common], help="graded character, several methods")
    p.add_argument("--qmax", type=int, default=8)
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("lift", parents=[common], help="lifting of a form over a leading tuple")
    p.add_argument("tuple", help="e.g. phi[1]:psi[1] (partition parts)")
    p.add_argument("form", help="E4, E6, Delta, M<k>:<i>, or a rational")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("bracket", parents=[common], help="modified Rankin-Cohen bracket")
    p.add_argument("f")
    p.add_argument("h")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("hecke", parents=[common], help="Hecke operator on a form")
    p.add_argument("form")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("basis", parents=[common], help="lifting basis per conformal weight")
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--charge", type=int, default=None)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all",
                   choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.prec < 10:
        print("error: precision must be at least 10", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, KeyError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
