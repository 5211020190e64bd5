"""Command-line front end.

    wallcross dim FILE
    wallcross crossing FILE [--curves a,b] [--sign +1|-1] [--via closed_form|localization|both]
    wallcross localize FILE

Reports go to stdout as JSON; diagnostics go to stderr.  Exit codes:
0 success, 1 parse or validation failure, 2 hypothesis violation,
3 disagreement between the closed form and the localization route.
"""
import argparse
import json
import sys
from fractions import Fraction

from .equivariant import (FixedComponent, HypothesisError, LineSummand,
                          star_star_terms, star_terms)
from .graded_algebra import (Algebra, AlgebraError, AlgebraSpec, GeneratorSpec,
                             format_rational, parse_rational)
from .seiberg_witten import (ManifoldData, expected_dimension, index_rank,
                             wall_crossing_general,
                             wall_crossing_via_localization)

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _field(doc, name, kind=None, where="", default=...):
    if not isinstance(doc, dict):
        raise InputError(f"{where or 'document'}: expected an object")
    if name not in doc:
        if default is not ...:
            return default
        raise InputError(f"field '{where}{name}': missing")
    v = doc[name]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise InputError(f"field '{where}{name}': expected an integer")
    if kind is list and not isinstance(v, list):
        raise InputError(f"field '{where}{name}': expected a list")
    if kind is dict and not isinstance(v, dict):
        raise InputError(f"field '{where}{name}': expected an object")
    return v


def _rational(v, where):
    try:
        return parse_rational(v)
    except AlgebraError:
        raise InputError(f"field '{where}': expected a rational, got {v!r}") from None


def parse_manifold(doc):
    """``(ManifoldData, {curve name: coords})`` from a manifold document."""
    b1 = _field(doc, "b1", int)
    if b1 < 0:
        raise InputError("field 'b1': must be nonnegative")
    b2p = _field(doc, "b2_plus", int)
    chi = _field(doc, "chi", int)
    tau = _field(doc, "tau", int)
    c1sq = _field(doc, "c1L_squared", int)
    entries = {}
    for n, item in enumerate(_field(doc, "triple_products", list, default=[])):
        where = f"triple_products[{n}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise InputError(f"field '{where}': expected [i, j, \"p/q\"]")
        i, j, v = item
        if any(isinstance(t, bool) or not isinstance(t, int) for t in (i, j)):
            raise InputError(f"field '{where}': indices must be integers")
        if not (1 <= i < j <= b1):
            raise InputError(f"field '{where}': need 1 <= i < j <= b1, got ({i}, {j})")
        if (i, j) in entries:
            raise InputError(f"field '{where}': duplicate entry ({i}, {j})")
        entries[(i, j)] = _rational(v, where)
    curves = {}
    for name, vec in _field(doc, "curves", dict, default={}).items():
        where = f"curves.{name}"
        if not isinstance(vec, list) or any(isinstance(t, bool) or not isinstance(t, int)
                                            for t in vec):
            raise InputError(f"field '{where}': expected a list of integers")
        if len(vec) != b1:
            raise InputError(f"field '{where}': length {len(vec)} differs from b1 = {b1}")
        curves[name] = vec
    try:
        m = ManifoldData.from_upper(b1, b2p, chi, tau, c1sq, entries)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return m, curves


def _algebra(doc):
    gens = []
    for n, g in enumerate(_field(doc, "generators", list, "algebra.")):
        where = f"algebra.generators[{n}]."
        nil = _field(g, "nilpotency", where=where, default=None)
        if nil == "none":
            nil = None
        gens.append(GeneratorSpec(str(_field(g, "label", where=where)),
                                  _field(g, "degree", int, where),
                                  _field(g, "parity", where=where, default=None), nil))
    vol = _field(doc, "volume", dict, "algebra.")
    mono = _field(vol, "monomial", list, "algebra.volume.")
    factors = []
    for f in mono:
        if not (isinstance(f, list) and len(f) == 2):
            raise InputError("field 'algebra.volume.monomial': expected [label, exponent] pairs")
        factors.append((f[0], f[1]))
    norm = _rational(_field(vol, "normalization", where="algebra.volume.", default="1"),
                     "algebra.volume.normalization")
    return Algebra(AlgebraSpec(tuple(gens), tuple(factors), norm))


def parse_localization(doc):
    """``(components, betas, kind, exponent)`` from a localization document."""
    alg = _algebra(_field(doc, "algebra", dict))
    components = []
    for n, comp in enumerate(_field(doc, "components", list)):
        where = f"components[{n}]."
        sign = _field(comp, "orientation_sign", int, where, default=1)
        if "chern" in comp:
            chern = tuple(alg.decode(c) for c in _field(comp, "chern", list, where))
            components.append(FixedComponent(alg, chern=chern, orientation_sign=sign,
                                             rank=_field(comp, "rank", int, where)))
            continue
        normal = []
        for s_n, s in enumerate(_field(comp, "normal", list, where)):
            swhere = f"{where}normal[{s_n}]."
            normal.append(LineSummand(_field(s, "weight", int, swhere),
                                      alg.decode(_field(s, "c1", list, swhere))))
        components.append(FixedComponent(alg, tuple(normal), orientation_sign=sign))
    betas = [alg.decode(b) for b in _field(doc, "betas", list, default=[])]
    mode = _field(doc, "mode", dict)
    kind = _field(mode, "kind", where="mode.")
    if kind == "star":
        if betas:
            raise InputError("field 'betas': only allowed with mode star_star")
        exponent = _field(mode, "n", int, "mode.")
    elif kind == "star_star":
        exponent = _field(mode, "l", int, "mode.")
    else:
        raise InputError(f"field 'mode.kind': expected 'star' or 'star_star', got {kind!r}")
    return components, betas, kind, exponent


def _emit(report):
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def cmd_dim(args):
    m, _ = parse_manifold(_load(args.file))
    try:
        d = expected_dimension(m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        r = index_rank(m)
    except HypothesisError:
        r = None
    _emit({
        "d": d,
        "r": r,
        "b1": m.b1,
        "b2_plus_is_one": m.b2_plus == 1,
        "b1_even": m.b1 % 2 == 0,
        "d_nonnegative": d >= 0,
        "wall_crossing_applicable": m.b2_plus == 1 and m.b1 % 2 == 0,
    })
    return EXIT_OK


def cmd_crossing(args):
    m, named = parse_manifold(_load(args.file))
    names = [c for c in args.curves.split(",") if c] if args.curves else []
    missing = [c for c in names if c not in named]
    if missing:
        raise InputError(f"unknown curve names: {', '.join(missing)}")
    curves = [named[c] for c in names]
    try:
        expected_dimension(m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sign = int(args.sign)
    routes = {}
    result = None
    if args.via in ("closed_form", "both"):
        result = wall_crossing_general(m, curves, sign)
        routes["closed_form"] = format_rational(result.value)
    if args.via in ("localization", "both"):
        loc = wall_crossing_via_localization(m, curves, sign)
        routes["localization"] = format_rational(loc.value)
        result = result or loc
    report = {
        "d": result.d,
        "r": result.r,
        "k": result.k,
        "curves": names,
        "value": format_rational(result.value),
        "sign_convention": result.sign_convention,
        "routes": routes,
        "reasons": list(result.reasons),
    }
    code = EXIT_OK
    if args.via == "both":
        agree = routes["closed_form"] == routes["localization"]
        report["agreement"] = agree
        if not agree:
            print("error: closed form and localization disagree", file=sys.stderr)
            code = EXIT_DISAGREE
    _emit(report)
    return code


def cmd_localize(args):
    components, betas, kind, exponent = parse_localization(_load(args.file))
    if kind == "star":
        terms = star_terms(components, exponent)
    else:
        terms = star_star_terms(components, betas, exponent)
    _emit({
        "mode": kind,
        ("n" if kind == "star" else "l"): exponent,
        "components": len(components),
        "value": format_rational(terms.get(0, Fraction(0))),
        "terms": {str(p): format_rational(v) for p, v in sorted(terms.items())},
        "residuals": {str(p): format_rational(v) for p, v in sorted(terms.items()) if p != 0},
    })
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="wallcross", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dim", help="expected dimension and index rank")
    p.add_argument("file")
    p.set_defaults(func=cmd_dim)
    p = sub.add_parser("crossing", help="wall-crossing difference")
    p.add_argument("file")
    p.add_argument("--curves", default="", help="comma-separated curve names")
    p.add_argument("--sign", default="+1", choices=["+1", "-1", "1"])
    p.add_argument("--via", default="closed_form",
                   choices=["closed_form", "localization", "both"])
    p.set_defaults(func=cmd_crossing)
    p = sub.add_parser("localize", help="evaluate a fixed-point localization sum")
    p.add_argument("file")
    p.set_defaults(func=cmd_localize)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InputError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
