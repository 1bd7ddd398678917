"""Command-line front end.

Every operation is exposed as a subcommand with plain-text or JSON output.
Exit status 0 means a decision was made, 2 means the result is inconclusive
(a failed sufficient criterion or an exhausted search), 1 means an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction as Q

from .algebra import Element, MultiDegree, Presentation
from .conditions import check_preset_conditions
from .criteria import hypothesis_II_check, torsion_spectral_check
from .errors import FracposError
from .expr import parse_element, parse_expression, parse_fraction, parse_word, to_fraction
from .gram import assemble_gram_system, extract_and_verify, sdp_feasible
from .ore import (
    DenomAtom,
    common_denominator,
    frac_arith,
    membership_in_x,
    multiindex_sequence,
    quotient_vanishes,
)
from .algebra import degree_split, pbw_views
from .ore import ore_right
from .reps import (
    build_representation,
    finite_rep_split_and_pi_rho,
    min_eig_check,
    rep_evaluate,
    resolvent_integrability_check,
)
from .search import positivstellensatz_search
from .sturm import sturm_positive

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _preset(args) -> Presentation:
    kind = args.preset
    if kind == "weyl":
        alpha = Q(args.alpha) if args.alpha is not None else Q(1)
        beta = Q(args.beta) if args.beta is not None else Q(1)
    elif kind == "axb":
        alpha = Q(args.alpha) if args.alpha is not None else Q(-3, 2)
        beta = Q(args.beta) if args.beta is not None else Q(1)
    else:
        alpha = Q(args.alpha) if args.alpha is not None else Q(1)
        beta = Q(args.beta) if args.beta is not None else Q(1)
    return Presentation(kind, alpha, beta)


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        if args.seed is not None:
            payload = dict(payload, seed=args.seed)
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for line in text_lines:
            print(line)


def _parse_multidegree(text: str) -> MultiDegree:
    return MultiDegree(int(part) for part in text.split(","))


def _parse_poly(text: str):
    """Rational coefficient list from `c0,c1,...` or a univariate expression."""
    if "," in text and "(" not in text:
        return [Q(part) for part in text.split(",")]
    from .algebra import commpoly

    elem = parse_element(text, commpoly())
    coeffs = [Q(0)] * ((elem.degree()[0] + 1) if not elem.is_zero() else 1)
    for (j, _), val in elem.terms.items():
        if not val.is_real():
            raise FracposError("polynomial coefficients must be real")
        coeffs[j] = val.re
    return coeffs


def cmd_nf(args, pres):
    elem = parse_element(args.expr, pres)
    _emit(args, {"normal_form": elem.text()}, [elem.text()])
    return EXIT_OK


def cmd_deg(args, pres):
    node = parse_expression(args.expr, pres)
    frac = to_fraction(node, pres)
    if frac.den.atoms:
        deg = frac.degree()
    else:
        deg = frac.num.degree()
    _emit(args, {"multidegree": list(deg)}, [f"{tuple(deg)}"])
    return EXIT_OK


def cmd_star(args, pres):
    elem = parse_element(args.expr, pres).star()
    _emit(args, {"star": elem.text()}, [elem.text()])
    return EXIT_OK


def cmd_frac(args, pres):
    f1 = parse_fraction(args.left, pres)
    f2 = parse_fraction(args.right, pres) if args.right is not None else None
    out = frac_arith(args.op, f1, f2)
    _emit(args, {"fraction": out.text()}, [out.text()])
    return EXIT_OK


def cmd_check_conditions(args, pres):
    report = check_preset_conditions(pres, args.which, window=args.window)
    lines = [f"condition {report.condition} on {report.preset}: "
             f"{'PASS' if report.passed else 'FAIL'} ({len(report.witnesses)} witnesses)"]
    for w in report.witnesses:
        status = "ok" if w.verified else "FAIL"
        lines.append(f"  [{status}] {w.input}: {w.identity}" + (f"  ({w.note})" if w.note else ""))
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_member(args, pres):
    frac = parse_fraction(args.expr, pres)
    result = membership_in_x(frac)
    if result.in_x:
        payload = {"status": "in_x", "witness": result.witness.text()}
        lines = [f"member of the bounded subalgebra; witness: {result.witness.text()}"]
        code = EXIT_OK
    else:
        payload = {"status": "criterion_failed", "reason": result.reason}
        lines = [f"inconclusive: {result.reason}"]
        code = EXIT_INCONCLUSIVE
    _emit(args, payload, lines)
    return code


def cmd_sohs(args, pres):
    c = parse_element(args.expr, pres)
    cap = _parse_multidegree(args.cap) if args.cap else None
    t_word = parse_word(args.t, pres) if args.t else None
    result = positivstellensatz_search(
        c,
        mode=args.mode,
        epsilon=Q(args.epsilon) if args.epsilon is not None else None,
        t=t_word,
        max_denom_len=args.max_denom_len,
        degree_cap=cap,
        window=args.window,
        rational=not args.float_only,
    )
    if result.found:
        cert = result.certificate
        payload = {
            "status": "found",
            "word": result.word.label(),
            "target": result.target.text(),
            "certificate": cert.to_dict(),
            "words_tried": result.words_tried,
        }
        lines = [
            f"found certificate with denominator word: {result.word.label()}",
            f"target: {result.target.text()}",
            f"mode: {cert.mode}; residual: "
            + (cert.residual_element.text() if cert.mode == "rational" else f"{cert.residual_norm:.3e}"),
            "factors:",
        ]
        lines += [f"  {t}" for t in cert.factor_texts()]
        _emit(args, payload, lines)
        return EXIT_OK
    payload = {"status": "not_found_within_caps", "words_tried": result.words_tried}
    _emit(args, payload, [f"no certificate within caps ({result.words_tried} words tried)"])
    return EXIT_INCONCLUSIVE


def cmd_rep_check(args, pres):
    build_kwargs = {}
    if args.kind == "axb-grid":
        build_kwargs = {"L": args.L, "sign": 1 if args.sign == "+" else -1}
    elif args.kind == "axb-scalar":
        build_kwargs = {"gamma": float(Q(args.gamma))}
    elif args.kind == "comm-atoms":
        atoms = []
        for pair in args.atoms.split(";"):
            lam, mu = pair.split(",")
            atoms.append((float(Q(lam)), float(Q(mu))))
        build_kwargs = {"atoms": atoms}

    if args.check == "resolvents":
        rep = build_representation(args.kind, pres, N=max(args.N), **build_kwargs)
        report = resolvent_integrability_check(rep)
        lines = [f"resolvent identities on {args.kind} (N={rep.size}): "
                 f"{'PASS' if report.passed else 'FAIL'}"]
        for name, value in report.identity_residuals.items():
            lines.append(f"  {name}: {value:.3e}")
        lines.append(f"  commutator on test vectors: max {max(report.vector_residuals):.3e}")
        lines.append(f"  note: {report.note}")
        _emit(args, report.to_dict(), lines)
        return EXIT_OK if report.passed else EXIT_ERROR

    if args.check == "split":
        rep = build_representation(args.kind, pres, N=max(args.N), **build_kwargs)
        elem = parse_element(args.expr, pres)
        result = finite_rep_split_and_pi_rho(rep, elem)
        lines = [
            f"torsion atoms: {result.torsion_atoms}",
            f"torsionfree atoms: {result.torsionfree_atoms}",
        ]
        if result.pi_matrix is None:
            lines.append(f"induced action undefined: {result.note}")
        else:
            import numpy as np

            lines.append(f"induced action diagonal: {np.diag(result.pi_matrix).tolist()}")
            lines.append(f"agreement with direct evaluation: {result.agreement:.3e}")
        _emit(args, result.to_dict(), lines)
        return EXIT_OK

    c = parse_element(args.expr, pres)
    report = min_eig_check(
        pres, c, args.margin, args.N, kind=args.kind, oversample=args.oversample, **build_kwargs
    )
    lines = [f"min eigenvalue: {report.value:.10g} "
             f"(margin {args.margin}, {'clears margin' if report.margin_positive else 'inconclusive or below margin'})"]
    for n, v in report.n_sequence:
        lines.append(f"  N={n}: {v:.10g}")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK


def cmd_hyp2(args, pres):
    c = parse_element(args.expr, pres)
    result = hypothesis_II_check(c)
    payload = {
        "status": result.status,
        "reason": result.reason,
        "m1": result.m1,
        "m2": result.m2,
        "corner": result.corner.text(),
    }
    _emit(args, payload, [f"{result.status}: {result.reason}"])
    return EXIT_OK


def cmd_vanish(args, pres):
    a = parse_element(args.expr, pres)
    s_word = parse_word(args.s, pres)
    t_word = parse_word(args.t, pres)
    r_atom = None
    if args.r:
        r_word = parse_word(args.r, pres)
        if len(r_word) != 1:
            raise FracposError("the factor flag needs a single denominator atom")
        r_atom = r_word.atoms[0]
    result = quotient_vanishes(a, s_word, t_word, r_atom, strictness=args.strictness)
    payload = {"status": result.status, "rule": result.rule, "detail": result.detail}
    if result.vanishes:
        _emit(args, payload, [f"vanishes ({result.rule}): {result.detail}"])
        return EXIT_OK
    _emit(args, payload, [f"unknown: {result.detail}"])
    return EXIT_INCONCLUSIVE


def cmd_sturm(args, pres):
    coeffs = _parse_poly(args.poly)
    result = sturm_positive(coeffs)
    payload = {"status": result.status}
    lines = [result.status.replace("_", " ")]
    if result.witness_point is not None:
        payload["witness_point"] = str(result.witness_point)
        lines.append(f"witness point: {result.witness_point}")
    if result.witness_interval is not None:
        payload["witness_interval"] = [str(v) for v in result.witness_interval]
        lines.append(f"witness interval: {result.witness_interval}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_torsion_check(args, pres):
    c = parse_element(args.expr, pres)
    result = torsion_spectral_check(c, args.which)
    payload = {
        "status": result.status,
        "which": result.which,
        "infimum": result.infimum,
        "corner": result.corner_value,
        "witness": result.witness,
    }
    lines = [f"{result.status} on the {args.which} quotient; grid infimum {result.infimum:.6g}"]
    if result.witness:
        lines.append(f"witness: {result.witness}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_common_denom(args, pres):
    words = [parse_word(text, pres) for text in args.words]
    result = common_denominator(words, pres)
    payload = {
        "t0": result.t0.label(),
        "t": result.t.label(),
        "right_cofactors": [f.text() for f in result.right_cofactors],
        "left_cofactors": [f.text() for f in result.left_cofactors],
        "right_witnesses": [w.text() for w in result.right_witnesses],
    }
    lines = [f"t0 = {result.t0.label()}", f"t = t0* t0 = {result.t.label()}"]
    for word, frac, wit in zip(words, result.right_cofactors, result.right_witnesses):
        lines.append(f"  {word.label()} * inv(t) = {wit.text()}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_multiindex(args, pres):
    d_c = _parse_multidegree(args.dc)
    d_s = _parse_multidegree(args.ds)
    seq = multiindex_sequence(d_c, d_s, args.m)
    payload = {"sequence": [list(n) for n in seq]}
    _emit(args, payload, [", ".join(str(tuple(n)) for n in seq)])
    return EXIT_OK


def cmd_pbw(args, pres):
    elem = parse_element(args.expr, pres)
    gamma, f_view, g_view = pbw_views(elem)
    names = pres.gen_names
    second = names[1] if len(names) > 1 else names[0]

    def poly_text(poly, var):
        return " + ".join(
            f"({poly[k].text()})*{var}^{k}" for k in sorted(poly)
        ) or "0"

    payload = {
        "gamma": {f"{j},{l}": c.text() for (j, l), c in sorted(gamma.items())},
        "f": {str(n): poly_text(p, names[0]) for n, p in sorted(f_view.items())},
        "g": {str(k): poly_text(p, second) for k, p in sorted(g_view.items())},
    }
    lines = [f"gamma[{j},{l}] = {c.text()}" for (j, l), c in sorted(gamma.items())]
    lines += [f"f[{n}] = {poly_text(p, names[0])}" for n, p in sorted(f_view.items())]
    lines += [f"g[{k}] = {poly_text(p, second)}" for k, p in sorted(g_view.items())]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_split(args, pres):
    elem = parse_element(args.expr, pres)
    n = _parse_multidegree(args.n)
    k = _parse_multidegree(args.k)
    pairs = degree_split(elem, n, k)
    payload = {"pairs": [[b.text(), c.text()] for b, c in pairs]}
    _emit(args, payload, [f"({b.text()}) * ({c.text()})" for b, c in pairs])
    return EXIT_OK


def cmd_ore_right(args, pres):
    word = parse_word(args.word, pres)
    elem = parse_element(args.expr, pres)
    moved, tail = ore_right(word, elem, pres)
    payload = {"numerator": moved.text(), "word": tail.label()}
    _emit(args, payload, [f"inv({word.label()}) * ({elem.text()}) = ({moved.text()}) * inv({tail.label()})"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpos",
        description="exact fraction-algebra toolkit for noncommutative positivity certificates",
    )
    parser.add_argument("--preset", choices=("weyl", "axb", "comm"), default="weyl")
    parser.add_argument("--alpha", default=None, help="rational shift parameter")
    parser.add_argument("--beta", default=None, help="rational shift parameter")
    parser.add_argument("--json", action="store_true", help="structured output")
    parser.add_argument("--seed", type=int, default=None, help="recorded for reproducibility")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of an element expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("deg", help="multidegree of an element or fraction")
    p.add_argument("expr")
    p.set_defaults(func=cmd_deg)

    p = sub.add_parser("star", help="adjoint of an element expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("frac", help="fraction arithmetic")
    p.add_argument("op", choices=("mul", "add", "sub", "star"))
    p.add_argument("left")
    p.add_argument("right", nargs="?", default=None)
    p.set_defaults(func=cmd_frac)

    p = sub.add_parser("check-conditions", help="structural condition suites")
    p.add_argument("--which", choices=("ia", "a1a2", "ab", "relations"), required=True)
    p.add_argument("--window", type=int, default=3)
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("member", help="membership test in the bounded subalgebra")
    p.add_argument("expr")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("sohs", help="search for a sum-of-hermitian-squares certificate")
    p.add_argument("expr")
    p.add_argument("--cap", default=None, help="basis degree cap d1,d2")
    p.add_argument("--mode", choices=("strict", "marshall"), default="strict")
    p.add_argument("--epsilon", default=None)
    p.add_argument("--t", default=None, help="perturbation word")
    p.add_argument("--max-denom-len", type=int, default=2, dest="max_denom_len")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--float-only", action="store_true", dest="float_only")
    p.set_defaults(func=cmd_sohs)

    p = sub.add_parser("rep-check", help="truncated representation checks")
    p.add_argument("--kind", choices=("schroedinger", "axb-grid", "axb-scalar", "comm-atoms"), required=True)
    p.add_argument("--expr", default="1")
    p.add_argument("--N", type=int, nargs="+", default=[32, 64, 128])
    p.add_argument("--margin", type=float, default=0.0)
    p.add_argument("--oversample", type=int, default=2)
    p.add_argument("--check", choices=("mineig", "resolvents", "split"), default="mineig")
    p.add_argument("--L", type=float, default=8.0)
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--gamma", default="2")
    p.add_argument("--atoms", default="0,0;1/2,1/2", help="semicolon-separated lambda,mu pairs")
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("hyp2", help="corner and edge-polynomial positivity check")
    p.add_argument("expr")
    p.set_defaults(func=cmd_hyp2)

    p = sub.add_parser("vanish", help="sufficient vanishing test in the quotients")
    p.add_argument("expr")
    p.add_argument("--s", required=True, help="left denominator word")
    p.add_argument("--t", required=True, help="right denominator word")
    p.add_argument("--r", default=None, help="distinguished factor atom")
    p.add_argument("--strictness", choices=("weak", "strict"), default="weak")
    p.set_defaults(func=cmd_vanish)

    p = sub.add_parser("sturm", help="exact strict positivity of a rational polynomial")
    p.add_argument("poly", help="comma coefficients c0,c1,... or an expression in x")
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("torsion-check", help="scalar spectral check in a quotient")
    p.add_argument("expr")
    p.add_argument("--which", choices=("s1", "s2", "sb", "sn"), required=True)
    p.set_defaults(func=cmd_torsion_check)

    p = sub.add_parser("common-denom", help="two-sided common denominator of words")
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_common_denom)

    p = sub.add_parser("multiindex", help="interpolating exponent vectors")
    p.add_argument("--dc", required=True)
    p.add_argument("--ds", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_multiindex)

    p = sub.add_parser("pbw", help="coefficient views of an element")
    p.add_argument("expr")
    p.set_defaults(func=cmd_pbw)

    p = sub.add_parser("split", help="bounded-degree factor split")
    p.add_argument("expr")
    p.add_argument("--n", required=True)
    p.add_argument("--k", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("ore-right", help="move an element across an inverted word")
    p.add_argument("expr")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_ore_right)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        pres = _preset(args)
        return args.func(args, pres)
    except FracposError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
