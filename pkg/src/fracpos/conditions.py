"""Executable checks of the structural conditions behind the fraction algebras.

Every check reduces a claimed identity to an exact zero fraction, or asks the
membership routine for an explicit witness. Reports never sample: a witness
either verifies exactly or the report fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .algebra import Element, Presentation
from .ore import (
    DenomAtom,
    DenomWord,
    RightFraction,
    frac_add,
    frac_from_element,
    frac_inv,
    frac_mul,
    frac_scale,
    frac_star,
    frac_sub,
    membership_in_x,
)
from .scalars import GaussianRational, I


@dataclass(frozen=True)
class ConditionWitness:
    input: str
    identity: str
    verified: bool
    note: str = ""

    def to_dict(self):
        return {
            "input": self.input,
            "identity": self.identity,
            "verified": self.verified,
            "note": self.note,
        }


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    preset: str
    witnesses: tuple
    passed: bool

    def to_dict(self):
        return {
            "condition": self.condition,
            "preset": self.preset,
            "passed": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _report(condition, pres, witnesses) -> ConditionReport:
    return ConditionReport(condition, pres.kind, tuple(witnesses), all(w.verified for w in witnesses))


def _sg_atoms(pres: Presentation, window: int):
    if pres.kind == "weyl":
        base = [DenomAtom("s1"), DenomAtom("s2")]
    elif pres.kind == "axb":
        base = [DenomAtom("sb")] + [DenomAtom("sn", n) for n in range(-window, window + 1)]
    else:
        return [DenomAtom("s")]
    out = []
    for atom in base:
        out.append(atom)
        out.append(atom.star())
    return out


def _x_generators(pres: Presentation, window: int):
    """Generating fractions of the bounded subalgebra, with display names."""
    if pres.kind == "comm":
        atom = DenomAtom("s")
        return [
            ("inv(s)", frac_inv(pres, DenomWord((atom,)))),
            ("x*inv(s)", RightFraction(pres, Element.gen(pres, "x"), DenomWord((atom,)))),
        ]
    return [
        (f"inv({atom.label()})", frac_inv(pres, DenomWord((atom,))))
        for atom in _sg_atoms(pres, window)
    ]


def _zero_witness(label: str, candidate: RightFraction, note: str = "") -> ConditionWitness:
    return ConditionWitness(label, f"{label} == 0", candidate.is_zero(), note)


def _inv(pres, atom) -> RightFraction:
    return frac_inv(pres, DenomWord((atom,)))


def _weyl_relation_witnesses(pres: Presentation):
    alpha, beta = pres.alpha, pres.beta
    x = _inv(pres, DenomAtom("s1"))
    xs = _inv(pres, DenomAtom("s1", adjoint=True))
    y = _inv(pres, DenomAtom("s2"))
    ys = _inv(pres, DenomAtom("s2", adjoint=True))
    out = []

    def zero(label, frac, note=""):
        out.append(_zero_witness(label, frac, note))

    zero("x - x* - 2*i*alpha*x**x", frac_sub(frac_sub(x, xs), frac_scale(frac_mul(xs, x), I * 2 * alpha)))
    zero("y - y* - 2*i*beta*y**y", frac_sub(frac_sub(y, ys), frac_scale(frac_mul(ys, y), I * 2 * beta)))
    zero("x*x* - x**x", frac_sub(frac_mul(x, xs), frac_mul(xs, x)))
    zero("y*y* - y**y", frac_sub(frac_mul(y, ys), frac_mul(ys, y)))
    xy_minus_yx = frac_sub(frac_mul(x, y), frac_mul(y, x))
    zero(
        "x*y - y*x + i*x*y^2*x",
        frac_add(xy_minus_yx, frac_scale(frac_mul(frac_mul(x, frac_mul(y, y)), x), I)),
    )
    zero(
        "x*y - y*x + i*y*x^2*y",
        frac_add(xy_minus_yx, frac_scale(frac_mul(frac_mul(y, frac_mul(x, x)), y), I)),
    )
    xys_minus_ysx = frac_sub(frac_mul(x, ys), frac_mul(ys, x))
    zero(
        "x*y* - y**x + i*x*(y*)^2*x",
        frac_add(xys_minus_ysx, frac_scale(frac_mul(frac_mul(x, frac_mul(ys, ys)), x), I)),
    )
    zero(
        "x*y* - y**x + i*y**x^2*y*",
        frac_add(xys_minus_ysx, frac_scale(frac_mul(frac_mul(ys, frac_mul(x, x)), ys), I)),
    )
    return out


def _axb_relation_witnesses(pres: Presentation, window: int):
    beta = pres.beta
    y = _inv(pres, DenomAtom("sb"))
    ys = _inv(pres, DenomAtom("sb", adjoint=True))
    out = []

    def zero(label, frac, note=""):
        out.append(_zero_witness(label, frac, note))

    def xn(n, adjoint=False):
        return _inv(pres, DenomAtom("sn", n, adjoint))

    zero("y - y* - 2*i*beta*y**y", frac_sub(frac_sub(y, ys), frac_scale(frac_mul(ys, y), I * 2 * beta)))
    zero("y - y* - 2*i*beta*y*y*", frac_sub(frac_sub(y, ys), frac_scale(frac_mul(y, ys), I * 2 * beta)))
    for n in range(-window, window + 1):
        x_n, xs_n = xn(n), xn(n, True)
        shift = 2 * (pres.alpha + n)
        zero(
            f"x[{n}] - x[{n}]* - 2*(alpha+{n})*i*x[{n}]**x[{n}]",
            frac_sub(frac_sub(x_n, xs_n), frac_scale(frac_mul(xs_n, x_n), I * shift)),
        )
        zero(
            f"x[{n}] - x[{n}]* - 2*(alpha+{n})*i*x[{n}]*x[{n}]*",
            frac_sub(frac_sub(x_n, xs_n), frac_scale(frac_mul(x_n, xs_n), I * shift)),
        )
    for n in range(-window, window + 1):
        for k in range(-window, window + 1):
            x_n, x_k = xn(n), xn(k)
            if n != k:
                diff = frac_sub(x_n, x_k)
                zero(
                    f"x[{n}] - x[{k}] - ({n}-{k})*i*x[{n}]*x[{k}]",
                    frac_sub(diff, frac_scale(frac_mul(x_n, x_k), I * (n - k))),
                )
                zero(
                    f"x[{n}] - x[{k}] - ({n}-{k})*i*x[{k}]*x[{n}]",
                    frac_sub(diff, frac_scale(frac_mul(x_k, x_n), I * (n - k))),
                    note="commuted product form",
                )
            xs_k = xn(k, True)
            diff = frac_sub(x_n, xs_k)
            shift = 2 * pres.alpha + k + n
            zero(
                f"x[{n}] - x[{k}]* - (2*alpha+{k}+{n})*i*x[{n}]*x[{k}]*",
                frac_sub(diff, frac_scale(frac_mul(x_n, xs_k), I * shift)),
            )
            zero(
                f"x[{n}] - x[{k}]* - (2*alpha+{k}+{n})*i*x[{k}]**x[{n}]",
                frac_sub(diff, frac_scale(frac_mul(xs_k, x_n), I * shift)),
                note="commuted product form",
            )
    for n in range(-window, window + 1):
        x_n, x_n1 = xn(n), xn(n + 1)
        xs_n, xs_n1 = xn(n, True), xn(n + 1, True)
        lhs = frac_sub(frac_mul(x_n, y), frac_mul(y, x_n1))
        zero(
            f"x[{n}]*y - y*x[{n+1}] + beta*y*x[{n+1}]*x[{n}]*y",
            frac_add(lhs, frac_scale(frac_mul(frac_mul(y, x_n1), frac_mul(x_n, y)), beta)),
        )
        zero(
            f"x[{n}]*y - y*x[{n+1}] + beta*x[{n}]*y^2*x[{n+1}]",
            frac_add(lhs, frac_scale(frac_mul(frac_mul(x_n, frac_mul(y, y)), x_n1), beta)),
        )
        lhs_star = frac_sub(frac_mul(x_n, ys), frac_mul(ys, x_n1))
        zero(
            f"x[{n}]*y* - y**x[{n+1}] - beta*y**x[{n+1}]*x[{n}]*y*",
            frac_sub(lhs_star, frac_scale(frac_mul(frac_mul(ys, x_n1), frac_mul(x_n, ys)), beta)),
        )
        zero(
            f"x[{n}]*y* - y**x[{n+1}] - beta*x[{n}]*(y*)^2*x[{n+1}]",
            frac_sub(lhs_star, frac_scale(frac_mul(frac_mul(x_n, frac_mul(ys, ys)), x_n1), beta)),
        )
    return out


def _comm_relation_witnesses(pres: Presentation):
    a = _inv(pres, DenomAtom("s"))
    b = RightFraction(pres, Element.gen(pres, "x"), DenomWord((DenomAtom("s"),)))
    circle = frac_sub(frac_add(frac_mul(a, a), frac_mul(b, b)), a)
    return [_zero_witness("a^2 + b^2 - a (circle relation)", circle)]


def _relations_report(pres: Presentation, window: int) -> ConditionReport:
    if pres.kind == "weyl":
        witnesses = _weyl_relation_witnesses(pres)
    elif pres.kind == "axb":
        witnesses = _axb_relation_witnesses(pres, window)
    else:
        witnesses = _comm_relation_witnesses(pres)
    return _report("Relations", pres, witnesses)


def _ia_report(pres: Presentation, window: int) -> ConditionReport:
    """Conjugation by each denominator generator keeps the subalgebra stable."""
    witnesses = []
    gens = _x_generators(pres, window)
    for atom in _sg_atoms(pres, window):
        s_elem = atom.element(pres)
        s_word = DenomWord((atom,))
        for name, x_frac in gens:
            conj = frac_mul(frac_mul(frac_from_element(s_elem), x_frac), frac_inv(pres, s_word))
            mem = membership_in_x(conj)
            note = mem.witness.text() if mem.in_x else mem.reason
            witnesses.append(
                ConditionWitness(
                    f"x={name}, s={atom.label()}",
                    f"{name}*inv({atom.label()}) == inv({atom.label()})*y with y = "
                    f"{atom.label()}*{name}*inv({atom.label()}) in the subalgebra",
                    mem.in_x,
                    note,
                )
            )
    if pres.kind == "axb":
        witnesses.append(
            ConditionWitness(
                "shift window",
                f"window |n| <= {window} checked; conjugation identities are "
                "invariant under shifting every index",
                True,
                "finite window stands in for the infinite generator family",
            )
        )
    return _report("IA", pres, witnesses)


def _a1a2_report(pres: Presentation, window: int) -> ConditionReport:
    """Single-generator moves plus pairwise common denominators."""
    witnesses = []
    gens = _x_generators(pres, window)
    atoms = _sg_atoms(pres, window)
    for atom in atoms:
        s_elem = atom.element(pres)
        for name, x_frac in gens:
            conj = frac_mul(frac_mul(frac_from_element(s_elem), x_frac), frac_inv(pres, DenomWord((atom,))))
            mem = membership_in_x(conj)
            witnesses.append(
                ConditionWitness(
                    f"A1: x={name}, s={atom.label()}",
                    f"{name}*inv({atom.label()}) rewrites over the same denominator generator",
                    mem.in_x,
                    mem.witness.text() if mem.in_x else mem.reason,
                )
            )
    for s1 in atoms:
        for s2 in atoms:
            t = DenomWord((s1, s2))
            ok = True
            notes = []
            for s in (s1, s2):
                fr = RightFraction(pres, s.element(pres), t)
                mem = membership_in_x(fr)
                ok = ok and mem.in_x
                notes.append(f"{s.label()}*inv(t): {'ok' if mem.in_x else mem.reason}")
            witnesses.append(
                ConditionWitness(
                    f"A2: s1={s1.label()}, s2={s2.label()}",
                    f"t = {t.label()} absorbs both generators",
                    ok,
                    "; ".join(notes),
                )
            )
    return _report("A1A2", pres, witnesses)


def _ab_report(pres: Presentation, window: int) -> ConditionReport:
    """Unit minus each squared generator is an explicit hermitian square."""
    witnesses = []

    def bounded(label, g_frac, lam):
        # 1 - lam^2 g*g == (1 + i*lam*g)* (1 + i*lam*g), rearranged to zero.
        one = frac_from_element(Element.one(pres))
        gsg = frac_mul(frac_star(g_frac), g_frac)
        lhs = frac_sub(one, frac_scale(gsg, lam * lam))
        w = frac_add(one, frac_scale(g_frac, I * lam))
        rhs = frac_mul(frac_star(w), w)
        witnesses.append(
            _zero_witness(f"1 - ({lam})^2*{label}**{label} - adj(1+i*{lam}*{label})*(1+i*{lam}*{label})",
                          frac_sub(lhs, rhs))
        )

    if pres.kind == "weyl":
        bounded("x", _inv(pres, DenomAtom("s1")), pres.alpha)
        bounded("y", _inv(pres, DenomAtom("s2")), pres.beta)
    elif pres.kind == "axb":
        bounded("y", _inv(pres, DenomAtom("sb")), pres.beta)
        for n in range(-window, window + 1):
            bounded(f"x[{n}]", _inv(pres, DenomAtom("sn", n)), pres.alpha + n)
    else:
        a = _inv(pres, DenomAtom("s"))
        b = RightFraction(pres, Element.gen(pres, "x"), DenomWord((DenomAtom("s"),)))
        one = frac_from_element(Element.one(pres))
        one_minus_a = frac_sub(one, a)
        lhs_a = frac_sub(one, frac_mul(frac_star(a), a))
        rhs_a = frac_add(frac_mul(frac_star(one_minus_a), one_minus_a),
                         frac_scale(frac_mul(frac_star(b), b), Q(2)))
        witnesses.append(_zero_witness("1 - a^2 - ((1-a)^2 + 2*b^2)", frac_sub(lhs_a, rhs_a)))
        lhs_b = frac_sub(one, frac_mul(frac_star(b), b))
        rhs_b = frac_add(frac_mul(frac_star(one_minus_a), one_minus_a),
                         frac_add(frac_mul(frac_star(a), a), frac_mul(frac_star(b), b)))
        witnesses.append(_zero_witness("1 - b^2 - ((1-a)^2 + a^2 + b^2)", frac_sub(lhs_b, rhs_b)))
    return _report("AB", pres, witnesses)


def check_preset_conditions(pres: Presentation, which: str, window: int = 3) -> ConditionReport:
    """Run one family of structural checks and report every witness."""
    which = which.lower()
    if which == "relations":
        return _relations_report(pres, window)
    if which == "ia":
        return _ia_report(pres, window)
    if which == "a1a2":
        return _a1a2_report(pres, window)
    if which == "ab":
        return _ab_report(pres, window)
    raise ValueError(f"unknown condition family {which!r}")
