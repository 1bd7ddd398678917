"""Right fractions over the preset denominator monoids.

A fraction stores a numerator element and a denominator word of shifted
generators; it denotes numerator * word^-1. Fractions are never reduced to a
canonical form: equality is decided by bringing both sides to a common
denominator and comparing numerators, which is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q

from .algebra import Element, MultiDegree, Presentation, degree_split, opposite_form
from .errors import HypothesisViolated, PresetMismatch
from .scalars import GaussianRational, I, ONE, ZERO


@dataclass(frozen=True)
class DenomAtom:
    """A single denominator generator.

    kind "s1"/"s2" are the two shifted generators of the weyl preset,
    "sn" (with an integer shift) and "sb" the shifted generators of the axb
    preset, and "s" the quadratic denominator of the comm preset.
    """

    kind: str
    shift: int = 0
    adjoint: bool = False

    def __post_init__(self):
        if self.kind not in ("s1", "s2", "sn", "sb", "s"):
            raise ValueError(f"unknown denominator atom kind {self.kind!r}")
        if self.kind != "sn" and self.shift != 0:
            raise ValueError("only sn atoms carry a shift")
        if self.kind == "s" and self.adjoint:
            raise ValueError("the comm denominator is self-adjoint")

    def preset_kind(self) -> str:
        return {"s1": "weyl", "s2": "weyl", "sn": "axb", "sb": "axb", "s": "comm"}[self.kind]

    def element(self, pres: Presentation) -> Element:
        if self.preset_kind() != pres.kind:
            raise PresetMismatch(f"atom {self.label()} does not belong to the {pres.kind} preset")
        if self.kind == "s":
            return Element(pres, {(2, 0): ONE, (0, 0): ONE})
        mono = (1, 0) if self.kind in ("s1", "sn") else (0, 1)
        shift = self.shift_value(pres)
        sign = 1 if self.adjoint else -1
        return Element(pres, {mono: ONE, (0, 0): I * sign * shift})

    def shift_value(self, pres: Presentation) -> Q:
        """Imaginary offset of the non-adjoint atom."""
        if self.kind == "s1":
            return pres.alpha
        if self.kind == "s2":
            return pres.beta
        if self.kind == "sn":
            return pres.alpha + self.shift
        if self.kind == "sb":
            return pres.beta
        raise ValueError("the comm atom has no imaginary shift")

    def degree(self) -> MultiDegree:
        if self.kind == "s":
            return MultiDegree(2, 0)
        if self.kind in ("s1", "sn"):
            return MultiDegree(1, 0)
        return MultiDegree(0, 1)

    def star(self) -> "DenomAtom":
        if self.kind == "s":
            return self
        return DenomAtom(self.kind, self.shift, not self.adjoint)

    def label(self) -> str:
        if self.kind == "sn":
            base = f"s[{self.shift}]"
        else:
            base = self.kind
        return base + ("*" if self.adjoint else "")


@dataclass(frozen=True)
class DenomWord:
    """Ordered product of denominator atoms; the empty word is the unit."""

    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    def element(self, pres: Presentation) -> Element:
        out = Element.one(pres)
        for atom in self.atoms:
            out = out * atom.element(pres)
        return out

    def degree(self) -> MultiDegree:
        total = MultiDegree(0, 0)
        for atom in self.atoms:
            total = total + atom.degree()
        return total

    def star(self) -> "DenomWord":
        return DenomWord(tuple(atom.star() for atom in reversed(self.atoms)))

    def concat(self, other: "DenomWord") -> "DenomWord":
        return DenomWord(self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)

    def label(self) -> str:
        return " ".join(atom.label() for atom in self.atoms) if self.atoms else "1"


@dataclass(frozen=True)
class RightFraction:
    """numerator * word^-1 in the localized algebra."""

    pres: Presentation
    num: Element
    den: DenomWord = DenomWord()

    def __post_init__(self):
        if self.num.pres != self.pres:
            raise PresetMismatch("numerator belongs to a different presentation")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def degree(self) -> MultiDegree:
        """d(num) - d(den); well defined on equal fractions."""
        return self.num.degree() - self.den.degree()

    def text(self) -> str:
        if not self.den.atoms:
            return self.num.text()
        return f"({self.num.text()}) * inv({self.den.label()})"

    def __repr__(self):
        return f"<fraction {self.text()}>"


def frac_from_element(e: Element) -> RightFraction:
    return RightFraction(e.pres, e)


def frac_one(pres: Presentation) -> RightFraction:
    return RightFraction(pres, Element.one(pres))


def frac_inv(pres: Presentation, word: DenomWord) -> RightFraction:
    return RightFraction(pres, Element.one(pres), word)


# -- exact right division by a denominator atom --------------------------------


def _opposite_element(pres: Presentation, opposite_terms: dict) -> Element:
    """Element from coefficients given in second-generator-first order."""
    out = Element.zero(pres)
    for (k, l), coeff in opposite_terms.items():
        out = out + Element(pres, pres.mono_mul((0, l), (k, 0))) * coeff
    return out


def right_divide_atom(e: Element, atom: DenomAtom, pres: Presentation):
    """Quotient q with e == q * atom, or None when no exact quotient exists.

    Synthetic division runs in the coefficient view whose innermost variable
    matches the atom's generator, where multiplying by the atom needs no
    reordering at all.
    """
    if e.is_zero():
        return e
    if atom.kind == "s":
        # divide by x^2 + 1 in the single commuting variable
        coeffs = {j: c for (j, _), c in e.terms.items()}
        top = max(coeffs)
        if top < 2:
            return None
        quot = {}
        work = dict(coeffs)
        for j in range(top, 1, -1):
            c = work.get(j)
            if c is None or c.is_zero():
                continue
            quot[j - 2] = c
            work[j] = ZERO
            work[j - 2] = work.get(j - 2, ZERO) - c
        if any(not c.is_zero() for c in work.values()):
            return None
        return Element(pres, {(j, 0): c for j, c in quot.items()})

    shift = I * atom.shift_value(pres) * (-1 if atom.adjoint else 1)
    inner_is_second = atom.kind in ("s2", "sb")
    if inner_is_second:
        view = {}
        for (j, l), coeff in e.terms.items():
            view.setdefault(l, {})[j] = coeff
    else:
        view = {}
        for (k, l), coeff in opposite_form(e).items():
            view.setdefault(k, {})[l] = coeff
    top = max(view)
    if top < 1:
        return None
    quot = {}
    carry = {}
    for n in range(top, 0, -1):
        coeffs = dict(view.get(n, {}))
        for pw, c in carry.items():
            coeffs[pw] = coeffs.get(pw, ZERO) + c
        coeffs = {pw: c for pw, c in coeffs.items() if not c.is_zero()}
        quot[n - 1] = coeffs
        carry = {pw: c * shift for pw, c in coeffs.items()}
    rem = dict(view.get(0, {}))
    for pw, c in carry.items():
        rem[pw] = rem.get(pw, ZERO) + c
    if any(not c.is_zero() for c in rem.values()):
        return None
    if inner_is_second:
        quotient = Element(pres, {(j, n): c for n, poly in quot.items() for j, c in poly.items()})
    else:
        quotient = _opposite_element(
            pres, {(n, l): c for n, poly in quot.items() for l, c in poly.items()}
        )
    assert quotient * atom.element(pres) == e
    return quotient


def _cancel(pres: Presentation, num: Element, word: DenomWord):
    """Strip trailing denominator atoms that divide the numerator exactly."""
    atoms = list(word.atoms)
    while atoms:
        if num.is_zero():
            atoms.clear()
            break
        quot = right_divide_atom(num, atoms[-1], pres)
        if quot is None:
            break
        num = quot
        atoms.pop()
    return num, DenomWord(tuple(atoms))


# -- the right Ore move -------------------------------------------------------


def ore_right(word: DenomWord, b: Element, pres: Presentation):
    """Rewrite word^-1 * b as b' * word'^-1.

    Works one atom at a time, cancelling exact divisors as the denominator
    grows. The identity b * word'_elem == word_elem * b' is asserted before
    returning.
    """
    if b.pres != pres:
        raise PresetMismatch("element belongs to a different presentation")
    current = b
    tail = DenomWord()
    for atom in word.atoms:
        current, more = _ore_atom(atom, current, pres)
        current, combined = _cancel(pres, current, tail.concat(DenomWord(more)))
        tail = combined
    assert b * tail.element(pres) == word.element(pres) * current
    return current, tail


def _ore_atom(atom: DenomAtom, e: Element, pres: Presentation):
    """atom^-1 * e  ==  e' * word'^-1 with word' a product of atoms."""
    if pres.kind == "comm":
        return e, (atom,)
    if atom.kind == "sn":
        return _ore_shift_atom(atom, e, pres)
    u = atom.element(pres)
    c = e * u - u * e
    if c.is_zero():
        return e, (atom,)
    c2, tail = _ore_atom(atom, c, pres)
    m = len(tail)
    return e * u ** m + c2, (atom,) * (m + 1)


def _ore_shift_atom(atom: DenomAtom, e: Element, pres: Presentation):
    # The shifted generator commutes with the first generator and walks
    # across powers of the second one by changing its shift.
    direction = 1 if atom.adjoint else -1
    groups = {}
    for (j, l), coeff in e.terms.items():
        m = atom.shift + direction * l
        groups.setdefault(m, {})[(j, l)] = coeff
    if not groups:
        return e, (atom,)
    shifts = sorted(groups)
    atoms = tuple(DenomAtom("sn", m, atom.adjoint) for m in shifts)
    out = Element.zero(pres)
    for m in shifts:
        part = Element(pres, groups[m])
        for other in shifts:
            if other != m:
                part = part * DenomAtom("sn", other, atom.adjoint).element(pres)
        out = out + part
    return out, atoms


# -- fraction arithmetic -------------------------------------------------------


def frac_mul(f1: RightFraction, f2: RightFraction) -> RightFraction:
    _check_pair(f1, f2)
    moved, tail = ore_right(f1.den, f2.num, f1.pres)
    return RightFraction(f1.pres, f1.num * moved, f2.den.concat(tail))


def frac_add(f1: RightFraction, f2: RightFraction) -> RightFraction:
    _check_pair(f1, f2)
    moved, tail = ore_right(f2.den, f1.den.element(f1.pres), f1.pres)
    den = f1.den.concat(tail)
    num = f1.num * tail.element(f1.pres) + f2.num * moved
    return RightFraction(f1.pres, num, den)


def frac_neg(f: RightFraction) -> RightFraction:
    return RightFraction(f.pres, -f.num, f.den)


def frac_sub(f1: RightFraction, f2: RightFraction) -> RightFraction:
    return frac_add(f1, frac_neg(f2))


def frac_scale(f: RightFraction, scalar) -> RightFraction:
    return RightFraction(f.pres, f.num * scalar, f.den)


def frac_star(f: RightFraction) -> RightFraction:
    moved, tail = ore_right(f.den.star(), f.num.star(), f.pres)
    return RightFraction(f.pres, moved, tail)


def frac_pow(f: RightFraction, k: int) -> RightFraction:
    if k < 0:
        raise ValueError("negative fraction powers are not supported")
    out = frac_one(f.pres)
    for _ in range(k):
        out = frac_mul(out, f)
    return out


def frac_eq(f1: RightFraction, f2: RightFraction) -> bool:
    return frac_sub(f1, f2).is_zero()


def frac_arith(op: str, f1: RightFraction, f2: RightFraction = None) -> RightFraction:
    """Dispatcher used by the command-line front end."""
    if op == "star":
        return frac_star(f1)
    if f2 is None:
        raise ValueError(f"operation {op!r} needs two fractions")
    if op == "mul":
        return frac_mul(f1, f2)
    if op == "add":
        return frac_add(f1, f2)
    if op == "sub":
        return frac_sub(f1, f2)
    raise ValueError(f"unknown fraction operation {op!r}")


def _check_pair(f1, f2):
    if f1.pres != f2.pres:
        raise PresetMismatch("fractions live over different presentations")


# -- membership in the bounded fraction subalgebra -----------------------------


@dataclass(frozen=True)
class XWitness:
    """Polynomial in the inverted denominator generators.

    ``terms`` is a tuple of (coefficient, factor-name tuple); ``table`` maps
    each factor name to the fraction it denotes.
    """

    pres: Presentation
    terms: tuple
    table: dict = field(hash=False)

    def evaluate(self) -> RightFraction:
        total = RightFraction(self.pres, Element.zero(self.pres))
        for coeff, names in self.terms:
            part = frac_from_element(Element.scalar(self.pres, coeff))
            for name in names:
                part = frac_mul(part, self.table[name])
            total = frac_add(total, part)
        return total

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coeff, names in self.terms:
            body = "*".join(names) if names else "1"
            parts.append(f"({coeff.text()})*{body}")
        return " + ".join(parts)


@dataclass(frozen=True)
class MembershipResult:
    status: str  # "in_x" or "criterion_failed"
    witness: XWitness = None
    reason: str = ""

    @property
    def in_x(self) -> bool:
        return self.status == "in_x"


def membership_in_x(f: RightFraction) -> MembershipResult:
    """Sufficient degree test for membership in the bounded subalgebra.

    When the numerator degree is bounded by the denominator degree the
    fraction is rewritten as an explicit polynomial in the inverted
    generators; the witness is re-evaluated and compared with the input.
    A failed criterion is inconclusive, never a proof of non-membership.
    """
    pres = f.pres
    if f.num.is_zero():
        witness = XWitness(pres, (), {})
        return MembershipResult("in_x", witness)
    d_num = f.num.degree()
    d_den = f.den.degree()
    if not d_num <= d_den:
        return MembershipResult(
            "criterion_failed",
            reason=f"numerator degree {tuple(d_num)} exceeds denominator degree {tuple(d_den)}",
        )
    table = {}
    terms = _collect_terms(_x_express(f.num, f.den, pres, table))
    witness = XWitness(pres, tuple(terms), table)
    assert frac_eq(witness.evaluate(), f)
    return MembershipResult("in_x", witness)


def _collect_terms(terms):
    acc = {}
    order = []
    for coeff, names in terms:
        if names not in acc:
            order.append(names)
            acc[names] = coeff
        else:
            acc[names] = acc[names] + coeff
    return [(acc[names], names) for names in order if not acc[names].is_zero()]


def _witness_name(pres, atom: DenomAtom, table, generator_prefix=False) -> str:
    name = f"inv({atom.label()})"
    if name not in table:
        table[name] = frac_inv(pres, DenomWord((atom,)))
    return name


def _comm_linear_name(pres, table) -> str:
    name = "x*inv(s)"
    if name not in table:
        table[name] = RightFraction(
            pres, Element.gen(pres, "x"), DenomWord((DenomAtom("s"),))
        )
    return name


def _atomic_terms(b: Element, atom: DenomAtom, pres, table):
    """Express b * atom^-1, where d(b) <= d(atom), over the generator table."""
    if b.is_zero():
        return []
    if atom.kind == "s":
        b0 = b.coefficient((0, 0))
        b1 = b.coefficient((1, 0))
        b2 = b.coefficient((2, 0))
        terms = []
        if not b2.is_zero():
            terms.append((b2, ()))
        c_inv = b0 - b2
        if not c_inv.is_zero():
            terms.append((c_inv, (_witness_name(pres, atom, table),)))
        if not b1.is_zero():
            terms.append((b1, (_comm_linear_name(pres, table),)))
        return terms
    mono = (1, 0) if atom.kind in ("s1", "sn") else (0, 1)
    b0 = b.coefficient((0, 0))
    b1 = b.coefficient(mono)
    sig = atom.shift_value(pres) * (-1 if atom.adjoint else 1)
    terms = []
    if not b1.is_zero():
        terms.append((b1, ()))
    c_inv = b0 + b1 * I * sig
    if not c_inv.is_zero():
        terms.append((c_inv, (_witness_name(pres, atom, table),)))
    return terms


def _mul_terms(left, right):
    out = []
    for c1, n1 in left:
        for c2, n2 in right:
            out.append((c1 * c2, n1 + n2))
    return out


def _x_express(a: Element, word: DenomWord, pres, table):
    """Rewrite a * word^-1 (with d(a) <= d(word)) over the generator table."""
    if a.is_zero():
        return []
    if not word.atoms:
        return [(a.coefficient((0, 0)), ())]
    atom = word.atoms[-1]
    rest = DenomWord(word.atoms[:-1])
    out = []
    for b, c in degree_split(a, atom.degree(), rest.degree()):
        if atom.kind == "sn":
            direction = -1 if atom.adjoint else 1
            for l, coeffs in _group_by_second(c).items():
                part = Element(pres, coeffs)
                shifted = DenomAtom("sn", atom.shift + direction * l, atom.adjoint)
                head = _atomic_terms(b, shifted, pres, table)
                out.extend(_mul_terms(head, _x_express(part, rest, pres, table)))
        else:
            u = atom.element(pres)
            head = _atomic_terms(b, atom, pres, table)
            out.extend(_mul_terms(head, _x_express(c, rest, pres, table)))
            bracket = u * c - c * u
            if not bracket.is_zero():
                out.extend(_mul_terms(head, _x_express(bracket, word, pres, table)))
    return out


def _group_by_second(e: Element):
    groups = {}
    for (j, l), coeff in e.terms.items():
        groups.setdefault(l, {})[(j, l)] = coeff
    return groups


# -- common denominators -------------------------------------------------------


@dataclass(frozen=True)
class CommonDenominator:
    """Two-sided common denominator for a family of words.

    ``t`` is self-adjoint by construction (t0* followed by t0); the right
    cofactors realize s * t^-1 and the left cofactors t^-1 * s, each with a
    membership witness in the bounded subalgebra.
    """

    t0: DenomWord
    t: DenomWord
    right_cofactors: tuple
    left_cofactors: tuple
    right_witnesses: tuple
    left_witnesses: tuple


def common_denominator(words, pres: Presentation) -> CommonDenominator:
    if not words:
        raise ValueError("need at least one denominator word")
    t0 = DenomWord()
    for w in words:
        if not w.degree() <= t0.degree():
            t0 = t0.concat(w)
    t = t0.star().concat(t0)
    right, left, rw, lw = [], [], [], []
    for w in words:
        fr = RightFraction(pres, w.element(pres), t)
        mem = membership_in_x(fr)
        assert mem.in_x, "degree criterion must hold by construction"
        right.append(fr)
        rw.append(mem.witness)
        pre = RightFraction(pres, w.element(pres).star(), t)
        mem_left = membership_in_x(pre)
        assert mem_left.in_x
        left.append(frac_star(pre))
        lw.append(mem_left.witness)
    return CommonDenominator(t0, t, tuple(right), tuple(left), tuple(rw), tuple(lw))


# -- multi-index sequence ------------------------------------------------------


def multiindex_sequence(d_c, d_s, m: int):
    """Interpolating exponent vectors between a degree and twice a degree.

    Given componentwise d_c <= (2m-1)(d_s - d_c), produces n_1..n_m with
    d_c <= n_j <= 2*d_c and 2*d_c - n_(j-1) + n_j <= 2*d_s; both families of
    inequalities are asserted on the output.
    """
    d_c = MultiDegree(d_c)
    d_s = MultiDegree(d_s)
    if m < 1:
        raise HypothesisViolated("need at least one step")
    if not d_c <= (d_s - d_c).scale(2 * m - 1):
        raise HypothesisViolated(
            f"{tuple(d_c)} exceeds {2 * m - 1} * ({tuple(d_s)} - {tuple(d_c)})"
        )
    if m == 1:
        seq = [d_c.scale(2)]
    else:
        columns = []
        for c, s in zip(d_c, d_s):
            if s >= 2 * c:
                columns.append([2 * c] * m)
                continue
            m_l = next(
                t for t in range(2, m + 1)
                if (2 * t - 3) * (s - c) <= c <= (2 * t - 1) * (s - c)
            )
            col = [s]
            for j in range(2, m_l):
                col.append(2 * (j - 1) * (s - c) + s)
            col.extend([2 * c] * (m - m_l + 1))
            columns.append(col)
        seq = [MultiDegree(col[j] for col in columns) for j in range(m)]
    for n in seq:
        assert d_c <= n and n <= d_c.scale(2)
    for prev, cur in zip(seq, seq[1:]):
        assert d_c.scale(2) - prev + cur <= d_s.scale(2)
    return seq


# -- sufficient vanishing criteria ---------------------------------------------


@dataclass(frozen=True)
class VanishResult:
    status: str  # "vanishes" or "unknown"
    rule: str = ""
    detail: str = ""

    @property
    def vanishes(self) -> bool:
        return self.status == "vanishes"


def _graded_less(n: MultiDegree, m: MultiDegree, strictness: str) -> bool:
    if strictness == "strict":
        return n < m
    # Weak reading: strict wherever the bound is positive, zero elsewhere,
    # and the bound must not vanish entirely.
    if all(b == 0 for b in m):
        return False
    return all(a < b if b > 0 else a == 0 for a, b in zip(n, m, strict=True))


def quotient_vanishes(
    a: Element,
    s: DenomWord,
    t: DenomWord,
    r: DenomAtom = None,
    strictness: str = "weak",
) -> VanishResult:
    """Sound sufficient test that s^-1 a t^-1 dies in the quotient algebras.

    Returns which rule fired: a componentwise degree drop against the full
    denominator, or a factor-wise exponent decomposition against the
    distinguished atom r. "unknown" makes no non-vanishing claim.
    """
    if strictness not in ("weak", "strict"):
        raise ValueError("strictness must be weak or strict")
    if a.is_zero():
        return VanishResult("vanishes", "zero", "zero numerator")
    d_a = a.degree()
    d_st = s.degree() + t.degree()
    if _graded_less(d_a, d_st, strictness):
        return VanishResult(
            "vanishes",
            "degree",
            f"degree {tuple(d_a)} drops below {tuple(d_st)} componentwise",
        )
    if r is not None:
        if r not in s.atoms and r not in t.atoms:
            return VanishResult("unknown", detail=f"{r.label()} is not a factor")
        d_r = r.degree()
        bound = d_st - d_r
        for rr in itertools.product(*(range(x + 1) for x in d_a)):
            rr = MultiDegree(rr)
            if not _graded_less(rr, d_r, strictness):
                continue
            nn = d_a - rr
            if nn.is_nonnegative() and nn <= bound:
                return VanishResult(
                    "vanishes",
                    "factor",
                    f"degree {tuple(d_a)} = {tuple(rr)} + {tuple(nn)} with "
                    f"{tuple(rr)} below d({r.label()}) and {tuple(nn)} <= {tuple(bound)}",
                )
    return VanishResult("unknown", detail="no sufficient rule applies")


# -- fraction degree helper ----------------------------------------------------


def fraction_degree(f: RightFraction) -> MultiDegree:
    return f.degree()
