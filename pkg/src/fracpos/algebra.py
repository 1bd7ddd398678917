"""Presented *-algebras with ordered two-generator monomial bases.

Three presets are supported:

* ``weyl``: hermitian generators p, q with q*p rewriting to p*q + i.
* ``axb``: hermitian generators a, b with b*a rewriting to a*b - i*b.
* ``comm``: a single hermitian generator x, no relation.

Every element is stored as a finite map from ordered monomials
(first-generator power, second-generator power) to exact Gaussian-rational
coefficients, so two elements are equal iff their maps are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import PresetMismatch, UnknownGenerator, ZeroElement, DegreeTooLarge
from .scalars import GaussianRational, ONE, ZERO, I, gaussian

Mono = tuple  # (j, l) exponent pair, first generator on the left


class MultiDegree(tuple):
    """Integer exponent vector with componentwise order, join and addition."""

    def __new__(cls, *components):
        if len(components) == 1 and not isinstance(components[0], int):
            components = tuple(components[0])
        return super().__new__(cls, components)

    def __add__(self, other):
        return MultiDegree(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return MultiDegree(a - b for a, b in zip(self, other, strict=True))

    def join(self, other) -> "MultiDegree":
        return MultiDegree(max(a, b) for a, b in zip(self, other, strict=True))

    def scale(self, k: int) -> "MultiDegree":
        return MultiDegree(k * a for a in self)

    def __le__(self, other):
        return all(a <= b for a, b in zip(self, other, strict=True))

    def __ge__(self, other):
        return all(a >= b for a, b in zip(self, other, strict=True))

    def __lt__(self, other):
        """Strict in every component."""
        return all(a < b for a, b in zip(self, other, strict=True))

    def __gt__(self, other):
        return all(a > b for a, b in zip(self, other, strict=True))

    def ceil_half(self) -> "MultiDegree":
        return MultiDegree((a + 1) // 2 for a in self)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self)


@dataclass(frozen=True)
class Presentation:
    """One of the three presets together with its shift parameters."""

    kind: str
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ("weyl", "axb", "comm"):
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.kind == "weyl" and (self.alpha == 0 or self.beta == 0):
            raise ValueError("weyl preset needs nonzero alpha and beta")
        if self.kind == "axb":
            if self.alpha >= -1 or self.alpha.denominator == 1:
                raise ValueError("axb preset needs alpha < -1 and alpha not an integer")
            if self.beta == 0:
                raise ValueError("axb preset needs nonzero beta")

    @property
    def gen_names(self) -> tuple:
        if self.kind == "weyl":
            return ("p", "q")
        if self.kind == "axb":
            return ("a", "b")
        return ("x",)

    def mono_mul(self, m1: Mono, m2: Mono) -> dict:
        """Ordered-basis expansion of the product of two basis monomials."""
        j1, l1 = m1
        j2, l2 = m2
        if self.kind == "comm" or l1 == 0 or j2 == 0:
            return {(j1 + j2, l1 + l2): ONE}
        if self.kind == "weyl":
            # q^l p^j = sum_k k! C(j,k) C(l,k) i^k p^(j-k) q^(l-k)
            out = {}
            for k in range(min(j2, l1) + 1):
                coeff = factorial(k) * comb(j2, k) * comb(l1, k)
                out[(j1 + j2 - k, l1 + l2 - k)] = _ipow(k) * coeff
            return out
        # axb: b^l a^j = (a - i*l)^j b^l
        out = {}
        for k in range(j2 + 1):
            coeff = comb(j2, k) * _ipow_signed(-l1, j2 - k)
            key = (j1 + k, l1 + l2)
            out[key] = out.get(key, ZERO) + coeff
        return {m: c for m, c in out.items() if not c.is_zero()}

    def opposite_coeffs(self, j: int, l: int) -> dict:
        """Rewrite first^j second^l in second-generator-first order.

        Returns a map (k, m) -> coefficient meaning second^m first^k.
        """
        if self.kind == "comm" or j == 0 or l == 0:
            return {(j, l): ONE}
        if self.kind == "weyl":
            # p^j q^l = sum_k k! C(j,k) C(l,k) (-i)^k q^(l-k) p^(j-k)
            out = {}
            for k in range(min(j, l) + 1):
                coeff = factorial(k) * comb(j, k) * comb(l, k)
                out[(j - k, l - k)] = _ipow_signed(-1, k) * coeff
            return out
        # axb: a^j b^l = b^l (a + i*l)^j
        out = {}
        for k in range(j + 1):
            coeff = comb(j, k) * _ipow_signed(l, j - k)
            key = (k, l)
            out[key] = out.get(key, ZERO) + coeff
        return {m: c for m, c in out.items() if not c.is_zero()}


def _ipow(k: int) -> GaussianRational:
    return (ONE, I, -ONE, -I)[k % 4]


def _ipow_signed(scale: int, k: int) -> GaussianRational:
    """(i*scale)^k as an exact scalar."""
    return _ipow(k) * (scale ** k)


def weyl(alpha=1, beta=1) -> Presentation:
    return Presentation("weyl", Fraction(alpha), Fraction(beta))


def axb(alpha=Fraction(-3, 2), beta=1) -> Presentation:
    return Presentation("axb", Fraction(alpha), Fraction(beta))


def commpoly() -> Presentation:
    return Presentation("comm")


class Element:
    """Finite linear combination of ordered basis monomials.

    Immutable once built; arithmetic always returns fresh instances in
    canonical form (no zero coefficients stored).
    """

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, GaussianRational):
                coeff = gaussian(coeff)
            if coeff.is_zero():
                continue
            j, l = mono
            if j < 0 or l < 0:
                raise ValueError(f"negative exponent in monomial {mono}")
            if pres.kind == "comm" and l != 0:
                raise UnknownGenerator("comm preset has a single generator")
            clean[(j, l)] = coeff
        object.__setattr__(self, "pres", pres)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, pres) -> "Element":
        return cls(pres, {})

    @classmethod
    def one(cls, pres) -> "Element":
        return cls(pres, {(0, 0): ONE})

    @classmethod
    def scalar(cls, pres, value) -> "Element":
        return cls(pres, {(0, 0): value})

    @classmethod
    def gen(cls, pres, name: str) -> "Element":
        names = pres.gen_names
        if name not in names:
            raise UnknownGenerator(f"{name!r} is not a generator of the {pres.kind} preset")
        mono = (1, 0) if name == names[0] else (0, 1)
        return cls(pres, {mono: ONE})

    @classmethod
    def monomial(cls, pres, j: int, l: int = 0, coeff=ONE) -> "Element":
        return cls(pres, {(j, l): coeff})

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "Element"):
        if self.pres != other.pres:
            raise PresetMismatch("elements live over different presentations")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Element.scalar(self.pres, other)
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, ZERO) + coeff
            if acc.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return Element(self.pres, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Element.scalar(self.pres, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.pres, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Element(self.pres, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for mono, rel in self.pres.mono_mul(m1, m2).items():
                    new = acc.get(mono, ZERO) + c12 * rel
                    if new.is_zero():
                        acc.pop(mono, None)
                    else:
                        acc[mono] = new
        return Element(self.pres, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are fractions, not elements")
        out = Element.one(self.pres)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((self.pres, frozenset(self.terms.items())))

    # -- involution and degree ----------------------------------------------

    def star(self) -> "Element":
        """Adjoint: conjugate coefficients and reverse each monomial word."""
        out = Element.zero(self.pres)
        for (j, l), coeff in self.terms.items():
            reordered = Element(self.pres, self.pres.mono_mul((0, l), (j, 0)))
            out = out + reordered * coeff.conjugate()
        return out

    def is_hermitian(self) -> bool:
        return self.star() == self

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> MultiDegree:
        if not self.terms:
            raise ZeroElement("the zero element has no multidegree")
        return MultiDegree(
            max(j for j, _ in self.terms),
            max(l for _, l in self.terms),
        )

    def coefficient(self, mono: Mono) -> GaussianRational:
        return self.terms.get(tuple(mono), ZERO)

    def coeff_norm(self) -> float:
        """Largest coefficient magnitude, used to scale float tolerances."""
        return max((abs(c.to_complex()) for c in self.terms.values()), default=0.0)

    # -- printing -----------------------------------------------------------

    def text(self) -> str:
        """Canonical serialization, terms sorted by (j, l) lexicographically."""
        if not self.terms:
            return "0"
        names = self.pres.gen_names
        parts = []
        for (j, l) in sorted(self.terms):
            coeff = self.terms[(j, l)]
            factors = [f"({coeff.text()})"]
            if j > 0:
                factors.append(names[0] if j == 1 else f"{names[0]}^{j}")
            if l > 0:
                factors.append(names[1] if l == 1 else f"{names[1]}^{l}")
            if len(factors) == 1:
                factors.append("1")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self.pres.kind} element {self.text()}>"


# -- views and splitting ----------------------------------------------------


def opposite_form(e: Element) -> dict:
    """Coefficients of e written second-generator-first.

    Returns a map (k, m) -> scalar meaning coefficient of second^m first^k.
    """
    acc = {}
    for (j, l), coeff in e.terms.items():
        for key, rel in e.pres.opposite_coeffs(j, l).items():
            new = acc.get(key, ZERO) + coeff * rel
            if new.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = new
    return acc


def pbw_views(e: Element):
    """Three coefficient views of an element.

    Returns ``(gamma, f, g)`` where ``gamma`` maps (j, l) to the ordered-basis
    coefficient, ``f[n]`` is the first-generator polynomial multiplying
    second^n (as a map power -> scalar), and ``g[k]`` is the second-generator
    polynomial multiplying first^k in the opposite ordering.
    """
    gamma = dict(e.terms)
    f = {}
    for (j, l), coeff in e.terms.items():
        f.setdefault(l, {})[j] = coeff
    g = {}
    for (k, m), coeff in opposite_form(e).items():
        g.setdefault(k, {})[m] = coeff
    return gamma, f, g


def degree_split(e: Element, n: MultiDegree, k: MultiDegree):
    """Write e as a sum of products b_i * c_i with d(b_i) <= n, d(c_i) <= k.

    Greedy on the leading monomial; each step peels the top term and pushes
    the reordering remainder back into the work element. The result is exact:
    re-multiplying the pairs recovers e.
    """
    n = MultiDegree(n)
    k = MultiDegree(k)
    if not (n.is_nonnegative() and k.is_nonnegative()):
        raise DegreeTooLarge("split bounds must be nonnegative")
    if e.is_zero():
        return []
    if not (e.degree() <= n + k):
        raise DegreeTooLarge(f"element degree {e.degree()} exceeds bound {n + k}")
    pairs = []
    work = e
    while not work.is_zero():
        j, l = max(work.terms, key=lambda m: (m[0] + m[1], m))
        coeff = work.terms[(j, l)]
        j1 = min(j, n[0])
        l2 = min(l, k[1])
        b = Element.monomial(e.pres, j1, l - l2, coeff)
        c = Element.monomial(e.pres, j - j1, l2)
        pairs.append((b, c))
        work = work - b * c
    return pairs
