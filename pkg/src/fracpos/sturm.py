"""Exact univariate polynomial positivity over the rationals.

Polynomials are lists of Fractions in ascending degree order. Real-root
counting uses sign variations of the classical remainder chain, so every
decision here is exact; sampling never enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import ZeroPolynomial


def poly_trim(coeffs) -> list:
    out = [Q(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_degree(p) -> int:
    return len(p) - 1


def poly_eval(p, x: Q) -> Q:
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_neg(p):
    return [-c for c in p]


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    ])


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p, c: Q):
    return poly_trim([a * Q(c) for a in p])


def poly_deriv(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Q(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(rem) >= len(q) and poly_trim(rem):
        rem = poly_trim(rem)
        if len(rem) < len(q):
            break
        shift = len(rem) - len(q)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem = rem[:-1]
    return poly_trim(quo), poly_trim(rem)


def poly_gcd(p, q):
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        a = poly_scale(a, 1 / a[-1])
    return a


def sturm_chain(p):
    chain = [poly_trim(p)]
    d = poly_deriv(p)
    if d:
        chain.append(d)
        while poly_degree(chain[-1]) > 0:
            _, r = poly_divmod(chain[-2], chain[-1])
            if not r:
                break
            chain.append(poly_neg(r))
    return chain


def _variations(signs) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a * b < 0)


def _sign_at(p, x: Q) -> int:
    v = poly_eval(p, x)
    return (v > 0) - (v < 0)


def _sign_at_inf(p, positive: bool) -> int:
    if not p:
        return 0
    lead = p[-1]
    sign = (lead > 0) - (lead < 0)
    if not positive and poly_degree(p) % 2 == 1:
        sign = -sign
    return sign


def count_real_roots(p, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; None means the corresponding infinity."""
    p = poly_trim(p)
    if not p:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    chain = sturm_chain(p)
    at_lo = [_sign_at(c, lo) for c in chain] if lo is not None else [
        _sign_at_inf(c, False) for c in chain
    ]
    at_hi = [_sign_at(c, hi) for c in chain] if hi is not None else [
        _sign_at_inf(c, True) for c in chain
    ]
    return _variations(at_lo) - _variations(at_hi)


def cauchy_root_bound(p) -> Q:
    p = poly_trim(p)
    lead = abs(p[-1])
    if len(p) == 1:
        return Q(1)
    return 1 + max(abs(c) for c in p[:-1]) / lead


def isolate_real_root(p, width=Q(1, 2 ** 20)):
    """Shrink an interval around some real root of p; None when root-free."""
    p = poly_trim(p)
    if not p or count_real_roots(p) == 0:
        return None
    bound = cauchy_root_bound(p)
    lo, hi = -bound, bound
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            return (mid, mid)
        if count_real_roots(p, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


@dataclass(frozen=True)
class PositivityResult:
    positive: bool
    witness_point: Q = None
    witness_interval: tuple = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "strictly_positive" if self.positive else "not_strictly_positive"


def sturm_positive(p) -> PositivityResult:
    """Decide whether p > 0 everywhere on the real line.

    Positive means no real roots and a positive value at the origin. On
    failure a rational point with p <= 0 is reported when one exists;
    otherwise the isolating interval of a real root is returned.
    """
    p = poly_trim(p)
    if not p:
        raise ZeroPolynomial("the zero polynomial has no sign")
    if poly_eval(p, Q(0)) <= 0:
        return PositivityResult(False, witness_point=Q(0), detail="value at 0 is <= 0")
    if count_real_roots(p) == 0:
        return PositivityResult(True)
    lo, hi = isolate_real_root(p)
    for probe in (lo, (lo + hi) / 2, hi):
        if poly_eval(p, probe) <= 0:
            return PositivityResult(False, witness_point=probe, witness_interval=(lo, hi))
    return PositivityResult(
        False,
        witness_interval=(lo, hi),
        detail="a real root lies in the reported interval",
    )


def yun_squarefree(p):
    """Squarefree decomposition [(factor, multiplicity), ...] with p monic-free.

    Factors of multiplicity i multiply to p up to the leading constant.
    """
    p = poly_trim(p)
    if not p:
        raise ZeroPolynomial("no squarefree decomposition of zero")
    if poly_degree(p) == 0:
        return []
    d = poly_deriv(p)
    g = poly_gcd(p, d)
    out = []
    i = 1
    c, _ = poly_divmod(p, g)
    w, _ = poly_divmod(d, g)
    while poly_degree(c) > 0:
        z = poly_sub(w, poly_deriv(c))
        factor = poly_gcd(c, z)
        if poly_degree(factor) > 0:
            out.append((factor, i))
        c, _ = poly_divmod(c, factor)
        w, _ = poly_divmod(z, factor)
        i += 1
    return out


def poly_nonneg(p) -> bool:
    """Exact test that p >= 0 on the whole real line."""
    p = poly_trim(p)
    if not p:
        return True
    if poly_degree(p) == 0:
        return p[0] >= 0
    if p[-1] < 0 or poly_degree(p) % 2 == 1:
        return False
    for factor, mult in yun_squarefree(p):
        if mult % 2 == 1 and count_real_roots(factor) > 0:
            return False
    return True
