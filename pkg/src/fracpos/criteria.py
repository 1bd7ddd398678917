"""Symbolic positivity criteria on the leading coefficient polynomials.

For a hermitian element of even bidegree (2*m1, 2*m2) the relevant data are
the corner coefficient and the two edge polynomials: the coefficient of
second^(2*m2) grouped by the first generator and the coefficient of
first^(2*m1) grouped by the second. The torsion spectral check evaluates the
same data as a scalar function on the resolvent circle and also reports a
diagnostic grid infimum; the symbolic decision is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

import numpy as np

from .algebra import Element, pbw_views
from .errors import NonRealShiftedPolynomial, NotHermitian, OddDegree, PresetMismatch
from .scalars import GaussianRational, ZERO, I
from .sturm import PositivityResult, sturm_positive


def _even_halves(c: Element):
    if not c.is_hermitian():
        raise NotHermitian("criterion applies to hermitian elements only")
    d1, d2 = c.degree()
    if d1 % 2 or d2 % 2:
        raise OddDegree(f"multidegree {(d1, d2)} is not componentwise even")
    return d1 // 2, d2 // 2


def _poly_to_rational(coeffs: dict, what: str):
    """Dense rational coefficient list; exact realness is required."""
    if not coeffs:
        return []
    out = [Q(0)] * (max(coeffs) + 1)
    for power, value in coeffs.items():
        if not value.is_real():
            raise NonRealShiftedPolynomial(f"{what} has non-real coefficient {value.text()}")
        out[power] = value.re
    return out


def _shift_poly(coeffs: dict, shift: GaussianRational) -> dict:
    """Substitute X -> X + shift in an exact coefficient map."""
    from math import comb

    out = {}
    for power, value in coeffs.items():
        shift_pows = [GaussianRational(1)]
        for _ in range(power):
            shift_pows.append(shift_pows[-1] * shift)
        for k in range(power + 1):
            contrib = value * comb(power, k) * shift_pows[power - k]
            out[k] = out.get(k, ZERO) + contrib
    return {k: v for k, v in out.items() if not v.is_zero()}


def edge_data(c: Element):
    """Corner coefficient and the two edge coefficient maps of c."""
    m1, m2 = _even_halves(c)
    gamma, f_view, g_view = pbw_views(c)
    corner = gamma.get((2 * m1, 2 * m2), ZERO)
    f_edge = f_view.get(2 * m2, {})
    g_edge = g_view.get(2 * m1, {})
    return m1, m2, corner, f_edge, g_edge


@dataclass(frozen=True)
class Hyp2Result:
    status: str  # "holds" or "fails"
    reason: str
    m1: int
    m2: int
    corner: GaussianRational
    f_positive: PositivityResult = None
    g_positive: PositivityResult = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def hypothesis_II_check(c: Element) -> Hyp2Result:
    """Corner coefficient nonzero and both edge polynomials positive on the line.

    For the axb preset the first-generator edge polynomial is shifted by
    m2*i before the positivity test; hermiticity makes the shifted
    polynomial exactly real, which is verified rather than assumed.
    """
    m1, m2, corner, f_edge, g_edge = edge_data(c)
    if corner.is_zero():
        return Hyp2Result("fails", f"corner coefficient at {(2 * m1, 2 * m2)} vanishes", m1, m2, corner)
    if c.pres.kind == "axb":
        f_edge = _shift_poly(f_edge, I * m2)
        f_label = "first-generator edge polynomial shifted by m2*i"
    else:
        f_label = "first-generator edge polynomial"
    f_poly = _poly_to_rational(f_edge, f_label)
    g_poly = _poly_to_rational(g_edge, "second-generator edge polynomial")
    f_res = sturm_positive(f_poly)
    if not f_res.positive:
        return Hyp2Result("fails", f"{f_label} is not strictly positive", m1, m2, corner, f_positive=f_res)
    g_res = sturm_positive(g_poly)
    if not g_res.positive:
        return Hyp2Result(
            "fails", "second-generator edge polynomial is not strictly positive",
            m1, m2, corner, f_positive=f_res, g_positive=g_res,
        )
    return Hyp2Result("holds", "corner nonzero and both edge polynomials strictly positive",
                      m1, m2, corner, f_res, g_res)


@dataclass(frozen=True)
class TorsionSpectralResult:
    status: str  # "positive" or "not_positive"
    which: str
    infimum: float
    corner_value: float
    witness: str = ""
    grid_points: int = 0

    @property
    def positive(self) -> bool:
        return self.status == "positive"


def torsion_spectral_check(
    c: Element,
    which: str,
    grid_max: float = 100.0,
    grid_points: int = 10 ** 4,
) -> TorsionSpectralResult:
    """Scalar spectral function of c in the quotient killing one denominator.

    ``which`` picks the denominator family: "s1"/"s2" for weyl, "sb"/"sn"
    for axb. The function h lives on the circle spectrum of the surviving
    resolvent; h at the circle's origin equals the corner coefficient and
    elsewhere equals the edge polynomial damped by the resolvent modulus.
    The decision combines the exact corner sign with the exact positivity of
    the edge polynomial; the grid infimum is a diagnostic.
    """
    pres = c.pres
    m1, m2, corner, f_edge, g_edge = edge_data(c)
    if pres.kind == "weyl":
        if which not in ("s1", "s2"):
            raise PresetMismatch("weyl torsion checks are s1 or s2")
        if which == "s1":
            poly = _poly_to_rational(g_edge, "second-generator edge polynomial")
            weight_exp, shift = m2, pres.beta
        else:
            poly = _poly_to_rational(f_edge, "first-generator edge polynomial")
            weight_exp, shift = m1, pres.alpha
    elif pres.kind == "axb":
        if which not in ("sb", "sn"):
            raise PresetMismatch("axb torsion checks are sb or sn")
        if which == "sb":
            poly = _poly_to_rational(
                _shift_poly(f_edge, I * m2), "shifted first-generator edge polynomial"
            )
            weight_exp, shift = m1, pres.alpha
        else:
            poly = _poly_to_rational(g_edge, "second-generator edge polynomial")
            weight_exp, shift = m2, pres.beta
    else:
        raise PresetMismatch("torsion spectral checks apply to weyl and axb presets")

    if not corner.is_real():
        raise NotHermitian("corner coefficient of a hermitian element must be real")
    corner_val = float(corner.re)

    # Diagnostic grid over the circle parameter, plus the origin point.
    values = [corner_val]
    shift_f = float(shift)
    if poly:
        ts = np.linspace(-grid_max, grid_max, grid_points)
        num = np.zeros_like(ts)
        for power, coeff in enumerate(poly):
            if coeff:
                num += float(coeff) * ts ** power
        h = num / (ts ** 2 + shift_f ** 2) ** weight_exp
        values.extend(h.tolist())
    infimum = min(values)

    if corner.re <= 0:
        return TorsionSpectralResult(
            "not_positive", which, infimum, corner_val,
            witness="corner coefficient is not positive", grid_points=grid_points,
        )
    if not poly:
        return TorsionSpectralResult(
            "not_positive", which, infimum, corner_val,
            witness="edge polynomial vanishes identically", grid_points=grid_points,
        )
    pos = sturm_positive(poly)
    if not pos.positive:
        where = pos.witness_point if pos.witness_point is not None else pos.witness_interval
        return TorsionSpectralResult(
            "not_positive", which, infimum, corner_val,
            witness=f"edge polynomial not strictly positive near {where}",
            grid_points=grid_points,
        )
    return TorsionSpectralResult("positive", which, infimum, corner_val, grid_points=grid_points)
