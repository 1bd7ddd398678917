"""Denominator search wrapping the Gram feasibility pipeline.

Strict mode walks denominator words s in length-lexicographic order and asks
whether star(s)*c*s is a sum of hermitian squares at the working cap. The
perturbed mode first inflates the target by epsilon * t t* and runs the same
loop. Both decisions are one-sided: a miss within the caps proves nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q

from .algebra import Element, MultiDegree, Presentation
from .errors import NotHermitian
from .gram import GramCertificate, assemble_gram_system, extract_and_verify, sdp_feasible
from .ore import DenomAtom, DenomWord
from .errors import RoundingLostPSD


def denominator_atoms(pres: Presentation, window: int = 3):
    """Enumeration order for single denominator generators."""
    if pres.kind == "weyl":
        return [
            DenomAtom("s1"),
            DenomAtom("s1", adjoint=True),
            DenomAtom("s2"),
            DenomAtom("s2", adjoint=True),
        ]
    if pres.kind == "comm":
        return [DenomAtom("s")]
    atoms = [DenomAtom("sb"), DenomAtom("sb", adjoint=True)]
    shifts = [0]
    for n in range(1, window + 1):
        shifts.extend([n, -n])
    for n in shifts:
        atoms.append(DenomAtom("sn", n))
        atoms.append(DenomAtom("sn", n, adjoint=True))
    return atoms


def denominator_words(pres: Presentation, max_len: int, window: int = 3):
    atoms = denominator_atoms(pres, window)
    for length in range(max_len + 1):
        for combo in itertools.product(atoms, repeat=length):
            yield DenomWord(combo)


@dataclass
class SearchResult:
    status: str  # "found" or "not_found_within_caps"
    word: DenomWord = None
    certificate: GramCertificate = None
    target: Element = None
    words_tried: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def _gram_attempt(target, cap, tol, max_iter, rational):
    eff_cap = cap
    if not target.is_zero():
        eff_cap = MultiDegree(cap).join(target.degree().ceil_half())
    system = assemble_gram_system(target, eff_cap)
    outcome = sdp_feasible(system, tol=tol, max_iter=max_iter)
    if not outcome.feasible:
        return None
    if rational:
        try:
            cert = extract_and_verify(target, outcome.gram, system, mode="rational")
            if cert.valid:
                return cert
        except RoundingLostPSD:
            pass
    cert = extract_and_verify(target, outcome.gram, system, mode="float")
    return cert if cert.valid else None


def positivstellensatz_search(
    c: Element,
    mode: str = "strict",
    epsilon=None,
    t: DenomWord = None,
    max_denom_len: int = 2,
    degree_cap=None,
    window: int = 3,
    tol: float = 1e-8,
    max_iter: int = 20000,
    rational: bool = True,
) -> SearchResult:
    """Search for a denominator word certifying positivity of c.

    Returns the first word s (in enumeration order) such that star(s)*c*s
    admits a verified Gram certificate. In perturbed mode the target is
    c + epsilon * t t* instead of c.
    """
    if not c.is_hermitian():
        raise NotHermitian("the positivity target must be hermitian")
    pres = c.pres
    cap = MultiDegree(degree_cap) if degree_cap is not None else MultiDegree(0, 0)
    base = c
    if mode == "marshall":
        if epsilon is None or t is None:
            raise ValueError("perturbed mode needs epsilon and a word t")
        t_elem = t.element(pres)
        base = c + t_elem * t_elem.star() * Q(epsilon)
    elif mode != "strict":
        raise ValueError(f"unknown search mode {mode!r}")

    tried = 0
    for word in denominator_words(pres, max_denom_len, window):
        tried += 1
        s_elem = word.element(pres)
        target = s_elem.star() * base * s_elem
        cert = _gram_attempt(target, cap, tol, max_iter, rational)
        if cert is not None:
            return SearchResult("found", word, cert, target, tried)
    return SearchResult("not_found_within_caps", words_tried=tried)
