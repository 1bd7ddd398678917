import random
from fractions import Fraction as Q

import pytest

from fracpos.algebra import (
    Element,
    MultiDegree,
    axb,
    commpoly,
    degree_split,
    opposite_form,
    pbw_views,
    weyl,
)
from fracpos.errors import DegreeTooLarge, UnknownGenerator, ZeroElement
from fracpos.expr import parse_element
from fracpos.scalars import GaussianRational, I

from helpers import (
    element_from_sorted_words,
    random_element,
    random_element_tree,
    reduce_words_randomly,
    words_from_element_tree,
)

W = weyl()
A = axb()
C = commpoly()
PRESETS = (W, A, C)


def test_preset_parameter_validation():
    with pytest.raises(ValueError):
        weyl(alpha=0)
    with pytest.raises(ValueError):
        axb(alpha=-1)  # not below -1
    with pytest.raises(ValueError):
        axb(alpha=-2)  # integer
    with pytest.raises(ValueError):
        axb(alpha=Q(-3, 2), beta=0)


def test_normal_form_rewrites():
    p, q = Element.gen(W, "p"), Element.gen(W, "q")
    assert q * p == p * q + Element(W, {(0, 0): I})
    assert (q ** 2) * p == p * q ** 2 + Element(W, {(0, 1): 2 * I})
    a, b = Element.gen(A, "a"), Element.gen(A, "b")
    assert b * a == a * b - Element(A, {(0, 1): I})
    for pres in PRESETS:
        e = random_element(random.Random(1), pres)
        assert Element.one(pres) * e == e


def test_unknown_generator_rejected():
    with pytest.raises(UnknownGenerator):
        Element.gen(W, "a")
    with pytest.raises(UnknownGenerator):
        parse_element("x + p", W)


def test_star_examples():
    p, q = Element.gen(W, "p"), Element.gen(W, "q")
    assert (p * q).star() == q * p
    assert Element(W, {(0, 0): I}).star() == Element(W, {(0, 0): -I})
    herm = p * p + q * q + Element.one(W)
    assert herm.star() == herm and herm.is_hermitian()


def test_multidegree_examples():
    p, q = Element.gen(W, "p"), Element.gen(W, "q")
    assert (p * p * q + q).degree() == MultiDegree(2, 1)
    prod = (p * p * q) * (p * q * q)
    assert prod.degree() == MultiDegree(3, 3)
    assert Element.one(W).degree() == MultiDegree(0, 0)
    with pytest.raises(ZeroElement):
        Element.zero(W).degree()


def test_pbw_views_examples():
    e = parse_element("p^2 + q^2 + 1", W)
    gamma, f, g = pbw_views(e)
    assert gamma[(2, 0)] == GaussianRational(1) and gamma[(0, 2)] == GaussianRational(1)
    assert f[0] == {0: GaussianRational(1), 2: GaussianRational(1)}
    assert f[2] == {0: GaussianRational(1)}
    assert g[0] == {0: GaussianRational(1), 2: GaussianRational(1)}
    assert g[2] == {0: GaussianRational(1)}

    e2 = parse_element("p^2*q^2 + 2*i*p*q + p^2 + q^2", W)
    _, _, g2 = pbw_views(e2)
    assert g2[2] == {0: GaussianRational(1), 2: GaussianRational(1)}

    ab = parse_element("a*b", A)
    _, f_ab, g_ab = pbw_views(ab)
    assert f_ab[1] == {1: GaussianRational(1)}
    # opposite ordering picks up the exchange shift: a*b = b*(a + i)
    assert g_ab[1] == {1: GaussianRational(1)}
    assert g_ab[0] == {1: I}


def test_opposite_form_round_trip():
    rng = random.Random(5)
    for pres in PRESETS:
        for _ in range(40):
            e = random_element(rng, pres)
            rebuilt = Element.zero(pres)
            for (k, l), coeff in opposite_form(e).items():
                rebuilt = rebuilt + Element(pres, pres.mono_mul((0, l), (k, 0))) * coeff
            assert rebuilt == e


def test_degree_split_examples():
    e = parse_element("p^2*q^2", W)
    pairs = degree_split(e, MultiDegree(1, 1), MultiDegree(1, 1))
    total = Element.zero(W)
    for b, c in pairs:
        assert b.degree() <= MultiDegree(1, 1) and c.degree() <= MultiDegree(1, 1)
        total = total + b * c
    assert total == e
    # the split quoted alongside the contract is also valid
    pq = parse_element("p*q", W)
    quoted = pq * pq + parse_element("(0-1*i)*p*q", W) * Element.one(W)
    assert quoted == e

    one = Element.one(W)
    assert degree_split(one, MultiDegree(2, 2), MultiDegree(1, 1)) == [(one, one)]

    p2 = parse_element("p^2", W)
    [(b, c)] = degree_split(p2, MultiDegree(1, 0), MultiDegree(1, 0))
    assert b == parse_element("p", W) and c == parse_element("p", W)

    with pytest.raises(DegreeTooLarge):
        degree_split(parse_element("p^3", W), MultiDegree(1, 0), MultiDegree(1, 0))


def test_degree_split_random_postcondition():
    rng = random.Random(11)
    for pres in PRESETS:
        for _ in range(60):
            e = random_element(rng, pres, max_exp=3, nonzero=True)
            d = e.degree()
            n = MultiDegree(rng.randint(0, d[0]), rng.randint(0, d[1]))
            k = d - n
            pairs = degree_split(e, n, k)
            total = Element.zero(pres)
            for b, c in pairs:
                assert b.degree() <= n and c.degree() <= k
                total = total + b * c
            assert total == e


def test_ring_axioms_random():
    rng = random.Random(23)
    for pres in PRESETS:
        for _ in range(40):
            e1 = random_element(rng, pres, max_exp=2)
            e2 = random_element(rng, pres, max_exp=2)
            e3 = random_element(rng, pres, max_exp=2)
            assert (e1 * e2) * e3 == e1 * (e2 * e3)
            assert e1 * (e2 + e3) == e1 * e2 + e1 * e3
            assert (e1 + e2) * e3 == e1 * e3 + e2 * e3


def test_involution_laws_random():
    rng = random.Random(29)
    for pres in PRESETS:
        for _ in range(70):
            e1 = random_element(rng, pres, max_exp=2)
            e2 = random_element(rng, pres, max_exp=2)
            assert e1.star().star() == e1
            assert (e1 * e2).star() == e2.star() * e1.star()
            lam = GaussianRational(Q(rng.randint(-3, 3)), Q(rng.randint(-3, 3)))
            assert (e1 * lam).star() == e1.star() * lam.conjugate()


def test_degree_axioms_random():
    rng = random.Random(31)
    for pres in PRESETS:
        for _ in range(80):
            e1 = random_element(rng, pres, nonzero=True)
            e2 = random_element(rng, pres, nonzero=True)
            assert (e1 * e2).degree() == e1.degree() + e2.degree()
            total = e1 + e2
            if not total.is_zero():
                assert total.degree() <= e1.degree().join(e2.degree())
            assert e1.star().degree() == e1.degree()
            lam = GaussianRational(Q(rng.randint(1, 5)))
            assert (e1 * lam).degree() == e1.degree()


def test_commutator_degree_bound_with_denominator_generators():
    # Bracketing with a denominator generator never raises the degree for the
    # weyl and comm presets. For axb the bracket with the second-generator
    # shift trades one unit of first degree for one of second degree (already
    # visible on the generators: [a, b] rewrites to a multiple of b), so the
    # sharp bound gains (-1, +1) there; the product bound d(e) + d(s) holds
    # throughout and is what the membership construction relies on.
    from fracpos.search import denominator_atoms

    rng = random.Random(37)
    for pres in PRESETS:
        atoms = denominator_atoms(pres, window=2)
        for _ in range(40):
            e = random_element(rng, pres, nonzero=True)
            for atom in atoms:
                s = atom.element(pres)
                bracket = e * s - s * e
                if bracket.is_zero():
                    continue
                d = e.degree()
                if pres.kind == "axb" and atom.kind == "sb":
                    sharp = MultiDegree(max(d[0] - 1, 0), d[1] + 1)
                else:
                    sharp = d
                assert bracket.degree() <= sharp
                assert bracket.degree() <= d + atom.degree()


def test_normal_form_confluence_against_random_order_reduction():
    rng = random.Random(41)
    for pres in (W, A, C):
        for _ in range(60):
            tree = random_element_tree(rng, pres)
            direct = parse_element_from_tree(tree, pres)
            words = words_from_element_tree(tree, pres)
            reduced = reduce_words_randomly(words, pres, rng)
            assert element_from_sorted_words(reduced, pres) == direct


def parse_element_from_tree(tree, pres):
    from fracpos.expr import to_element

    return to_element(tree, pres)


def test_canonical_text_sorted_and_parseable():
    e = parse_element("2*i*p*q + p^2 - 3/2", W)
    text = e.text()
    assert text == "(-3/2+0*i)*1 + (0+2*i)*p*q + (1+0*i)*p^2"
    assert parse_element(text, W) == e
