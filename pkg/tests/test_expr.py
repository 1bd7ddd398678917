import random
from fractions import Fraction as Q

import pytest

from fracpos import expr as ex
from fracpos.algebra import Element, axb, commpoly, weyl
from fracpos.errors import BadInverse, ExprSyntaxError, UnknownGenerator
from fracpos.ore import DenomAtom, frac_eq, frac_from_element
from fracpos.scalars import I

W = weyl()
A = axb()
C = commpoly()


def test_parse_examples():
    node = ex.parse_expression("p^2 + q^2 + 1", W)
    assert node == ex.Add(
        ex.Add(ex.Pow(ex.Gen("p"), 2), ex.Pow(ex.Gen("q"), 2)), ex.Num(Q(1))
    )
    node = ex.parse_expression("adj(inv(s1)) * q", W)
    assert node == ex.Mul(ex.Adj(ex.Inv(ex.Gen("s1"))), ex.Gen("q"))
    node = ex.parse_expression("2*i*p*q", W)
    assert node == ex.Mul(ex.Mul(ex.Mul(ex.Num(Q(2)), ex.ImagUnit()), ex.Gen("p")), ex.Gen("q"))


def test_whitespace_insensitive():
    assert ex.parse_expression("p ^2+ q^ 2", W) == ex.parse_expression("p^2+q^2", W)


def test_syntax_errors_carry_position():
    with pytest.raises(ExprSyntaxError) as info:
        ex.parse_expression("p + * q", W)
    assert info.value.position == 4
    with pytest.raises(ExprSyntaxError):
        ex.parse_expression("p q", W)  # implicit multiplication is rejected
    with pytest.raises(ExprSyntaxError):
        ex.parse_expression("p^(1/2)", W)
    with pytest.raises(ExprSyntaxError):
        ex.parse_expression("(p + q", W)


def test_unknown_identifier():
    with pytest.raises(UnknownGenerator):
        ex.parse_expression("p + z", W)
    with pytest.raises(UnknownGenerator):
        ex.parse_expression("a*b", W)
    ex.parse_expression("a*b + s[-2]", A)
    with pytest.raises(UnknownGenerator):
        ex.parse_expression("s[1]", W)


def test_bad_inverse():
    with pytest.raises(BadInverse):
        ex.parse_fraction("inv(p + q)", W)
    with pytest.raises(BadInverse):
        ex.parse_fraction("inv(q)", W)
    with pytest.raises(BadInverse):
        ex.parse_element("inv(s1)", W)


def test_word_parsing():
    word = ex.parse_word("s1^2 * adj(s2)", W)
    assert word.atoms == (
        DenomAtom("s1"),
        DenomAtom("s1"),
        DenomAtom("s2", adjoint=True),
    )
    assert len(ex.parse_word("1", W)) == 0
    shifted = ex.parse_word("s[-2] * sb", A)
    assert shifted.atoms == (DenomAtom("sn", -2), DenomAtom("sb"))


def test_atoms_usable_as_elements():
    elem = ex.parse_element("s1", W)
    assert elem == Element(W, {(1, 0): 1, (0, 0): -I})


def test_fraction_evaluation_consistency():
    # adj(q * inv(s1)) == adj(inv(s1)) * adj(q), and q is hermitian
    f = ex.parse_fraction("adj(inv(s1)) * q", W)
    g = ex.parse_fraction("adj(q * inv(s1))", W)
    assert frac_eq(f, g)
    one = frac_from_element(Element.one(W))
    assert frac_eq(ex.parse_fraction("inv(s1) * s1", W), one)


def _random_ast(rng, pres, depth=3, allow_frac=True):
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.35:
            return ex.Gen(rng.choice(pres.gen_names))
        if r < 0.55:
            return ex.Num(Q(rng.randint(-4, 4), rng.randint(1, 3)))
        if r < 0.7:
            return ex.ImagUnit()
        if allow_frac:
            atom = "s1" if pres.kind == "weyl" else ("sb" if pres.kind == "axb" else "s")
            return ex.Inv(ex.Gen(atom))
        return ex.Gen(pres.gen_names[0])
    r = rng.random()
    left = _random_ast(rng, pres, depth - 1, allow_frac)
    right = _random_ast(rng, pres, depth - 1, allow_frac)
    if r < 0.3:
        return ex.Add(left, right)
    if r < 0.5:
        return ex.Sub(left, right)
    if r < 0.8:
        return ex.Mul(left, right)
    if r < 0.9:
        return ex.Pow(left, rng.randint(0, 3))
    return ex.Adj(left)


def test_print_parse_round_trip_random():
    rng = random.Random(99)
    presets = (W, A, C)
    for trial in range(200):
        pres = presets[trial % 3]
        node = _random_ast(rng, pres)
        text = ex.print_ast(node)
        reparsed = ex.parse_expression(text, pres)
        assert ex.parse_expression(ex.print_ast(reparsed), pres) == reparsed


def test_canonical_element_text_round_trip_random():
    rng = random.Random(123)
    from helpers import random_element

    for pres in (W, A, C):
        for _ in range(40):
            e = random_element(rng, pres)
            assert ex.parse_element(e.text(), pres) == e
