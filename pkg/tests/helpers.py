"""Shared random generators and an independent word-rewriting oracle."""

from __future__ import annotations

import random
from fractions import Fraction as Q

from fracpos.algebra import Element, Presentation
from fracpos.ore import DenomAtom, DenomWord
from fracpos.scalars import GaussianRational


def random_scalar(rng: random.Random, span: int = 3) -> GaussianRational:
    def part():
        return Q(rng.randint(-span, span), rng.randint(1, 2))

    return GaussianRational(part(), part())


def random_element(
    rng: random.Random,
    pres: Presentation,
    max_exp: int = 3,
    max_terms: int = 4,
    nonzero: bool = False,
) -> Element:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        j = rng.randint(0, max_exp)
        l = 0 if pres.kind == "comm" else rng.randint(0, max_exp)
        terms[(j, l)] = random_scalar(rng)
    elem = Element(pres, terms)
    if nonzero and elem.is_zero():
        mono = (rng.randint(0, max_exp), 0 if pres.kind == "comm" else rng.randint(0, max_exp))
        elem = Element(pres, {mono: GaussianRational(1)})
    return elem


def random_atom(rng: random.Random, pres: Presentation, window: int = 2) -> DenomAtom:
    adjoint = rng.random() < 0.5
    if pres.kind == "weyl":
        return DenomAtom(rng.choice(("s1", "s2")), adjoint=adjoint)
    if pres.kind == "axb":
        if rng.random() < 0.5:
            return DenomAtom("sb", adjoint=adjoint)
        return DenomAtom("sn", rng.randint(-window, window), adjoint=adjoint)
    return DenomAtom("s")


def random_word(rng: random.Random, pres: Presentation, max_len: int = 3) -> DenomWord:
    return DenomWord(tuple(random_atom(rng, pres) for _ in range(rng.randint(0, max_len))))


# -- independent reduction oracle ------------------------------------------------
#
# Elements are re-derived as linear combinations of free words over the
# generator letters, then reduced by applying the defining exchange rule at
# randomly chosen positions until every word is sorted. This shares no code
# with the ordered-monomial arithmetic it checks.


def words_from_element_tree(tree, pres: Presentation) -> dict:
    """Evaluate a syntax tree into {letter-word: scalar} without normal ordering."""
    from fracpos import expr as ex

    if isinstance(tree, ex.Num):
        return {(): GaussianRational(tree.value)}
    if isinstance(tree, ex.ImagUnit):
        return {(): GaussianRational(0, 1)}
    if isinstance(tree, ex.Gen):
        return {(tree.name,): GaussianRational(1)}
    if isinstance(tree, ex.Add):
        return _word_add(
            words_from_element_tree(tree.left, pres), words_from_element_tree(tree.right, pres)
        )
    if isinstance(tree, ex.Sub):
        negated = {
            w: -c for w, c in words_from_element_tree(tree.right, pres).items()
        }
        return _word_add(words_from_element_tree(tree.left, pres), negated)
    if isinstance(tree, ex.Mul):
        return _word_mul(
            words_from_element_tree(tree.left, pres), words_from_element_tree(tree.right, pres)
        )
    if isinstance(tree, ex.Pow):
        acc = {(): GaussianRational(1)}
        base = words_from_element_tree(tree.base, pres)
        for _ in range(tree.exp):
            acc = _word_mul(acc, base)
        return acc
    raise TypeError(f"unsupported node {tree!r}")


def _word_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        acc = out.get(w, GaussianRational(0)) + c
        if acc.is_zero():
            out.pop(w, None)
        else:
            out[w] = acc
    return out


def _word_mul(a: dict, b: dict) -> dict:
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            acc = out.get(w, GaussianRational(0)) + c1 * c2
            if acc.is_zero():
                out.pop(w, None)
            else:
                out[w] = acc
    return out


def reduce_words_randomly(words: dict, pres: Presentation, rng: random.Random) -> dict:
    """Apply the exchange rule at random positions until all words are sorted."""
    first, second = (pres.gen_names + ("",))[:2]
    i_unit = GaussianRational(0, 1)
    current = dict(words)
    while True:
        inversions = []
        for w in current:
            for idx in range(len(w) - 1):
                if w[idx] == second and w[idx + 1] == first:
                    inversions.append((w, idx))
        if not inversions:
            break
        w, idx = rng.choice(inversions)
        coeff = current.pop(w)
        swapped = w[:idx] + (first, second) + w[idx + 2 :]
        if pres.kind == "weyl":
            extra = {w[:idx] + w[idx + 2 :]: coeff * i_unit}
        elif pres.kind == "axb":
            extra = {w[:idx] + (second,) + w[idx + 2 :]: -coeff * i_unit}
        else:
            extra = {}
        current = _word_add(current, {swapped: coeff})
        current = _word_add(current, extra)
    return current


def element_from_sorted_words(words: dict, pres: Presentation) -> Element:
    terms = {}
    for w, coeff in words.items():
        first = pres.gen_names[0]
        j = sum(1 for ch in w if ch == first)
        l = len(w) - j
        key = (j, l)
        terms[key] = terms.get(key, GaussianRational(0)) + coeff
    return Element(pres, terms)


def random_element_tree(rng: random.Random, pres: Presentation, depth: int = 3):
    """Random syntax tree over generators, scalars, +, -, *, small powers."""
    from fracpos import expr as ex

    if depth == 0 or rng.random() < 0.3:
        choice = rng.random()
        if choice < 0.4:
            return ex.Gen(rng.choice(pres.gen_names))
        if choice < 0.7:
            return ex.Num(Q(rng.randint(-3, 3), rng.randint(1, 2)))
        return ex.ImagUnit()
    op = rng.random()
    if op < 0.35:
        return ex.Add(random_element_tree(rng, pres, depth - 1), random_element_tree(rng, pres, depth - 1))
    if op < 0.55:
        return ex.Sub(random_element_tree(rng, pres, depth - 1), random_element_tree(rng, pres, depth - 1))
    if op < 0.9:
        return ex.Mul(random_element_tree(rng, pres, depth - 1), random_element_tree(rng, pres, depth - 1))
    return ex.Pow(random_element_tree(rng, pres, depth - 1), rng.randint(0, 2))
