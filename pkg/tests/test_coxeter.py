"""Coxeter systems: words, lengths, Bruhat order, parabolic combinatorics."""
import itertools

import pytest

from demazure.coxeter import (CapExceededError, UnsupportedCoxeterMatrixError,
                              bruhat_leq, coset_max, coset_min, coxeter_A,
                              coxeter_BC, coxeter_D, dihedral, enumerate_double_coset,
                              enumerate_parabolic, is_finitary, longest_element,
                              symmetric_group)

W4 = symmetric_group(4)
S, T, U = 0, 1, 2
FULL = frozenset({S, T, U})


def test_involution_and_braid():
    s = W4.generator(S)
    assert (s * s).is_identity()
    assert W4.from_word([S, T, S]) == W4.from_word([T, S, T])
    assert W4.from_word([S, T, S]).length() == 3


def test_from_word_concat_is_product():
    a = W4.from_word([S, T])
    b = W4.from_word([U, T])
    assert a * b == W4.from_word([S, T, U, T])


def test_lengths_and_descents():
    assert W4.identity().length() == 0
    w0 = longest_element(W4, FULL)
    assert w0.length() == 6
    assert W4.from_word([S, T]).right_descents() == frozenset({T})
    assert W4.from_word([S, T]).left_descents() == frozenset({S})
    assert w0.right_descents() == FULL


def test_reduced_words():
    assert W4.identity().reduced_words() == [()]
    w0_a2 = W4.from_word([S, T, S])
    assert set(w0_a2.reduced_words()) == {(S, T, S), (T, S, T)}
    # brute-force oracle: count words of w0(S4) by exhaustive product search
    w0 = longest_element(W4, FULL)
    count = sum(1 for word in itertools.product(range(3), repeat=6)
                if W4.from_word(word) == w0)
    assert count == 16
    assert len(w0.reduced_words()) == 16
    assert all(W4.from_word(w) == w0 and len(w) == 6 for w in w0.reduced_words())


def test_word_is_reduced_and_lex_least():
    w0 = longest_element(W4, FULL)
    assert w0.word() == min(w0.reduced_words())


def test_bruhat_order():
    w0 = longest_element(W4, FULL)
    for word in itertools.product(range(3), repeat=3):
        assert bruhat_leq(W4.identity(), W4.from_word(word))
        assert bruhat_leq(W4.from_word(word), w0)
    assert bruhat_leq(W4.from_word([S, U]), W4.from_word([S, T, U]))
    assert not bruhat_leq(W4.generator(T), W4.from_word([S, U]))


def test_bruhat_subword_oracle():
    # against the subword characterization on a fixed reduced word of y
    y = W4.from_word([S, T, S, U])
    word = y.word()
    below = set()
    for bits in itertools.product((0, 1), repeat=len(word)):
        sub = [s for s, b in zip(word, bits) if b]
        below.add(W4.from_word(sub))
    for x in enumerate_parabolic(W4, FULL):
        assert bruhat_leq(x, y) == (x in below)


def test_parabolic_enumeration():
    assert len(enumerate_parabolic(W4, frozenset({S, U}))) == 4
    assert len(enumerate_parabolic(W4, FULL)) == 24
    assert longest_element(W4, frozenset({S})) == W4.generator(S)
    assert is_finitary(W4, {S, T})
    with pytest.raises(CapExceededError):
        enumerate_parabolic(W4, FULL, cap=10)


def test_longest_element_involution_and_descents():
    for I in [frozenset({S}), frozenset({S, T}), frozenset({S, U}), FULL]:
        wI = longest_element(W4, I)
        assert (wI * wI).is_identity()
        assert wI.right_descents() >= I


def test_coset_min_max_brute_force():
    I = frozenset({S, U})
    t = W4.generator(T)
    elements = enumerate_double_coset(W4, I, t, I)
    assert len(elements) == 16
    mins = [v for v in elements if all(bruhat_leq(v, w) for w in elements)]
    maxs = [v for v in elements if all(bruhat_leq(w, v) for w in elements)]
    assert mins == [coset_min(W4, I, t, I)]
    assert maxs == [coset_max(W4, I, t, I)]
    assert coset_min(W4, I, t, I) == t


def test_coset_min_of_longest_is_identity():
    I = frozenset({S, T})
    assert coset_min(W4, I, longest_element(W4, I), I).is_identity()


def test_coset_trivial_parabolics():
    w = W4.from_word([T, S])
    assert coset_min(W4, frozenset(), w, frozenset()) == w
    assert coset_max(W4, frozenset(), w, frozenset()) == w


def test_other_types():
    assert len(enumerate_parabolic(coxeter_BC(2), frozenset({0, 1}))) == 8
    assert len(enumerate_parabolic(coxeter_BC(3), frozenset({0, 1, 2}))) == 48
    assert len(enumerate_parabolic(coxeter_D(4), frozenset(range(4)))) == 192
    assert len(enumerate_parabolic(dihedral(6), frozenset({0, 1}))) == 12
    assert len(enumerate_parabolic(dihedral(2), frozenset({0, 1}))) == 4
    w0 = longest_element(coxeter_BC(2), frozenset({0, 1}))
    assert w0.length() == 4


def test_infinite_dihedral_not_finitary():
    from demazure.coxeter import INFINITY
    W = dihedral(INFINITY)
    assert not is_finitary(W, {0, 1}, cap=100)
    assert is_finitary(W, {0}, cap=100)


def test_unsupported_bond_order():
    with pytest.raises(UnsupportedCoxeterMatrixError):
        dihedral(5)


def test_length_additivity_bound(rng):
    elems = list(enumerate_parabolic(W4, FULL))
    for _ in range(50):
        x, y = rng.choice(elems), rng.choice(elems)
        assert (x * y).length() <= x.length() + y.length()
