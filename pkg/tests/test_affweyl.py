import itertools
import os
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from alcovelab import root_datum
from alcovelab.affweyl import (
    AffElem,
    ParahoricType,
    base_alcove_vertices,
    bruhat_leq,
    bruhat_leq_double,
    bruhat_leq_double_existential,
    bruhat_leq_subword,
    decode,
    double_coset_min_rep,
    effective_cap,
    enumerate_by_length,
    identity,
    omega_generator,
    reduced_word,
    simple_reflections,
    translation,
    word_product,
)


def small_elements(rd, N=3):
    out = []
    for k in range(rd.dim if rd.kind == "GL" else 2):
        out.extend(enumerate_by_length(rd, k, N))
    return out


def test_identity_and_simple_words(gl3):
    e = identity(gl3)
    assert reduced_word(e) == ([], e)
    for i, s in enumerate(simple_reflections(gl3)):
        assert s.length == 1
        assert reduced_word(s) == ([i], e)


def test_translation_word_multiplies_back(gl2):
    t = translation(gl2, (1, 0))
    word, tau = reduced_word(t)
    assert len(word) == 1 and tau == omega_generator(gl2)
    assert word_product(gl2, word, tau) == t


@pytest.mark.parametrize("kind,n", [("gl", 2), ("gl", 3), ("gsp", 2)])
def test_reduced_words_have_length_many_letters(kind, n):
    rd = root_datum(kind, n)
    for x in small_elements(rd):
        word, tau = reduced_word(x)
        assert len(word) == x.length and tau.length == 0
        assert word_product(rd, word, tau) == x


def test_omega_generator_has_length_zero(gl3, gsp4):
    for rd in (gl3, gsp4):
        tau = omega_generator(rd)
        assert tau.length == 0 and tau.kappa == 1


def test_translation_length_is_two_rho_pairing(gl3):
    for lam in itertools.product(range(-2, 3), repeat=3):
        dom, _ = gl3.dominant_rep(lam)
        assert translation(gl3, lam).length == sum(a * b for a, b in zip(gl3.two_rho, dom))


def test_bruhat_reflexive_and_translations_incomparable(gl2):
    a, b = translation(gl2, (1, 0)), translation(gl2, (0, 1))
    assert bruhat_leq(a, a)
    assert not bruhat_leq(a, b) and not bruhat_leq(b, a)
    assert bruhat_leq(omega_generator(gl2), a)


@pytest.mark.parametrize("kind,n", [("gl", 2), ("gl", 3), ("gsp", 2)])
def test_bruhat_agrees_with_subwords(kind, n):
    rd = root_datum(kind, n)
    elems = small_elements(rd)
    for x, y in itertools.product(elems, repeat=2):
        assert bruhat_leq(x, y) == bruhat_leq_subword(x, y)


def test_act_on_point_translation(gl2):
    t = translation(gl2, (1, 0))
    assert t.act_on_point((0, 0)) == (Fr(1, 2), Fr(-1, 2))


def test_base_alcove_vertices(gl2, gsp4):
    assert base_alcove_vertices(gl2) == [(0, 0), (Fr(1, 2), Fr(-1, 2))]
    assert base_alcove_vertices(gsp4) == [(0, 0), (Fr(1, 2), 0), (Fr(1, 2), Fr(1, 2))]


def test_length_zero_elements_fix_base_alcove(gl3, gsp4):
    for rd in (gl3, gsp4):
        tau = omega_generator(rd)
        verts = set(base_alcove_vertices(rd))
        assert {tau.act_on_point(v) for v in verts} == verts


def test_double_coset_min_rep_trivial_cases(gl3):
    w = translation(gl3, (1, 0, 0))
    assert double_coset_min_rep(ParahoricType.iwahori(gl3), w) == w
    K = ParahoricType.special_maximal(gl3)
    for u in K.group:
        assert double_coset_min_rep(K, u) == identity(gl3)


@pytest.mark.parametrize("kind,n,K", [("gl", 2, {1}), ("gl", 3, {1}), ("gl", 3, {1, 2}), ("gl", 3, {0, 2})])
def test_double_coset_orders_agree(kind, n, K):
    rd = root_datum(kind, n)
    P = ParahoricType.of(rd, K)
    elems = [x for x in small_elements(rd, 4) if x.kappa == 0]
    reps = sorted({double_coset_min_rep(P, x) for x in elems}, key=AffElem.sort_key)
    for c1, c2 in itertools.product(reps, repeat=2):
        assert bruhat_leq_double(P, c1, c2) == bruhat_leq_double_existential(P, c1, c2)


def test_enumerate_by_length(gl2):
    assert enumerate_by_length(gl2, 0, 0) == [identity(gl2)]
    assert len(enumerate_by_length(gl2, 0, 1)) == 3
    level = enumerate_by_length(gl2, 1, 1)
    assert [w.length for w in level] == [0, 1, 1]
    assert level[0] == omega_generator(gl2)


def test_encode_decode(gsp4):
    for x in small_elements(gsp4, 2):
        enc = x.encode()
        assert decode(gsp4, enc) == x
        assert enc["len"] == x.length and enc["omega"] == x.kappa


def test_cap_env_only_raises(monkeypatch):
    monkeypatch.setenv("ALCOVELAB_CAP", "5")
    assert effective_cap(100) == 100
    monkeypatch.setenv("ALCOVELAB_CAP", "500")
    assert effective_cap(100) == 500


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), max_size=6))
def test_length_subadditive_and_inverse(u, v):
    rd = root_datum("gl", 3)
    x, y = word_product(rd, u), word_product(rd, v)
    assert (x * y).length <= x.length + y.length
    assert x.inverse().length == x.length
    assert x.length <= len(u)
