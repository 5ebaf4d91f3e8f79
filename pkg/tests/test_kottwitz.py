import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from alcovelab import root_datum
from alcovelab.kottwitz import (
    basic_class,
    chai_length,
    conj_dim_basic,
    conj_dim_basic_forms,
    enumerate_bgmu,
    is_newton_vector,
    length_to_ordinary,
    mazur_check,
    mu_bar_star,
    mu_natural,
    ordinary_class,
    sigma_class,
)


def concave_paths(n, top, lo, hi):
    """Newton vectors via breakpoint subsets: integer heights at chosen x, strictly decreasing slopes."""
    out = set()
    for k in range(0, n):
        for xs in itertools.combinations(range(1, n), k):
            pts = (0,) + xs + (n,)
            for hs in itertools.product(range(lo * n, hi * n + 1), repeat=k):
                heights = (0,) + hs + (top,)
                slopes = [Fr(heights[i + 1] - heights[i], pts[i + 1] - pts[i]) for i in range(len(pts) - 1)]
                if any(a <= b for a, b in zip(slopes, slopes[1:])):
                    continue
                if not all(lo <= s <= hi for s in slopes):
                    continue
                out.add(tuple(s for i, s in enumerate(slopes) for _ in range(pts[i + 1] - pts[i])))
    return out


def below(nu, mu):
    return sum(nu) == sum(mu) and all(
        a <= b for a, b in zip(itertools.accumulate(nu), itertools.accumulate(mu)))


def hasse_longest(P, i, j):
    return P.chain_lengths(i, j)[1]


def newtons(P):
    return {b.newton for b in P}


def test_mu_natural_and_average(gl2, gl4, gsp4):
    assert mu_natural(gl2, (1, 0)) == 1
    assert mu_natural(gl4, (1, 1, 0, 0)) == 2
    assert mu_natural(gsp4, (1, 1, 0, 0)) == 1
    assert mu_bar_star(gl4, (1, 1, 0, 0)) == (1, 1, 0, 0)
    assert mu_bar_star(gsp4, (1, 1, 0, 0)) == (1, 1, 0, 0)


def test_bgmu_gl2(gl2):
    P = enumerate_bgmu(gl2, (1, 0))
    assert newtons(P) == {(1, 0), (Fr(1, 2), Fr(1, 2))}
    assert P.hasse == [(0, 1)]


def test_bgmu_gl4_five_classes(gl4):
    P = enumerate_bgmu(gl4, (1, 1, 0, 0))
    third, half, two3 = Fr(1, 3), Fr(1, 2), Fr(2, 3)
    assert newtons(P) == {
        (1, 1, 0, 0), (1, half, half, 0), (1, third, third, third), (two3, two3, two3, 0), (half,) * 4,
    }
    assert P.basic.newton == (half,) * 4
    assert P.ordinary.newton == (1, 1, 0, 0)
    assert P.join([sigma_class(gl4, (1, third, third, third)), sigma_class(gl4, (two3, two3, two3, 0))]).newton == (1, half, half, 0)


def test_bgmu_gsp4_three_classes(gsp4):
    P = enumerate_bgmu(gsp4, (1, 1, 0, 0))
    half = Fr(1, 2)
    assert newtons(P) == {(1, 1, 0, 0), (1, half, half, 0), (half,) * 4}
    assert P.is_ranked()


@pytest.mark.parametrize("mu", [(1, 0, 0, 0), (1, 1, 0, 0), (2, 1, 0, 0), (2, 1, 1, 0), (2, 2, 1, 0)])
def test_bgmu_gl4_matches_breakpoint_enumeration(gl4, mu):
    brute = {nu for nu in concave_paths(4, sum(mu), min(mu), max(mu)) if below(nu, mu)}
    assert newtons(enumerate_bgmu(gl4, mu)) == brute


@pytest.mark.parametrize("kind,n,mu", [
    ("gl", 2, (1, 0)), ("gl", 3, (2, 1, 0)), ("gl", 4, (1, 1, 0, 0)), ("gl", 4, (2, 1, 1, 0)),
    ("gsp", 2, (1, 1, 0, 0)), ("gsp", 2, (2, 2, 0, 0)), ("gsp", 3, (1, 1, 1, 0, 0, 0)),
])
def test_chai_length_is_hasse_distance(kind, n, mu):
    rd = root_datum(kind, n)
    P = enumerate_bgmu(rd, mu)
    for i, j in itertools.product(range(len(P)), repeat=2):
        if P.order[i][j]:
            lo, hi = P.chain_lengths(i, j)
            assert lo == hi == chai_length(rd, mu, P.elements[i], P.elements[j])


def test_chai_length_examples(gl2, gl4):
    b = basic_class(gl2, (1, 0))
    assert chai_length(gl2, (1, 0), b, b) == 0
    assert chai_length(gl2, (1, 0), b, ordinary_class(gl2, (1, 0))) == 1
    mu = (1, 1, 0, 0)
    assert chai_length(gl4, mu, basic_class(gl4, mu), ordinary_class(gl4, mu)) == 3
    assert length_to_ordinary(gl4, mu, basic_class(gl4, mu)) == 3


def test_chai_length_requires_order(gl2):
    with pytest.raises(ValueError):
        chai_length(gl2, (1, 0), ordinary_class(gl2, (1, 0)), basic_class(gl2, (1, 0)))


def test_conj_dim_basic(gl2, gsp4, gl3):
    assert conj_dim_basic(gl2, (1, 0)) == 0
    assert conj_dim_basic(gsp4, (1, 1, 0, 0)) == 1
    assert conj_dim_basic(gl3, (0, 0, 0)) == 0
    assert conj_dim_basic(root_datum("gsp", 3), (1, 1, 1, 0, 0, 0)) == 2


@pytest.mark.parametrize("kind,n", [("gl", 2), ("gl", 3), ("gl", 4), ("gsp", 2), ("gsp", 3)])
def test_dimension_forms_agree(kind, n):
    rd = root_datum(kind, n)
    box = range(0, 3)
    for head in itertools.product(box, repeat=rd.n):
        mu = head if kind == "gl" else head + tuple(2 - a for a in reversed(head))
        if rd.is_dominant(mu):
            a, b = conj_dim_basic_forms(rd, mu)
            assert a == b


def test_mazur(gl2):
    assert mazur_check(gl2, (1, 0), (Fr(1, 2), Fr(1, 2)))
    assert mazur_check(gl2, (1, 0), (1, 0))
    assert not mazur_check(gl2, (1, 0), (Fr(3, 2), Fr(-1, 2)))


def test_sigma_class_validation(gl2, gsp4):
    with pytest.raises(ValueError):
        sigma_class(gl2, (Fr(1, 3), Fr(2, 3)))
    with pytest.raises(ValueError):
        sigma_class(gsp4, (1, 1, 1, 0))
    assert sigma_class(gsp4, (1, Fr(1, 2), Fr(1, 2), 0)).kappa == 1


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_integral_sorted_vectors_are_newton(v):
    assert is_newton_vector(sorted(v, reverse=True))


def test_poset_json_uses_string_slopes(gl4):
    rep = enumerate_bgmu(gl4, (1, 1, 0, 0)).to_json()
    assert all(isinstance(s, str) for e in rep["elements"] for s in e["newton"])
    assert [e["rank"] for e in rep["elements"]] == sorted(e["rank"] for e in rep["elements"])
