import itertools
from fractions import Fraction as Fr

import pytest

from alcovelab import root_datum
from alcovelab.admperm import (
    MuData,
    MuPolytope,
    adm,
    adm_K,
    adm_K_by_definition,
    compare_adm_perm,
    dominant_below,
    downward_closure,
    hasse_edges,
    maximal_elements,
    perm,
    perm_image_K,
    perm_K,
)
from alcovelab.affweyl import (
    AffElem,
    ParahoricType,
    base_alcove_vertices,
    bruhat_leq_subword,
    double_coset_min_rep,
    enumerate_by_length,
    identity,
    omega_generator,
    translation,
)
from alcovelab.errors import NotDominant


def adm_by_scan(rd, mu):
    """Every element up to the top length, kept if it lies below some translation by subwords."""
    tops = [translation(rd, lam) for lam in rd.orbit(mu)]
    top = max(t.length for t in tops)
    return {w for w in enumerate_by_length(rd, rd.kappa(mu), top) if any(bruhat_leq_subword(w, t) for t in tops)}


def majorized(p, mu):
    """Rado: p in Conv(S_n mu) iff sorted p is majorized by sorted mu."""
    a, b = sorted(p, reverse=True), sorted(mu, reverse=True)
    if sum(a) != sum(b):
        return False
    return all(x <= y for x, y in zip(itertools.accumulate(a), itertools.accumulate(b)))


def perm_gl_by_majorization(rd, mu):
    n = rd.n
    verts = [tuple(Fr(1 if i <= j else 0) for i in range(n)) for j in range(-1, n - 1)]
    out = set()
    for nu in itertools.product(range(min(mu) - 1, max(mu) + 2), repeat=n):
        if sum(nu) != sum(mu):
            continue
        for u in rd.weyl_group:
            w = AffElem(rd, nu, u)
            # the vertex j is the indicator of the first j coordinates; mu, w act on the unlifted lattice
            if all(majorized([a - b for a, b in zip(_act(w, v), v)], mu) for v in verts):
                out.add(w)
    return out


def _act(w, v):
    moved = w.rd.act(w.w, v)
    return tuple(a + b for a, b in zip(w.t, moved))


def test_adm_gl2_three_elements(gl2):
    A = adm(gl2, (1, 0))
    assert set(A) == {translation(gl2, (1, 0)), translation(gl2, (0, 1)), omega_generator(gl2)}
    assert sorted(w.length for w in A) == [0, 1, 1]
    assert all(w.kappa == 1 for w in A)


def test_adm_of_zero_is_identity(gl3, gsp4):
    assert adm(gl3, (0, 0, 0)) == [identity(gl3)]
    assert perm(gl3, (0, 0, 0)) == [identity(gl3)]
    assert adm(gsp4, (0, 0, 0, 0)) == [identity(gsp4)]


def test_adm_gl3_minuscule(gl3):
    assert len(adm(gl3, (1, 0, 0))) == 7


@pytest.mark.parametrize("kind,n,mu", [
    ("gl", 2, (1, 0)), ("gl", 2, (2, 0)), ("gl", 3, (1, 0, 0)), ("gl", 3, (2, 1, 0)),
    ("gsp", 2, (1, 1, 0, 0)), ("gsp", 2, (2, 1, 1, 0)),
])
def test_adm_matches_length_scan(kind, n, mu):
    rd = root_datum(kind, n)
    assert set(adm(rd, mu)) == adm_by_scan(rd, mu)


@pytest.mark.parametrize("n,mu", [(2, (1, 0)), (2, (2, 0)), (3, (1, 0, 0)), (3, (1, 1, 0)), (3, (2, 1, 0)), (3, (2, 0, 0))])
def test_perm_matches_majorization(n, mu):
    rd = root_datum("gl", n)
    assert set(perm(rd, mu)) == perm_gl_by_majorization(rd, mu)


def test_known_admissible_sizes():
    assert len(adm(root_datum("gsp", 2), (1, 1, 0, 0))) == 13
    assert len(adm(root_datum("gsp", 3), (1, 1, 1, 0, 0, 0))) == 79


def test_perm_equals_adm(gl2, gsp4):
    assert set(perm(gl2, (1, 0))) == set(adm(gl2, (1, 0)))
    assert set(perm(gsp4, (1, 1, 0, 0))) == set(adm(gsp4, (1, 1, 0, 0)))


@pytest.mark.parametrize("kind,n,mu", [
    ("gl", 4, (2, 1, 1, 0)), ("gl", 4, (2, 2, 0, 0)), ("gsp", 2, (1, 1, 0, 0)), ("gsp", 2, (2, 2, 0, 0)),
])
def test_compare_reports_equal(kind, n, mu):
    rep = compare_adm_perm(root_datum(kind, n), mu)
    assert rep.equal and not rep.adm_only and not rep.perm_only
    assert rep.adm_size == rep.perm_size
    assert rep.to_json()["equal"] is True


def test_polytope_membership(gl2):
    P = MuPolytope(gl2, (1, 0))
    assert P.contains(gl2.proj_adjoint((1, 0)))
    assert P.contains((0, 0))
    assert not P.contains((Fr(3, 4), Fr(-3, 4)))


def test_polytope_gl2_against_segment_solve(gl2):
    P = MuPolytope(gl2, (1, 0))
    v1, v2 = P.vertices
    for k in range(-8, 9):
        p = (Fr(k, 8), Fr(-k, 8))
        s = (p[0] - v2[0]) / (v1[0] - v2[0])
        assert P.contains(p) == (0 <= s <= 1)


def test_mu_must_be_dominant(gl2):
    with pytest.raises(NotDominant):
        MuData(gl2, (0, 1))
    with pytest.raises(NotDominant):
        adm(gl2, (0, 1))


def test_adm_K_iwahori_is_adm(gl3):
    K = ParahoricType.iwahori(gl3)
    assert adm_K(gl3, (1, 0, 0), K) == adm(gl3, (1, 0, 0))
    assert perm_K(gl3, (1, 0, 0), K) == perm(gl3, (1, 0, 0))


def test_adm_K_special_gl2_single_coset(gl2):
    K = ParahoricType.special_maximal(gl2)
    assert len(adm_K(gl2, (1, 0), K)) == 1


def test_adm_K_special_gl3_dominant_below(gl3):
    K = ParahoricType.special_maximal(gl3)
    cosets = adm_K(gl3, (2, 0, 0), K)
    expected = {double_coset_min_rep(K, translation(gl3, nu)) for nu in [(2, 0, 0), (1, 1, 0)]}
    assert set(cosets) == expected
    assert dominant_below(gl3, (2, 0, 0)) == ((2, 0, 0), (1, 1, 0))


@pytest.mark.parametrize("K", [{1, 2}, {1}, {0}, {0, 2}])
def test_adm_K_definitions_and_perm_K_agree(gl3, K):
    P = ParahoricType.of(gl3, K)
    for mu in [(1, 0, 0), (1, 1, 0), (2, 1, 0)]:
        a = adm_K(gl3, mu, P)
        assert a == adm_K_by_definition(gl3, mu, P)
        assert a == perm_K(gl3, mu, P)
        assert set(perm_image_K(gl3, mu, P)) <= set(perm_K(gl3, mu, P))


def test_adm_is_downward_closed(gsp4):
    A = set(adm(gsp4, (2, 1, 1, 0)))
    assert downward_closure(A) == A
    tops = maximal_elements(A)
    assert {w for w in tops} == {translation(gsp4, lam) for lam in gsp4.orbit((2, 1, 1, 0))}


def test_hasse_edges_gl2(gl2):
    edges = hasse_edges(adm(gl2, (1, 0)))
    assert len(edges) == 2
    assert all(lo == omega_generator(gl2) for lo, _ in edges)


def test_base_alcove_vertices_move_into_polytope(gsp4):
    P = MuPolytope(gsp4, (1, 1, 0, 0))
    for w in perm(gsp4, (1, 1, 0, 0)):
        for v in base_alcove_vertices(gsp4, reduced=False):
            assert P.contains_lifted(tuple(a - b for a, b in zip(w.act_lifted(v), v)))


def test_siegel_parahoric_image_inside_perm_K(gsp4):
    K = ParahoricType.of(gsp4, {1})
    image, full = set(perm_image_K(gsp4, (1, 1, 0, 0), K)), set(perm_K(gsp4, (1, 1, 0, 0), K))
    assert image <= full
    assert set(adm_K(gsp4, (1, 1, 0, 0), K)) <= full
