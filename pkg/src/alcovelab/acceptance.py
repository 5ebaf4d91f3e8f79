"""The ten end-to-end acceptance checks, shared by the test suite and the CLI.

Each ``criterion_k`` returns a Criterion whose ``passed`` flag is an exact
verdict and whose ``detail`` says what was compared.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import adlv, fforacle, kottwitz, localmodel
from .admperm import adm, adm_K, dominant_below, downward_closure, perm, perm_K
from .affweyl import (
    AffElem,
    ParahoricType,
    bruhat_leq,
    cayley_distances,
    enumerate_by_length,
    finite,
    omega_power,
    translation,
)
from .rootdata import GL, root_datum


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"criterion {self.number:2d} [{'PASS' if self.passed else 'FAIL'}] {self.title}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


def dominant_coweights(rd, lo: int, hi: int) -> list[tuple[int, ...]]:
    """Dominant coweights with every coordinate in [lo, hi]."""
    out = set()
    for head in itertools.product(range(lo, hi + 1), repeat=rd.n):
        if rd.kind == GL:
            v = head
        else:
            c = head[0] + min(head)
            v = head + tuple(c - a for a in reversed(head))
        if all(lo <= a <= hi for a in v) and rd.is_dominant(v):
            out.add(v)
    return sorted(out, reverse=True)


def siegel(n: int, k: int = 1) -> tuple[int, ...]:
    return (k,) * n + (0,) * n


def criterion2_cases():
    cases = []
    for n in (2, 3, 4):
        rd = root_datum("gl", n)
        cases += [(rd, mu) for mu in dominant_coweights(rd, 0, 2)]
    for n in (2, 3):
        rd = root_datum("gsp", n)
        cases += [(rd, siegel(n)), (rd, siegel(n, 2))]
    return cases


@lru_cache(maxsize=None)
def _adm(rd, mu):
    return frozenset(adm(rd, mu))


@lru_cache(maxsize=None)
def _perm(rd, mu):
    return frozenset(perm(rd, mu))


# -- 1 -----------------------------------------------------------------------------

def criterion_1() -> Criterion:
    rd = root_datum("gl", 2)
    A = adm(rd, (1, 0))
    trans = sorted(w.t for w in A if w.is_translation and w.length == 1)
    zero = [w for w in A if w.length == 0]
    ok = len(A) == 3 and trans == [(0, 1), (1, 0)] and len(zero) == 1 and zero[0].kappa == 1
    return Criterion(1, "Adm(GL2,(1,0)) = two length-1 translations and the length-0 element", ok,
                     [repr(w) for w in A])


# -- 2 and 3 ----------------------------------------------------------------------------

def criterion_2() -> Criterion:
    bad = []
    for rd, mu in criterion2_cases():
        if _adm(rd, mu) != _perm(rd, mu):
            bad.append(f"{rd.name} {mu}: |Adm|={len(_adm(rd, mu))} |Perm|={len(_perm(rd, mu))}")
    return Criterion(2, "Adm(mu) = Perm(mu) on the GL_2..4 and GSp_4,6 cases", not bad,
                     bad or [f"{len(criterion2_cases())} cases equal"])


def criterion_3() -> Criterion:
    bad = []
    for rd, mu in criterion2_cases():
        P = _perm(rd, mu)
        if not _adm(rd, mu) <= P:
            bad.append(f"{rd.name} {mu}: Adm not inside Perm")
        if downward_closure(P) != P:
            bad.append(f"{rd.name} {mu}: Perm not Bruhat-closed")
        if {w.kappa for w in P} != {rd.kappa(mu)}:
            bad.append(f"{rd.name} {mu}: wrong Omega-class in Perm")
    return Criterion(3, "Perm is downward closed and contains Adm", not bad, bad)


# -- 4 -----------------------------------------------------------------------------------

def _reflection_length_bound(rd) -> list[str]:
    bad = []
    for r in rd.positive_roots:
        bound = rd.pair(r.coroot, rd.two_rho)
        if not finite(rd, r.reflection).length < bound:
            bad.append(f"{rd.name} root {r.alpha}: l(s_beta) >= {bound}")
    return bad


def _translation_chain_violations(rd, hi: int) -> list[str]:
    bad = []
    for nu in dominant_coweights(rd, 0, hi):
        for r in rd.positive_roots:
            low = tuple(a - b for a, b in zip(nu, r.coroot))
            if not rd.is_dominant(low):
                continue
            t_low, t_nu = translation(rd, low), translation(rd, nu)
            mid = AffElem(rd, nu, r.reflection)
            if not bruhat_leq(t_low, t_nu):
                bad.append(f"{rd.name} nu={nu} beta={r.alpha}: t_(nu-beta) not <= t_nu")
            if not (bruhat_leq(t_low, mid) and bruhat_leq(mid, t_nu)):
                bad.append(f"{rd.name} nu={nu} beta={r.alpha}: chain through t_nu s_beta fails")
    return bad


def criterion_4(max_len: int = 8) -> Criterion:
    bad = []
    for kind, n in (("gl", 2), ("gl", 3), ("gsp", 2)):
        rd = root_datum(kind, n)
        dist = cayley_distances(rd, max_len)
        for k in range(rd.n + 1):
            tau = omega_power(rd, k)
            for x, d in dist.items():
                if (x * tau).length != d:
                    bad.append(f"{rd.name} {x} tau^{k}: IM length != BFS distance {d}")
    for n in range(2, 6):
        for kind in ("gl", "gsp"):
            bad += _reflection_length_bound(root_datum(kind, n))
    for kind, n in (("gl", 2), ("gl", 3), ("gsp", 2)):
        bad += _translation_chain_violations(root_datum(kind, n), 3)
    return Criterion(4, "IM length = BFS distance; reflection-length bound; translation chains", not bad, bad)


# -- 5 ---------------------------------------------------------------------------------------

def criterion5_cases():
    out = []
    for kind, n in (("gl", 2), ("gl", 3), ("gsp", 2)):
        rd = root_datum(kind, n)
        out += [(rd, mu) for mu in dominant_coweights(rd, 0, 3)]
    return out


def criterion_5() -> Criterion:
    bad = []
    for rd, mu in criterion5_cases():
        A, P = _adm(rd, mu), _perm(rd, mu)
        if {w for w in A if w.is_translation} != {w for w in P if w.is_translation}:
            bad.append(f"{rd.name} {mu}: translation parts differ")
        K = ParahoricType.special_maximal(rd)
        aK = adm_K(rd, mu, K)
        if set(aK) != set(perm_K(rd, mu, K)):
            bad.append(f"{rd.name} {mu}: Adm_K != Perm_K")
        doms = sorted({rd.dominant_rep(c.t)[0] for c in aK}, reverse=True)
        if len(doms) != len(aK) or tuple(doms) != dominant_below(rd, mu):
            bad.append(f"{rd.name} {mu}: Adm_K is not the set of dominant nu <=! mu")
        if all(rd.pair(r.alpha, mu) <= 1 for r in rd.positive_roots) and len(aK) != 1:
            bad.append(f"{rd.name} {mu}: minuscule but |Adm_K| = {len(aK)}")
    return Criterion(5, "translations of Adm = of Perm; special-maximal Adm_K = {nu <=! mu}", not bad, bad)


# -- 6 ---------------------------------------------------------------------------------------

def criterion6_cases():
    out = []
    for n in range(2, 6):
        rd = root_datum("gl", n)
        out += [(rd, mu) for mu in dominant_coweights(rd, 0, 3)]
    for n in (2, 3):
        out.append((root_datum("gsp", n), siegel(n)))
    return out


def poset_problems(P: kottwitz.BGmuPoset) -> list[str]:
    bad = []
    m = len(P)
    b0, b1 = P.basic, P.ordinary
    if b1.newton != P.mu:
        bad.append("maximum is not mu-ordinary")
    if not b0.basic:
        bad.append("minimum is not basic")
    if len({(b.newton, b.kappa) for b in P}) != m:
        bad.append("(newton, kappa) not injective")
    for i, j in itertools.product(range(m), repeat=2):
        if P.order[i][j]:
            lo, hi = P.chain_lengths(i, j)
            cl = kottwitz.chai_length(P.rd, P.mu, P.elements[i], P.elements[j])
            if not lo == hi == cl:
                bad.append(f"chains {i}->{j}: {lo}, {hi}, formula {cl}")
    for size in (2, 3):
        for sub in itertools.combinations(P.elements, size):
            if P.join(sub) is None:
                bad.append(f"no join for {[b.slopes() for b in sub]}")
    if kottwitz.length_to_ordinary(P.rd, P.mu, b0) != kottwitz.chai_length(P.rd, P.mu, b0, b1):
        bad.append("closed-form length to ordinary disagrees")
    return bad


def criterion_6() -> Criterion:
    bad = []
    gl2, gl4, gsp4 = root_datum("gl", 2), root_datum("gl", 4), root_datum("gsp", 2)
    P = kottwitz.enumerate_bgmu(gl4, (1, 1, 0, 0))
    if len(P) != 5 or kottwitz.chai_length(gl4, P.mu, P.basic, P.ordinary) != 3:
        bad.append("B(GL4,(1,1,0,0)) is not 5 elements of length 3")
    P = kottwitz.enumerate_bgmu(gl2, (1, 0))
    if len(P) != 2 or kottwitz.chai_length(gl2, P.mu, P.basic, P.ordinary) != 1:
        bad.append("B(GL2,(1,0)) is not 2 elements of length 1")
    if len(kottwitz.enumerate_bgmu(gsp4, (1, 1, 0, 0))) != 3:
        bad.append("B(GSp4,(1,1,0,0)) does not have 3 elements")
    cases = criterion6_cases()
    for rd, mu in cases:
        bad += [f"{rd.name} {mu}: {p}" for p in poset_problems(kottwitz.enumerate_bgmu(rd, mu))]
    return Criterion(6, "B(G,mu) counts, ranks = Chai lengths, joins", not bad,
                     bad or [f"{len(cases)} posets checked"])


# -- 7 ----------------------------------------------------------------------------------------

def criterion_7() -> Criterion:
    bad = []
    if kottwitz.conj_dim_basic(root_datum("gl", 2), (1, 0)) != 0:
        bad.append("GL2 (1,0) is not 0")
    if kottwitz.conj_dim_basic(root_datum("gsp", 2), (1, 1, 0, 0)) != 1:
        bad.append("GSp4 (1,1,0,0) is not 1")
    for rd, mu in criterion2_cases():
        a, b = kottwitz.conj_dim_basic_forms(rd, mu)
        if a != b:
            bad.append(f"{rd.name} {mu}: forms {a} != {b}")
    return Criterion(7, "basic-locus dimension formula values and agreement of both forms", not bad, bad)


# -- 8 ----------------------------------------------------------------------------------------

def criterion_8() -> Criterion:
    bad = []
    for reading in adlv.READINGS:
        for row in adlv.grid(3, reading):
            if not row.coherent:
                bad.append(f"{reading} mu={row.mu} lambda={row.lam}: union={row.union} "
                           f"B(G,mu)={row.in_bgmu} kappa={row.kappa_ok} translation={row.translation_ok}")
    return Criterion(8, "GL2 grid: union nonempty iff [b] in B(G,mu); necessary conditions hold", not bad, bad)


# -- 9 ----------------------------------------------------------------------------------------

FIXTURE_B = {
    "diag:t^1,t^0": (1, 0),
    "antidiag:t^1,1": (Fraction(1, 2), Fraction(1, 2)),
    "identity": (0, 0),
    "diag:t^2,t^-1": (2, -1),
}


def oracle_fixture(q: int = 2, m_max: int = 2, depth: int = 4, max_len: int = 4):
    """Rows (b, w, predicate, witness or None, exhaustive) for the curated GL2 fixture."""
    rd = root_datum("gl", 2)
    ws = [w for k in range(-3, 4) for w in enumerate_by_length(rd, k, max_len)]
    rows = []
    for spec, lam in FIXTURE_B.items():
        L = adlv.SlopeClassGL2.of(*lam)
        first: dict = {}
        for m in range(1, m_max + 1):
            for w, pt in fforacle.scan_realized(spec, rd, q, m, depth).realized.items():
                first.setdefault(w, pt)
        for w in ws:
            rows.append((spec, w, adlv.xw_nonempty_gl2(L, w), first.get(w), True))
    return rows


def criterion_9() -> Criterion:
    bad = []
    rows = oracle_fixture()
    for spec, w, pred, pt, exhaustive in rows:
        if pred and pt is None:
            bad.append(f"{spec} {w}: predicted nonempty, no witness")
        if not pred and pt is not None:
            bad.append(f"{spec} {w}: predicted empty, witness {pt.x} {pt.coords}")
        if not pred and not exhaustive:
            bad.append(f"{spec} {w}: scan was not exhaustive")
        if pt is not None and fforacle.phi_positions(spec, pt) != (w, w):
            bad.append(f"{spec} {w}: Phi-stability fails")
    hits = sum(1 for r in rows if r[3] is not None)
    return Criterion(9, "oracle concordance on the GL2 fixture (q=2, m<=2, depth 4)", not bad,
                     bad or [f"{len(rows)} cases, {hits} witnesses"])


# -- 10 ---------------------------------------------------------------------------------------

def criterion_10() -> Criterion:
    lm = localmodel
    bad = []
    for n in range(1, 5):
        for r in range(n + 1):
            for q in (2, 3, 4):
                c = lm.count_points(lm.ChainConfig.of("gl", n, r, (0,), q))
                if c != lm.gaussian_binomial(n, r, q):
                    bad.append(f"Grassmannian n={n} r={r} q={q}: {c}")
    for q in (2, 3, 4, 5):
        c = lm.count_points(lm.ChainConfig.of("gl", 2, 1, (0, 1), q))
        if c != 2 * q + 1:
            bad.append(f"GL2 full chain q={q}: {c}")
    for n, r in ((3, 1), (3, 2), (4, 1)):
        rd = root_datum("gl", n)
        for q in (2, 3):
            c = lm.count_points(lm.ChainConfig.of("gl", n, r, lm.full_chain("gl", n), q))
            p = lm.predicted_count_iwahori(rd, lm.local_model_mu("gl", n, r), q)
            if c != p:
                bad.append(f"GL{n} r={r} q={q}: count {c} != predicted {p}")
    for q in (2, 3, 4):
        c = lm.count_points_gsp(lm.ChainConfig.of("gsp", 2, 2, (0,), q))
        if c != (q + 1) * (q * q + 1):
            bad.append(f"GSp4 I={{0}} q={q}: {c}")
    return Criterion(10, "local-model point counts", not bad, bad)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all() -> list[Criterion]:
    return [c() for c in CRITERIA]
