"""mu-admissible and mu-permissible sets, at Iwahori and parahoric level."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .affweyl import (
    AffElem,
    ParahoricType,
    base_alcove_vertices,
    bruhat_leq,
    double_coset_min_rep,
    effective_cap,
    enumerate_by_length,
    lower_interval,
    sort_elements,
    translation,
)
from .errors import NotDominant, ResourceCapExceeded
from .rootdata import GL, RootDatum


@dataclass(frozen=True)
class MuData:
    rd: RootDatum
    mu: tuple[int, ...]

    def __post_init__(self):
        self.rd.check_coweight(self.mu)
        if not self.rd.is_dominant(self.mu):
            raise NotDominant(f"{self.mu} is not dominant")

    @cached_property
    def orbit(self) -> list[tuple[int, ...]]:
        return self.rd.orbit(self.mu)

    @property
    def kappa(self) -> int:
        return self.rd.kappa(self.mu)

    @cached_property
    def translations(self) -> list[AffElem]:
        return [translation(self.rd, lam) for lam in self.orbit]

    def is_minuscule(self) -> bool:
        return all(self.rd.pair(r.alpha, self.mu) in (0, 1) for r in self.rd.positive_roots)


@dataclass(frozen=True)
class MuPolytope:
    """Conv(W_0 mu_ad); membership by the dominance criterion."""

    rd: RootDatum
    mu: tuple[int, ...]

    @cached_property
    def vertex_lifted(self) -> tuple[Fraction, ...]:
        return self.rd.lift(self.mu)

    @cached_property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        return [self.rd.proj_adjoint(lam) for lam in self.rd.orbit(self.mu)]

    def contains_lifted(self, p) -> bool:
        dom, _ = self.rd.dominant_rep(tuple(p))
        return self.rd.dominance_leq_rational(dom, self.vertex_lifted)

    def contains(self, p) -> bool:
        """Membership of a point given in reduced adjoint coordinates."""
        return self.contains_lifted(self.rd.unreduce(p))


def _mu(rd, mu) -> MuData:
    return mu if isinstance(mu, MuData) else MuData(rd, tuple(mu))


def adm(rd: RootDatum, mu, cap: int | None = None) -> list[AffElem]:
    """{w : w <= t_lambda for some lambda in W_0 mu}."""
    md = _mu(rd, mu)
    out: set[AffElem] = set()
    for t in md.translations:
        if t in out:
            continue
        out |= lower_interval(t, cap)
    return sort_elements(out)


def _translation_candidates(rd: RootDatum, mu, box: int = 0):
    """Integral coweights in the right kappa-class whose adjoint image lies in a box."""
    lo, hi = min(mu) - box, max(mu) + box
    kap = rd.kappa(mu)
    if rd.kind == GL:
        for head in itertools.product(range(lo, hi + 1), repeat=rd.n - 1):
            last = kap - sum(head)
            if lo <= last <= hi:
                yield head + (last,)
    else:
        for head in itertools.product(range(lo, hi + 1), repeat=rd.n):
            yield head + tuple(kap - a for a in reversed(head))


def _moves_into(P: MuPolytope, w: AffElem, vertices) -> bool:
    return all(P.contains_lifted(tuple(a - b for a, b in zip(w.act_lifted(v), v))) for v in vertices)


def perm(rd: RootDatum, mu, cap: int | None = None) -> list[AffElem]:
    """{w : w = tau(mu) mod W_a and w(v) - v in P_mu for every base-alcove vertex v}."""
    md = _mu(rd, mu)
    P = MuPolytope(rd, md.mu)
    verts = base_alcove_vertices(rd, reduced=False)
    limit = effective_cap(cap)
    out = []
    for nu in _translation_candidates(rd, md.mu):
        if not P.contains_lifted(rd.lift(nu)):
            continue
        for u in rd.weyl_group:
            w = AffElem(rd, nu, u)
            if _moves_into(P, w, verts[1:]):
                out.append(w)
                if len(out) > limit:
                    raise ResourceCapExceeded(f"Perm exceeds {limit} elements")
    return sort_elements(out)


def adm_K(rd: RootDatum, mu, K: ParahoricType, cap: int | None = None) -> list[AffElem]:
    """Image of Adm(mu) in W^K\\W~/W^K, as minimal-length representatives."""
    return sort_elements({double_coset_min_rep(K, w) for w in adm(rd, mu, cap)})


def adm_K_by_definition(rd: RootDatum, mu, K: ParahoricType) -> list[AffElem]:
    """Cosets below some W^K t_lambda W^K, found by scanning all short elements."""
    md = _mu(rd, mu)
    tops = {double_coset_min_rep(K, t) for t in md.translations}
    bound = max(t.length for t in md.translations)
    cands = {double_coset_min_rep(K, w) for w in enumerate_by_length(rd, md.kappa, bound)}
    return sort_elements(c for c in cands if any(bruhat_leq(c, top) for top in tops))


def perm_K(rd: RootDatum, mu, K: ParahoricType, cap: int | None = None) -> list[AffElem]:
    """Cosets in the right Omega-class moving every vertex of the facet of K into P_mu."""
    md = _mu(rd, mu)
    P = MuPolytope(rd, md.mu)
    verts = K.facet_vertices()
    limit = effective_cap(cap)
    out: set[AffElem] = set()
    for nu in _translation_candidates(rd, md.mu, box=2):
        for u in rd.weyl_group:
            w = AffElem(rd, nu, u)
            if _moves_into(P, w, verts):
                out.add(double_coset_min_rep(K, w))
                if len(out) > limit:
                    raise ResourceCapExceeded(f"Perm_K exceeds {limit} cosets")
    return sort_elements(out)


def perm_image_K(rd: RootDatum, mu, K: ParahoricType) -> list[AffElem]:
    return sort_elements({double_coset_min_rep(K, w) for w in perm(rd, mu)})


@dataclass
class AdmPermReport:
    equal: bool
    adm_only: list[AffElem] = field(default_factory=list)
    perm_only: list[AffElem] = field(default_factory=list)
    adm_size: int = 0
    perm_size: int = 0

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "adm_size": self.adm_size,
            "perm_size": self.perm_size,
            "adm_only": [w.encode() for w in self.adm_only],
            "perm_only": [w.encode() for w in self.perm_only],
        }


def compare_adm_perm(rd: RootDatum, mu, cap: int | None = None) -> AdmPermReport:
    a, p = set(adm(rd, mu, cap)), set(perm(rd, mu, cap))
    return AdmPermReport(
        equal=a == p,
        adm_only=sort_elements(a - p),
        perm_only=sort_elements(p - a),
        adm_size=len(a),
        perm_size=len(p),
    )


def downward_closure(elems) -> set[AffElem]:
    """Union of the Bruhat lower intervals of the given elements."""
    out: set[AffElem] = set()
    for w in sorted(elems, key=lambda x: -x.length):
        if w not in out:
            out |= lower_interval(w)
    return out


def maximal_elements(elems) -> list[AffElem]:
    elems = list(elems)
    return sort_elements(
        w for w in elems if not any(v != w and v.length > w.length and bruhat_leq(w, v) for v in elems)
    )


@lru_cache(maxsize=None)
def dominant_below(rd: RootDatum, mu: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All dominant nu with nu <=! mu."""
    out = {rd.dominant_rep(nu)[0] for nu in _translation_candidates(rd, mu)}
    return tuple(sorted((nu for nu in out if rd.leq_coroot(nu, mu)), reverse=True))


def hasse_edges(elems) -> list[tuple[AffElem, AffElem]]:
    """Bruhat covering relations inside a set (lower, upper)."""
    elems = sort_elements(elems)
    edges = []
    for i, y in enumerate(elems):
        below = [x for x in elems[:i] if x.length < y.length and bruhat_leq(x, y)]
        for x in below:
            if not any(z is not x and x.length < z.length and bruhat_leq(x, z) for z in below):
                edges.append((x, y))
    return edges
