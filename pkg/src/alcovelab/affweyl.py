"""The extended affine Weyl group W~ = X_*(T) x| W_0 of a split GL_n / GSp_2n.

An element ``t_nu * u`` acts on the apartment by ``x -> nu + u(x)`` and
composes as ``(t_nu u)(t_nu' u') = t_{nu + u(nu')} (u u')``.  The base alcove
is ``{x : alpha(x) >= 0 for simple alpha, theta(x) <= 1}``.  Simple affine
reflections are indexed ``0..rank``: ``s_0 = t_{theta^vee} s_theta`` is the
reflection in ``theta = 1``, the others are the finite simple reflections.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import ResourceCapExceeded
from .rootdata import RootDatum

DEFAULT_CAP = 10**6


def effective_cap(cap: int | None = None) -> int:
    """Resolve an element cap; ``ALCOVELAB_CAP`` may raise (never lower) it."""
    base = DEFAULT_CAP if cap is None else cap
    env = os.environ.get("ALCOVELAB_CAP")
    if env:
        try:
            base = max(base, int(env))
        except ValueError:
            pass
    return base


@dataclass(frozen=True)
class AffElem:
    rd: RootDatum
    t: tuple[int, ...]
    w: tuple[int, ...]

    def __mul__(self, other: "AffElem") -> "AffElem":
        rd = self.rd
        shifted = rd.act(self.w, other.t)
        return AffElem(rd, tuple(a + b for a, b in zip(self.t, shifted)), rd.compose(self.w, other.w))

    def inverse(self) -> "AffElem":
        rd = self.rd
        winv = rd.invert(self.w)
        return AffElem(rd, tuple(-a for a in rd.act(winv, self.t)), winv)

    @cached_property
    def length(self) -> int:
        """Number of affine root hyperplanes separating the base alcove from its image."""
        rd = self.rd
        xi = rd.act(self.w, rd.regular_dominant)
        total = 0
        for r in rd.positive_roots:
            m = rd.pair(r.alpha, self.t)
            total += abs(m) if rd.pair(r.alpha, xi) > 0 else abs(m - 1)
        return total

    @property
    def kappa(self) -> int:
        return self.rd.kappa(self.t)

    def act_lifted(self, x) -> tuple[Fraction, ...]:
        rd = self.rd
        shift = rd.lift(self.t)
        return tuple(a + b for a, b in zip(shift, rd.act(self.w, x)))

    def act_on_point(self, x) -> tuple[Fraction, ...]:
        """Affine action on a point given in reduced adjoint coordinates."""
        rd = self.rd
        return rd.reduce(self.act_lifted(rd.unreduce(x)))

    @property
    def is_translation(self) -> bool:
        return self.w == self.rd.identity

    def sort_key(self):
        return (self.length, self.t, tuple(self.rd.one_line(self.w)))

    def encode(self) -> dict:
        return {"t": list(self.t), "w": self.rd.one_line(self.w), "omega": self.kappa, "len": self.length}

    def __repr__(self) -> str:
        return f"AffElem({self.rd.name}, t={self.t}, w={self.rd.one_line(self.w)})"


def decode(rd: RootDatum, data: dict) -> AffElem:
    return AffElem(rd, rd.check_coweight(data["t"]), rd.from_one_line(data["w"]))


def identity(rd: RootDatum) -> AffElem:
    return AffElem(rd, (0,) * rd.dim, rd.identity)


def translation(rd: RootDatum, nu) -> AffElem:
    return AffElem(rd, rd.check_coweight(nu), rd.identity)


def finite(rd: RootDatum, w) -> AffElem:
    return AffElem(rd, (0,) * rd.dim, tuple(w))


@lru_cache(maxsize=None)
def simple_reflections(rd: RootDatum) -> tuple[AffElem, ...]:
    theta = rd.highest_root
    s0 = AffElem(rd, theta.coroot, theta.reflection)
    return (s0,) + tuple(finite(rd, s.reflection) for s in rd.simple_roots)


def affine_reflection(rd: RootDatum, root, k: int) -> AffElem:
    """s_{beta+k}: x -> x - <beta, x> beta^vee - k beta^vee."""
    return AffElem(rd, tuple(-k * c for c in root.coroot), root.reflection)


@lru_cache(maxsize=None)
def omega_generator(rd: RootDatum) -> AffElem:
    """The length-zero element with kappa = 1 and translation part e_1 (GL) / Siegel (GSp)."""
    if rd.kind == "GL":
        nu = (1,) + (0,) * (rd.n - 1)
    else:
        nu = (1,) * rd.n + (0,) * rd.n
    hits = [AffElem(rd, nu, u) for u in rd.weyl_group if AffElem(rd, nu, u).length == 0]
    assert len(hits) == 1, hits
    return hits[0]


@lru_cache(maxsize=None)
def omega_power(rd: RootDatum, k: int) -> AffElem:
    if k == 0:
        return identity(rd)
    if k < 0:
        return omega_power(rd, -k).inverse()
    return omega_power(rd, k - 1) * omega_generator(rd)


def omega_part(x: AffElem) -> AffElem:
    return omega_power(x.rd, x.kappa)


def affine_part(x: AffElem) -> AffElem:
    """W_a-component w_a of x = w_a * tau."""
    return x * omega_part(x).inverse()


def left_descent(x: AffElem) -> int | None:
    lx = x.length
    for i, s in enumerate(simple_reflections(x.rd)):
        if (s * x).length < lx:
            return i
    return None


def reduced_word(x: AffElem) -> tuple[list[int], AffElem]:
    """x = s_{i1} ... s_{il} * tau with l = length(x); smallest descent peeled first."""
    word, cur = [], x
    sr = simple_reflections(x.rd)
    while cur.length > 0:
        i = left_descent(cur)
        word.append(i)
        cur = sr[i] * cur
    return word, cur


def word_product(rd: RootDatum, word: Iterable[int], tau: AffElem | None = None) -> AffElem:
    sr = simple_reflections(rd)
    out = identity(rd)
    for i in word:
        out = out * sr[i]
    return out * tau if tau is not None else out


def bruhat_leq(x: AffElem, y: AffElem) -> bool:
    """Bruhat order: equal Omega-parts and x_a <= y_a, via the lifting property."""
    if x.kappa != y.kappa:
        return False
    sr = simple_reflections(x.rd)
    while True:
        if x.length >= y.length:
            return x == y
        i = left_descent(y)
        s = sr[i]
        y = s * y
        sx = s * x
        if sx.length < x.length:
            x = sx


def lower_interval(y: AffElem, cap: int | None = None) -> set[AffElem]:
    """All x <= y, as the set of subword products of one reduced word of y."""
    limit = effective_cap(cap)
    word, tau = reduced_word(y)
    sr = simple_reflections(y.rd)
    reach = {identity(y.rd)}
    for i in word:
        reach |= {r * sr[i] for r in reach}
        if len(reach) > limit:
            raise ResourceCapExceeded(f"interval below {y} exceeds {limit} elements")
    return {r * tau for r in reach}


def bruhat_leq_subword(x: AffElem, y: AffElem) -> bool:
    return x.kappa == y.kappa and x in lower_interval(y)


# -- alcove geometry --------------------------------------------------------

def base_alcove_vertices(rd: RootDatum, reduced: bool = True) -> list[tuple[Fraction, ...]]:
    """Vertices v_0 = 0 and v_j = varpi_j^vee / m_j of the base alcove."""
    out = [tuple(Fraction(0) for _ in range(rd.dim))]
    for cw, m in zip(rd.fundamental_coweights, rd.theta_coefficients):
        out.append(tuple(c / m for c in cw))
    return [rd.reduce(v) for v in out] if reduced else out


# -- parahorics ---------------------------------------------------------------

@dataclass(frozen=True)
class ParahoricType:
    rd: RootDatum
    K: frozenset

    def __post_init__(self):
        allowed = set(range(self.rd.rank + 1))
        if not set(self.K) <= allowed:
            raise ValueError(f"K must be a subset of {sorted(allowed)}")
        if set(self.K) == allowed:
            raise ValueError("K must be a proper subset of the affine simple reflections")

    @classmethod
    def of(cls, rd: RootDatum, K) -> "ParahoricType":
        return cls(rd, frozenset(K))

    @classmethod
    def iwahori(cls, rd):
        return cls(rd, frozenset())

    @classmethod
    def special_maximal(cls, rd):
        return cls(rd, frozenset(range(1, rd.rank + 1)))

    def facet_vertices(self, reduced: bool = False):
        verts = base_alcove_vertices(self.rd, reduced=reduced)
        return [v for j, v in enumerate(verts) if j not in self.K]

    @cached_property
    def group(self) -> frozenset:
        """The finite group W~^K generated by the reflections in K."""
        sr = simple_reflections(self.rd)
        gens = [sr[i] for i in sorted(self.K)]
        seen = {identity(self.rd)}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)


def double_coset_min_rep(K: ParahoricType, w: AffElem, K2: ParahoricType | None = None) -> AffElem:
    """Minimal-length element of W^K w W^{K2}, by greedy descent on both sides."""
    K2 = K if K2 is None else K2
    sr = simple_reflections(w.rd)
    cur = w
    changed = True
    while changed:
        changed = False
        for i in sorted(K.K):
            y = sr[i] * cur
            if y.length < cur.length:
                cur, changed = y, True
        for i in sorted(K2.K):
            y = cur * sr[i]
            if y.length < cur.length:
                cur, changed = y, True
    return cur


def double_coset(K: ParahoricType, w: AffElem, K2: ParahoricType | None = None) -> set[AffElem]:
    K2 = K if K2 is None else K2
    return {a * w * b for a in K.group for b in K2.group}


def bruhat_leq_double(K: ParahoricType, c1: AffElem, c2: AffElem) -> bool:
    return bruhat_leq(double_coset_min_rep(K, c1), double_coset_min_rep(K, c2))


def bruhat_leq_double_existential(K: ParahoricType, c1: AffElem, c2: AffElem) -> bool:
    """The 'exists w1' in c1, w2 in c2 with w1 <= w2' form, by exhaustive scan."""
    return any(bruhat_leq(a, b) for a in double_coset(K, c1) for b in double_coset(K, c2))


# -- enumeration ---------------------------------------------------------------

def enumerate_by_length(rd: RootDatum, kappa: int, N: int, cap: int | None = None) -> list[AffElem]:
    """All elements with Omega-component tau^kappa and length <= N."""
    limit = effective_cap(cap)
    sr = simple_reflections(rd)
    level = [omega_power(rd, kappa)]
    out = list(level)
    for k in range(N):
        nxt = set()
        for x in level:
            for s in sr:
                y = s * x
                if y.length == k + 1:
                    nxt.add(y)
        level = list(nxt)
        out.extend(level)
        if len(out) > limit:
            raise ResourceCapExceeded(f"more than {limit} elements of length <= {N}")
    return sorted(out, key=AffElem.sort_key)


def cayley_distances(rd: RootDatum, N: int) -> dict[AffElem, int]:
    """Graph distance from the identity in the Cayley graph of (W_a, simple reflections)."""
    sr = simple_reflections(rd)
    e = identity(rd)
    dist = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        if dist[x] == N:
            continue
        for s in sr:
            y = x * s
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def sort_elements(elems: Iterable[AffElem]) -> list[AffElem]:
    return sorted(elems, key=AffElem.sort_key)
