"""sigma-conjugacy invariants for GL_n and GSp_2n and the finite poset B(G, mu).

A class is modelled by its (Newton vector, kappa) pair.  Newton vectors are
weakly decreasing tuples of Fractions in ambient coordinates; for GSp_2n they
are self-dual (``nu[i] + nu[2n-1-i]`` constant) and are enumerated inside
GL_2n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import NotDominant
from .rootdata import GL, RootDatum, root_datum


def _floor(x: Fraction) -> int:
    return math.floor(x)


def is_newton_vector(nu) -> bool:
    """Weakly decreasing with lattice-point breakpoints (isocrystal integrality)."""
    nu = [Fraction(x) for x in nu]
    if any(a < b for a, b in zip(nu, nu[1:])):
        return False
    partial = Fraction(0)
    for i, x in enumerate(nu):
        partial += x
        if (i == len(nu) - 1 or nu[i + 1] != x) and partial.denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class SigmaClass:
    newton: tuple[Fraction, ...]
    kappa: int

    @property
    def basic(self) -> bool:
        return len(set(self.newton)) == 1

    def slopes(self) -> list[str]:
        return [str(x) for x in self.newton]

    def to_json(self) -> dict:
        return {"newton": self.slopes(), "kappa": self.kappa, "basic": self.basic}


def sigma_class(rd: RootDatum, newton) -> SigmaClass:
    nu = tuple(Fraction(x) for x in newton)
    if len(nu) != rd.dim or not is_newton_vector(nu):
        raise ValueError(f"not a Newton vector for {rd.name}: {newton}")
    if rd.kind == GL:
        kap = sum(nu)
    else:
        kap = nu[0] + nu[-1]
        if any(nu[i] + nu[rd.bar(i)] != kap for i in range(rd.n)):
            raise ValueError(f"Newton vector is not self-dual: {newton}")
    if Fraction(kap).denominator != 1:
        raise ValueError("kappa must be integral")
    return SigmaClass(nu, int(kap))


def mu_natural(rd: RootDatum, mu) -> int:
    return rd.kappa(rd.check_coweight(mu))


def mu_bar_star(rd: RootDatum, mu) -> tuple[Fraction, ...]:
    """Galois average of the dominant mu; the identity for split groups."""
    rd.check_coweight(mu)
    if not rd.is_dominant(mu):
        raise NotDominant(f"{mu} is not dominant")
    return tuple(Fraction(x) for x in mu)


def _polygons(n: int, total: int, lo: int, hi: int):
    """Newton vectors of length n, coordinate sum ``total``, slopes in [lo, hi]."""

    def rec(remaining, height, prev):
        if remaining == 0:
            if height == total:
                yield ()
            return
        for d in range(1, remaining + 1):
            for h in range(lo * d, hi * d + 1):
                s = Fraction(h, d)
                if prev is not None and s >= prev:
                    continue
                for rest in rec(remaining - d, height + h, s):
                    yield (s,) * d + rest

    yield from rec(n, 0, None)


def mazur_check(rd: RootDatum, hodge, newton) -> bool:
    """Newton polygon lies on or below the Hodge polygon with equal endpoints."""
    return rd.dominance_leq_rational(tuple(Fraction(x) for x in newton), hodge)


class BGmuPoset:
    """B(G, mu) with dominance order, Hasse diagram and Chai ranks."""

    def __init__(self, rd: RootDatum, mu):
        self.rd = rd
        self.mu = mu_bar_star(rd, mu)
        ambient = rd if rd.kind == GL else root_datum("gl", rd.dim)
        found = []
        for nu in _polygons(rd.dim, sum(self.mu), min(mu), max(mu)):
            if rd.kind != GL:
                c = nu[0] + nu[-1]
                if any(nu[i] + nu[rd.bar(i)] != c for i in range(rd.n)):
                    continue
                if c != rd.kappa(mu):
                    continue
            if ambient.dominance_leq_rational(nu, self.mu):
                found.append(sigma_class(rd, nu))
        # basic first, then by Chai rank, then lexicographically
        self.elements: list[SigmaClass] = sorted(
            found, key=lambda b: (chai_length_unchecked(rd, self.mu, self._basic(found), b), b.newton)
        )

    @staticmethod
    def _basic(found):
        return next(b for b in found if b.basic)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, b: SigmaClass) -> int:
        return self.elements.index(b)

    def leq(self, b: SigmaClass, b2: SigmaClass) -> bool:
        return b.kappa == b2.kappa and self.rd.dominance_leq_rational(b.newton, b2.newton)

    @cached_property
    def order(self) -> list[list[bool]]:
        return [[self.leq(a, b) for b in self.elements] for a in self.elements]

    @cached_property
    def hasse(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j): element i < element j with nothing in between."""
        m, le = len(self.elements), self.order
        edges = []
        for i, j in itertools.product(range(m), repeat=2):
            if i == j or not le[i][j]:
                continue
            if not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(m)):
                edges.append((i, j))
        return edges

    @property
    def basic(self) -> SigmaClass:
        mins = [a for i, a in enumerate(self.elements) if not any(self.order[j][i] and j != i for j in range(len(self)))]
        if len(mins) != 1:
            raise AssertionError(f"expected a unique minimum, got {mins}")
        return mins[0]

    @property
    def ordinary(self) -> SigmaClass:
        maxs = [a for i, a in enumerate(self.elements) if not any(self.order[i][j] and j != i for j in range(len(self)))]
        if len(maxs) != 1:
            raise AssertionError(f"expected a unique maximum, got {maxs}")
        return maxs[0]

    def rank(self, b: SigmaClass) -> int:
        return chai_length(self.rd, self.mu, self.basic, b)

    def chain_lengths(self, i: int, j: int) -> tuple[int, int]:
        """(shortest, longest) maximal chain length from element i up to element j."""
        succ: dict[int, list[int]] = {}
        for a, b in self.hasse:
            succ.setdefault(a, []).append(b)
        memo: dict[int, tuple[float, float]] = {}

        def walk(k):
            if k == j:
                return (0, 0)
            if k in memo:
                return memo[k]
            best = (math.inf, -math.inf)
            for nxt in succ.get(k, []):
                if self.order[nxt][j]:
                    lo, hi = walk(nxt)
                    best = (min(best[0], lo + 1), max(best[1], hi + 1))
            memo[k] = best
            return best

        lo, hi = walk(i)
        return int(lo), int(hi)

    def is_ranked(self) -> bool:
        m = len(self)
        for i, j in itertools.product(range(m), repeat=2):
            if self.order[i][j]:
                lo, hi = self.chain_lengths(i, j)
                if lo != hi:
                    return False
        return True

    def join(self, subset) -> SigmaClass | None:
        idx = [self.index(b) for b in subset]
        ub = [k for k in range(len(self)) if all(self.order[i][k] for i in idx)]
        least = [k for k in ub if all(self.order[k][u] for u in ub)]
        return self.elements[least[0]] if len(least) == 1 else None

    def to_json(self) -> dict:
        b0 = self.basic
        return {
            "group": self.rd.name,
            "mu": list(self.mu_int()),
            "elements": [
                dict(b.to_json(), rank=chai_length(self.rd, self.mu, b0, b)) for b in self.elements
            ],
            "edges": [list(e) for e in self.hasse],
        }

    def mu_int(self):
        return tuple(int(x) for x in self.mu)


def enumerate_bgmu(rd: RootDatum, mu) -> BGmuPoset:
    return BGmuPoset(rd, tuple(mu))


def chai_length_unchecked(rd: RootDatum, mu, b: SigmaClass, b2: SigmaClass) -> int:
    mu_w = rd.omega_pairings(mu)
    w1 = rd.omega_pairings(b.newton)
    w2 = rd.omega_pairings(b2.newton)
    return sum(_floor(y - m) - _floor(x - m) for x, y, m in zip(w1, w2, mu_w))


def chai_length(rd: RootDatum, mu, b: SigmaClass, b2: SigmaClass) -> int:
    """Length of a maximal chain from [b] up to [b2] in B(G, mu)."""
    if b.kappa != b2.kappa or not rd.dominance_leq_rational(b.newton, b2.newton):
        raise ValueError("chai_length needs b <= b2")
    return chai_length_unchecked(rd, mu_bar_star(rd, mu), b, b2)


def length_to_ordinary(rd: RootDatum, mu, b: SigmaClass) -> int:
    """The closed form -sum floor(<omega_i, nu_b> - <omega_i, mu>)."""
    mu_w = rd.omega_pairings(mu)
    return -sum(_floor(x - m) for x, m in zip(rd.omega_pairings(b.newton), mu_w))


def basic_class(rd: RootDatum, mu) -> SigmaClass:
    return sigma_class(rd, [Fraction(sum(mu), rd.dim)] * rd.dim)


def ordinary_class(rd: RootDatum, mu) -> SigmaClass:
    return sigma_class(rd, mu_bar_star(rd, mu))


def conj_dim_basic_forms(rd: RootDatum, mu) -> tuple[int, int]:
    """Both closed forms of the conjectural basic-locus dimension.

    The first subtracts the Chai length from basic to ordinary; the second
    uses ``-sum floor(-<omega_i, mu>)`` for that length.
    """
    mu_star = mu_bar_star(rd, mu)
    two_rho = rd.pair(rd.two_rho, mu_star)
    first = two_rho - chai_length(rd, mu_star, basic_class(rd, mu), ordinary_class(rd, mu))
    second = two_rho - sum(-_floor(-x) for x in rd.omega_pairings(mu_star))
    return int(first), int(second)


def conj_dim_basic(rd: RootDatum, mu) -> int:
    first, second = conj_dim_basic_forms(rd, mu)
    if first != second:
        raise AssertionError(f"dimension forms disagree: {first} != {second}")
    return first
