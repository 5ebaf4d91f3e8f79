"""Exact root-datum arithmetic for GL_n (type A_{n-1}) and GSp_2n (type C_n).

Coweights are stored in ambient coordinates: ``n`` integers for GL_n, ``2n``
integers ``a`` with ``a[i] + a[2n-1-i] == c`` (the similitude) for GSp_2n.
Roots are integer vectors in the same coordinates and pair by dot product.

Finite Weyl group elements are permutations of the ambient coordinate indices
(for GSp_2n, the ones commuting with ``i -> 2n-1-i``, i.e. signed permutations).
A permutation ``w`` acts by ``w(v)[w[i]] = v[i]``.

Points of the apartment are handled internally in *lifted* form: the centred
ambient vector ``v - mean(v)``.  For GL_n this is the adjoint vector itself;
for GSp_2n it is ``(x, -reversed(x))`` with ``x`` the C_n coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .errors import InvalidCoweight, NotDominant

GL = "GL"
GSP = "GSp"


class Root(NamedTuple):
    alpha: tuple[int, ...]
    coroot: tuple[int, ...]
    reflection: tuple[int, ...]


def _unit(dim, i, j=None):
    v = [0] * dim
    v[i] += 1
    if j is not None:
        v[j] -= 1
    return v


def _swap(dim, *pairs):
    p = list(range(dim))
    for i, j in pairs:
        p[i], p[j] = p[j], p[i]
    return tuple(p)


def solve_exact(columns: Sequence[Sequence], target: Sequence):
    """Solve ``sum c_k columns[k] == target`` over Q.

    Returns the coefficient list, or None when ``target`` is not in the span.
    Columns are assumed linearly independent.
    """
    m = len(columns)
    rows = len(target)
    aug = [[Fraction(columns[k][r]) for k in range(m)] + [Fraction(target[r])] for r in range(rows)]
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][m] != 0 for i in range(r, rows)):
        return None
    coeffs = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        coeffs[c] = aug[i][m]
    return coeffs


@dataclass(frozen=True)
class RootDatum:
    """The split group GL_n or GSp_2n with its roots, coroots and Weyl group."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (GL, GSP):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")

    # -- shape -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.n if self.kind == GL else 2 * self.n

    @property
    def rank(self) -> int:
        """Semisimple rank (number of finite simple reflections)."""
        return self.n - 1 if self.kind == GL else self.n

    @property
    def name(self) -> str:
        return f"GL{self.n}" if self.kind == GL else f"GSp{2 * self.n}"

    def bar(self, i: int) -> int:
        return self.dim - 1 - i

    # -- roots -----------------------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        d, out = self.dim, []
        if self.kind == GL:
            for i, j in itertools.combinations(range(d), 2):
                v = tuple(_unit(d, i, j))
                out.append(Root(v, v, _swap(d, (i, j))))
            return tuple(out)
        n, b = self.n, self.bar
        for i, j in itertools.combinations(range(n), 2):
            cor = _unit(d, i, j)
            cor[b(j)] += 1
            cor[b(i)] -= 1
            out.append(Root(tuple(_unit(d, i, j)), tuple(cor), _swap(d, (i, j), (b(i), b(j)))))
            cor = _unit(d, i, b(i))
            cor[j] += 1
            cor[b(j)] -= 1
            out.append(Root(tuple(_unit(d, i, b(j))), tuple(cor), _swap(d, (i, b(j)), (j, b(i)))))
        for i in range(n):
            v = tuple(_unit(d, i, b(i)))
            out.append(Root(v, v, _swap(d, (i, b(i)))))
        return tuple(out)

    def _find_root(self, alpha) -> Root:
        for r in self.positive_roots:
            if r.alpha == tuple(alpha):
                return r
        raise KeyError(alpha)

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        d = self.dim
        if self.kind == GL:
            return tuple(self._find_root(_unit(d, i, i + 1)) for i in range(self.n - 1))
        n = self.n
        out = [self._find_root(_unit(d, i, i + 1)) for i in range(n - 1)]
        out.append(self._find_root(_unit(d, n - 1, self.bar(n - 1))))
        return tuple(out)

    @cached_property
    def highest_root(self) -> Root:
        if self.kind == GL:
            return self._find_root(_unit(self.dim, 0, self.n - 1))
        return self._find_root(_unit(self.dim, 0, self.bar(0)))

    @cached_property
    def two_rho(self) -> tuple[int, ...]:
        return tuple(map(sum, zip(*(r.alpha for r in self.positive_roots)))) if self.positive_roots \
            else (0,) * self.dim

    @cached_property
    def regular_dominant(self) -> tuple[int, ...]:
        """A lifted point strictly inside the dominant chamber, used for root signs."""
        if self.kind == GL:
            return tuple(self.n - 1 - 2 * i for i in range(self.n))
        x = list(range(self.n, 0, -1))
        return tuple(x + [-v for v in reversed(x)])

    def adjoint_functional(self, alpha) -> tuple[int, ...]:
        """A root (or weight) as a functional on reduced adjoint coordinates."""
        if self.kind == GL:
            return tuple(alpha)
        return tuple(alpha[k] - alpha[self.bar(k)] for k in range(self.n))

    def simple_root_coefficients(self, alpha):
        cols = [self.adjoint_functional(s.alpha) for s in self.simple_roots]
        return solve_exact(cols, self.adjoint_functional(alpha))

    @cached_property
    def theta_coefficients(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.simple_root_coefficients(self.highest_root.alpha))

    # -- pairings and lattice bookkeeping --------------------------------
    @staticmethod
    def pair(alpha, v):
        return sum(a * x for a, x in zip(alpha, v))

    def check_coweight(self, v) -> tuple:
        v = tuple(v)
        if len(v) != self.dim:
            raise InvalidCoweight(f"{self.name} coweights have {self.dim} coordinates, got {len(v)}")
        if self.kind == GSP:
            c = v[0] + v[-1]
            if any(v[i] + v[self.bar(i)] != c for i in range(self.n)):
                raise InvalidCoweight(f"similitude constraint violated by {v}")
        return v

    def similitude(self, v):
        return v[0] + v[-1]

    def kappa(self, v):
        """Image in X_*(T)/Q^vee = Z: coordinate sum (GL) or similitude (GSp)."""
        return sum(v) if self.kind == GL else v[0] + v[-1]

    def lift(self, v) -> tuple[Fraction, ...]:
        mean = Fraction(sum(v), len(v))
        return tuple(Fraction(x) - mean for x in v)

    def proj_adjoint(self, v) -> tuple[Fraction, ...]:
        """Image in X_*(T_ad) (x) Q, in reduced coordinates."""
        lifted = self.lift(self.check_coweight(v) if all(isinstance(x, int) for x in v) else v)
        return lifted if self.kind == GL else lifted[: self.n]

    def unreduce(self, x) -> tuple[Fraction, ...]:
        """Reduced adjoint coordinates back to the lifted form."""
        x = tuple(Fraction(a) for a in x)
        if self.kind == GL:
            if len(x) != self.n:
                raise InvalidCoweight("dimension mismatch")
            return x
        if len(x) != self.n:
            raise InvalidCoweight("dimension mismatch")
        return x + tuple(-a for a in reversed(x))

    def reduce(self, lifted) -> tuple:
        return tuple(lifted) if self.kind == GL else tuple(lifted[: self.n])

    def omega_pairings(self, v) -> tuple[Fraction, ...]:
        """<omega_i, v> for the fundamental weights of the adjoint group."""
        x = self.lift(v)
        out, s = [], Fraction(0)
        for i in range(self.rank):
            s += x[i]
            out.append(s)
        return tuple(out)

    # -- Weyl group ------------------------------------------------------
    @staticmethod
    def act(w, v) -> tuple:
        out = [None] * len(v)
        for i, x in enumerate(v):
            out[w[i]] = x
        return tuple(out)

    @staticmethod
    def compose(u, w) -> tuple[int, ...]:
        return tuple(u[w[i]] for i in range(len(w)))

    @staticmethod
    def invert(w) -> tuple[int, ...]:
        out = [0] * len(w)
        for i, j in enumerate(w):
            out[j] = i
        return tuple(out)

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.dim))

    @cached_property
    def weyl_group(self) -> tuple[tuple[int, ...], ...]:
        if self.kind == GL:
            return tuple(itertools.permutations(range(self.n)))
        n, out = self.n, []
        for p in itertools.permutations(range(n)):
            for signs in itertools.product((False, True), repeat=n):
                w = [0] * self.dim
                for i in range(n):
                    j = self.bar(p[i]) if signs[i] else p[i]
                    w[i] = j
                    w[self.bar(i)] = self.bar(j)
                out.append(tuple(w))
        return tuple(sorted(out))

    def is_dominant(self, v) -> bool:
        return all(self.pair(s.alpha, v) >= 0 for s in self.simple_roots)

    def root_is_positive_after(self, alpha, w) -> bool:
        """Whether w^{-1}(alpha) is a positive root."""
        return self.pair(alpha, self.act(w, self.regular_dominant)) > 0

    def weyl_length(self, w) -> int:
        return sum(1 for r in self.positive_roots if not self.root_is_positive_after(r.alpha, w))

    def one_line(self, w) -> list[int]:
        """1-based one-line notation; signed (negative = barred) for GSp."""
        if self.kind == GL:
            return [j + 1 for j in w]
        return [w[i] + 1 if w[i] < self.n else -(self.bar(w[i]) + 1) for i in range(self.n)]

    def from_one_line(self, seq) -> tuple[int, ...]:
        if self.kind == GL:
            w = tuple(j - 1 for j in seq)
        else:
            w = [0] * self.dim
            for i, s in enumerate(seq):
                j = s - 1 if s > 0 else self.bar(-s - 1)
                w[i] = j
                w[self.bar(i)] = self.bar(j)
            w = tuple(w)
        if sorted(w) != list(range(self.dim)) or w not in set(self.weyl_group):
            raise ValueError(f"not a Weyl group element: {seq}")
        return w

    def dominant_rep(self, v):
        """Return (v_plus, w) with v_plus dominant and w(v_plus) == v."""
        if all(isinstance(x, int) for x in v):
            self.check_coweight(v)
        cur, w = tuple(v), self.identity
        changed = True
        while changed:
            changed = False
            for s in self.simple_roots:
                if self.pair(s.alpha, cur) < 0:
                    cur = self.act(s.reflection, cur)
                    w = self.compose(w, s.reflection)
                    changed = True
        return cur, w

    def orbit(self, v) -> list[tuple]:
        return sorted({self.act(w, v) for w in self.weyl_group}, reverse=True)

    # -- dominance orders ------------------------------------------------
    def coroot_coefficients(self, diff):
        """Coefficients of ``diff`` in the simple coroots (None if outside their span)."""
        diff = tuple(Fraction(x) for x in diff)
        if self.kind == GL:
            if sum(diff) != 0:
                return None
            return list(itertools.accumulate(diff[: self.n - 1]))
        if any(diff[i] + diff[self.bar(i)] != 0 for i in range(self.n)):
            return None
        return solve_exact([s.coroot for s in self.simple_roots], diff)

    def leq_coroot(self, nu, mu) -> bool:
        """nu <=! mu: mu - nu is a nonnegative integer sum of simple coroots."""
        for v in (nu, mu):
            self.check_coweight(v)
            if not self.is_dominant(v):
                raise NotDominant(f"{v} is not dominant")
        c = self.coroot_coefficients([a - b for a, b in zip(mu, nu)])
        return c is not None and all(x >= 0 and x.denominator == 1 for x in c)

    def dominance_leq_rational(self, nu, mu) -> bool:
        if len(nu) != self.dim or len(mu) != self.dim:
            raise ValueError("shape mismatch")
        c = self.coroot_coefficients([Fraction(a) - Fraction(b) for a, b in zip(mu, nu)])
        return c is not None and all(x >= 0 for x in c)

    def positive_coroots(self) -> list[tuple[int, ...]]:
        return [r.coroot for r in self.positive_roots]

    def stembridge_chain(self, nu, mu) -> list[tuple[int, ...]]:
        """Dominant chain nu = nu_0 <=! ... <=! nu_r = mu with positive-coroot steps."""
        if not self.leq_coroot(nu, mu):
            raise ValueError(f"{nu} is not <=! {mu}")
        nu, mu = tuple(nu), tuple(mu)
        prev = {nu: None}
        frontier = [nu]
        cors = self.positive_coroots()
        while frontier and mu not in prev:
            nxt = []
            for lam in frontier:
                for c in cors:
                    step = tuple(a + b for a, b in zip(lam, c))
                    if step in prev or not self.is_dominant(step):
                        continue
                    if not self.leq_coroot(step, mu):
                        continue
                    prev[step] = lam
                    nxt.append(step)
            frontier = nxt
        chain = [mu]
        while prev[chain[-1]] is not None:
            chain.append(prev[chain[-1]])
        return chain[::-1]

    # -- fundamental coweights / alcove ----------------------------------
    @cached_property
    def fundamental_coweights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Lifted fundamental coweights of the adjoint system, dual to the simple roots."""
        out = []
        for j in range(self.rank):
            if self.kind == GL:
                v = [Fraction(1 if i <= j else 0) for i in range(self.n)]
                out.append(self.lift(v))
            else:
                x = [Fraction(1) if i <= j else Fraction(0) for i in range(self.n)]
                if j == self.n - 1:
                    x = [Fraction(1, 2)] * self.n
                out.append(self.unreduce(x))
        return tuple(out)


@lru_cache(maxsize=None)
def root_datum(kind: str, n: int) -> RootDatum:
    kind = {"gl": GL, "gsp": GSP}.get(kind.lower(), kind)
    return RootDatum(kind, n)


def parse_group(kind: str, n: int) -> RootDatum:
    """Resolve CLI flags: ``gl N`` is GL_N, ``gsp N`` is GSp_2N."""
    return root_datum(kind, n)
