"""Small finite fields F_{q^m} with table arithmetic.

Elements are ints ``0 .. p^e - 1`` read as base-p digit vectors, i.e. the
coefficients of a polynomial in a root of a fixed irreducible polynomial.
``0`` and ``1`` are the additive and multiplicative identities.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p^a with p prime."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, r = 0, q
    while r % p == 0:
        r //= p
        a += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a


def _polymulmod(a, b, f, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _polymod(prod, f, p)


def _polymod(a, f, p):
    a = list(a)
    e = len(f) - 1
    for top in range(len(a) - 1, e - 1, -1):
        c = a[top]
        if c:
            for k in range(e + 1):
                a[top - e + k] = (a[top - e + k] - c * f[k]) % p
    return (a + [0] * e)[:e]


def _is_irreducible(f, p) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(f)//2."""
    e = len(f) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_polymod(f, g, p)[:d]):
                return False
    return True


def irreducible_poly(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p (low degree first)."""
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if e == 1 or (f[0] != 0 and _is_irreducible(f, p)):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with p^e elements; ``frob`` is x -> x^q for the base field F_q."""

    def __init__(self, p: int, e: int, q: int | None = None):
        self.p, self.e = p, e
        self.order = p**e
        self.q = p if q is None else q
        self.modulus = irreducible_poly(p, e)
        digits = [self._digits(x) for x in range(self.order)]
        enc = {tuple(d): x for x, d in enumerate(digits)}
        self.add_t = [[enc[tuple((a + b) % p for a, b in zip(da, db))] for db in digits] for da in digits]
        self.mul_t = [[enc[tuple(_polymulmod(da, db, self.modulus, p))] for db in digits] for da in digits]
        self.neg_t = [enc[tuple(-a % p for a in d)] for d in digits]
        self.inv_t = [0] * self.order
        for a in range(1, self.order):
            self.inv_t[a] = next(b for b in range(1, self.order) if self.mul_t[a][b] == 1)
        self.frob_t = [self.power(a, self.q) for a in range(self.order)]

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.e)]

    @property
    def elements(self) -> range:
        return range(self.order)

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_t[a]

    def power(self, a, k: int):
        out = 1
        for _ in range(k):
            out = self.mul_t[out][a]
        return out

    def frob(self, a):
        return self.frob_t[a]

    def __repr__(self):
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def gf(q: int, m: int = 1) -> GF:
    """F_{q^m} with Frobenius x -> x^q."""
    p, a = prime_power(q)
    return GF(p, a * m, q)
