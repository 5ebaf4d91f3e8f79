"""Exact matrices over F[t, 1/t] for a small finite field F.

A Laurent polynomial is a dict ``{exponent: nonzero field element}``.  Arithmetic
is exact, so no terms are ever truncated, but valuations must stay inside
``[-VAL_CAP, VAL_CAP]``: a valuation leaving that window means something has gone
wrong upstream and raises PrecisionError.
"""
from __future__ import annotations

import itertools
import re

from .errors import PrecisionError
from .gf import GF

VAL_CAP = 32

ZERO: dict = {}


def _check(e: int):
    if not -VAL_CAP <= e <= VAL_CAP:
        raise PrecisionError(f"t-exponent {e} outside [-{VAL_CAP}, {VAL_CAP}]")


def mono(F: GF, c: int, e: int) -> dict:
    _check(e)
    return {e: c} if c else {}


def padd(F: GF, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = F.add(out.get(e, 0), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pneg(F: GF, a: dict) -> dict:
    return {e: F.neg(c) for e, c in a.items()}


def pmul(F: GF, a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = F.add(out.get(e, 0), F.mul(c1, c2))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    if out:
        _check(min(out))
    return out


def val(a: dict) -> float:
    return min(a) if a else float("inf")


def pstr(a: dict) -> str:
    if not a:
        return "0"
    return " + ".join(f"{c}*t^{e}" for e, c in sorted(a.items()))


class LaurentMatrix:
    """An n x n matrix of Laurent polynomials over F."""

    __slots__ = ("F", "rows")

    def __init__(self, F: GF, rows):
        self.F = F
        self.rows = tuple(tuple(dict(x) for x in r) for r in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> dict:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        F, n = self.F, self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc: dict = {}
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = padd(F, acc, pmul(F, a, b))
                row.append(acc)
            out.append(row)
        return LaurentMatrix(F, out)

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(tuple(sorted(x.items())) for x in r) for r in self.rows))

    def sigma(self) -> "LaurentMatrix":
        """Frobenius on coefficients, t fixed."""
        F = self.F
        return LaurentMatrix(F, [[{e: F.frob(c) for e, c in x.items()} for x in r] for r in self.rows])

    def scale_t(self, k: int) -> "LaurentMatrix":
        for r in self.rows:
            for x in r:
                if x:
                    _check(min(x) + k)
        return LaurentMatrix(self.F, [[{e + k: c for e, c in x.items()} for x in r] for r in self.rows])

    def minor(self, rows, cols) -> dict:
        return det_of(self.F, [[self.rows[i][j] for j in cols] for i in rows])

    def det(self) -> dict:
        return det_of(self.F, self.rows)

    def adjugate(self) -> "LaurentMatrix":
        F, n = self.F, self.n
        if n == 1:
            return LaurentMatrix(F, [[{0: 1}]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = self.minor([r for r in range(n) if r != j], [c for c in range(n) if c != i])
                out[i][j] = pneg(F, m) if (i + j) % 2 else m
        return LaurentMatrix(F, out)

    def inverse(self) -> "LaurentMatrix":
        """Exact inverse; needs det = c * t^k."""
        d = self.det()
        if len(d) != 1:
            raise PrecisionError("inverse needs a monomial determinant")
        (k, c), = d.items()
        adj = self.adjugate()
        cinv = self.F.inv(c)
        return LaurentMatrix(self.F, [[{e: self.F.mul(cinv, x) for e, x in y.items()} for y in r] for r in adj.rows]).scale_t(-k)

    def min_val(self) -> float:
        return min(val(x) for r in self.rows for x in r)

    def to_strings(self) -> list[list[str]]:
        return [[pstr(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"LaurentMatrix({self.to_strings()})"


def _sign(perm) -> int:
    s = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            s = -s
    return s


def det_of(F: GF, rows) -> dict:
    n = len(rows)
    out: dict = {}
    for perm in itertools.permutations(range(n)):
        term = {0: 1}
        for i in range(n):
            term = pmul(F, term, rows[i][perm[i]])
            if not term:
                break
        if term:
            out = padd(F, out, term if _sign(perm) > 0 else pneg(F, term))
    return out


def identity_matrix(F: GF, n: int) -> LaurentMatrix:
    return LaurentMatrix(F, [[{0: 1} if i == j else {} for j in range(n)] for i in range(n)])


def diag(F: GF, exps, coeffs=None) -> LaurentMatrix:
    n = len(exps)
    coeffs = coeffs or [1] * n
    return LaurentMatrix(F, [[mono(F, coeffs[i], exps[i]) if i == j else {} for j in range(n)] for i in range(n)])


def elementary(F: GF, n: int, i: int, j: int, entry: dict) -> LaurentMatrix:
    """Identity plus ``entry`` at position (i, j), i != j."""
    rows = [[{0: 1} if a == b else {} for b in range(n)] for a in range(n)]
    rows[i][j] = dict(entry)
    return LaurentMatrix(F, rows)


_TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(-?\d+))?)?$")


def parse_entry(F: GF, s: str) -> dict:
    """Parse '0', '1', 't', 't^k', 'c*t^k' or 'c' into a Laurent monomial."""
    s = s.strip().replace(" ", "")
    m = _TERM.match(s)
    if not s or not m:
        raise ValueError(f"cannot parse matrix entry {s!r}")
    coeff = int(m.group(1)) if m.group(1) else 1
    if coeff >= F.order:
        raise ValueError(f"coefficient {coeff} is not an element of {F}")
    exp = 0
    if m.group(2):
        exp = int(m.group(3)) if m.group(3) is not None else 1
    return mono(F, coeff, exp)
