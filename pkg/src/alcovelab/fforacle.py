"""Brute-force ground truth for GL_n over F_{q^m}((t)).

Conventions (pinned by tests):

* the Iwahori subgroup I is the set of matrices over F[[t]] that are LOWER
  triangular mod t;
* ``t_nu u`` is represented by ``diag(t^nu) P_u`` with ``P_u e_i = e_{u(i)}``;
* the cell of x is parametrised along a reduced word by
  ``u_{i1}(c1) s_{i1} ... u_{il}(cl) s_{il} tau``, with root subgroups
  ``u_i(c) = 1 + c E_{i,i-1}`` (i >= 1) and ``u_0(c) = 1 + c t E_{0,n-1}``.

Relative positions are ``inv(g, h) = I-double coset of g^{-1} h``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .admperm import adm
from .affweyl import (
    AffElem,
    effective_cap,
    enumerate_by_length,
    reduced_word,
    simple_reflections,
    sort_elements,
)
from .errors import PrecisionError, ResourceCapExceeded
from .gf import GF, gf
from .laurent import LaurentMatrix, elementary, identity_matrix, mono, parse_entry, val
from .rootdata import RootDatum, root_datum


def monomial(F: GF, x: AffElem) -> LaurentMatrix:
    """The representative diag(t^nu) P_u of x = t_nu u."""
    n = x.rd.dim
    rows = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        j = x.w[i]
        rows[j][i] = mono(F, 1, x.t[j])
    return LaurentMatrix(F, rows)


def root_subgroup(F: GF, n: int, i: int, c: int) -> LaurentMatrix:
    if i == 0:
        return elementary(F, n, 0, n - 1, mono(F, c, 1))
    return elementary(F, n, i, i - 1, mono(F, c, 0))


# -- relative position --------------------------------------------------------

def _series(F: GF, p: dict, shift: int, N: int) -> list[int]:
    out = [0] * N
    for e, c in p.items():
        k = e + shift
        if k < 0:
            raise AssertionError("negative exponent after normalisation")
        if k < N:
            out[k] = c
    return out


def _first(a: list[int], prec: int) -> int | None:
    for k in range(min(prec, len(a))):
        if a[k]:
            return k
    return None


def _sdiv(F: GF, b: list[int], a: list[int], d: int, N: int) -> list[int]:
    """(b / a) mod t^N where a has valuation d and b has valuation >= d."""
    a2, b2 = a[d:] + [0] * d, b[d:] + [0] * d
    inv0 = F.inv(a2[0])
    x = [0] * N
    for k in range(N):
        acc = b2[k]
        for j in range(k):
            if x[j] and a2[k - j]:
                acc = F.sub(acc, F.mul(x[j], a2[k - j]))
        x[k] = F.mul(acc, inv0)
    return x


def _saxpy(F: GF, y: list[int], x: list[int], z: list[int], N: int) -> list[int]:
    """y - x*z mod t^N."""
    out = list(y)
    for i, xi in enumerate(x):
        if xi:
            for j in range(N - i):
                if z[j]:
                    out[i + j] = F.sub(out[i + j], F.mul(xi, z[j]))
    return out


def inv_iwahori_matrix(M: LaurentMatrix, rd: RootDatum | None = None) -> AffElem:
    """The w with M in I w I."""
    F, n = M.F, M.n
    rd = rd or root_datum("gl", n)
    det = M.det()
    if not det:
        raise ValueError("matrix is not invertible")
    vmin = int(M.min_val())
    D = int(val(det)) - n * vmin
    N = 2 * D + 2
    A = [[_series(F, M[i, j], -vmin, N) for j in range(n)] for i in range(n)]
    prec = N
    rows, cols = set(range(n)), set(range(n))
    u = [None] * n
    nu = [None] * n
    for _ in range(n):
        best = None
        for i in sorted(rows):
            for j in sorted(cols):
                v = _first(A[i][j], prec)
                if v is not None:
                    key = (n * v + i - j, i)
                    if best is None or key < best[0]:
                        best = (key, i, j, v)
        if best is None:
            raise PrecisionError("lost precision while reducing the matrix")
        _, i, j, d = best
        piv = A[i][j]
        for j2 in cols - {j}:
            if _first(A[i][j2], prec) is not None:
                x = _sdiv(F, A[i][j2], piv, d, N)
                for r in range(n):
                    A[r][j2] = _saxpy(F, A[r][j2], x, A[r][j], N)
        for i2 in rows - {i}:
            if _first(A[i2][j], prec) is not None:
                y = _sdiv(F, A[i2][j], piv, d, N)
                A[i2] = [_saxpy(F, A[i2][c], y, A[i][c], N) for c in range(n)]
        prec -= d
        u[j], nu[i] = i, d + vmin
        rows.discard(i)
        cols.discard(j)
    return AffElem(rd, tuple(nu), tuple(u))


def inv_iwahori(g: LaurentMatrix, h: LaurentMatrix) -> AffElem:
    """inv(g, h): the w with g^{-1} h in I w I.

    Uses adj(g) = det(g) g^{-1}; the unit part of det(g) is a central element of I.
    """
    k = int(val(g.det()))
    x = inv_iwahori_matrix(g.adjugate() @ h)
    return AffElem(x.rd, tuple(a - k for a in x.t), x.w)


def inv_hyperspecial(g: LaurentMatrix, h: LaurentMatrix) -> tuple[int, ...]:
    """Elementary divisors of g^{-1} h, from the valuations of minors, decreasing."""
    k = int(val(g.det()))
    M = g.adjugate() @ h
    n = M.n
    if not M.det():
        raise ValueError("matrix is not invertible")
    prev, exps = 0, []
    for r in range(1, n + 1):
        d = min(val(M.minor(R, C)) for R in itertools.combinations(range(n), r)
                for C in itertools.combinations(range(n), r))
        exps.append(int(d) - prev)
        prev = int(d)
    return tuple(sorted((e - k for e in exps), reverse=True))


def frobenius_twist(g: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    """b * sigma(g)."""
    return b @ g.sigma()


# -- b specifications -------------------------------------------------------------

def parse_bspec(spec: str, F: GF, n: int = 2) -> LaurentMatrix:
    """'identity', 'diag:t^1,t^0' or 'antidiag:t^1,1' (entries listed from the top row)."""
    spec = spec.strip()
    if spec == "identity":
        return identity_matrix(F, n)
    kind, _, body = spec.partition(":")
    entries = [parse_entry(F, s) for s in body.split(",")] if body else []
    if kind not in ("diag", "antidiag") or len(entries) != n:
        raise ValueError(f"bad b specification {spec!r} for n={n}")
    rows = [[{} for _ in range(n)] for _ in range(n)]
    for i, e in enumerate(entries):
        rows[i][i if kind == "diag" else n - 1 - i] = e
    M = LaurentMatrix(F, rows)
    if not M.det():
        raise ValueError(f"b specification {spec!r} is not invertible")
    return M


def slope_bspec(lam) -> str:
    """Standard representative of a GL_2 slope class as a b specification."""
    l1, l2 = lam
    if l1 == l2 and l1.denominator == 2:
        k = int(l1 + l2)
        return f"antidiag:t^{(k + 1) // 2},t^{(k - 1) // 2}"
    return f"diag:t^{int(l1)},t^{int(l2)}"


def _b_matrix(b, F: GF, n: int) -> LaurentMatrix:
    if isinstance(b, str):
        return parse_bspec(b, F, n)
    if b.F is F:
        return b
    if all(c < F.p and c < b.F.p for r in b.rows for x in r for c in x.values()):
        return LaurentMatrix(F, b.rows)
    raise ValueError("b has coefficients outside the prime field; pass a specification string")


# -- cells and scans ------------------------------------------------------------------

@dataclass(frozen=True)
class CellPoint:
    x: AffElem
    coords: tuple[int, ...]
    q: int
    m: int

    @property
    def field(self) -> GF:
        return gf(self.q, self.m)

    @property
    def matrix(self) -> LaurentMatrix:
        F, rd = self.field, self.x.rd
        word, tau = reduced_word(self.x)
        g = identity_matrix(F, rd.dim)
        for i, c in zip(word, self.coords):
            g = g @ root_subgroup(F, rd.dim, i, c) @ monomial(F, simple(rd, i))
        return g @ monomial(F, tau)

    def to_json(self) -> dict:
        return {
            "cell": self.x.encode(),
            "coords": list(self.coords),
            "q": self.q,
            "m": self.m,
            "matrix": self.matrix.to_strings(),
        }


def simple(rd: RootDatum, i: int) -> AffElem:
    return simple_reflections(rd)[i]


def cell_points(x: AffElem, q: int, m: int = 1):
    F = gf(q, m)
    for coords in itertools.product(F.elements, repeat=x.length):
        yield CellPoint(x, coords, q, m)


def flag_cells(rd: RootDatum, depth: int) -> list[AffElem]:
    """Cells of length <= depth in each Omega-class modulo the centre."""
    out = []
    for k in range(rd.n):
        out.extend(enumerate_by_length(rd, k, depth))
    return out


@dataclass
class ScanResult:
    realized: dict = field(default_factory=dict)
    points: int = 0
    exhaustive: bool = True


def scan_realized(b, rd: RootDatum, q: int, m: int, depth: int, cap: int | None = None) -> ScanResult:
    """inv(g, b sigma(g)) for every cell point g of length <= depth; first witness per w."""
    limit = effective_cap(cap)
    F = gf(q, m)
    bm = _b_matrix(b, F, rd.dim)
    res = ScanResult()
    for x in flag_cells(rd, depth):
        for pt in cell_points(x, q, m):
            res.points += 1
            if res.points > limit:
                raise ResourceCapExceeded(f"scan exceeds {limit} points")
            g = pt.matrix
            w = inv_iwahori(g, frobenius_twist(g, bm))
            res.realized.setdefault(w, pt)
    return res


@dataclass
class SearchResult:
    target: object
    found: CellPoint | None
    exhaustive: bool
    points: int
    realized: object = None

    def to_json(self) -> dict:
        tgt = self.target.encode() if isinstance(self.target, AffElem) else self.target
        real = self.realized.encode() if isinstance(self.realized, AffElem) else self.realized
        return {
            "target": tgt,
            "found": self.found is not None,
            "witness": self.found.to_json() if self.found else None,
            "realized": real,
            "exhaustive": self.exhaustive,
            "points": self.points,
        }


def search_xw(w: AffElem, b, q: int, m_max: int, depth: int, cap: int | None = None) -> SearchResult:
    """Look for g with inv(g, b sigma(g)) = w among cell points over F_{q^m}, m <= m_max."""
    points = 0
    for m in range(1, m_max + 1):
        scan = scan_realized(b, w.rd, q, m, depth, cap)
        points += scan.points
        if w in scan.realized:
            return SearchResult(w, scan.realized[w], True, points, w)
    return SearchResult(w, None, True, points)


def search_xmub(rd: RootDatum, mu, b, K: str, q: int, m_max: int, depth: int, cap: int | None = None) -> SearchResult:
    """Witness g for X(mu, b)_K with K 'iwahori' or 'hyperspecial'."""
    mu = tuple(mu)
    if K == "iwahori":
        targets = set(adm(rd, mu))
        points = 0
        for m in range(1, m_max + 1):
            scan = scan_realized(b, rd, q, m, depth, cap)
            points += scan.points
            hits = sort_elements(w for w in scan.realized if w in targets)
            if hits:
                w = min(hits, key=lambda v: _point_key(scan.realized[v]))
                return SearchResult(list(mu), scan.realized[w], True, points, w)
        return SearchResult(list(mu), None, True, points)
    if K != "hyperspecial":
        raise ValueError("K must be 'iwahori' or 'hyperspecial'")
    dom = rd.dominant_rep(mu)[0]
    limit = effective_cap(cap)
    points = 0
    for m in range(1, m_max + 1):
        F = gf(q, m)
        bm = _b_matrix(b, F, rd.dim)
        for x in flag_cells(rd, depth):
            for pt in cell_points(x, q, m):
                points += 1
                if points > limit:
                    raise ResourceCapExceeded(f"scan exceeds {limit} points")
                g = pt.matrix
                if inv_hyperspecial(g, frobenius_twist(g, bm)) == dom:
                    return SearchResult(list(mu), pt, True, points, list(dom))
    return SearchResult(list(mu), None, True, points)


def _point_key(pt: CellPoint):
    return (pt.m, pt.x.sort_key(), pt.coords)


def phi_positions(b, pt) -> tuple[AffElem, AffElem]:
    """(inv(g, b sigma(g)), inv(Phi g, b sigma(Phi g))) with Phi(g) = b sigma(g)."""
    g = pt.matrix if isinstance(pt, CellPoint) else pt
    bm = _b_matrix(b, g.F, g.n)
    phi = frobenius_twist(g, bm)
    return inv_iwahori(g, phi), inv_iwahori(phi, frobenius_twist(phi, bm))


def verify_phi_stability(rd: RootDatum, mu, b, witnesses, K: str = "iwahori") -> bool:
    """Phi(g) = b sigma(g) again lies in X(mu, b)_K, with the same relative position."""
    targets = set(adm(rd, tuple(mu)))
    dom = rd.dominant_rep(tuple(mu))[0]
    for pt in witnesses:
        g = pt.matrix if isinstance(pt, CellPoint) else pt
        if K == "iwahori":
            before, after = phi_positions(b, g)
            if after != before or after not in targets:
                return False
        else:
            bm = _b_matrix(b, g.F, rd.dim)
            phi = frobenius_twist(g, bm)
            after = inv_hyperspecial(phi, frobenius_twist(phi, bm))
            if after != dom or after != inv_hyperspecial(g, phi):
                return False
    return True


def random_iwahori(F: GF, n: int, rng, depth: int = 2) -> LaurentMatrix:
    """A random element of I: lower triangular mod t, unit diagonal, degree <= depth."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            low = 0 if i >= j else 1
            p = {}
            for e in range(low, depth + 1):
                c = rng.randrange(1, F.order) if (i == j and e == 0) else rng.randrange(F.order)
                if c:
                    p[e] = c
            row.append(p)
        rows.append(row)
    return LaurentMatrix(F, rows)


def newton_growth(b, n: int, q: int, N: int) -> list[tuple[int, ...]]:
    """inv_hyperspecial(1, (b sigma)^k 1) for k = 1..N."""
    F = gf(q)
    bm = _b_matrix(b, F, n)
    g = identity_matrix(F, n)
    e = identity_matrix(F, n)
    out = []
    for _ in range(N):
        g = frobenius_twist(g, bm)
        out.append(inv_hyperspecial(e, g))
    return out

