"""F_q-points of special fibres of lattice-chain local models for GL_n and GSp_2n.

The standard lattices are ``Lambda_i = span(pi^-1 e_1, .., pi^-1 e_i, e_{i+1}, .., e_N)``.
A point is a family of r-dimensional subspaces ``F_i`` of ``Lambda_i / pi Lambda_i``
(i in the chain I) carried into each other by the reductions of the chain maps
``Lambda_{i_0} -> ... -> Lambda_{i_m} --pi--> Lambda_{i_0}``.  For GSp_2n one
also asks ``F_i`` to be orthogonal to ``F_{2n-i}`` under the reduced pairing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .admperm import adm
from .affweyl import effective_cap
from .errors import ResourceCapExceeded
from .gf import GF, gf
from .rootdata import root_datum


@dataclass(frozen=True)
class ChainConfig:
    kind: str
    n: int
    r: int
    I: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.kind not in ("gl", "gsp"):
            raise ValueError("kind must be 'gl' or 'gsp'")
        if not self.I or sorted(set(self.I)) != list(self.I):
            raise ValueError("I must be a nonempty increasing tuple")
        if not all(0 <= i < self.dim for i in self.I):
            raise ValueError(f"chain indices must lie in 0..{self.dim - 1}")
        if not 0 <= self.r <= self.dim:
            raise ValueError("bad subspace rank")
        if self.kind == "gsp":
            if self.r != self.n:
                raise ValueError("GSp subspaces must be Lagrangian (r = n)")
            if any(i and (self.dim - i) not in self.I for i in self.I):
                raise ValueError("GSp chains must contain 2n-i together with i != 0")

    @classmethod
    def of(cls, kind, n, r, I, q) -> "ChainConfig":
        return cls(kind, n, r, tuple(sorted(set(I))), q)

    @property
    def dim(self) -> int:
        return self.n if self.kind == "gl" else 2 * self.n

    @property
    def field(self) -> GF:
        return gf(self.q)

    def to_json(self) -> dict:
        return {"group": self.kind, "n": self.n, "r": self.r, "chain": list(self.I), "q": self.q}


def lattice_exponents(N: int, i: int) -> list[int]:
    """Exponents s with Lambda_i = span(pi^{s_k} e_k)."""
    return [-1 if k < i else 0 for k in range(N)]


def reduction(N: int, src: int, dst: int, shift: int) -> list[list[int]]:
    """Mod-pi matrix of pi^shift : Lambda_src -> Lambda_dst in the standard bases."""
    s, d = lattice_exponents(N, src), lattice_exponents(N, dst)
    M = [[0] * N for _ in range(N)]
    for k in range(N):
        e = shift + s[k] - d[k]
        if e < 0:
            raise ValueError(f"pi^{shift} does not map Lambda_{src} into Lambda_{dst}")
        M[k][k] = 1 if e == 0 else 0
    return M


def transition_matrices(cfg: ChainConfig) -> list[list[list[int]]]:
    """Inclusions along the chain, then the wrap-around pi-map back to the start."""
    N, I = cfg.dim, cfg.I
    mats = [reduction(N, a, b, 0) for a, b in zip(I, I[1:])]
    mats.append(reduction(N, I[-1], I[0], 1))
    return mats


def symplectic_form(F: GF, n: int) -> list[list[int]]:
    """<e_a, e_{2n+1-a}> = 1 for a <= n and -1 for a > n (1-based)."""
    N = 2 * n
    J = [[0] * N for _ in range(N)]
    for a in range(N):
        J[a][N - 1 - a] = 1 if a < n else F.neg(1)
    return J


def pairing_matrix(F: GF, n: int, i: int) -> list[list[int]]:
    """Reduction of pi * <,> : Lambda_i x Lambda_{2n-i} -> O in the standard bases."""
    N = 2 * n
    J = symplectic_form(F, n)
    s, t = lattice_exponents(N, i), lattice_exponents(N, N - i)
    P = [[0] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            if J[a][b]:
                e = 1 + s[a] + t[b]
                if e < 0:
                    raise AssertionError("pairing is not integral")
                P[a][b] = J[a][b] if e == 0 else 0
    return P


# -- subspaces -----------------------------------------------------------------------

def rref_subspaces(F: GF, N: int, r: int):
    """Every r-dimensional subspace of F^N as its reduced-row-echelon basis."""
    for pivots in itertools.combinations(range(N), r):
        free = [(row, col) for row, p in enumerate(pivots) for col in range(p + 1, N) if col not in pivots]
        for vals in itertools.product(F.elements, repeat=len(free)):
            rows = [[0] * N for _ in range(r)]
            for row, p in enumerate(pivots):
                rows[row][p] = 1
            for (row, col), v in zip(free, vals):
                rows[row][col] = v
            yield tuple(tuple(x) for x in rows)


def span(F: GF, basis) -> frozenset:
    N = len(basis[0]) if basis else 0
    out = {tuple([0] * N)}
    for v in basis:
        out = {tuple(F.add(a, F.mul(c, b)) for a, b in zip(w, v)) for w in out for c in F.elements}
    return frozenset(out)


def apply(F: GF, M, v) -> tuple[int, ...]:
    N = len(v)
    return tuple(_dot(F, M[i], v) for i in range(N))


def _dot(F: GF, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def gaussian_binomial(n: int, r: int, q: int) -> int:
    if r < 0 or r > n:
        return 0
    num = den = 1
    for k in range(r):
        num *= q ** (n - k) - 1
        den *= q ** (k + 1) - 1
    return num // den


class LocalModel:
    """Points of one configuration, with the compatibility graph precomputed."""

    def __init__(self, cfg: ChainConfig, cap: int | None = None):
        self.cfg = cfg
        F, N = cfg.field, cfg.dim
        limit = effective_cap(cap)
        size = gaussian_binomial(N, cfg.r, cfg.q)
        if size * len(cfg.I) > limit:
            raise ResourceCapExceeded(f"{size} subspaces per index exceeds the cap {limit}")
        self.F = F
        self.subspaces = list(rref_subspaces(F, N, cfg.r))
        self.vectors = [span(F, b) for b in self.subspaces]
        self.mats = transition_matrices(cfg)

    @cached_property
    def allowed(self) -> list[list[bool]]:
        """allowed[k][a] is True if F_{I_k} = subspace a is self-consistent (the GSp condition)."""
        cfg, F = self.cfg, self.F
        out = []
        for i in cfg.I:
            if cfg.kind == "gl":
                out.append([True] * len(self.subspaces))
                continue
            if i != 0 and i * 2 != cfg.dim:
                out.append([True] * len(self.subspaces))
                continue
            P = pairing_matrix(F, cfg.n, i)
            out.append([self._orthogonal(P, b, b) for b in self.subspaces])
        return out

    def _orthogonal(self, P, A, B) -> bool:
        F = self.F
        for v in A:
            Pv = [_dot(F, [P[a][b] for a in range(len(v))], v) for b in range(len(v))]
            if any(_dot(F, Pv, w) for w in B):
                return False
        return True

    def edges(self, k: int) -> list[list[int]]:
        """For each subspace a at position k, the subspaces b at position k+1 with M(a) in b."""
        F, M = self.F, self.mats[k]
        nxt = (k + 1) % len(self.cfg.I)
        targets = [b for b, ok in enumerate(self.allowed[nxt]) if ok]
        out = []
        for a, basis in enumerate(self.subspaces):
            if not self.allowed[k][a]:
                out.append([])
                continue
            images = [apply(F, M, v) for v in basis]
            out.append([b for b in targets if all(x in self.vectors[b] for x in images)])
        return out

    def chains(self):
        """Every valid chain, as a tuple of subspace indices in the order of I."""
        cfg = self.cfg
        m = len(cfg.I)
        E = [self.edges(k) for k in range(m)]
        dual = self._dual_pairs()

        def rec(prefix):
            k = len(prefix)
            if k == m:
                if prefix[0] in E[m - 1][prefix[-1]] and self._dual_ok(prefix, dual):
                    yield tuple(prefix)
                return
            cands = E[k - 1][prefix[-1]] if k else range(len(self.subspaces))
            for b in cands:
                if self.allowed[k][b] and self._dual_ok(prefix + [b], dual):
                    yield from rec(prefix + [b])

        yield from rec([])

    def _dual_pairs(self):
        """Positions (k, k2, P) in I with I[k2] = 2n - I[k], k < k2."""
        cfg = self.cfg
        if cfg.kind != "gsp":
            return []
        out = []
        for k, i in enumerate(cfg.I):
            if i == 0 or 2 * i == cfg.dim:
                continue
            k2 = cfg.I.index(cfg.dim - i)
            if k < k2:
                out.append((k, k2, pairing_matrix(self.F, cfg.n, i)))
        return out

    def _dual_ok(self, chain, dual) -> bool:
        for k, k2, P in dual:
            if k2 < len(chain):
                if not self._orthogonal(P, self.subspaces[chain[k]], self.subspaces[chain[k2]]):
                    return False
        return True

    def count(self) -> int:
        return sum(1 for _ in self.chains())


def count_points(cfg: ChainConfig, cap: int | None = None) -> int:
    if cfg.kind != "gl":
        raise ValueError("use count_points_gsp for symplectic chains")
    return LocalModel(cfg, cap).count()


def count_points_gsp(cfg: ChainConfig, cap: int | None = None) -> int:
    if cfg.kind != "gsp":
        raise ValueError("count_points_gsp needs a symplectic chain")
    return LocalModel(cfg, cap).count()


def full_chain(kind: str, n: int) -> tuple[int, ...]:
    return tuple(range(n if kind == "gl" else 2 * n))


def local_model_mu(kind: str, n: int, r: int) -> tuple[int, ...]:
    """The coweight whose admissible set indexes the strata: (1^{N-r}, 0^r)."""
    N = n if kind == "gl" else 2 * n
    return (1,) * (N - r) + (0,) * r


def predicted_count_iwahori(rd, mu, q: int) -> int:
    """Sum of q^l(w) over Adm(mu): one affine space of dimension l(w) per stratum."""
    return sum(q**w.length for w in adm(rd, tuple(mu)))


def fit_polynomial(points) -> list[Fraction]:
    """Coefficients (constant term first) of the interpolating polynomial, trailing zeros stripped."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    coeffs = [Fraction(0)] * len(pts)
    for j, (xj, yj) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(pts):
            if k != j:
                basis = [a - xk * b for a, b in zip([Fraction(0)] + basis, basis + [Fraction(0)])]
                denom *= xj - xk
        for d, c in enumerate(basis):
            coeffs[d] += yj * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def is_integer_polynomial(points, max_degree: int) -> bool:
    coeffs = fit_polynomial(points)
    return len(coeffs) - 1 <= max_degree and all(c.denominator == 1 for c in coeffs)


def projection_report(cfg: ChainConfig, sub: tuple[int, ...]) -> dict:
    """Restrict the points for chain I to the subchain ``sub`` and report surjectivity."""
    sub = tuple(sorted(sub))
    if not set(sub) <= set(cfg.I):
        raise ValueError("sub must be a subset of the chain")
    big = LocalModel(cfg)
    small_cfg = ChainConfig.of(cfg.kind, cfg.n, cfg.r, sub, cfg.q)
    small = LocalModel(small_cfg)
    pos = [cfg.I.index(i) for i in sub]
    image = {tuple(c[k] for k in pos) for c in big.chains()}
    target = set(small.chains())
    if not image <= target:
        raise AssertionError("forgetful map does not land in the smaller local model")
    return {
        "chain": list(cfg.I),
        "sub": list(sub),
        "source": big.count(),
        "target": len(target),
        "image": len(image),
        "surjective": image == target,
    }
