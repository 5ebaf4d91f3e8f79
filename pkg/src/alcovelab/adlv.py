"""Closed-form nonemptiness predicates for affine Deligne-Lusztig varieties.

Relative positions are always ``inv(g, b sigma(g))``.  For GL_2 at Iwahori
level the classification of nonempty X_w(b) is explicit in terms of the slope
vector of b; for X(mu, b) the criterion is membership of [b] in B(G, mu).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .admperm import adm
from .affweyl import AffElem, affine_part, bruhat_leq, identity, translation
from .kottwitz import SigmaClass, enumerate_bgmu, mu_natural, sigma_class
from .rootdata import RootDatum, root_datum

# How the hyperbolic clause "w is the translation by the slope vector" is read:
# "dominant" accepts only t_(l1, l2); "orbit" accepts t_l' for any l' in W_0 (l1, l2).
READINGS = ("orbit", "dominant")
DEFAULT_READING = "orbit"

GL2 = root_datum("gl", 2)


@dataclass(frozen=True)
class SlopeClassGL2:
    lam: tuple[Fraction, Fraction]

    def __post_init__(self):
        l1, l2 = self.lam
        if l1 < l2:
            raise ValueError(f"slopes must be decreasing: {self.lam}")
        if (l1 + l2).denominator != 1:
            raise ValueError(f"slope sum must be integral: {self.lam}")
        if l1 != l2 and (l1.denominator != 1 or l2.denominator != 1):
            raise ValueError(f"distinct slopes must be integers: {self.lam}")

    @classmethod
    def of(cls, l1, l2) -> "SlopeClassGL2":
        return cls((Fraction(l1), Fraction(l2)))

    @property
    def kappa(self) -> int:
        return int(sum(self.lam))

    @property
    def basic(self) -> bool:
        return self.lam[0] == self.lam[1]

    def integral(self) -> tuple[int, int] | None:
        if all(x.denominator == 1 for x in self.lam):
            return int(self.lam[0]), int(self.lam[1])
        return None

    def sigma_class(self) -> SigmaClass:
        return sigma_class(GL2, self.lam)

    def __str__(self):
        return f"({self.lam[0]},{self.lam[1]})"


def slope_classes_gl2(bound: int) -> list[SlopeClassGL2]:
    """Every slope class with |lambda_i| <= bound."""
    out = []
    for k in range(-2 * bound, 2 * bound + 1):
        half = Fraction(k, 2)
        out.append(SlopeClassGL2((half, half)))
    for l1 in range(-bound, bound + 1):
        for l2 in range(-bound, l1):
            out.append(SlopeClassGL2.of(l1, l2))
    return sorted(out, key=lambda s: (s.kappa, s.lam))


def xw_nonempty_gl2(lam: SlopeClassGL2, w: AffElem, reading: str = DEFAULT_READING) -> bool:
    """Is X_w(b) nonempty for b of slope class lam (GL_2, Iwahori level)?"""
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if w.rd != GL2:
        raise ValueError("xw_nonempty_gl2 is for GL_2 only")
    if w.kappa != lam.kappa:
        return False
    if lam.basic:
        if lam.kappa % 2:
            return w.length % 2 == 0
        return affine_part(w) == identity(GL2) or w.length % 2 == 1
    l1, l2 = lam.integral()
    if reading == "dominant":
        targets = [(l1, l2)]
    else:
        targets = [(l1, l2), (l2, l1)]
    if w.is_translation and w.t in targets:
        return True
    return w.length > l1 - l2 and w.length % 2 == (l1 - l2 + 1) % 2


def kappa_necessary(rd: RootDatum, mu, b: SigmaClass) -> bool:
    return b.kappa == mu_natural(rd, mu)


def translation_leq_necessary(rd: RootDatum, nu_b, w: AffElem, orbit: bool = False) -> bool:
    """t_{nu_b} <= w in the Bruhat order.

    With ``orbit=True`` the test is whether t_{nu'} <= w for some nu' in W_0 nu_b,
    which is what the retraction argument yields when b is only known up to
    conjugation by W_0.
    """
    if orbit:
        return any(bruhat_leq(translation(rd, nu), w) for nu in rd.orbit(rd.dominant_rep(tuple(nu_b))[0]))
    return bruhat_leq(translation(rd, nu_b), w)


def is_conjectural(rd: RootDatum, mu) -> bool:
    """Nonemptiness of X(mu, b) is only proved here for minuscule mu."""
    return any(rd.pair(r.alpha, mu) > 1 for r in rd.positive_roots)


@lru_cache(maxsize=None)
def _bgmu_keys(rd: RootDatum, mu: tuple[int, ...]) -> frozenset:
    return frozenset((b.newton, b.kappa) for b in enumerate_bgmu(rd, mu))


def x_mu_b_nonempty(rd: RootDatum, mu, b: SigmaClass, K=None) -> bool:
    """X(mu, b)_K is nonempty iff [b] lies in B(G, mu); the parahoric K does not matter.

    For non-minuscule mu this is the conjectured answer; see ``is_conjectural``.
    """
    return (b.newton, b.kappa) in _bgmu_keys(rd, tuple(mu))


def adm_union_classification_gl2(mu, lam: SlopeClassGL2, reading: str = DEFAULT_READING) -> list[AffElem]:
    """The w in Adm(mu) with X_w(b) nonempty."""
    return [w for w in adm(GL2, tuple(mu)) if xw_nonempty_gl2(lam, w, reading)]


def grid_mus(bound: int = 3) -> list[tuple[int, int]]:
    return [(m1, m2) for m1 in range(bound + 1) for m2 in range(m1 + 1)]


@dataclass
class GridRow:
    mu: tuple[int, int]
    lam: SlopeClassGL2
    verdicts: list[tuple[AffElem, bool]]
    union: bool
    in_bgmu: bool
    kappa_ok: bool = True
    translation_ok: bool = True

    @property
    def coherent(self) -> bool:
        return self.union == self.in_bgmu and self.kappa_ok and self.translation_ok

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "lambda": [str(x) for x in self.lam.lam],
            "verdicts": [dict(w.encode(), nonempty=v) for w, v in self.verdicts],
            "union": self.union,
            "in_bgmu": self.in_bgmu,
            "coherent": self.coherent,
        }


def grid_row(mu, lam: SlopeClassGL2, reading: str = DEFAULT_READING) -> GridRow:
    mu = tuple(mu)
    b = lam.sigma_class()
    verdicts = [(w, xw_nonempty_gl2(lam, w, reading)) for w in adm(GL2, mu)]
    union = any(v for _, v in verdicts)
    kappa_ok = not union or kappa_necessary(GL2, mu, b)
    translation_ok = True
    nu = lam.integral()
    if nu is not None:
        orbit = reading == "orbit"
        translation_ok = all(translation_leq_necessary(GL2, nu, w, orbit) for w, v in verdicts if v)
    return GridRow(mu, lam, verdicts, union, x_mu_b_nonempty(GL2, mu, b), kappa_ok, translation_ok)


def grid(bound: int = 3, reading: str = DEFAULT_READING) -> list[GridRow]:
    """All (mu, lambda) with 0 <= mu_2 <= mu_1 <= bound and |lambda_i| <= bound."""
    lams = slope_classes_gl2(bound)
    return [grid_row(mu, lam, reading) for mu in grid_mus(bound) for lam in lams]
