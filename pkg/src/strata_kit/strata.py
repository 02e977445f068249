"""Strata, containment, fundamentality, gauge action and associates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import filtration as flt
from .errors import HomogeneityError, MembershipError
from .exact import LaurentMatrix, invert_unit
from .roots import ApartmentPoint, GroupData


@dataclass(frozen=True)
class Stratum:
    """``(x, r, rep)`` with ``rep`` homogeneous of degree ``-r`` at ``x``."""

    group: GroupData
    point: ApartmentPoint
    depth: Fraction
    rep: LaurentMatrix

    def __post_init__(self):
        G = self.group
        object.__setattr__(self, "depth", Fraction(self.depth))
        G.point(self.point.coords)
        if self.depth < 0:
            raise HomogeneityError(f"depth must be nonnegative, got {self.depth}")
        if not G.is_critical(-self.depth, self.point):
            raise HomogeneityError(f"{self.depth} is not a critical number at {self.point}")
        G.check_member(self.rep)
        if not flt.is_homogeneous(self.rep, self.point, G, -self.depth):
            raise HomogeneityError(f"representative is not homogeneous of degree {-self.depth} at {self.point}")

    def __str__(self):
        return f"Stratum(x={self.point}, r={self.depth}, rep={self.rep!r})"


@dataclass(frozen=True)
class GaugeElement:
    """Element of ``G(F)`` together with its inverse."""

    group: GroupData
    matrix: LaurentMatrix
    inverse: LaurentMatrix

    def __post_init__(self):
        n = self.group.n
        if self.matrix @ self.inverse != LaurentMatrix.identity(n):
            raise MembershipError("gauge element and inverse do not multiply to the identity")
        msg = self.group.group_violation(self.matrix)
        if msg:
            raise MembershipError(msg)

    @classmethod
    def from_matrix(cls, G: GroupData, g: LaurentMatrix, window: int = 64) -> "GaugeElement":
        return cls(G, g, invert_unit(g, window))

    @classmethod
    def identity(cls, G: GroupData) -> "GaugeElement":
        eye = LaurentMatrix.identity(G.n)
        return cls(G, eye, eye)

    def __matmul__(self, other: "GaugeElement") -> "GaugeElement":
        return GaugeElement(self.group, self.matrix @ other.matrix, other.inverse @ self.inverse)

    def is_identity(self) -> bool:
        return self.matrix == LaurentMatrix.identity(self.group.n)


def gauge_transform(A: flt.Connection, g: GaugeElement) -> flt.Connection:
    """``g . A = g A g^{-1} - tau(g) g^{-1}``."""
    gm, gi = g.matrix, g.inverse
    return flt.Connection(A.group, gm @ A.matrix @ gi - gm.tau() @ gi)


def contains(A: flt.Connection, s: Stratum) -> bool:
    """``(A - x~) - rep`` lies strictly above degree ``-r`` at ``x``."""
    if A.group != s.group:
        return False
    B = flt.shifted_matrix(A, s.point) - s.rep
    return flt.lies_above(B, s.point, s.group, -s.depth, strict=True)


def is_fundamental(s: Stratum) -> bool:
    return not s.rep.is_nilpotent()


def act_on_stratum(g: GaugeElement, s: Stratum) -> Stratum:
    """Monomial ``g`` moves ``(x, r, rep)`` to ``(g.x, r, Ad(g) rep)``."""
    G = s.group
    y = G.act_on_point(g.matrix, s.point)
    return Stratum(G, y, s.depth, g.matrix @ s.rep @ g.inverse)


def associates_at(g: GaugeElement, s1: Stratum, s2: Stratum) -> bool:
    """Whether ``g.s1`` and ``s2`` are associate (``g`` monomial).

    Both filtration lattices are spanned by weight monomials of the same
    torus, so the affine spaces meet iff every monomial of
    ``Ad(g) rep1 - rep2 + (g.x~ - y~)`` has degree ``> -r`` at ``g.x`` or
    at ``y``.  No power window is needed.
    """
    if s1.depth != s2.depth or s1.group != s2.group:
        return False
    G = s1.group
    moved = act_on_stratum(g, s1)
    x, y = moved.point, s2.point
    r = s1.depth
    w = moved.rep - s2.rep + flt.torus_element(G, x) - flt.torus_element(G, y)
    dx, dy = G.diagonal(x.coords), G.diagonal(y.coords)
    for i, row in enumerate(w.rows):
        for j, a in enumerate(row):
            for m in a.terms():
                if m + dx[i] - dx[j] <= -r and m + dy[i] - dy[j] <= -r:
                    return False
    return True


def pullback_stratum(s: Stratum, e: int) -> Stratum:
    """``(e x, e r, e . rep(u^e))`` on the degree-``e`` cover."""
    return Stratum(s.group, s.point.scaled(e), s.depth * e, s.rep.substitute_power(e).scale(e))

