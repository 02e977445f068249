"""Moy-Prasad gradings on Laurent-polynomial Lie algebra elements.

At a rational point ``x`` with torus element ``x~ = diag(d_1, ..., d_n)``
the term ``c z^m`` in matrix entry ``(i, j)`` has degree ``m + d_i - d_j``.
Off the diagonal this is ``alpha(x~) + m`` for the root ``alpha`` owning the
entry; on the diagonal it is ``m``.  So the grading can be read entrywise in
the defining representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .exact import INF, ZERO, Laurent, LaurentMatrix
from .roots import ApartmentPoint, GroupData, build_group

if TYPE_CHECKING:  # pragma: no cover
    from .strata import Stratum


@dataclass(frozen=True)
class Connection:
    """Matrix ``A = iota_tau[nabla]`` of a flat G-bundle, ``nabla = d + A dz/z``."""

    group: GroupData
    matrix: LaurentMatrix

    def __post_init__(self):
        self.group.check_member(self.matrix)

    @classmethod
    def of(cls, kind: str, n: int, matrix: LaurentMatrix) -> "Connection":
        return cls(build_group(kind, n), matrix)

    @property
    def n(self) -> int:
        return self.group.n

    def pole_order(self) -> int:
        v = self.matrix.valuation()
        return 0 if v == INF or v >= 0 else -v

    def __add__(self, other: "Connection") -> "Connection":
        return Connection(self.group, self.matrix + other.matrix)


@dataclass(frozen=True)
class GradedComponent:
    degree: Fraction
    part: LaurentMatrix
    constituents: tuple[tuple[str, int], ...]  # (root label or "t", power)


def torus_element(G: GroupData, x: ApartmentPoint) -> LaurentMatrix:
    return G.torus_matrix([Laurent.const(c) for c in x.coords])


def _entry_terms(X: LaurentMatrix, d):
    for i, row in enumerate(X.rows):
        for j, a in enumerate(row):
            if a:
                shift = d[i] - d[j]
                for m, c in a.terms().items():
                    yield i, j, m, c, m + shift


def graded_decompose(X: LaurentMatrix, x: ApartmentPoint, G: GroupData) -> list[GradedComponent]:
    """Split ``X`` into homogeneous components, sorted by degree."""
    G.check_member(X)
    d = G.diagonal(x.coords)
    n = G.n
    buckets: dict[Fraction, dict[tuple[int, int], dict[int, Fraction]]] = {}
    labels: dict[Fraction, set] = {}
    for i, j, m, c, deg in _entry_terms(X, d):
        buckets.setdefault(deg, {}).setdefault((i, j), {})[m] = c
        if i == j:
            labels.setdefault(deg, set()).add(("t", m))
        else:
            labels.setdefault(deg, set()).add((G.root_at[(i, j)][0].label, m))
    out = []
    for deg in sorted(buckets):
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), terms in buckets[deg].items():
            rows[i][j] = Laurent(terms)
        out.append(GradedComponent(deg, LaurentMatrix(rows), tuple(sorted(labels[deg]))))
    return out


def reassemble(components: list[GradedComponent], n: int) -> LaurentMatrix:
    out = LaurentMatrix.zeros(n)
    for c in components:
        out = out + c.part
    return out


def min_degree(X: LaurentMatrix, x: ApartmentPoint, G: GroupData) -> Fraction | float:
    """Smallest degree of a nonzero term of ``X`` at ``x`` (``INF`` for zero)."""
    d = G.diagonal(x.coords)
    best = INF
    for i, row in enumerate(X.rows):
        for j, a in enumerate(row):
            if a:
                v = a.valuation() + d[i] - d[j]
                if v < best:
                    best = v
    return best


def homogeneous_part(X: LaurentMatrix, x: ApartmentPoint, G: GroupData, degree: Fraction) -> LaurentMatrix:
    d = G.diagonal(x.coords)
    rows = []
    for i, row in enumerate(X.rows):
        out_row = []
        for j, a in enumerate(row):
            m = degree - d[i] + d[j]
            if a and m.denominator == 1:
                out_row.append(Laurent.monomial(a.coeff(int(m)), int(m)))
            else:
                out_row.append(ZERO)
        rows.append(out_row)
    return LaurentMatrix(rows)


def homogeneous_degree(X: LaurentMatrix, x: ApartmentPoint, G: GroupData) -> Fraction | None:
    """Degree of ``X`` if it is nonzero and homogeneous at ``x``."""
    degs = {t[4] for t in _entry_terms(X, G.diagonal(x.coords))}
    return degs.pop() if len(degs) == 1 else None


def is_homogeneous(X: LaurentMatrix, x: ApartmentPoint, G: GroupData, degree: Fraction) -> bool:
    return all(t[4] == degree for t in _entry_terms(X, G.diagonal(x.coords)))


def lies_above(X: LaurentMatrix, x: ApartmentPoint, G: GroupData, bound: Fraction, strict: bool) -> bool:
    """Whether every term of ``X`` has degree ``> bound`` (or ``>=``)."""
    md = min_degree(X, x, G)
    return md == INF or (md > bound if strict else md >= bound)


def shifted_matrix(A: Connection, x: ApartmentPoint) -> LaurentMatrix:
    """``A - x~``."""
    return A.matrix - torus_element(A.group, x)


def depth_at(A: Connection, x: ApartmentPoint) -> Fraction:
    """Least ``r >= 0`` with ``A - x~`` in filtration level ``-r`` at ``x``."""
    md = min_degree(shifted_matrix(A, x), x, A.group)
    if md == INF or md >= 0:
        return Fraction(0)
    return -md


def leading_representative(A: Connection, x: ApartmentPoint) -> "Stratum":
    """The stratum ``(x, r, degree -r part of A - x~)`` with ``r = depth_at``."""
    from .strata import Stratum

    r = depth_at(A, x)
    rep = homogeneous_part(shifted_matrix(A, x), x, A.group, -r)
    return Stratum(A.group, x, r, rep)
