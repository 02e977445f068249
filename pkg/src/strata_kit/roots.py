"""Root data for GL_n, SL_n and Sp_2n in their defining representations.

Points of the standard apartment are stored by their torus coordinates:
the full diagonal ``(x_1, ..., x_n)`` for GL_n and SL_n, and the half
vector ``(x_1, ..., x_n)`` for Sp_2n, whose torus element is
``diag(x_1, ..., x_n, -x_1, ..., -x_n)``.  The symplectic form is
``J = [[0, I], [-I, 0]]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import CapabilityError, DimensionError, MembershipError
from .exact import ONE, ZERO, Laurent, LaurentMatrix
from .lp import lexmin_face

KINDS = ("GL", "SL", "Sp")


@dataclass(frozen=True)
class Root:
    index: int
    vector: tuple[int, ...]
    positions: tuple[tuple[int, int], ...]
    signs: tuple[int, ...]
    label: str

    def value(self, coords: Sequence[Fraction]) -> Fraction:
        return sum((Fraction(a) * c for a, c in zip(self.vector, coords) if a), Fraction(0))

    @property
    def canonical(self) -> tuple[int, int]:
        return self.positions[0]


@dataclass(frozen=True)
class AffineFunctional:
    """``psi(x) = constant + vector . x``."""

    name: str
    constant: int
    vector: tuple[int, ...]

    def __call__(self, coords: Sequence[Fraction]) -> Fraction:
        return self.constant + sum((Fraction(a) * c for a, c in zip(self.vector, coords) if a), Fraction(0))


@dataclass(frozen=True)
class ApartmentPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def scaled(self, e) -> "ApartmentPoint":
        return ApartmentPoint(tuple(c * e for c in self.coords))

    def shifted(self, delta: Sequence[Fraction], eps) -> "ApartmentPoint":
        return ApartmentPoint(tuple(c + eps * d for c, d in zip(self.coords, delta)))


@dataclass(frozen=True)
class OptimalPoint:
    subset: tuple[str, ...]
    point: ApartmentPoint
    value: Fraction


@dataclass
class RootDecomposition:
    torus: tuple[Laurent, ...]
    roots: dict[int, Laurent] = field(default_factory=dict)


def _vec(n: int, entries: dict[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for k, c in entries.items():
        v[k] += c
    return tuple(v)


def _nilpotent_exp(X: LaurentMatrix) -> LaurentMatrix:
    n = X.size
    out = LaurentMatrix.identity(n)
    term = LaurentMatrix.identity(n)
    k = 1
    while True:
        term = (term @ X).scale(Fraction(1, k))
        if term.is_zero():
            return out
        out = out + term
        k += 1
        if k > n + 1:
            raise ValueError("matrix is not nilpotent")


class GroupData:
    """Root datum, alcove and apartment geometry for one classical group."""

    def __init__(self, kind: str, n: int):
        if kind not in KINDS:
            raise DimensionError(f"unsupported group kind {kind!r}; expected one of {KINDS}")
        if n < 1 or (kind == "Sp" and n % 2) or (kind == "SL" and n < 2):
            raise DimensionError(f"invalid matrix size {n} for {kind}")
        self.kind = kind
        self.n = n
        self.rank = n // 2 if kind == "Sp" else n
        self.roots: list[Root] = []
        if kind == "Sp":
            self._build_symplectic()
        else:
            self._build_linear()
        self.root_at = {}
        for r in self.roots:
            for p, s in zip(r.positions, r.signs):
                self.root_at[p] = (r, s)
        self._by_vector = {r.vector: r for r in self.roots}
        self._build_alcove()

    # -- construction -----------------------------------------------------
    def _add(self, vec, positions, signs, label):
        self.roots.append(Root(len(self.roots), vec, tuple(positions), tuple(signs), label))

    def _build_linear(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                if i != j:
                    self._add(_vec(n, {i: 1, j: -1}), [(i, j)], [1], f"e{i+1}-e{j+1}")

    def _build_symplectic(self):
        h = self.rank
        for i in range(h):
            for j in range(h):
                if i != j:
                    self._add(_vec(h, {i: 1, j: -1}), [(i, j), (j + h, i + h)], [1, -1], f"e{i+1}-e{j+1}")
        for i in range(h):
            for j in range(i + 1, h):
                self._add(_vec(h, {i: 1, j: 1}), [(i, j + h), (j, i + h)], [1, 1], f"e{i+1}+e{j+1}")
                self._add(_vec(h, {i: -1, j: -1}), [(i + h, j), (j + h, i)], [1, 1], f"-e{i+1}-e{j+1}")
            self._add(_vec(h, {i: 2}), [(i, i + h)], [1], f"2e{i+1}")
            self._add(_vec(h, {i: -2}), [(i + h, i)], [1], f"-2e{i+1}")

    def _build_alcove(self):
        r = self.rank
        if self.kind == "Sp":
            simple = [_vec(r, {i: 1, i + 1: -1}) for i in range(r - 1)] + [_vec(r, {r - 1: 2})]
            highest = _vec(r, {0: 2})
            self.marks = tuple([2] * (r - 1) + [1])
            self.coxeter_number = 2 * r
        else:
            simple = [_vec(r, {i: 1, i + 1: -1}) for i in range(r - 1)]
            highest = _vec(r, {0: 1, r - 1: -1}) if r > 1 else None
            self.marks = tuple([1] * (r - 1))
            self.coxeter_number = max(r, 1)
        self.simple_roots = [self._by_vector[v] for v in simple]
        self.highest_root = self._by_vector[highest] if highest is not None else None
        walls = [AffineFunctional(f"a{i+1}", 0, r.vector) for i, r in enumerate(self.simple_roots)]
        if self.highest_root is not None:
            walls.append(AffineFunctional("1-a0", 1, tuple(-c for c in self.highest_root.vector)))
        self.alcove_walls = walls
        # positive roots: nonnegative combinations of the simple roots
        self._simple_coords = {}
        if self.simple_roots:
            basis = linalg.transpose([list(map(Fraction, s.vector)) for s in self.simple_roots])
            for root in self.roots:
                c = linalg.solve(basis, [Fraction(v) for v in root.vector])
                self._simple_coords[root.index] = tuple(c)

    # -- basic data -------------------------------------------------------
    def __repr__(self):
        return f"GroupData({self.kind!r}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, GroupData) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    @property
    def dimension(self) -> int:
        return len(self.roots) + self.torus_dimension

    @property
    def torus_dimension(self) -> int:
        return self.rank - 1 if self.kind == "SL" else self.rank

    def root(self, vector: Sequence[int]) -> Root:
        return self._by_vector[tuple(vector)]

    def negative(self, root: Root) -> Root:
        return self._by_vector[tuple(-c for c in root.vector)]

    def is_positive(self, root: Root) -> bool:
        return all(c >= 0 for c in self._simple_coords[root.index])

    def height(self, root: Root) -> Fraction:
        return sum(self._simple_coords[root.index], Fraction(0))

    def diagonal(self, coords: Sequence) -> list:
        """Full diagonal of the torus element with the given coordinates."""
        coords = list(coords)
        if self.kind == "Sp":
            return coords + [-c for c in coords]
        return coords

    def coroot(self, root: Root) -> tuple[Fraction, ...]:
        """Coroot in torus coordinates, ``a(coroot(a)) = 2``."""
        v = [Fraction(c) for c in root.vector]
        norm = sum(c * c for c in v)
        return tuple(2 * c / norm for c in v)

    # -- matrices ---------------------------------------------------------
    def root_matrix(self, root: Root, coeff=ONE) -> LaurentMatrix:
        coeff = coeff if isinstance(coeff, Laurent) else Laurent.const(coeff)
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for (i, j), s in zip(root.positions, root.signs):
            rows[i][j] = coeff * s
        return LaurentMatrix(rows)

    def torus_matrix(self, coords: Sequence) -> LaurentMatrix:
        return LaurentMatrix.diagonal(self.diagonal(coords))

    def torus_basis(self) -> list[tuple[Fraction, ...]]:
        """Basis of the Cartan subalgebra, as torus coordinate vectors."""
        r = self.rank
        if self.kind == "SL":
            return [tuple(Fraction(1 if k == i else -1 if k == i + 1 else 0) for k in range(r))
                    for i in range(r - 1)]
        return [tuple(Fraction(int(k == i)) for k in range(r)) for i in range(r)]

    def torus_basis_coordinates(self, coords: Sequence) -> list:
        """Coordinates of a torus element in :meth:`torus_basis`."""
        if self.kind == "SL":
            out, acc = [], ZERO if isinstance(coords[0], Laurent) else Fraction(0)
            for c in coords[:-1]:
                acc = acc + c
                out.append(acc)
            return out
        return list(coords)

    def symplectic_form(self) -> LaurentMatrix:
        h = self.rank
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for i in range(h):
            rows[i][i + h] = ONE
            rows[i + h][i] = -ONE
        return LaurentMatrix(rows)

    # -- membership -------------------------------------------------------
    def membership_violation(self, X: LaurentMatrix) -> str | None:
        if X.nrows != self.n or X.ncols != self.n:
            return f"matrix is {X.nrows}x{X.ncols}, expected {self.n}x{self.n}"
        if self.kind == "SL":
            t = X.trace()
            if t:
                return f"trace must vanish for SL_{self.n}, got {t!r}"
        elif self.kind == "Sp":
            h = self.rank
            for i in range(self.n):
                for j in range(self.n):
                    # (X^T J + J X)_{ij}
                    left = X[j - h, i] if j >= h else -X[j + h, i]
                    right = X[i + h, j] if i < h else -X[i - h, j]
                    val = left + right
                    if val:
                        return (f"X^T J + J X has nonzero entry ({i + 1},{j + 1}) = {val!r}; "
                                "X is not in sp")
        return None

    def check_member(self, X: LaurentMatrix) -> None:
        if X.nrows != X.ncols or X.nrows != self.n:
            raise DimensionError(f"matrix is {X.nrows}x{X.ncols}, expected {self.n}x{self.n}")
        msg = self.membership_violation(X)
        if msg:
            raise MembershipError(msg)

    def group_violation(self, g: LaurentMatrix) -> str | None:
        """Reason why an invertible ``g`` is not in the group, if any."""
        if g.nrows != self.n or g.ncols != self.n:
            return f"matrix is {g.nrows}x{g.ncols}, expected {self.n}x{self.n}"
        if self.kind == "SL":
            d = g.determinant()
            if d != ONE:
                return f"determinant must be 1 for SL_{self.n}, got {d!r}"
        elif self.kind == "Sp":
            J = self.symplectic_form()
            if g.transpose() @ J @ g != J:
                return "g^T J g != J"
        return None

    # -- root decomposition -----------------------------------------------
    def torus_coordinates(self, X: LaurentMatrix) -> tuple[Laurent, ...]:
        return tuple(X[i, i] for i in range(self.rank))

    def root_decompose(self, X: LaurentMatrix) -> RootDecomposition:
        self.check_member(X)
        dec = RootDecomposition(self.torus_coordinates(X))
        for r in self.roots:
            (i, j), s = r.canonical, r.signs[0]
            c = X[i, j]
            if c:
                dec.roots[r.index] = c * s
        return dec

    def reassemble(self, dec: RootDecomposition) -> LaurentMatrix:
        out = self.torus_matrix(dec.torus)
        for idx, c in dec.roots.items():
            out = out + self.root_matrix(self.roots[idx], c)
        return out

    # -- apartment --------------------------------------------------------
    def point(self, coords: Iterable) -> ApartmentPoint:
        p = ApartmentPoint(tuple(coords))
        if len(p.coords) != self.rank:
            raise DimensionError(f"point needs {self.rank} coordinates for {self.kind}_{self.n}, "
                                 f"got {len(p.coords)}")
        if self.kind == "SL" and sum(p.coords) != 0:
            raise DimensionError("SL apartment coordinates must sum to zero")
        return p

    def origin(self) -> ApartmentPoint:
        return ApartmentPoint((Fraction(0),) * self.rank)

    def value(self, root: Root, x: ApartmentPoint) -> Fraction:
        return root.value(x.coords)

    def in_closed_alcove(self, x: ApartmentPoint) -> bool:
        return all(w(x.coords) >= 0 for w in self.alcove_walls)

    def integral_roots(self, x: ApartmentPoint) -> list[Root]:
        return [r for r in self.roots if r.value(x.coords).denominator == 1]

    def critical_numbers(self, x: ApartmentPoint, window: int) -> list[Fraction]:
        """Degrees ``alpha(x) + m`` and integers lying in ``[-window, window]``."""
        shifts = {Fraction(0)} | {r.value(x.coords) % 1 for r in self.roots}
        out = set()
        for s in shifts:
            for k in range(-window - 1, window + 1):
                v = s + k
                if -window <= v <= window:
                    out.add(v)
        return sorted(out)

    def is_critical(self, r: Fraction, x: ApartmentPoint) -> bool:
        r = Fraction(r)
        return r.denominator == 1 or any((r - v.value(x.coords)).denominator == 1 for v in self.roots)

    def _normalization(self):
        if self.kind in ("GL", "SL"):
            return [[Fraction(1)] * self.rank], [Fraction(0)]
        return [], []

    def point_from_simple_values(self, values: Sequence[Fraction]) -> ApartmentPoint:
        """Point with prescribed simple-root values (trace zero for GL/SL)."""
        a_eq, b_eq = self._normalization()
        rows = [list(map(Fraction, s.vector)) for s in self.simple_roots] + a_eq
        rhs = [Fraction(v) for v in values] + b_eq
        if not rows:
            return self.origin()
        sol = linalg.solve(rows, rhs)
        return ApartmentPoint(tuple(sol))

    def optimal_points(self) -> list[OptimalPoint]:
        return list(_optimal_points(self.kind, self.n))

    def alcove_grid(self, denominator: int) -> list[ApartmentPoint]:
        """Points of the closed alcove whose simple-root values lie in ``(1/N)Z``."""
        N = denominator
        ell = len(self.simple_roots)
        out = []
        for vals in itertools.product(range(N + 1), repeat=ell):
            if self.highest_root is not None and sum(m * v for m, v in zip(self.marks, vals)) > N:
                continue
            out.append(self.point_from_simple_values([Fraction(v, N) for v in vals]))
        return out

    # -- affine Weyl group via monomial gauge elements ---------------------
    def reflection_element(self, wall: AffineFunctional) -> tuple[LaurentMatrix, LaurentMatrix]:
        """Monomial element acting on the apartment as the reflection in ``wall``."""
        if wall.constant == 0:
            alpha = self.root(wall.vector)
            E = self.root_matrix(alpha)
            F = self.root_matrix(self.negative(alpha))
        else:
            # wall 1 - a0: root vectors z E_{-a0} and z^{-1} E_{a0}
            a0 = self.highest_root
            E = self.root_matrix(self.negative(a0), Laurent.monomial(1, wall.constant))
            F = self.root_matrix(a0, Laurent.monomial(1, -wall.constant))
        eE, emF = _nilpotent_exp(E), _nilpotent_exp(-F)
        nmat = eE @ emF @ eE
        ninv = _nilpotent_exp(-E) @ _nilpotent_exp(F) @ _nilpotent_exp(-E)
        return nmat, ninv

    def act_on_point(self, nmat: LaurentMatrix, x: ApartmentPoint) -> ApartmentPoint:
        """Affine action of a monomial element: ``Ad(n) x - tau(n) n^{-1}``."""
        d = self.diagonal(x.coords)
        new = [None] * self.n
        for j in range(self.n):
            nz = [(i, nmat[i, j]) for i in range(self.n) if nmat[i, j]]
            if len(nz) != 1 or not nz[0][1].is_monomial():
                raise CapabilityError("only monomial elements act on points of the standard apartment")
            i, c = nz[0]
            new[i] = d[j] - c.valuation()
        return ApartmentPoint(tuple(new[: self.rank]))

    def reflect(self, wall: AffineFunctional, x: ApartmentPoint) -> ApartmentPoint:
        v = [Fraction(c) for c in wall.vector]
        norm = sum(c * c for c in v)
        val = wall(x.coords)
        return ApartmentPoint(tuple(c - 2 * val * a / norm for c, a in zip(x.coords, v)))

    def fold_into_alcove(self, x: ApartmentPoint):
        """Return ``(g, g_inv, y)`` with ``g`` monomial, ``y = g.x`` in the closed alcove."""
        g = LaurentMatrix.identity(self.n)
        ginv = g
        steps = 0
        while True:
            bad = next((w for w in self.alcove_walls if w(x.coords) < 0), None)
            if bad is None:
                return g, ginv, x
            nmat, ninv = self.reflection_element(bad)
            x = self.act_on_point(nmat, x)
            g = nmat @ g
            ginv = ginv @ ninv
            steps += 1
            if steps > 10_000:  # pragma: no cover
                raise RuntimeError("alcove folding did not terminate")


@lru_cache(maxsize=None)
def build_group(kind: str, n: int) -> GroupData:
    return GroupData(kind, n)


@lru_cache(maxsize=None)
def _optimal_points(kind: str, n: int) -> tuple[OptimalPoint, ...]:
    G = build_group(kind, n)
    walls = G.alcove_walls
    r = G.rank
    if not walls:
        return (OptimalPoint((), G.origin(), Fraction(0)),)
    a_eq, b_eq = G._normalization()
    a_eq = [row + [Fraction(0)] for row in a_eq]
    out = []
    for size in range(1, len(walls) + 1):
        for subset in itertools.combinations(range(len(walls)), size):
            A_ub, b_ub = [], []
            for k in subset:
                w = walls[k]
                A_ub.append([-Fraction(c) for c in w.vector] + [Fraction(1)])
                b_ub.append(Fraction(w.constant))
            for w in walls:
                A_ub.append([-Fraction(c) for c in w.vector] + [Fraction(0)])
                b_ub.append(Fraction(w.constant))
            c = [Fraction(0)] * r + [Fraction(1)]
            res = lexmin_face(c, A_ub, b_ub, a_eq, b_eq, coords=range(r))
            pt = ApartmentPoint(res.x[:r])
            out.append(OptimalPoint(tuple(walls[k].name for k in subset), pt, res.value))
    return tuple(out)
