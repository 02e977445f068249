"""Exact Laurent polynomials and Laurent-polynomial matrices over Q.

A scalar is stored as ``z**val * poly(z)`` where ``poly`` is a flint
``fmpq_poly`` with nonzero constant term.  Matrices are immutable tuples of
rows.  The derivation is ``tau = z d/dz``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_poly, fmpz_poly

from .errors import DimensionError, InvertibilityError

INF = math.inf

RationalLike = int | Fraction | fmpq | str


def to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    return Fraction(x)


def _to_fmpq(x: RationalLike) -> fmpq:
    f = to_fraction(x)
    return fmpq(f.numerator, f.denominator)


def _low_zeros(p: fmpq_poly) -> int:
    k = 0
    for c in p.coeffs():
        if c != 0:
            return k
        k += 1
    return k


class Laurent:
    """Finite Laurent polynomial in ``z`` with rational coefficients."""

    __slots__ = ("_val", "_poly")

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        self._val = 0
        self._poly = fmpq_poly(0)
        if terms:
            items = [(int(k), to_fraction(v)) for k, v in terms.items()]
            items = [(k, v) for k, v in items if v != 0]
            if items:
                lo = min(k for k, _ in items)
                hi = max(k for k, _ in items)
                coeffs = [fmpq(0)] * (hi - lo + 1)
                for k, v in items:
                    coeffs[k - lo] = fmpq(v.numerator, v.denominator)
                self._val = lo
                self._poly = fmpq_poly(coeffs)

    @classmethod
    def _raw(cls, val: int, poly: fmpq_poly) -> "Laurent":
        """Build from shift and polynomial, normalizing the constant term."""
        obj = cls.__new__(cls)
        if poly.is_zero():
            obj._val, obj._poly = 0, fmpq_poly(0)
            return obj
        k = _low_zeros(poly)
        if k:
            poly = poly.right_shift(k)
        obj._val, obj._poly = val + k, poly
        return obj

    @classmethod
    def monomial(cls, c: RationalLike, m: int) -> "Laurent":
        f = to_fraction(c)
        if f == 0:
            return ZERO
        return cls._raw(int(m), fmpq_poly([fmpq(f.numerator, f.denominator)]))

    @classmethod
    def const(cls, c: RationalLike) -> "Laurent":
        return cls.monomial(c, 0)

    @classmethod
    def coerce(cls, x: "Laurent | RationalLike") -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return cls.const(x)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __bool__(self) -> bool:
        return not self._poly.is_zero()

    def valuation(self) -> int | float:
        return INF if self.is_zero() else self._val

    def degree(self) -> int | float:
        return -INF if self.is_zero() else self._val + self._poly.degree()

    def terms(self) -> dict[int, Fraction]:
        out = {}
        for i, c in enumerate(self._poly.coeffs()):
            if c != 0:
                out[self._val + i] = Fraction(int(c.p), int(c.q))
        return out

    def coeff(self, m: int) -> Fraction:
        i = m - self._val
        if self.is_zero() or i < 0 or i > self._poly.degree():
            return Fraction(0)
        c = self._poly[i]
        return Fraction(int(c.p), int(c.q))

    def leading(self) -> Fraction:
        """Coefficient of the lowest power."""
        return self.coeff(self._val) if self else Fraction(0)

    def is_monomial(self) -> bool:
        return bool(self) and self._poly.degree() == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self._val == 0 and self._poly.degree() == 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = Laurent.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v = min(self._val, other._val)
        p = self._poly.left_shift(self._val - v) + other._poly.left_shift(other._val - v)
        return Laurent._raw(v, p)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw(self._val, -self._poly)

    def __sub__(self, other):
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Laurent):
            if self.is_zero() or other.is_zero():
                return ZERO
            return Laurent._raw(self._val + other._val, self._poly * other._poly)
        if isinstance(other, (int, Fraction, fmpq)):
            f = _to_fmpq(other)
            if f == 0:
                return ZERO
            return Laurent._raw(self._val, self._poly * f)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``z**k``."""
        return self if self.is_zero() else Laurent._raw(self._val + k, self._poly)

    def divide_exact(self, other: "Laurent") -> "Laurent":
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        q, r = divmod(self._poly, other._poly)
        if not r.is_zero():
            raise ArithmeticError("inexact Laurent division")
        return Laurent._raw(self._val - other._val, q)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        return self._val == other._val and self._poly == other._poly

    def __hash__(self):
        return hash((self._val, tuple(self.terms().items())))

    def tau(self) -> "Laurent":
        """Apply ``z d/dz``."""
        if self.is_zero():
            return self
        p = self._poly * self._val + self._poly.derivative().left_shift(1)
        return Laurent._raw(self._val, p)

    def substitute_power(self, e: int) -> "Laurent":
        """Return ``f(u**e)`` written in the variable ``u``."""
        if e < 1:
            raise ValueError("ramification index must be positive")
        if self.is_zero() or e == 1:
            return self
        num = self._poly.numer().inflate(e)
        return Laurent._raw(self._val * e, fmpq_poly(num, self._poly.denom()))

    def truncate_above(self, m: int) -> "Laurent":
        """Keep the terms of power strictly below ``m``."""
        if self.is_zero() or m <= self._val:
            return ZERO
        return Laurent._raw(self._val, self._poly.truncate(m - self._val))

    def integer_form(self) -> tuple[int, int, fmpz_poly]:
        """``self = z**val * poly / den`` with ``poly`` integral."""
        return self._val, int(self._poly.denom()), self._poly.numer()

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for m, c in self.terms().items():
            if m == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z^{m}")
        return " + ".join(parts)


ZERO = Laurent()
ONE = Laurent.const(1)


def as_laurent(x) -> Laurent:
    if isinstance(x, Laurent):
        return x
    if isinstance(x, Mapping):
        return Laurent(x)
    return Laurent.const(x)


class LaurentMatrix:
    """Immutable square or rectangular matrix of Laurent polynomials."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_laurent(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "LaurentMatrix":
        m = n if m is None else m
        return cls([[ZERO] * m for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_constant(cls, mat: Sequence[Sequence[RationalLike]], power: int = 0) -> "LaurentMatrix":
        return cls([[Laurent.monomial(c, power) for c in row] for row in mat])

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, Sequence[Sequence[RationalLike]]], n: int | None = None
                          ) -> "LaurentMatrix":
        """Assemble ``sum_m coeffs[m] z**m``."""
        if n is None:
            if not coeffs:
                raise DimensionError("cannot infer size of an empty coefficient map")
            n = len(next(iter(coeffs.values())))
        out = cls.zeros(n)
        for m, mat in coeffs.items():
            if len(mat) != n or any(len(r) != n for r in mat):
                raise DimensionError(f"coefficient of z^{m} is not {n}x{n}")
            out = out + cls.from_constant(mat, m)
        return out

    @classmethod
    def diagonal(cls, entries: Sequence) -> "LaurentMatrix":
        n = len(entries)
        return cls([[as_laurent(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "LaurentMatrix":
        return cls([[as_laurent(value) if (a, b) == (i, j) else ZERO for b in range(n)] for a in range(n)])

    # -- basic protocol ---------------------------------------------------
    @property
    def size(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionError(f"matrix is {self.nrows}x{self.ncols}, not square")
        return self.nrows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "LaurentMatrix(" + repr([[repr(x) for x in r] for r in self.rows]) + ")"

    def _check_same(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError(
                f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __add__(self, other):
        self._check_same(other)
        return LaurentMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check_same(other)
        return LaurentMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return LaurentMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "LaurentMatrix":
        c = as_laurent(c)
        return LaurentMatrix([[c * a for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, LaurentMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def apply(self, vec: Sequence[Laurent]) -> list[Laurent]:
        if len(vec) != self.ncols:
            raise DimensionError("vector length does not match matrix")
        out = []
        for r in self.rows:
            acc = ZERO
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(zip(*self.rows)) if self.rows else self

    def trace(self) -> Laurent:
        acc = ZERO
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def tau(self) -> "LaurentMatrix":
        return LaurentMatrix([[a.tau() for a in r] for r in self.rows])

    def substitute_power(self, e: int) -> "LaurentMatrix":
        return LaurentMatrix([[a.substitute_power(e) for a in r] for r in self.rows])

    def shift(self, k: int) -> "LaurentMatrix":
        return LaurentMatrix([[a.shift(k) for a in r] for r in self.rows])

    def map(self, f) -> "LaurentMatrix":
        return LaurentMatrix([[f(a) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def valuation(self) -> int | float:
        return min((a.valuation() for r in self.rows for a in r), default=INF)

    def max_power(self) -> int | float:
        return max((a.degree() for r in self.rows for a in r), default=-INF)

    def powers(self) -> list[int]:
        """Sorted list of powers carrying a nonzero coefficient."""
        out = set()
        for r in self.rows:
            for a in r:
                out.update(a.terms())
        return sorted(out)

    def coefficient(self, m: int) -> list[list[Fraction]]:
        """Constant matrix multiplying ``z**m``."""
        return [[a.coeff(m) for a in r] for r in self.rows]

    def coefficients(self) -> dict[int, list[list[Fraction]]]:
        return {m: self.coefficient(m) for m in self.powers()}

    def truncate_above(self, m: int) -> "LaurentMatrix":
        return LaurentMatrix([[a.truncate_above(m) for a in r] for r in self.rows])

    def power(self, k: int) -> "LaurentMatrix":
        out = LaurentMatrix.identity(self.size)
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def is_nilpotent(self) -> bool:
        return self.power(self.size).is_zero()

    def determinant(self) -> Laurent:
        return bareiss_determinant([list(r) for r in self.rows])

    def commutator(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self @ other - other @ self


def valuation(x) -> int | float:
    """Valuation of a scalar, vector or matrix; zero has valuation ``INF``."""
    if isinstance(x, (Laurent, LaurentMatrix)):
        return x.valuation()
    return min((valuation(a) for a in x), default=INF)


def tau(x):
    if isinstance(x, (Laurent, LaurentMatrix)):
        return x.tau()
    return [tau(a) for a in x]


def bareiss_determinant(m: list[list[Laurent]]) -> Laurent:
    """Fraction-free determinant over the Laurent ring."""
    n = len(m)
    if n == 0:
        return ONE
    m = [list(r) for r in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (p * m[i][j] - m[i][k] * m[k][j]).divide_exact(prev)
        prev = p
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def adjugate_and_det(g: LaurentMatrix) -> tuple[LaurentMatrix, Laurent]:
    """Return ``(adj(g), det(g))`` by fraction-free Gauss-Jordan on ``[g | I]``."""
    n = g.size
    aug = [list(g.rows[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    det_sign = 1
    prev = ONE
    for k in range(n):
        if aug[k][k].is_zero():
            for i in range(k + 1, n):
                if aug[i][k]:
                    aug[k], aug[i] = aug[i], aug[k]
                    det_sign = -det_sign
                    break
            else:
                return LaurentMatrix.zeros(n), ZERO
        p = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            a = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(2 * n):
                if j == k:
                    continue
                row_i[j] = (p * row_i[j] - a * row_k[j]).divide_exact(prev)
            row_i[k] = ZERO
        prev = p
    det = prev
    # after the last step every diagonal entry equals det and the right block is adj
    adj = LaurentMatrix([r[n:] for r in aug])
    if det_sign == -1:
        det = -det
        adj = -adj
    return adj, det


def invert_unit(g: LaurentMatrix, window: int = 64) -> LaurentMatrix:
    """Exact inverse of ``g`` when it is again a Laurent-polynomial matrix.

    The determinant must be a monomial, or the inverse series of the
    determinant must give a Laurent-polynomial inverse supported within
    ``[-window, window]``.
    """
    adj, det = adjugate_and_det(g)
    n = g.size
    if det.is_zero():
        raise InvertibilityError("matrix is singular", det)
    if det.is_monomial():
        c, m = det.leading(), det.valuation()
        return adj.scale(Laurent.monomial(1 / c, -m))
    # det = c z^m (1 + u) with u in z Q[z]; invert the series up to the window
    c, m = det.leading(), det.valuation()
    unit = det.shift(-m) * (1 / c)
    u = unit - ONE
    lo = adj.valuation()
    prec = window - lo + m + 1
    if prec <= 0:
        raise InvertibilityError("determinant is not a unit within the power window", det)
    inv_series = ONE
    term = ONE
    for _ in range(prec):
        term = (term * (-u)).truncate_above(prec)
        if term.is_zero():
            break
        inv_series = inv_series + term
    scalar = inv_series.shift(-m) * (1 / c)
    cand = adj.scale(scalar).truncate_above(window + 1)
    if g @ cand != LaurentMatrix.identity(n):
        raise InvertibilityError("inverse does not terminate within the power window", det)
    return cand
