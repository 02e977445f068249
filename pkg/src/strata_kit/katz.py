"""Independent slope oracle: cyclic vector, companion operator, Newton polygon.

For a differential module ``D = tau + A`` on ``F^n`` a cyclic vector ``e``
gives ``D^n e = sum_i a_i D^i e`` and the operator
``tau^n - sum_i a_i tau^i``.  Its slope is ``max(0, max_i -v(a_i)/(n - i))``.

The coefficients come from a fraction-free Gauss-Jordan elimination over
``Z[z]``, so only valuations of Cramer numerators are needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from flint import fmpz_poly

from .errors import InconsistencyError
from .exact import INF, ONE, ZERO, Laurent, LaurentMatrix

# random cyclic-vector candidates tried after the deterministic ones
RANDOM_CANDIDATES = 48


def _poly_val(p: fmpz_poly) -> int | float:
    if p.is_zero():
        return INF
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return INF  # pragma: no cover


def apply_connection(A: LaurentMatrix, v: Sequence[Laurent]) -> list[Laurent]:
    """``D v = tau(v) + A v``."""
    Av = A.apply(v)
    return [x.tau() + y for x, y in zip(v, Av)]


def _integral_vector(v: Sequence[Laurent]) -> tuple[int, int, list[fmpz_poly]]:
    """Write ``v = z**s / d * w`` with ``w`` in ``Z[z]^n``."""
    nonzero = [x for x in v if x]
    if not nonzero:
        return 0, 1, [fmpz_poly(0) for _ in v]
    s = min(x.valuation() for x in nonzero)
    from math import lcm
    d = 1
    for x in nonzero:
        d = lcm(d, x.integer_form()[1])
    out = []
    for x in v:
        if not x:
            out.append(fmpz_poly(0))
            continue
        val, den, num = x.integer_form()
        out.append(num.left_shift(val - s) * (d // den))
    return s, d, out


@dataclass
class CompanionData:
    """Outcome of the oracle for one cyclic vector."""

    cyclic_vector: list[Laurent]
    valuations: list[int | float]   # v(a_i), i = 0..n-1
    slope: Fraction
    attempts: int
    numerators: list[fmpz_poly] = field(repr=False, default_factory=list)
    denominator: fmpz_poly | None = field(repr=False, default=None)
    scales: list[tuple[int, int]] = field(repr=False, default_factory=list)

    def coefficient_series_valuations(self) -> list[int | float]:
        return list(self.valuations)


def _solve_fraction_free(cols: list[list[fmpz_poly]], rhs: list[fmpz_poly]):
    """Gauss-Jordan without fractions on ``[cols | rhs]``.

    Returns ``(det, nums)`` with ``x_i = nums[i] / det`` solving the system,
    or ``None`` when the columns are dependent.
    """
    n = len(cols)
    aug = [[cols[j][i] for j in range(n)] + [rhs[i]] for i in range(n)]
    prev = fmpz_poly(1)
    for k in range(n):
        best = None
        for i in range(k, n):
            e = aug[i][k]
            if not e.is_zero() and (best is None or e.degree() < aug[best][k].degree()):
                best = i
        if best is None:
            return None
        aug[k], aug[best] = aug[best], aug[k]
        p = aug[k][k]
        row_k = aug[k]
        for i in range(n):
            if i == k:
                continue
            row_i = aug[i]
            a = row_i[k]
            if a.is_zero():
                for j in range(k + 1, n + 1):
                    row_i[j] = (p * row_i[j]) // prev if not row_i[j].is_zero() else row_i[j]
                if i < k:
                    row_i[i] = (p * row_i[i]) // prev
            else:
                for j in range(k + 1, n + 1):
                    row_i[j] = (p * row_i[j] - a * row_k[j]) // prev
                if i < k:
                    row_i[i] = (p * row_i[i]) // prev
            row_i[k] = fmpz_poly(0)
        prev = p
    return prev, [aug[i][n] for i in range(n)], [aug[i][i] for i in range(n)]


def _candidates(n: int, seed: int):
    # A sparse seeded vector first: its iterates stay short, which keeps the
    # fraction-free solve cheap on adjoint matrices of size 15 and up.
    rng = random.Random(seed)
    yield [Laurent.monomial(rng.randint(1, 3), rng.randint(0, 1)) for _ in range(n)]
    yield [Laurent.monomial(1, j) for j in range(n)]
    for j in range(n):
        yield [ONE if i == j else ZERO for i in range(n)]
    for _ in range(RANDOM_CANDIDATES):
        yield [Laurent({rng.randint(0, n): rng.randint(-5, 5) or 1, rng.randint(0, n): rng.randint(-5, 5)})
               for _ in range(n)]


def companion_data(A: LaurentMatrix, seed: int = 0) -> CompanionData:
    n = A.size
    attempts = 0
    for e in _candidates(n, seed):
        attempts += 1
        vs = [list(e)]
        for _ in range(n):
            vs.append(apply_connection(A, vs[-1]))
        forms = [_integral_vector(v) for v in vs]
        cols = [f[2] for f in forms[:n]]
        solved = _solve_fraction_free(cols, forms[n][2])
        if solved is None:
            continue
        det, nums, diag = solved
        # v_k = z^{s_k}/d_k w_k, so a_k = a'_k * d_k/d_n * z^{s_n - s_k}
        s_n = forms[n][0]
        vals = []
        for k in range(n):
            vk = _poly_val(nums[k])
            vals.append(INF if vk == INF else vk - _poly_val(diag[k]) + s_n - forms[k][0])
        slope = Fraction(0)
        for i, v in enumerate(vals):
            if v != INF:
                slope = max(slope, Fraction(-v, n - i))
        return CompanionData(list(e), vals, slope, attempts, nums, det,
                             [(f[0], f[1]) for f in forms])
    raise InconsistencyError("no cyclic vector found among the candidates",
                             size=n, attempts=attempts)


def katz_newton_slope(A: LaurentMatrix, seed: int = 0) -> Fraction:
    """Slope of ``tau + A`` read off the Newton polygon of a companion operator."""
    return companion_data(A, seed).slope
