"""Small exact linear programs over Q (dense two-phase simplex, Bland's rule).

The tableau holds ``flint.fmpq`` entries for speed; inputs and outputs are
``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from flint import fmpq

Vec = Sequence[Fraction]


@dataclass
class LPResult:
    status: str                 # "optimal", "infeasible" or "unbounded"
    value: Fraction | None
    x: tuple[Fraction, ...] | None


def _q(v) -> fmpq:
    v = Fraction(v)
    return fmpq(v.numerator, v.denominator)


def _frac(v: fmpq) -> Fraction:
    return Fraction(int(v.p), int(v.q))


def _pivot(T: list[list[fmpq]], r: int, c: int) -> None:
    pr = T[r]
    inv = 1 / pr[c]
    if inv != 1:
        T[r] = pr = [v * inv for v in pr]
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]


def _simplex(T: list[list[Fraction]], basis: list[int], ncols: int, allowed: int) -> str:
    """Maximize the objective stored in the last row of ``T`` (as ``-c``).

    Only columns ``< allowed`` may enter.  Bland's rule avoids cycling.
    """
    obj = T[-1]
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, leave, enter)
        basis[leave] = enter


def maximize(c: Vec, A_ub: Sequence[Vec] = (), b_ub: Vec = (), A_eq: Sequence[Vec] = (),
             b_eq: Vec = ()) -> LPResult:
    """Maximize ``c.x`` over free ``x`` with ``A_ub x <= b_ub`` and ``A_eq x = b_eq``."""
    nv = len(c)
    F = fmpq
    rows: list[tuple[list[fmpq], fmpq, str]] = []
    for a, b in zip(A_ub, b_ub):
        rows.append(([_q(v) for v in a], _q(b), "le"))
    for a, b in zip(A_eq, b_eq):
        rows.append(([_q(v) for v in a], _q(b), "eq"))
    m = len(rows)
    n_slack = sum(1 for r in rows if r[2] == "le")
    # columns: x+ (nv), x- (nv), slacks, artificials (m)
    ncore = 2 * nv + n_slack
    ncols = ncore + m
    T = []
    basis = []
    s = 0
    for i, (a, b, kind) in enumerate(rows):
        row = [F(0)] * (ncols + 1)
        sign = -1 if b < 0 else 1
        for j, v in enumerate(a):
            row[j] = sign * v
            row[nv + j] = -sign * v
        if kind == "le":
            row[2 * nv + s] = F(sign)
            s += 1
        row[ncore + i] = F(1)
        row[ncols] = sign * b
        T.append(row)
        basis.append(ncore + i)
    # phase one: maximize -(sum of artificials)
    obj = [F(0)] * (ncols + 1)
    for row in T:
        obj = [o - v for o, v in zip(obj, row)]
    for i in range(m):
        obj[ncore + i] = F(0)
    T.append(obj)
    _simplex(T, basis, ncols, ncore)
    if T[-1][ncols] != 0:
        return LPResult("infeasible", None, None)
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= ncore:
            j = next((j for j in range(ncore) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    # phase two
    obj = [F(0)] * (ncols + 1)
    for j, v in enumerate(c):
        obj[j] = -_q(v)
        obj[nv + j] = _q(v)
    T[-1] = obj
    for i in range(m):
        if T[-1][basis[i]] != 0:
            f = T[-1][basis[i]]
            T[-1] = [a - f * b for a, b in zip(T[-1], T[i])]
    status = _simplex(T, basis, ncols, ncore)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    val = [F(0)] * ncols
    for i in range(m):
        val[basis[i]] = T[i][ncols]
    x = tuple(_frac(val[j] - val[nv + j]) for j in range(nv))
    return LPResult("optimal", _frac(T[-1][ncols]), x)


def lexmin_face(c: Vec, A_ub: Sequence[Vec], b_ub: Vec, A_eq: Sequence[Vec] = (), b_eq: Vec = (),
                coords: Sequence[int] | None = None) -> LPResult:
    """Maximize ``c.x`` and return the lexicographically smallest maximizer.

    Lexicographic order is taken over ``coords`` (default: all variables).
    """
    res = maximize(c, A_ub, b_ub, A_eq, b_eq)
    if res.status != "optimal":
        return res
    nv = len(c)
    A_eq = [list(a) for a in A_eq] + [list(c)]
    b_eq = list(b_eq) + [res.value]
    x = res.x
    for k in (range(nv) if coords is None else coords):
        obj = [Fraction(0)] * nv
        obj[k] = Fraction(-1)
        r = maximize(obj, A_ub, b_ub, A_eq, b_eq)
        if r.status != "optimal":  # pragma: no cover - face is bounded in our uses
            break
        row = [Fraction(0)] * nv
        row[k] = Fraction(1)
        A_eq.append(row)
        b_eq.append(-r.value)
        x = r.x
    return LPResult("optimal", res.value, x)
