"""Linear algebra over Q for small constant matrices (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

QMat = list[list[Fraction]]


def qmat(rows) -> QMat:
    return [[Fraction(v) for v in r] for r in rows]


def identity(n: int) -> QMat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> QMat:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def matmul(a: QMat, b: QMat) -> QMat:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)) for c in bt] for r in a]


def matvec(a: QMat, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(r, v) if x and y), Fraction(0)) for r in a]


def sub(a: QMat, b: QMat) -> QMat:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def add(a: QMat, b: QMat) -> QMat:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scale(a: QMat, c) -> QMat:
    return [[x * c for x in r] for r in a]


def transpose(a: QMat) -> QMat:
    return [list(r) for r in zip(*a)]


def is_zero(a: QMat) -> bool:
    return all(x == 0 for r in a for x in r)


def rref(a: QMat) -> tuple[QMat, list[int]]:
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: QMat) -> int:
    return len(rref(a)[1]) if a and a[0] else 0


def nullspace(a: QMat, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : a v = 0}``."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(a[0])
    red, piv = rref(a)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: QMat, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``a x = b`` or ``None``."""
    n = len(a[0])
    aug = [list(r) + [Fraction(v)] for r, v in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def inverse(a: QMat) -> QMat:
    n = len(a)
    aug = [list(r) + e for r, e in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def determinant(a: QMat) -> Fraction:
    m = [list(r) for r in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def is_nilpotent(a: QMat) -> bool:
    n = len(a)
    p = a
    for _ in range(n - 1):
        p = matmul(p, a)
    return is_zero(p)


def column_space_complement(vectors: list[list[Fraction]], within: list[list[Fraction]]) -> list[list[Fraction]]:
    """Vectors from ``within`` extending ``vectors`` to a basis of their joint span."""
    chosen = [list(v) for v in vectors]
    r = rank(chosen) if chosen else 0
    out = []
    for w in within:
        trial = chosen + [list(w)]
        rr = rank(trial)
        if rr > r:
            chosen.append(list(w))
            out.append(list(w))
            r = rr
    return out
