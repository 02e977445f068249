"""Connection families with known slopes, used by tests, docs and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .exact import ZERO, Laurent, LaurentMatrix
from .filtration import Connection
from .roots import GroupData, build_group


def _mono(c, m):
    return Laurent.monomial(c, m)


def leading_term_family(G: GroupData, leading, rest=None, m: int = 0) -> Connection:
    """``A = leading z^{-m} + rest`` with constant matrices."""
    A = LaurentMatrix.from_constant(leading, -m)
    if rest is not None:
        A = A + LaurentMatrix.from_constant(rest, 0)
    return Connection(G, A)


def coxeter(G: GroupData, m: int = 0) -> Connection:
    """``X z^{-m}`` with ``X = z^{-1} E_{a0} + sum_i E_{-a_i}``; slope ``m + 1/h``."""
    X = G.root_matrix(G.highest_root, _mono(1, -1))
    for a in G.simple_roots:
        X = X + G.root_matrix(G.negative(a))
    return Connection(G, X.shift(-m))


def coxeter_variant(G: GroupData, m: int = 0) -> Connection:
    """``X' z^{-m}`` with ``X' = z^{-1} sum_i E_{a_i} + E_{-a0}``; slope ``m + (h-1)/h``.

    ``X'`` is homogeneous of degree ``-(h-1)/h`` at the alcove barycenter.
    """
    X = G.root_matrix(G.negative(G.highest_root))
    for a in G.simple_roots:
        X = X + G.root_matrix(a, _mono(1, -1))
    return Connection(G, X.shift(-m))


def coxeter_variant_literal(G: GroupData, m: int = 0) -> Connection:
    """``(z^{-1} E_{-a0} + sum_i E_{a_i}) z^{-m}``, a Coxeter element of slope ``m + 1/h``."""
    X = G.root_matrix(G.negative(G.highest_root), _mono(1, -1))
    for a in G.simple_roots:
        X = X + G.root_matrix(a)
    return Connection(G, X.shift(-m))


def sl_line_example(n: int, m: int = 0) -> Connection:
    """``X z^{-m}`` with ``X = z^{-1} e_{1,n-1} + sum_{i<=n-2} e_{i+1,i}`` in SL_n.

    Slope ``m + 1/(n-1)``; for ``n = 3`` the fundamental strata lie on the
    line ``x_1 - x_2 = 1/2``.
    """
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 2] = _mono(1, -1 - m)
    for i in range(n - 2):
        rows[i + 1][i] = _mono(1, -m)
    return Connection(build_group("SL", n), LaurentMatrix(rows))


def sp4_example(m: int = 0) -> Connection:
    """``Y z^{-m}``, ``Y = z^{-1}(e_13 - e_24) + e_31 + e_42``; slope ``m + 1/2``."""
    rows = [[ZERO] * 4 for _ in range(4)]
    rows[0][2] = _mono(1, -1 - m)
    rows[1][3] = _mono(-1, -1 - m)
    rows[2][0] = _mono(1, -m)
    rows[3][1] = _mono(1, -m)
    return Connection(build_group("Sp", 4), LaurentMatrix(rows))


def airy(r: int = 1) -> Connection:
    """GL_2 connection ``[[0, z^{-r}], [z^{-r+1}, 0]]``; slope ``r - 1/2``."""
    return Connection(build_group("GL", 2),
                      LaurentMatrix([[ZERO, _mono(1, -r)], [_mono(1, 1 - r), ZERO]]))


def scalar_gl1(order: int) -> Connection:
    return Connection(build_group("GL", 1), LaurentMatrix([[_mono(1, -order)]]))


def family_catalog() -> dict[str, tuple[Connection, Fraction]]:
    """Small representatives of every family with the slope they must have."""
    F = Fraction
    cat = {}
    for m in (0, 1):
        cat[f"sl3-line-m{m}"] = (sl_line_example(3, m), m + F(1, 2))
        cat[f"sp4-m{m}"] = (sp4_example(m), m + F(1, 2))
        cat[f"coxeter-sl3-m{m}"] = (coxeter(build_group("SL", 3), m), m + F(1, 3))
        cat[f"variant-sl3-m{m}"] = (coxeter_variant(build_group("SL", 3), m), m + F(2, 3))
    cat["sl4-line-m0"] = (sl_line_example(4, 0), F(1, 3))
    cat["coxeter-sp4-m0"] = (coxeter(build_group("Sp", 4), 0), F(1, 4))
    cat["airy-r1"] = (airy(1), F(1, 2))
    cat["airy-r2"] = (airy(2), F(3, 2))
    cat["gl1-order2"] = (scalar_gl1(2), F(2))
    return cat
