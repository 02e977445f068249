"""Constant conjugations that destabilize a nilpotent graded representative.

Given a stratum ``(x, r, rep)`` write ``rep = z^{-r} z^{-x~} C z^{x~}`` with
``C`` a constant matrix.  A graded Jacobson-Morozov triple for ``C`` gives a
semisimple ``h`` in the degree-zero part at ``x``.  An ``h``-eigenbasis, adapted
to the form for Sp, gives ``P`` in ``H_x`` such that ``P^{-1} C P`` has only
positive weights for ``lambda = diag(P^{-1} h P)``.  The lift
``theta_x(P) = z^{-x~} P z^{x~}`` conjugates ``A - x~`` exactly, so gauging by
``theta_x(P)^{-1}`` moves the leading term into positive weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .exact import ZERO, Laurent, LaurentMatrix
from .roots import ApartmentPoint, GroupData, Root
from .strata import GaugeElement, Stratum

QMat = linalg.QMat


class ReductionFailure(Exception):
    """The heuristic move could not be built; carries a diagnostic."""


def representative_constant(s: Stratum) -> QMat:
    """``C`` with ``rep = z^{-r} z^{-x~} C z^{x~}``."""
    G = s.group
    d = G.diagonal(s.point.coords)
    out = linalg.zeros(G.n)
    for i, row in enumerate(s.rep.rows):
        for j, a in enumerate(row):
            if a:
                m = -s.depth - d[i] + d[j]
                out[i][j] = a.coeff(int(m))
    return out


def theta_lift(P: QMat, x: ApartmentPoint, G: GroupData) -> LaurentMatrix:
    """``z^{-x~} P z^{x~}``; requires ``P`` in ``H_x``."""
    d = G.diagonal(x.coords)
    rows = []
    for a, row in enumerate(P):
        out = []
        for b, c in enumerate(row):
            if c:
                k = -d[a] + d[b]
                if k.denominator != 1:
                    raise ReductionFailure("conjugating matrix is not in H_x")
                out.append(Laurent.monomial(c, int(k)))
            else:
                out.append(ZERO)
        rows.append(out)
    return LaurentMatrix(rows)


def _const(M: LaurentMatrix) -> QMat:
    return M.coefficient(0)


def _bracket(a: QMat, b: QMat) -> QMat:
    return linalg.sub(linalg.matmul(a, b), linalg.matmul(b, a))


def _classes(d) -> dict[Fraction, list[int]]:
    out: dict[Fraction, list[int]] = {}
    for k, v in enumerate(d):
        out.setdefault(Fraction(v) % 1, []).append(k)
    return out


def graded_jm_semisimple(G: GroupData, C: QMat, x: ApartmentPoint) -> QMat:
    """Semisimple ``h`` of degree zero at ``x`` with ``[h, C] = 2C``."""
    d = G.diagonal(x.coords)
    n = G.n
    c0 = None
    for i in range(n):
        for j in range(n):
            if C[i][j]:
                c0 = (d[i] - d[j]) % 1
                break
        if c0 is not None:
            break
    if c0 is None:
        return linalg.zeros(n)
    target = (-c0) % 1
    basis: list[QMat] = []
    for r in G.roots:
        if r.value(x.coords) % 1 == target:
            basis.append(_const(G.root_matrix(r)))
    if target == 0:
        for t in G.torus_basis():
            basis.append(_const(G.torus_matrix(t)))
    if not basis:
        raise ReductionFailure("no degree-compatible partner for the representative")
    images = [_bracket(C, _bracket(C, B)) for B in basis]
    rows = [[img[i][j] for img in images] for i in range(n) for j in range(n)]
    rhs = [-2 * C[i][j] for i in range(n) for j in range(n)]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise ReductionFailure("representative is not nilpotent (no sl2 triple)")
    Z = linalg.zeros(n)
    for coef, B in zip(sol, basis):
        if coef:
            Z = linalg.add(Z, linalg.scale(B, coef))
    return _bracket(C, Z)


def _eigenspaces(h: QMat, idx: list[int]) -> list[tuple[int, list[Fraction]]]:
    """Integer eigenpairs of ``h`` restricted to the coordinates ``idx``."""
    sub = [[h[a][b] for b in idx] for a in idx]
    k = len(idx)
    out = []
    bound = 2 * len(h) + 2
    for mu in range(bound, -bound - 1, -1):
        M = [[sub[a][b] - (mu if a == b else 0) for b in range(k)] for a in range(k)]
        for v in linalg.nullspace(M, k):
            out.append((mu, v))
    if len(out) != k:
        raise ReductionFailure("h is not diagonalizable over Z on a graded piece")
    return out


def _embed(v: list[Fraction], idx: list[int], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for a, c in zip(idx, v):
        out[a] = c
    return out


def _omega(G: GroupData, u, v) -> Fraction:
    h = G.rank
    return sum((u[i] * v[i + h] - u[i + h] * v[i] for i in range(h)), Fraction(0))


def _dual_basis(G, basis, partners):
    """Vectors ``b'`` in span(partners) with ``omega(b_k, b'_l) = delta_kl``."""
    W = [[_omega(G, b, f) for f in partners] for b in basis]
    X = linalg.inverse(W)
    k = len(basis)
    return [[sum((partners[m][a] * X[m][l] for m in range(k)), Fraction(0)) for a in range(G.n)]
            for l in range(k)]


def _symplectic_basis(G, vectors):
    """Symplectic Gram-Schmidt: pairs ``(u, u')`` with ``omega(u, u') = 1``."""
    rest = [list(v) for v in vectors]
    pairs = []
    while rest:
        u = rest.pop(0)
        if all(c == 0 for c in u):
            continue
        k = next((t for t, w in enumerate(rest) if _omega(G, u, w) != 0), None)
        if k is None:
            raise ReductionFailure("degenerate symplectic piece")
        v = rest.pop(k)
        f = _omega(G, u, v)
        v = [c / f for c in v]
        new = []
        for w in rest:
            a, b = _omega(G, w, v), _omega(G, w, u)
            new.append([wc - a * uc + b * vc for wc, uc, vc in zip(w, u, v)])
        rest = [w for w in new if any(c != 0 for c in w)]
        pairs.append((u, v))
    return pairs


def _eigenbasis_matrix(G: GroupData, h: QMat, x: ApartmentPoint) -> QMat:
    d = G.diagonal(x.coords)
    n = G.n
    classes = _classes(d)
    cols: list[list[Fraction] | None] = [None] * n
    if G.kind != "Sp":
        for c, idx in classes.items():
            vecs = [_embed(v, idx, n) for _, v in _eigenspaces(h, idx)]
            for slot, v in zip(idx, vecs):
                cols[slot] = v
        P = linalg.transpose(cols)
        if G.kind == "SL":
            det = linalg.determinant(P)
            cols[0] = [c / det for c in cols[0]]
            P = linalg.transpose(cols)
        return P
    hh = G.rank
    done = set()
    for c, idx in classes.items():
        if c in done:
            continue
        neg = (-c) % 1
        done.update({c, neg})
        if neg != c:
            eig = _eigenspaces(h, idx)
            basis = [_embed(v, idx, n) for _, v in eig]
            pidx = classes[neg]
            partners = [_embed([Fraction(int(a == b)) for b in range(len(pidx))], pidx, n)
                        for a in range(len(pidx))]
            duals = _dual_basis(G, basis, partners)
            for slot, b, bd in zip(idx, basis, duals):
                if slot < hh:
                    cols[slot], cols[slot + hh] = b, bd
                else:
                    cols[slot], cols[slot - hh] = b, [-t for t in bd]
        else:
            eig = _eigenspaces(h, idx)
            by_mu: dict[int, list] = {}
            for mu, v in eig:
                by_mu.setdefault(mu, []).append(_embed(v, idx, n))
            pairs = []
            for mu in sorted(by_mu):
                if mu > 0:
                    duals = _dual_basis(G, by_mu[mu], by_mu.get(-mu, []))
                    pairs.extend(zip(by_mu[mu], duals))
            pairs.extend(_symplectic_basis(G, by_mu.get(0, [])))
            slots = [k for k in idx if k < hh]
            if len(slots) != len(pairs):
                raise ReductionFailure("symplectic eigenbasis has the wrong size")
            for k, (u, up) in zip(slots, pairs):
                cols[k], cols[k + hh] = u, up
    return linalg.transpose(cols)


def _weyl_matrix(G: GroupData, root: Root) -> tuple[QMat, QMat]:
    E = _const(G.root_matrix(root))
    F = _const(G.root_matrix(G.negative(root)))
    n = G.n

    def ex(M):
        out, term = linalg.identity(n), linalg.identity(n)
        for k in range(1, n + 2):
            term = linalg.scale(linalg.matmul(term, M), Fraction(1, k))
            if linalg.is_zero(term):
                break
            out = linalg.add(out, term)
        return out

    w = linalg.matmul(linalg.matmul(ex(E), ex(linalg.scale(F, -1))), ex(E))
    return w, linalg.inverse(w)


def integral_positive_roots(G: GroupData, x: ApartmentPoint) -> list[Root]:
    return [r for r in G.integral_roots(x) if G.is_positive(r)]


def _simple_subsystem(G: GroupData, pos: list[Root]) -> list[Root]:
    vecs = {r.vector for r in pos}
    out = []
    for r in pos:
        decomposable = any(tuple(a - b for a, b in zip(r.vector, s.vector)) in vecs for s in pos if s != r)
        if not decomposable:
            out.append(r)
    return out


@dataclass
class Destabilization:
    P: QMat
    P_inv: QMat
    weights: tuple[Fraction, ...]   # torus coordinates of lambda
    conjugated: QMat               # P^{-1} C P


def destabilize(G: GroupData, C: QMat, x: ApartmentPoint, dominant: bool = False) -> Destabilization:
    """Find ``P`` in ``H_x`` putting the nilpotent ``C`` into positive ``lambda``-weights."""
    h = graded_jm_semisimple(G, C, x)
    P = _eigenbasis_matrix(G, h, x)
    if G.group_violation(LaurentMatrix.from_constant(P)):
        raise ReductionFailure("eigenbasis matrix is not in the group")
    P_inv = linalg.inverse(P)

    def weights(P, P_inv):
        D = linalg.matmul(linalg.matmul(P_inv, h), P)
        n = G.n
        if any(D[i][j] for i in range(n) for j in range(n) if i != j):
            raise ReductionFailure("h is not diagonal in the constructed basis")
        return tuple(D[i][i] for i in range(G.rank))

    lam = weights(P, P_inv)
    if dominant:
        simple = _simple_subsystem(G, integral_positive_roots(G, x))
        for _ in range(10 * len(G.roots) + 10):
            bad = next((a for a in simple if a.value(lam) < 0), None)
            if bad is None:
                break
            w, w_inv = _weyl_matrix(G, bad)
            P, P_inv = linalg.matmul(P, w), linalg.matmul(w_inv, P_inv)
            lam = weights(P, P_inv)
    Cp = linalg.matmul(linalg.matmul(P_inv, C), P)
    full = G.diagonal(lam)
    for i in range(G.n):
        for j in range(G.n):
            if Cp[i][j] and full[i] - full[j] <= 0:
                raise ReductionFailure("conjugated representative has a nonpositive weight")
    return Destabilization(P, P_inv, lam, Cp)


def reduction_gauge(s: Stratum) -> tuple[GaugeElement, Destabilization]:
    """Gauge element ``theta_x(P)^{-1}`` for a nilpotent stratum."""
    G = s.group
    C = representative_constant(s)
    dz = destabilize(G, C, s.point)
    g = theta_lift(dz.P_inv, s.point, G)
    g_inv = theta_lift(dz.P, s.point, G)
    return GaugeElement(G, g, g_inv), dz


def half_sum_positive_coroots(G: GroupData, roots: list[Root]) -> tuple[Fraction, ...]:
    acc = [Fraction(0)] * G.rank
    for r in roots:
        for k, c in enumerate(G.coroot(r)):
            acc[k] += c / 2
    return tuple(acc)
