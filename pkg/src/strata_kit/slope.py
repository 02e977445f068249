"""Slope computation with independent cross-checks.

The reported slope is ``max(adjoint oracle, character slopes)``.  A stratum
search then has to produce a fundamental stratum of exactly that depth, and
the oracle on the defining representation has to agree.  Any disagreement
raises :class:`InconsistencyError`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import filtration as flt
from .errors import InconsistencyError
from .exact import INF, ZERO, Laurent, LaurentMatrix
from .katz import apply_connection, katz_newton_slope
from .lp import maximize
from .reduction import (ReductionFailure, destabilize, half_sum_positive_coroots, integral_positive_roots,
                        reduction_gauge, representative_constant, theta_lift)
from .roots import ApartmentPoint, GroupData
from .strata import GaugeElement, Stratum, contains, gauge_transform, is_fundamental

MAX_REDUCTIONS = 64


# -- oracle side -------------------------------------------------------------

def adjoint_matrix(A: flt.Connection) -> LaurentMatrix:
    """Matrix of ``Y -> [A, Y]`` on the basis (torus basis, root vectors)."""
    G = A.group
    basis = [G.torus_matrix(t) for t in G.torus_basis()] + [G.root_matrix(r) for r in G.roots]
    tdim = G.torus_dimension
    cols = []
    for B in basis:
        C = A.matrix @ B - B @ A.matrix
        dec = G.root_decompose(C)
        col = list(G.torus_basis_coordinates(list(dec.torus)))[:tdim]
        col += [dec.roots.get(r.index, ZERO) for r in G.roots]
        cols.append(col)
    return LaurentMatrix(list(zip(*cols))) if cols else LaurentMatrix([])


def character_slopes(A: flt.Connection) -> list[Fraction]:
    """Slopes of the connections induced on the characters (GL: determinant)."""
    if A.group.kind != "GL":
        return []
    v = A.matrix.trace().valuation()
    return [Fraction(0) if v == INF or v >= 0 else Fraction(-v)]


def oracle_slope(A: flt.Connection, seed: int = 0) -> Fraction:
    ad = adjoint_matrix(A)
    vals = [katz_newton_slope(ad, seed) if ad.nrows else Fraction(0)] + character_slopes(A)
    return max(vals)


# -- stratum search ----------------------------------------------------------

@dataclass
class StratumCertificate:
    """A stratum contained in ``connection = gauge . A``."""

    stratum: Stratum
    gauge: GaugeElement
    connection: flt.Connection
    phase: str
    reductions: int = 0

    def verify(self) -> bool:
        return contains(self.connection, self.stratum) and (
            is_fundamental(self.stratum))


@dataclass
class SearchOutcome:
    certificate: StratumCertificate | None
    diagnostics: list[str] = field(default_factory=list)
    depth_trace: list[Fraction] = field(default_factory=list)


def _threads() -> int | None:
    raw = os.environ.get("STRATA_KIT_THREADS")
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def depths_at(A: flt.Connection, points: list[ApartmentPoint]) -> list[Fraction]:
    """``depth_at`` over many points; optionally fanned out over threads."""
    workers = _threads()
    if workers and workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: flt.depth_at(A, p), points))
    return [flt.depth_at(A, p) for p in points]


def apartment_minimum(A: flt.Connection) -> tuple[Fraction, ApartmentPoint]:
    """Exact minimum of ``depth_at(A, y)`` over all rational ``y`` in the apartment.

    Depth is a maximum of affine functions of ``y``, so this is a small LP.
    """
    G = A.group
    r = G.rank
    h = r if G.kind == "Sp" else None
    rows: dict[tuple, Fraction] = {}

    def coord(k):
        v = [Fraction(0)] * r
        if h is None:
            v[k] = Fraction(1)
        elif k < h:
            v[k] = Fraction(1)
        else:
            v[k - h] = Fraction(-1)
        return v

    # constraint: -s - (d_i - d_j) <= m_ij
    rows[tuple([Fraction(0)] * r + [Fraction(-1)])] = Fraction(0)
    for i, row in enumerate(A.matrix.rows):
        for j, a in enumerate(row):
            if not a:
                continue
            m = Fraction(a.valuation())
            if i == j:
                if m >= 0:
                    continue
                key = tuple([Fraction(0)] * r + [Fraction(-1)])
            else:
                ci, cj = coord(i), coord(j)
                key = tuple([-(p - q) for p, q in zip(ci, cj)] + [Fraction(-1)])
            rows[key] = min(rows.get(key, m), m)
    A_ub = [list(k) for k in rows]
    b_ub = list(rows.values())
    A_eq, b_eq = [], []
    if G.kind != "Sp":
        A_eq, b_eq = [[Fraction(1)] * r + [Fraction(0)]], [Fraction(0)]
    c = [Fraction(0)] * r + [Fraction(-1)]
    res = maximize(c, A_ub, b_ub, A_eq, b_eq)
    if res.status != "optimal":  # pragma: no cover
        raise InconsistencyError("apartment depth LP failed", status=res.status)
    y = ApartmentPoint(res.x[:r])
    return -res.value, y


def _vertex_in_closure(G: GroupData, x: ApartmentPoint) -> ApartmentPoint:
    """A vertex of the closed alcove lying in the closure of the facet of ``x``."""
    for op in G.optimal_points():
        if len(op.subset) == 1:
            wall = next(w for w in G.alcove_walls if w.name == op.subset[0])
            if wall(x.coords) > 0:
                return op.point
    return x


def fundamentalize_depth_zero(A: flt.Connection, s: Stratum) -> StratumCertificate:
    """Fundamental depth-0 stratum from a depth-0 stratum at a vertex.

    Conjugates the representative into the nilradical of ``H_x`` by a
    constant element and shifts the point by ``eps * rho_x`` where ``rho_x``
    is the half sum of positive coroots integral at ``x``.
    """
    G = A.group
    ident = GaugeElement.identity(G)
    if s.depth != 0 or not contains(A, s):
        raise InconsistencyError("fundamentalize needs a contained depth-zero stratum", depth=s.depth)
    if is_fundamental(s):
        return StratumCertificate(s, ident, A, "depth-zero")
    C = representative_constant(s)
    x = s.point
    if any(v for row in C for v in row):
        dz = destabilize(G, C, x, dominant=True)
        g = GaugeElement(G, theta_lift(dz.P_inv, x, G), theta_lift(dz.P, x, G))
    else:
        g = ident
    A2 = gauge_transform(A, g) if not g.is_identity() else A
    delta = half_sum_positive_coroots(G, integral_positive_roots(G, x))
    if all(c == 0 for c in delta) and G.kind == "GL":
        delta = tuple(Fraction(1) for _ in range(G.rank))
    h = G.coxeter_number
    for eps in (Fraction(1, 2 * h), Fraction(1, 4 * h)):
        y = x.shifted(delta, eps)
        cand = flt.leading_representative(A2, y)
        if cand.depth == 0 and is_fundamental(cand) and contains(A2, cand):
            return StratumCertificate(cand, g, A2, "depth-zero")
    raise InconsistencyError("no fundamental depth-zero stratum at the shifted points", point=str(x))


def stratum_search(A: flt.Connection, target: Fraction) -> SearchOutcome:
    """Find a fundamental stratum of depth ``target``.

    Phase 1 evaluates leading representatives at the optimal points.  If the
    minimum depth exceeds the target, the nilpotent leading term is moved into
    positive weights by a constant conjugation and the search repeats; the
    apartment-wide minimum then strictly drops.
    """
    G = A.group
    out = SearchOutcome(None)
    current = A
    gauge = GaugeElement.identity(G)
    opts = G.optimal_points()
    last = None
    for it in range(MAX_REDUCTIONS + 1):
        depths = depths_at(current, [o.point for o in opts])
        best = min(depths)
        lp_min, y = apartment_minimum(current)
        r = min(best, lp_min)
        out.depth_trace.append(r)
        if r < target:
            raise InconsistencyError("a stratum is shallower than the oracle slope",
                                     depth=r, oracle=target)
        if last is not None and r >= last:
            out.diagnostics.append(f"reduction stalled at depth {r}")
            return out
        last = r
        if best == r:
            x = opts[depths.index(best)].point
            phase = "optimal-points" if it == 0 else "reduction"
        else:
            n, n_inv, x = G.fold_into_alcove(y)
            mono = GaugeElement(G, n, n_inv)
            current = gauge_transform(current, mono)
            gauge = mono @ gauge
            phase = "apartment-lp"
            if flt.depth_at(current, x) != r:
                raise InconsistencyError("monomial folding changed the depth", before=r,
                                         after=flt.depth_at(current, x))
        s = flt.leading_representative(current, x)
        if r == target:
            if r > 0:
                if not is_fundamental(s):
                    raise InconsistencyError("stratum at the slope depth is not fundamental", depth=r)
                out.certificate = StratumCertificate(s, gauge, current, phase, it)
                return out
            v = _vertex_in_closure(G, x)
            sv = flt.leading_representative(current, v)
            if sv.depth != 0:
                raise InconsistencyError("depth-zero containment did not extend to a vertex", point=str(v))
            cert = fundamentalize_depth_zero(current, sv)
            cert.gauge = cert.gauge @ gauge
            cert.reductions = it
            cert.phase = phase if cert.gauge.is_identity() else "depth-zero"
            out.certificate = cert
            return out
        if is_fundamental(s):
            raise InconsistencyError("fundamental stratum deeper than the oracle slope", depth=r, oracle=target)
        try:
            g, _ = reduction_gauge(s)
        except ReductionFailure as exc:
            out.diagnostics.append(f"reduction move failed at depth {r}: {exc}")
            return out
        current = gauge_transform(current, g)
        gauge = g @ gauge
    out.diagnostics.append("reduction budget exhausted")
    return out


# -- public entry points -----------------------------------------------------

@dataclass
class SlopeReport:
    slope: Fraction
    methods: dict[str, Fraction]
    certificate: StratumCertificate | None
    diagnostics: list[str]
    agreement: bool

    @property
    def stratum(self) -> Stratum | None:
        return self.certificate.stratum if self.certificate else None

    @property
    def regular_singular(self) -> bool:
        return self.slope == 0


def slope(A: flt.Connection, seed: int = 0, search: bool = True) -> SlopeReport:
    """Slope of ``A`` as the max over the adjoint oracle and the characters.

    The oracle on the defining representation must agree (for every group,
    since ``ad`` sits inside ``V (x) V*``), and so must the depth of any
    stratum the search certifies.
    """
    methods: dict[str, Fraction] = {}
    ad = adjoint_matrix(A)
    methods["adjoint_oracle"] = katz_newton_slope(ad, seed) if ad.nrows else Fraction(0)
    chars = character_slopes(A)
    if chars:
        methods["character_slopes"] = max(chars)
    value = max(methods.values())
    methods["katz_defining"] = katz_newton_slope(A.matrix, seed)
    if methods["katz_defining"] != value:
        raise InconsistencyError("defining representation slope differs from the group slope",
                                 **methods)
    diagnostics: list[str] = []
    cert = None
    if search:
        outcome = stratum_search(A, value)
        diagnostics.extend(outcome.diagnostics)
        cert = outcome.certificate
        if cert is not None:
            if not cert.verify():
                raise InconsistencyError("certificate does not verify", **methods)
            methods["strata_search"] = cert.stratum.depth
            if cert.stratum.depth != value:
                raise InconsistencyError("stratum depth differs from oracle slope", **methods)
    return SlopeReport(value, methods, cert, diagnostics, len(set(methods.values())) == 1)


def is_regular_singular(A: flt.Connection) -> bool:
    return oracle_slope(A) == 0


def pullback_connection(A: flt.Connection, e: int) -> flt.Connection:
    """``e . A(u^e)``: the connection pulled back along ``z = u^e``."""
    if e < 1:
        raise ValueError("ramification index must be positive")
    return flt.Connection(A.group, A.matrix.substitute_power(e).scale(e))


def frenkel_gross_check(A: flt.Connection, e: int = 1) -> Fraction | None:
    """``n/e`` when the lowest coefficient ``M_{-n}`` (over ``u``) is nonnilpotent.

    Only reads a supplied normal form; it does not search for one.
    """
    v = A.matrix.valuation()
    if v == INF or v >= 0:
        return Fraction(0)
    M = LaurentMatrix.from_constant(A.matrix.coefficient(v))
    if M.is_nilpotent():
        return None
    return Fraction(-v, e)


@dataclass
class KatzTrace:
    """``s_i = -min_j v((tau + A)^i e_j)`` for ``i = 0..horizon``."""

    iterate_valuations: list[int]
    horizon: int
    rate: Fraction
    bounded: bool


def katz_boundedness_trace(A: flt.Connection, rate, horizon: int | None = None) -> KatzTrace:
    """Diagnostic growth check of ``s_i - rate*i``.

    Called bounded when the maximum over the second half of ``[1, horizon]``
    does not exceed the maximum over the first half.  Heuristic by nature:
    a finite horizon cannot prove boundedness.
    """
    n = A.n
    if horizon is None:
        horizon = 4 * n * (1 + A.pole_order())
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    vecs = [[Laurent.const(1) if i == j else ZERO for i in range(n)] for j in range(n)]
    s = [0]
    for _ in range(horizon):
        vecs = [apply_connection(A.matrix, v) for v in vecs]
        vals = [x.valuation() for v in vecs for x in v if x]
        # all iterates vanish only for n = 0; keep the previous value then
        s.append(-min(vals) if vals else s[-1])
    rate = Fraction(rate)
    t = [s[i] - rate * i for i in range(1, horizon + 1)]
    half = len(t) // 2
    bounded = max(t[half:]) <= max(t[:half])
    return KatzTrace(s, horizon, rate, bounded)


@dataclass
class DepthMapEntry:
    point: ApartmentPoint
    depth: Fraction
    label: str


def depth_map(A: flt.Connection, grid_denominator: int = 8) -> list[DepthMapEntry]:
    """``depth_at`` over the optimal points and the closed-alcove grid ``(1/N)Z``."""
    G = A.group
    pts = [(o.point, "optimal:" + "+".join(o.subset)) for o in G.optimal_points()]
    seen = {p for p, _ in pts}
    for p in G.alcove_grid(grid_denominator):
        if p not in seen:
            pts.append((p, "grid"))
            seen.add(p)
    ds = depths_at(A, [p for p, _ in pts])
    return [DepthMapEntry(p, d, lab) for (p, lab), d in zip(pts, ds)]
