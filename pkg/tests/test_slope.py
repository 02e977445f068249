from fractions import Fraction as F

import importlib

import pytest

from strata_kit import filtration as flt
from strata_kit.errors import InconsistencyError
from strata_kit.examples import (airy, coxeter, family_catalog, scalar_gl1, sl_line_example, sp4_example)
from strata_kit.exact import ONE, ZERO, Laurent, LaurentMatrix
from strata_kit.filtration import Connection
from strata_kit.roots import build_group
from strata_kit.slope import (adjoint_matrix, character_slopes, depth_map, frenkel_gross_check,
                              fundamentalize_depth_zero, is_regular_singular, katz_boundedness_trace,
                              pullback_connection, slope, stratum_search)
from strata_kit.strata import Stratum, contains, is_fundamental

slope_mod = importlib.import_module("strata_kit.slope")
z = Laurent.monomial
GL2 = build_group("GL", 2)


def test_adjoint_matrix_examples():
    a = z(3, -1)
    A = Connection(build_group("SL", 2), LaurentMatrix.diagonal([a, -a]))
    assert adjoint_matrix(A) == LaurentMatrix.diagonal([ZERO, a + a, -(a + a)])
    assert adjoint_matrix(scalar_gl1(3)).is_zero()


def test_adjoint_slope_of_sl3_example():
    from strata_kit.katz import katz_newton_slope
    for m in (0, 1):
        ad = adjoint_matrix(sl_line_example(3, m))
        assert ad.size == 8
        assert katz_newton_slope(ad) == m + F(1, 2)


def test_character_slopes():
    assert character_slopes(scalar_gl1(3)) == [3]
    assert character_slopes(sl_line_example(3, 2)) == []
    assert character_slopes(airy(2)) == [0]


@pytest.mark.parametrize("m", [0, 1, 2])
def test_line_sp4_and_coxeter_examples(m):
    assert slope(sl_line_example(3, m)).slope == m + F(1, 2)
    assert slope(sp4_example(m)).slope == m + F(1, 2)
    assert slope(coxeter(build_group("SL", 2), m)).slope == m + F(1, 2)


def test_report_fields():
    rep = slope(sp4_example(0))
    assert rep.agreement and not rep.regular_singular
    assert set(rep.methods) == {"adjoint_oracle", "katz_defining", "strata_search"}
    assert rep.stratum.point == build_group("Sp", 4).point([F(1, 4), F(1, 4)])
    rep = slope(airy(1))
    assert set(rep.methods) == {"adjoint_oracle", "character_slopes", "katz_defining", "strata_search"}
    assert rep.methods["character_slopes"] == 0


def test_catalog_certificates():
    for name, (A, expected) in family_catalog().items():
        rep = slope(A)
        assert rep.slope == expected, name
        cert = rep.certificate
        assert cert.verify() and cert.stratum.depth == expected
        assert cert.connection == slope_mod.gauge_transform(A, cert.gauge)


def test_stratum_search_examples():
    out = stratum_search(airy(1), F(1, 2))
    cert = out.certificate
    assert cert.phase == "optimal-points" and cert.reductions == 0
    assert cert.stratum.point == GL2.point([F(1, 4), F(-1, 4)]) and cert.stratum.depth == F(1, 2)
    assert stratum_search(sp4_example(0), F(1, 2)).certificate.stratum.point == \
        build_group("Sp", 4).point([F(1, 4), F(1, 4)])
    D = Connection(GL2, LaurentMatrix.diagonal([z(2, -2), z(-1, -2)]))
    cert = stratum_search(D, F(2)).certificate
    # a regular semisimple torus element has depth 2 at every point of the apartment
    assert cert.stratum.depth == 2 and cert.phase == "optimal-points" and cert.gauge.is_identity()


def test_search_rejects_a_wrong_target():
    with pytest.raises(InconsistencyError):
        stratum_search(airy(1), F(1))     # a depth-1/2 stratum exists, so 1 cannot be the slope


def test_fundamentalize_nilpotent_residue():
    A = Connection(GL2, LaurentMatrix([[ZERO, ONE], [ZERO, ZERO]]))
    s = flt.leading_representative(A, GL2.origin())
    assert s.depth == 0 and not is_fundamental(s)
    cert = fundamentalize_depth_zero(A, s)
    t = cert.stratum
    assert t.depth == 0 and is_fundamental(t) and contains(cert.connection, t)
    # eps = 1/(2h) = 1/4 times the half sum of positive coroots (1/2, -1/2)
    assert t.point == GL2.point([F(1, 8), F(-1, 8)])
    assert cert.connection == A


def test_fundamentalize_keeps_fundamental_strata():
    A = Connection(GL2, LaurentMatrix.diagonal([ONE, Laurent.const(2)]))
    s = flt.leading_representative(A, GL2.origin())
    cert = fundamentalize_depth_zero(A, s)
    assert cert.stratum == s and cert.gauge.is_identity()


def test_fundamentalize_zero_connection():
    SL2 = build_group("SL", 2)
    A = Connection(SL2, LaurentMatrix.zeros(2))
    cert = fundamentalize_depth_zero(A, flt.leading_representative(A, SL2.origin()))
    t = cert.stratum
    assert t.rep == LaurentMatrix.diagonal([Laurent.const(F(-1, 8)), Laurent.const(F(1, 8))])
    assert is_fundamental(t) and contains(A, t)


def test_fundamentalize_requires_depth_zero():
    A = airy(1)
    with pytest.raises(InconsistencyError):
        fundamentalize_depth_zero(A, flt.leading_representative(A, GL2.origin()))


def test_pullback_examples():
    A = sl_line_example(3, 0)
    assert pullback_connection(A, 1) == A
    B = pullback_connection(scalar_gl1(3), 2)
    assert B.matrix == LaurentMatrix([[z(2, -6)]])
    assert slope(B).slope == 6
    assert slope(pullback_connection(A, 2)).slope == 1
    with pytest.raises(ValueError):
        pullback_connection(A, 0)


def test_frenkel_gross_examples():
    B = Connection(GL2, LaurentMatrix([[ZERO, z(2, -1)], [z(2, -1), ZERO]]))
    assert frenkel_gross_check(B, 2) == F(1, 2)
    N = Connection(GL2, LaurentMatrix([[ZERO, z(1, -2)], [ZERO, ZERO]]))
    assert frenkel_gross_check(N, 2) is None
    S = Connection(build_group("GL", 3), LaurentMatrix.identity(3).scale(z(1, -3)))
    assert frenkel_gross_check(S, 3) == 1


def test_regular_singular_examples():
    A = Connection(GL2, LaurentMatrix([[z(1, 0), z(2, 1)], [z(3, 0), ZERO]]))
    assert is_regular_singular(A)
    assert not is_regular_singular(sl_line_example(3, 0))
    B = Connection(GL2, LaurentMatrix([[ZERO, z(1, -1)], [z(1, 1), ZERO]]))
    assert is_regular_singular(B)
    rep = slope(B)
    assert rep.regular_singular and rep.stratum.depth == 0 and is_fundamental(rep.stratum)


def test_boundedness_trace_examples():
    D = Connection(GL2, LaurentMatrix.diagonal([z(1, -3), ZERO]))
    t = katz_boundedness_trace(D, 3)
    assert t.bounded and t.iterate_valuations[:4] == [0, 3, 6, 9]
    assert len(t.iterate_valuations) == t.horizon + 1 == 4 * 2 * 4 + 1
    assert not katz_boundedness_trace(D, 2).bounded
    t = katz_boundedness_trace(airy(1), F(1, 2))
    assert t.bounded
    assert all(t.iterate_valuations[2 * k] == k for k in range(len(t.iterate_valuations) // 2))


def test_depth_map_sp4_unique_minimizer():
    for m in (0, 1):
        entries = depth_map(sp4_example(m), 8)
        best = min(e.depth for e in entries)
        assert best == m + F(1, 2)
        assert {e.point for e in entries if e.depth == best} == {build_group("Sp", 4).point([F(1, 4), F(1, 4)])}


def test_depth_map_is_thread_count_independent(monkeypatch):
    A = sl_line_example(3, 1)
    monkeypatch.delenv("STRATA_KIT_THREADS", raising=False)
    serial = depth_map(A, 6)
    monkeypatch.setenv("STRATA_KIT_THREADS", "4")
    assert depth_map(A, 6) == serial


def test_cross_check_disagreement_is_reported(monkeypatch):
    real = slope_mod.katz_newton_slope

    def skewed(M, seed=0):
        return real(M, seed) + (1 if M.nrows == 3 else 0)

    monkeypatch.setattr(slope_mod, "katz_newton_slope", skewed)
    with pytest.raises(InconsistencyError) as info:
        slope(sl_line_example(3, 0))
    assert info.value.evidence["katz_defining"] == F(3, 2)
    assert info.value.evidence["adjoint_oracle"] == F(1, 2)


def test_stratum_invariant_for_positive_slopes():
    for A, expected in family_catalog().values():
        s = slope(A).stratum
        if expected > 0:
            assert isinstance(s, Stratum) and is_fundamental(s) and s.depth == expected
