import random
from fractions import Fraction as F

import pytest

from strata_kit import filtration as flt
from strata_kit import linalg
from strata_kit.examples import coxeter_variant_literal, family_catalog
from strata_kit.exact import ONE, ZERO, Laurent, LaurentMatrix
from strata_kit.reduction import (ReductionFailure, destabilize, half_sum_positive_coroots,
                                  integral_positive_roots, reduction_gauge, representative_constant, theta_lift)
from strata_kit.roots import build_group
from strata_kit.slope import apartment_minimum
from strata_kit.strata import gauge_transform

from factories import gauge_element


def test_representative_constant_undoes_the_twist():
    A = coxeter_variant_literal(build_group("SL", 3), 0)
    G = A.group
    s = flt.leading_representative(A, G.origin())
    assert s.depth == 1 and s.rep.is_nilpotent()
    C = representative_constant(s)
    assert C == [[0, 0, 0], [0, 0, 0], [1, 0, 0]]


def test_theta_lift_conjugates_exactly():
    G = build_group("GL", 2)
    x = G.point([F(1, 4), F(-1, 4)])
    with pytest.raises(ReductionFailure):
        theta_lift([[1, 1], [0, 1]], x, G)
    y = G.point([F(1, 2), F(-1, 2)])
    assert theta_lift([[1, 1], [0, 1]], y, G) == LaurentMatrix([[ONE, Laurent.monomial(1, -1)], [ZERO, ONE]])


@pytest.mark.parametrize("kind,n", [("GL", 2), ("SL", 3), ("SL", 4), ("Sp", 4), ("Sp", 6)])
def test_destabilize_regular_nilpotent(kind, n):
    G = build_group(kind, n)
    C = linalg.zeros(n)
    for a in G.simple_roots:
        C = linalg.add(C, G.root_matrix(G.negative(a)).coefficient(0))
    dz = destabilize(G, C, G.origin())
    assert linalg.matmul(dz.P, dz.P_inv) == linalg.identity(n)
    full = G.diagonal(dz.weights)
    for i in range(n):
        for j in range(n):
            if dz.conjugated[i][j]:
                assert full[i] - full[j] > 0
    dom = destabilize(G, C, G.origin(), dominant=True)
    assert all(a.value(dom.weights) >= 0 for a in G.simple_roots)


@pytest.mark.parametrize("kind,n", [("SL", 2), ("SL", 3), ("SL", 4), ("Sp", 4)])
def test_reduction_gauge_lowers_depth(kind, n):
    # the literal variant has a nilpotent leading term of depth 1 at the origin
    A = coxeter_variant_literal(build_group(kind, n), 0)
    G = A.group
    s = flt.leading_representative(A, G.origin())
    assert s.depth == 1 and s.rep.is_nilpotent()
    g, _ = reduction_gauge(s)
    B = gauge_transform(A, g)
    assert apartment_minimum(B)[0] < 1


def test_reduction_on_scrambled_families():
    rng = random.Random(4)
    for name, (A, expected) in family_catalog().items():
        G = A.group
        B = gauge_transform(A, gauge_element(G, rng, steps=3))
        value, y = apartment_minimum(B)
        assert value >= expected
        s = flt.leading_representative(B, y)
        if value > expected:
            assert s.rep.is_nilpotent()
            g, _ = reduction_gauge(s)
            assert apartment_minimum(gauge_transform(B, g))[0] < value


def test_half_sum_of_positive_coroots():
    G = build_group("SL", 3)
    assert half_sum_positive_coroots(G, integral_positive_roots(G, G.origin())) == (1, 0, -1)
    G = build_group("Sp", 4)
    assert half_sum_positive_coroots(G, integral_positive_roots(G, G.origin())) == (F(3, 2), F(1, 2))
    x = G.point([F(1, 4), F(1, 4)])
    assert [r.vector for r in integral_positive_roots(G, x)] == [(1, -1)]
