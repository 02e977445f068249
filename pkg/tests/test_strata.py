from fractions import Fraction as F

import pytest

from strata_kit import filtration as flt
from strata_kit.errors import CapabilityError, HomogeneityError, MembershipError
from strata_kit.examples import airy, sl_line_example, sp4_example
from strata_kit.exact import ONE, ZERO, Laurent, LaurentMatrix
from strata_kit.roots import build_group
from strata_kit.strata import (GaugeElement, Stratum, act_on_stratum, associates_at, contains, gauge_transform,
                               is_fundamental, pullback_stratum)

z = Laurent.monomial
GL1, GL2 = build_group("GL", 1), build_group("GL", 2)
IWAHORI = GL2.point([F(1, 4), F(-1, 4)])


def E(i, j, c=1, m=0, n=2):
    return LaurentMatrix.unit(n, i, j, z(c, m))


def test_stratum_validation():
    o = GL2.origin()
    with pytest.raises(HomogeneityError):
        Stratum(GL2, o, F(-1), LaurentMatrix.zeros(2))
    with pytest.raises(HomogeneityError):
        Stratum(GL2, o, F(1, 2), LaurentMatrix.zeros(2))      # 1/2 is not critical at the origin
    with pytest.raises(HomogeneityError):
        Stratum(GL2, o, 1, E(0, 1, m=-1) + E(1, 0))           # degrees -1 and 0 mixed
    with pytest.raises(MembershipError):
        Stratum(build_group("SL", 2), build_group("SL", 2).origin(), 1, E(0, 0, m=-1))


def test_gauge_element_validation():
    with pytest.raises(MembershipError):
        GaugeElement(GL2, LaurentMatrix.identity(2), LaurentMatrix.identity(2).scale(Laurent.const(2)))
    with pytest.raises(MembershipError):
        GaugeElement.from_matrix(build_group("SL", 2), LaurentMatrix.diagonal([z(2, 0), ONE]))
    g = GaugeElement.from_matrix(GL2, LaurentMatrix([[ZERO, ONE], [z(1, 1), ZERO]]))
    assert g.inverse == LaurentMatrix([[ZERO, z(1, -1)], [ONE, ZERO]])


def test_gauge_examples():
    A = airy(1)
    assert gauge_transform(A, GaugeElement.identity(GL2)) == A
    c = flt.Connection(GL1, LaurentMatrix([[Laurent.const(F(7, 3))]]))
    g = GaugeElement(GL1, LaurentMatrix([[z(1, 1)]]), LaurentMatrix([[z(1, -1)]]))
    assert gauge_transform(c, g).matrix == LaurentMatrix([[Laurent.const(F(4, 3))]])
    P = LaurentMatrix([[ONE, Laurent.const(2)], [ZERO, ONE]])
    Pi = LaurentMatrix([[ONE, Laurent.const(-2)], [ZERO, ONE]])
    assert gauge_transform(A, GaugeElement(GL2, P, Pi)).matrix == P @ A.matrix @ Pi


def test_containment_examples():
    for r in (1, 2):
        A = airy(r)
        assert contains(A, Stratum(GL2, GL2.origin(), r, E(0, 1, m=-r)))
        assert not contains(A, Stratum(GL2, GL2.origin(), r, E(1, 0, m=-r)))
        assert contains(A, flt.leading_representative(A, IWAHORI))


def test_fundamental_examples():
    for r in (1, 2, 3):
        s = Stratum(GL2, IWAHORI, r - F(1, 2), airy(r).matrix)
        assert is_fundamental(s)
        assert s.rep @ s.rep == LaurentMatrix.identity(2).scale(z(1, -2 * r + 1))
        assert not is_fundamental(Stratum(GL2, GL2.origin(), r, E(0, 1, m=-r)))
    Sp4 = build_group("Sp", 4)
    for m in (0, 1):
        Y = sp4_example(m).matrix
        s = Stratum(Sp4, Sp4.point([F(1, 4), F(1, 4)]), m + F(1, 2), Y)
        assert is_fundamental(s)
    Y = sp4_example(0).matrix
    assert Y @ Y == LaurentMatrix.diagonal([z(1, -1), z(-1, -1), z(1, -1), z(-1, -1)])


def test_associates_examples():
    eye = GaugeElement.identity(GL2)
    s = flt.leading_representative(airy(1), IWAHORI)
    assert associates_at(eye, s, s)
    o = GL2.origin()
    s1 = Stratum(GL2, o, 2, E(0, 0, m=-2))
    s2 = Stratum(GL2, o, 2, E(1, 1, m=-2))
    assert not associates_at(eye, s1, s2)
    # the SL3 example has equal-depth fundamental strata at two optimal points
    SL3 = build_group("SL", 3)
    A = sl_line_example(3, 0)
    t1 = flt.leading_representative(A, SL3.point([F(1, 2), 0, F(-1, 2)]))
    t2 = flt.leading_representative(A, SL3.point([F(1, 3), F(-1, 6), F(-1, 6)]))
    assert t1.depth == t2.depth == F(1, 2)
    assert associates_at(GaugeElement.identity(SL3), t1, t2)
    # a different leading term at the same depth is not associate
    t3 = Stratum(SL3, t2.point, F(1, 2), t2.rep.scale(Laurent.const(2)))
    assert not associates_at(GaugeElement.identity(SL3), t1, t3)


def test_associates_needs_monomial_elements():
    g = GaugeElement(GL2, LaurentMatrix([[ONE, ONE], [ZERO, ONE]]), LaurentMatrix([[ONE, -ONE], [ZERO, ONE]]))
    s = flt.leading_representative(airy(1), IWAHORI)
    with pytest.raises(CapabilityError):
        associates_at(g, s, s)


def test_associates_through_a_monomial_element():
    A = airy(1)
    s = flt.leading_representative(A, IWAHORI)
    w, wi = GL2.reflection_element(GL2.alcove_walls[0])
    n = GaugeElement(GL2, w, wi)
    moved = act_on_stratum(n, s)
    assert moved.point == GL2.point([F(-1, 4), F(1, 4)])
    assert associates_at(n, s, moved)
    assert contains(gauge_transform(A, n), moved)


def test_pullback_stratum_examples():
    s = flt.leading_representative(airy(1), IWAHORI)
    assert pullback_stratum(s, 1) == s
    p = pullback_stratum(s, 2)
    assert p.point == GL2.point([F(1, 2), F(-1, 2)]) and p.depth == 1
    assert is_fundamental(p)
    SL3 = build_group("SL", 3)
    for m in (0, 1):
        s = flt.leading_representative(sl_line_example(3, m), SL3.point([F(1, 4), F(-1, 4), 0]))
        p = pullback_stratum(s, 2)
        assert p.depth == 2 * m + 1 and p.point == SL3.point([F(1, 2), F(-1, 2), 0])
        assert is_fundamental(p) == is_fundamental(s)
