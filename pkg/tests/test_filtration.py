from fractions import Fraction as F

import pytest

from strata_kit import filtration as flt
from strata_kit.errors import MembershipError
from strata_kit.examples import airy, sl_line_example
from strata_kit.exact import ONE, ZERO, Laurent, LaurentMatrix
from strata_kit.roots import build_group

z = Laurent.monomial
GL2 = build_group("GL", 2)
IWAHORI = GL2.point([F(1, 4), F(-1, 4)])


@pytest.mark.parametrize("r", [1, 2, 3])
def test_airy_grading(r):
    A = airy(r).matrix
    comps = flt.graded_decompose(A, IWAHORI, GL2)
    assert [c.degree for c in comps] == [-r + F(1, 2)]
    comps = flt.graded_decompose(A, GL2.origin(), GL2)
    assert [c.degree for c in comps] == [-r, -r + 1]
    assert comps[0].part == LaurentMatrix([[ZERO, z(1, -r)], [ZERO, ZERO]])


def test_constituent_labels():
    comps = flt.graded_decompose(airy(1).matrix, GL2.origin(), GL2)
    assert comps[0].constituents == (("e1-e2", -1),)
    D = LaurentMatrix.diagonal([z(1, -2), z(3, 1)])
    comps = flt.graded_decompose(D, IWAHORI, GL2)
    assert [c.degree for c in comps] == [-2, 1]
    assert all(c.constituents[0][0] == "t" for c in comps)


def test_decompose_checks_membership():
    with pytest.raises(MembershipError):
        flt.graded_decompose(LaurentMatrix.unit(2, 0, 0), build_group("SL", 2).origin(), build_group("SL", 2))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_airy_depths(r):
    A = airy(r)
    assert flt.depth_at(A, GL2.origin()) == r
    assert flt.depth_at(A, IWAHORI) == r - F(1, 2)


def test_zero_connection_has_depth_zero_everywhere():
    A = flt.Connection(GL2, LaurentMatrix.zeros(2))
    for x in [GL2.origin(), IWAHORI, GL2.point([3, F(-7, 5)])]:
        assert flt.depth_at(A, x) == 0


def test_depth_zero_uses_the_torus_shift():
    # A = diag(1/2, 0) sits at depth 0 at the origin, but A - x~ vanishes at x~ = A
    A = flt.Connection(GL2, LaurentMatrix.diagonal([Laurent.const(F(1, 2)), ZERO]))
    s = flt.leading_representative(A, GL2.origin())
    assert s.depth == 0 and s.rep == A.matrix
    s = flt.leading_representative(A, GL2.point([F(1, 2), 0]))
    assert s.depth == 0 and s.rep.is_zero()


def test_leading_representatives():
    s = flt.leading_representative(airy(2), IWAHORI)
    assert s.depth == F(3, 2) and s.rep == airy(2).matrix
    SL3 = build_group("SL", 3)
    for m in (0, 1, 2):
        A = sl_line_example(3, m)
        s = flt.leading_representative(A, SL3.point([F(1, 4), F(-1, 4), 0]))
        assert s.depth == m + F(1, 2) and s.rep == A.matrix
    A = flt.Connection(GL2, LaurentMatrix.diagonal([z(F(5, 2), -3), ZERO]))
    s = flt.leading_representative(A, GL2.origin())
    assert s.depth == 3 and s.rep == A.matrix


def test_homogeneous_part_and_degree():
    A = airy(1).matrix
    assert flt.homogeneous_degree(A, IWAHORI, GL2) == F(-1, 2)
    assert flt.homogeneous_degree(A, GL2.origin(), GL2) is None
    assert flt.homogeneous_part(A, GL2.origin(), GL2, 0) == LaurentMatrix([[ZERO, ZERO], [ONE, ZERO]])
    assert flt.lies_above(A, IWAHORI, GL2, F(-1, 2), strict=False)
    assert not flt.lies_above(A, IWAHORI, GL2, F(-1, 2), strict=True)
