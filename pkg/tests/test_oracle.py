from fractions import Fraction

import pytest

from limroot.errors import RankZero, SizeBound
from limroot.oracle import (commutator, compare_with_catalog, matmul, qconj, qmul, realize,
                            restricted_roots)
from limroot.roots import RealFormDescriptor as R
from limroot.roots import build_restricted_system


def test_quaternion_units():
    i = (0, 1, 0, 0)
    j = (0, 0, 1, 0)
    k = (0, 0, 0, 1)
    assert qmul(i, j) == k
    assert qmul(j, i) == (0, 0, 0, -1)
    assert qmul(i, i) == (-1, 0, 0, 0)
    assert qconj(k) == (0, 0, 0, -1)


def test_catalog_agreement(catalog):
    for desc in catalog:
        got, want, diffs = compare_with_catalog(desc)
        assert not diffs, (desc.label(), diffs)
        assert got == want


@pytest.mark.parametrize("desc,m_dim", [
    (R("SU", "C", (2, 1)), 1), (R("SU", "C", (3, 1)), 4), (R("SL", "C", (3,)), 2),
    (R("Sp_pq", None, (2, 1)), 6), (R("SOstar", None, (3,)), 4), (R("SL", "R", (3,)), 0),
])
def test_m_dimension(desc, m_dim):
    assert realize(desc).m_dimension() == m_dim


@pytest.mark.parametrize("desc", [R("SU", "C", (2, 1)), R("SL", "H", (2,)),
                                  R("SpF", "R", (2,)), R("SOstar", None, (3,))])
def test_model_sanity(desc):
    model = realize(desc)
    assert model.a_is_valid()
    assert model.a_is_maximal()
    assert model.bracket_closure_check(samples=8)


def test_dimension_count():
    # dim g = dim m + dim a + sum of multiplicities
    for desc in (R("SU", "C", (3, 2)), R("SO_pq", None, (3, 2)), R("SpF", "C", (2,))):
        model = realize(desc)
        sys = build_restricted_system(desc)
        assert model.real_dim == model.m_dimension() + model.rank + sum(sys.mult.values())


def test_size_bound(monkeypatch):
    with pytest.raises(SizeBound):
        realize(R("SL", "R", (9,)))
    monkeypatch.setenv("LIMROOT_ORACLE_BOUND", "3")
    with pytest.raises(SizeBound):
        realize(R("SL", "R", (4,)))


def test_compact_rejected():
    with pytest.raises(RankZero):
        realize(R("SU", "C", (2, 0)))


def test_matrix_helpers():
    one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    e12 = {(0, 1): one}
    e21 = {(1, 0): one}
    h = commutator(e12, e21)
    assert h[(0, 0)] == one and h[(1, 1)] == tuple(-x for x in one)
    assert not matmul(e12, e12)


def test_restricted_roots_direct():
    sys = restricted_roots(realize(R("SL", "R", (3,))))
    assert sys.type_label == "A2"
    assert set(sys.mult.values()) == {1}
