from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limroot.errors import InputError, RankZero, UnsupportedFamily, ZeroRoot
from limroot.roots import (RealFormDescriptor, WeightedRootSystem, build_restricted_system,
                           classify, dot, inversion_count, is_lex_positive, make_dominant,
                           reflect, rho, rho_prod_check, type_A, type_B, type_BC, type_C,
                           type_D, vec, weyl_orbit_word_apply)

F = Fraction


def test_type_a_counts():
    s = type_A(4)
    assert s.rank == 3
    assert len(s.positive_roots) == 6
    assert s.trace_zero
    assert rho(s) == vec(F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))


def test_bc_multiplicities_and_rho():
    s = build_restricted_system(RealFormDescriptor("SU", "C", (2, 1)))
    assert s.type_label == "BC1"
    assert s.multiplicity(vec(1)) == 2
    assert s.multiplicity(vec(2)) == 1
    assert rho(s) == vec(2)


@pytest.mark.parametrize("desc,label", [
    (("SL", "H", (3,)), "A2"), (("SO_pq", None, (4, 1)), "B1"), (("SpF", "R", (3,)), "C3"),
    (("SOstar", None, (3,)), "BC1"), (("SU", "C", (3, 2)), "BC2"), (("SOC", None, (5,)), "B2"),
])
def test_catalog_types(desc, label):
    assert build_restricted_system(RealFormDescriptor(*desc)).type_label == label


def test_quaternionic_multiplicity():
    s = build_restricted_system(RealFormDescriptor("SL", "H", (2,)))
    assert set(s.mult.values()) == {4}


def test_compact_form_has_rank_zero():
    with pytest.raises(RankZero):
        build_restricted_system(RealFormDescriptor("SU", "C", (3, 0)))


def test_bad_descriptors():
    with pytest.raises(UnsupportedFamily):
        RealFormDescriptor("E8", "R", (8,))
    with pytest.raises(UnsupportedFamily):
        RealFormDescriptor("SO_pq", "C", (2, 1))
    with pytest.raises(InputError):
        RealFormDescriptor("O_pq", None, (2, 2))


def test_classify_labels():
    assert classify(type_D(2).roots) == "A1+A1"
    assert classify(type_BC(2, 1, 1, 1).roots) == "BC2"
    assert classify([]) == "A0"


def test_reflect_zero_root():
    with pytest.raises(ZeroRoot):
        reflect(vec(1, 2), vec(0, 0))


def test_make_dominant_word():
    res = make_dominant(vec(-1, 1, 0), type_A(3))
    assert res.dominant == vec(1, 0, -1)
    assert res.word == (1, 2)
    assert res.length == 2


def test_singular_vector_reports_root():
    res = make_dominant(vec(1, 1, 0), type_A(3))
    assert res.singular
    assert dot(res.dominant, res.singular_root) == 0


# ---------------------------------------------------------------------------
# property tests

systems = st.one_of(
    st.integers(2, 6).map(type_A),
    st.integers(1, 4).map(lambda m: type_B(m, 1, 2)),
    st.integers(1, 4).map(lambda m: type_C(m, 2, 1)),
    st.integers(2, 4).map(type_D),
    st.integers(1, 3).map(lambda m: type_BC(m, 2, 2, 1)),
)


@st.composite
def system_and_vector(draw):
    s = draw(systems)
    v = tuple(F(draw(st.integers(-6, 6)), draw(st.sampled_from([1, 2])))
              for _ in range(s.ambient_dim))
    return s, s.normalize(v)


@given(systems)
def test_rho_prod_identity(s):
    assert all(row.equal for row in rho_prod_check(s))


@given(systems)
def test_roots_closed_under_negation_and_positives_lex(s):
    for g in s.roots:
        assert s.is_root(tuple(-x for x in g))
    assert all(is_lex_positive(g) for g in s.positive_roots)


@given(system_and_vector())
def test_reflection_is_involution(sv):
    s, v = sv
    for a in s.simples:
        assert reflect(reflect(v, a), a) == v
        assert dot(reflect(v, a), reflect(v, a)) == dot(v, v)


@settings(max_examples=60)
@given(system_and_vector())
def test_make_dominant_properties(sv):
    s, v = sv
    res = make_dominant(v, s)
    assert all(dot(res.dominant, a) >= 0 for a in s.simples)
    assert res.length == len(res.word)
    assert weyl_orbit_word_apply(v, s, res.word) == res.dominant
    if not res.singular:
        # Weyl length counts indivisible roots only
        halves = sum(1 for g in s.positives
                     if tuple(x / 2 for x in g) in s.positives and dot(v, g) < 0)
        assert res.length == inversion_count(v, s) - halves


@given(systems)
def test_equality_ignores_labels(s):
    label = "BC?" if s.type_label.startswith("BC") else "other"
    t = WeightedRootSystem(s.ambient_dim, dict(s.mult), s.positives, s.simples, label,
                           s.trace_zero)
    assert s == t and hash(s) == hash(t)
