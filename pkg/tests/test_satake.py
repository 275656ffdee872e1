import pytest
from hypothesis import given
from hypothesis import strategies as st

from limroot.errors import MalformedDiagram, NotWhite
from limroot.oracle import realize
from limroot.roots import RealFormDescriptor as R
from limroot.roots import build_restricted_system
from limroot.satake import (SatakeDiagram, black_positive_root_count, delete, delete_classes,
                            drop_black_components, format_text, isomorphic,
                            parabolic_components, restrict_simple, restriction_classes,
                            satake_of, to_dot)


def test_classes_match_rank(catalog):
    for desc in catalog:
        diag = satake_of(desc)
        assert len(restriction_classes(diag)) == build_restricted_system(desc).rank


def test_black_count_matches_oracle(catalog):
    # dim m = 2 * (black positive roots) + (vertices - rank), for the semisimple forms
    for desc in catalog:
        if not desc.is_semisimple:
            continue
        diag = satake_of(desc)
        rank = len(restriction_classes(diag))
        want = 2 * black_positive_root_count(diag) + len(diag.vertices) - rank
        assert realize(desc).m_dimension() == want, desc.label()


def test_su21_shape():
    diag = satake_of(R("SU", "C", (2, 1)))
    assert diag.white == [1, 2]
    assert diag.arrows == ((1, 2),)
    assert restrict_simple(diag) == {1: 1, 2: 1}


def test_sostar4_special_case():
    diag = satake_of(R("SOstar", None, (2,)))
    assert diag.colors == {1: "black", 2: "white"}


@pytest.mark.parametrize("desc,count", [
    (R("SL", "R", (3,)), 3), (R("SU", "C", (2, 1)), 2), (R("SO_pq", None, (3, 3)), 5),
])
def test_component_counts(desc, count):
    assert len(parabolic_components(satake_of(desc))) == count


def test_delete_closes_arrows():
    diag = satake_of(R("SU", "C", (2, 2)))
    out = delete(diag, [1])
    assert [v for v, _ in out.vertices] == [2]


def test_delete_rejects_black_and_missing():
    diag = satake_of(R("SU", "C", (3, 1)))
    with pytest.raises(NotWhite):
        delete(diag, diag.black[:1])
    with pytest.raises(MalformedDiagram):
        delete(diag, [99])


def test_malformed_inputs():
    with pytest.raises(MalformedDiagram):
        SatakeDiagram(((1, "white"), (2, "grey")))
    with pytest.raises(MalformedDiagram):
        SatakeDiagram(((1, "white"), (2, "white"), (3, "white")),
                      ((1, 2, 1), (2, 3, 1), (1, 3, 1)))
    with pytest.raises(MalformedDiagram):
        SatakeDiagram(((1, "white"), (2, "black")), (), ((1, 2),))


def test_round_trip_dict(catalog):
    for desc in catalog:
        diag = satake_of(desc)
        assert SatakeDiagram.from_dict(diag.to_dict()) == diag


def test_bond_direction_matters():
    b2 = SatakeDiagram(((1, "white"), (2, "white")), ((1, 2, 2),))
    c2 = SatakeDiagram(((1, "white"), (2, "white")), ((2, 1, 2),))
    # in rank 2 a relabelling swaps the direction
    assert isomorphic(b2, c2)
    b3 = SatakeDiagram(((1, "white"), (2, "white"), (3, "white")), ((1, 2, 1), (2, 3, 2)))
    c3 = SatakeDiagram(((1, "white"), (2, "white"), (3, "white")), ((1, 2, 1), (3, 2, 2)))
    assert not isomorphic(b3, c3)


def test_drop_black_components():
    diag = SatakeDiagram(((1, "black"), (2, "white"), (3, "black"), (4, "black")),
                         ((1, 2, 1), (3, 4, 1)))
    assert drop_black_components(diag).colors == {1: "black", 2: "white"}


def test_renderers():
    diag = satake_of(R("SU", "C", (3, 1)))
    dot = to_dot(diag)
    assert dot.startswith("graph satake {") and "dashed" in dot
    assert "arrows: 1<->3" in format_text(diag)


@given(st.sampled_from([R("SL", "R", (5,)), R("SU", "C", (3, 3)), R("SpF", "R", (4,)),
                        R("SO_pq", None, (4, 4)), R("SOstar", None, (5,))]),
       st.data())
def test_deletion_drops_rank(desc, data):
    diag = satake_of(desc)
    k = len(restriction_classes(diag))
    subset = data.draw(st.sets(st.integers(1, k)))
    out = delete_classes(diag, subset)
    assert len(restriction_classes(out)) == k - len(subset)
    assert not out.black or set(out.black) <= set(diag.black)
