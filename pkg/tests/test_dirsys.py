import json
import math

import pytest
from hypothesis import given, reject, settings
from hypothesis import strategies as st

from conftest import CONFIGS
from limroot.dirsys import (DiagonalSystemDescriptor, Levels, canonicalize,
                            extract_cofinal_aligned, generate_levels, is_classical_type,
                            is_weakly_parabolic, iwasawa_aligned, lp_parameter_check,
                            restriction_fiber_count)
from limroot.errors import DepthTooSmall, InputError, InvariantViolation, NotClassifiable

D = DiagonalSystemDescriptor


def test_dims_and_extension():
    d = D("SL", "R", 2, (2, 1), (0,), (1,), depth=3)
    assert d.r == (2, 1, 1)
    assert d.dims == ((2,), (5,), (6,), (7,))


def test_unitary_dims_and_mu():
    d = D("SU", "C", (4, 1), (1,), (0,), (), (1,), (0,), depth=3)
    assert d.dims == ((4, 1), (5, 1), (6, 1), (7, 1))
    assert [d.mu(n) for n in range(4)] == [3, 4, 5, 6]


def test_invariants():
    with pytest.raises(InvariantViolation):
        D("SL", "R", 2, (0,), (0,), (1,))
    with pytest.raises(InvariantViolation):
        D("SpF", "R", 2, (0,), (1,), (1,))
    with pytest.raises(InvariantViolation):
        D("OC", None, 3, (1,), (0,), (1,))
    with pytest.raises(InputError):
        D("SU", "C", 3, (1,))


def test_json_round_trip():
    d = D("SO_pq", None, (2, 1), (1,), (0,), (), (1,), (1,), depth=3)
    again = D.from_json(json.dumps(d.to_dict()))
    assert again == d
    assert D.from_dict(d.to_dict(), depth=5).depth == 5


def test_levels_cache():
    d = D("SL", "R", 2, (1,), (0,), (1,), depth=2)
    levels = Levels(d)
    assert levels[1] is levels[1]
    assert [lv.system.type_label for lv in generate_levels(d)] == ["A1", "A2", "A3"]


def test_alignment():
    d = D("SU", "C", (3, 1), (1,), (0,), (), (0, 3, 0), (2, 0, 0), depth=3)
    assert [d.mu(n) for n in range(4)] == [2, 0, 3, 3]
    assert iwasawa_aligned(d) == [False, True, True]
    assert extract_cofinal_aligned(d) == (1, 2, 3)


def test_cofinal_needs_depth():
    d = D("SU", "C", (3, 1), (1,), (0,), (), (0,), (2,), depth=1)
    with pytest.raises(DepthTooSmall):
        extract_cofinal_aligned(d)


def test_classical_threshold():
    assert is_classical_type(D("SL", "R", 2, (2, 1), (0,), (0,), depth=3)) == (True, 1)
    assert not is_classical_type(D("SL", "R", 2, (2,), (0,), (0,), depth=3)).holds


def test_fiber_counts():
    good = D("SL", "R", 2, (1,), (0,), (1,), depth=2)
    assert restriction_fiber_count(good, 0) == 1
    assert restriction_fiber_count(D("SL", "R", 2, (2,), depth=1), 0) == 2
    compact = D("SU", "C", (2, 0), (1,), (0,), (), (1,), (0,), depth=1)
    assert restriction_fiber_count(compact, 0) == math.inf


def test_r2_not_weakly_parabolic():
    d = D("SL", "R", 2, (2,), (0,), (0,), depth=3)
    v = is_weakly_parabolic(d)
    assert not v.holds and v.first_failure == 0
    with pytest.raises(NotClassifiable):
        canonicalize(d)


@pytest.mark.parametrize("name,case,twisted", [
    ("sl_untwisted", "a", False), ("sl_twisted", "a", True), ("so_pq_balanced", "b", False),
    ("soc", "c", False), ("sp_pq_balanced", "e", False), ("spf_real", "f", False),
    ("sostar", "g", False),
])
def test_shipped_configs_classify(name, case, twisted):
    d = D.from_dict(json.loads((CONFIGS / f"{name}.json").read_text()))
    c = canonicalize(d)
    assert (c.family_case, c.delta_variant) == (case, twisted)
    assert canonicalize(c.to_descriptor()) == c


def test_unbalanced_padding_not_parabolic():
    assert not is_weakly_parabolic(D("SOstar", None, 3, (1,), (0,), (1,), depth=2)).holds
    su = D("SU", "C", (4, 1), (1,), (0,), (), (1,), (0,), depth=2)
    assert not is_weakly_parabolic(su).holds


def test_lp_check():
    d = D("SL", "R", 3, (1,), (0,), (1,), depth=3)
    rho = Levels(d)[0].rho
    assert lp_parameter_check(d, 2, rho).accepted
    assert not lp_parameter_check(d, 2, [2 * x for x in rho]).accepted
    assert lp_parameter_check(d, 4, [x / 2 for x in rho]).accepted
    assert lp_parameter_check(d, math.inf, [0, 0, 0]).accepted
    with pytest.raises(InputError):
        lp_parameter_check(d, 2, [0, 0])


# ---------------------------------------------------------------------------

FAMILIES = [("SL", "R", 2), ("SL", "C", 2), ("SL", "H", 2), ("SU", "C", (2, 1)),
            ("SO_pq", None, (2, 1)), ("Sp_pq", None, (1, 1)), ("SpF", "R", 2),
            ("SOC", None, 3), ("SOstar", None, 3)]


@st.composite
def descriptors(draw):
    fam, fld, init = draw(st.sampled_from(FAMILIES))
    depth = draw(st.integers(1, 3))
    r = tuple(draw(st.lists(st.integers(0, 2), min_size=depth, max_size=depth)))
    s = tuple(draw(st.lists(st.integers(0, 1), min_size=depth, max_size=depth)))
    pads = st.lists(st.integers(0, 2), min_size=depth, max_size=depth)
    try:
        if isinstance(init, tuple):
            return D(fam, fld, init, r, s, (), tuple(draw(pads)), tuple(draw(pads)), depth)
        return D(fam, fld, init, r, s, tuple(draw(pads)), depth=depth)
    except InvariantViolation:
        reject()


@settings(max_examples=60, deadline=None)
@given(descriptors())
def test_weakly_parabolic_implies_classical(d):
    levels = Levels(d)
    v = is_weakly_parabolic(d, levels)
    if v.holds:
        assert is_classical_type(d).holds
        for n in range(d.depth):
            if levels[n].system.mult:
                assert restriction_fiber_count(d, n, levels) == 1


@settings(max_examples=60, deadline=None)
@given(descriptors())
def test_alignment_tracks_mu(d):
    aligned = iwasawa_aligned(d)
    for n, ok in enumerate(aligned):
        assert ok == (d.mu(n) <= d.mu(n + 1))
    try:
        idx = extract_cofinal_aligned(d)
    except DepthTooSmall:
        return
    assert all(d.mu(a) <= d.mu(b) for a, b in zip(idx, idx[1:]))
