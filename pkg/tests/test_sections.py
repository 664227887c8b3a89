import random

import pytest
from helpers import two_component_complex
from hypothesis import given, settings
from hypothesis import strategies as st

from veerlat.errors import EmptyConstraint, MoveIllegal, NotContaining, NotDisjoint, NotOrdered
from veerlat.sections import (
    Section,
    base_section,
    bottom_of,
    contains_edges,
    extend_to_section,
    interval,
    is_phi_section,
    join,
    leq,
    meet,
    monotone_path,
    top_of,
)
from veerlat.suites import random_in_T, random_section
from veerlat.surface import Slope
from veerlat.veering import TauEdgeRef, build_from_monodromy

BUNDLES = {w: build_from_monodromy(w) for w in ("RL", "RRL", "RRLL", "R^6L")}
BUNDLES["two-component"] = two_component_complex()
NAMES = sorted(BUNDLES)

LO, HI = -200, 200


def as_set(T):
    return frozenset(x for x in range(LO, HI) if x in T)


def from_set(cx, s):
    """Brute-force normal form: floor is the least missing index in the window."""
    floor = LO
    while floor in s:
        floor += 1
    assert all(x in s for x in range(LO, floor))
    return Section(cx, floor, {x for x in s if x > floor})


def down_closed(cx, s):
    return all(d in s or d < LO for x in s for d in cx.tet_down(x))


sections = st.tuples(st.sampled_from(NAMES), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))


@given(sections)
@settings(max_examples=120, deadline=None)
def test_lattice_operations_are_set_operations(args):
    name, s1, s2, s3 = args
    cx = BUNDLES[name]
    a = random_section(cx, random.Random(s1))
    b = random_section(cx, random.Random(s2))
    c = random_section(cx, random.Random(s3))
    A, B = as_set(a), as_set(b)
    assert down_closed(cx, A) and down_closed(cx, B)
    assert as_set(join(a, b)) == A | B
    assert as_set(meet(a, b)) == A & B
    assert join(a, b) == from_set(cx, A | B)
    assert leq(a, b) == (A <= B)
    assert set(interval(a, b)) == A ^ B
    assert interval(a, b) == interval(meet(a, b), join(a, b))
    # lattice laws
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, meet(b, c)) == meet(meet(a, b), c)
    assert join(a, meet(a, b)) == a == meet(a, join(a, b))
    if leq(a, b) and leq(b, a):
        assert a == b
    for T in (a, join(a, b), meet(a, b)):
        assert len(T.edges()) == cx.edge_count
        assert T.triangulation().chi == cx.chi


@pytest.mark.parametrize("name", NAMES)
def test_sweep_periodicity_and_phi_sections(name):
    cx = BUNDLES[name]
    m = cx.period
    for k in range(-2 * m, 2 * m):
        assert base_section(cx, k + m) == base_section(cx, k).deck(-1)
        assert is_phi_section(base_section(cx, k))
        assert is_phi_section(base_section(cx, k).deck(1))


def test_join_trivial_cases():
    cx = BUNDLES["RL"]
    T = base_section(cx, 0)
    assert join(T, T) == T
    assert join(base_section(cx, 0), base_section(cx, 3)) == base_section(cx, 3)
    assert leq(T, T)
    assert leq(base_section(cx, 0), base_section(cx, 5))


def test_incomparable_sections_from_disjoint_moves():
    cx = BUNDLES["two-component"]
    base = base_section(cx, 0)
    ups = base.up_moves()
    assert len(ups) >= 2
    t1, t2 = ups[:2]
    a, b = base.move_up(t1), base.move_up(t2)
    assert not leq(a, b) and not leq(b, a)
    assert t1 in join(a, b) and t2 in join(a, b)
    assert t1 not in meet(a, b) and t2 not in meet(a, b)


def test_move_errors():
    cx = BUNDLES["RL"]
    T = base_section(cx, 0)
    with pytest.raises(MoveIllegal):
        T.move_up(-1)
    with pytest.raises(MoveIllegal):
        T.move_up(5)
    with pytest.raises(MoveIllegal):
        T.move_down(3)


def test_move_down_then_phi_section_value_is_reported():
    cx = BUNDLES["two-component"]
    T = base_section(cx, 0)
    t = T.down_moves()[0]
    value = is_phi_section(T.move_down(t))
    assert value in (True, False)


# -- constrained families ------------------------------------------------------------------------


def test_empty_constraint_extends_to_layer_zero():
    cx = BUNDLES["RRL"]
    assert extend_to_section(cx, []) == base_section(cx, 0)
    with pytest.raises(EmptyConstraint):
        top_of(cx, [])


def test_edge_of_base_extends_to_base():
    cx = BUNDLES["RRL"]
    e = base_section(cx, 0).edges()[0]
    assert extend_to_section(cx, [e]) == base_section(cx, 0)


@pytest.mark.parametrize("level", [-3, 0, 2, 5])
def test_pivot_edge_extension(level):
    cx = BUNDLES["RRL"]
    pivot = cx.find_slope(Slope(3, 1))
    e = TauEdgeRef(pivot.orbit, level)
    T = extend_to_section(cx, [e])
    assert e in T.edges()
    assert cx.creator(e) in T and cx.destroyer(e) not in T


def test_crossing_constraint_rejected():
    cx = BUNDLES["RL"]
    e = cx.tet_bottom_edge(0)
    f = cx.tet_top_edge(0)
    with pytest.raises(NotDisjoint):
        extend_to_section(cx, [e, f])


@pytest.mark.parametrize("name", NAMES)
def test_fully_constrained_top_equals_bottom(name):
    cx = BUNDLES[name]
    for k in (-3, 0, 4):
        E = base_section(cx, k).edges()
        assert top_of(cx, E) == bottom_of(cx, E) == base_section(cx, k)


@pytest.mark.parametrize("name", ["RL", "RRL", "RRLL", "R^6L"])
def test_single_edge_band_contains_sampled_sections(name):
    cx = BUNDLES[name]
    rng = random.Random(11)
    for o in range(cx.period):
        e = TauEdgeRef(o, 0)
        lo, hi = bottom_of(cx, [e]), top_of(cx, [e])
        assert len(interval(lo, hi)) >= 1
        start = extend_to_section(cx, [e])
        for _ in range(10):
            S = random_in_T(start, [e], rng, 3 * cx.period)
            assert e in S.edges()
            assert leq(lo, S) and leq(S, hi)


def test_monotone_paths():
    cx = BUNDLES["RRL"]
    T = base_section(cx, 2)
    assert monotone_path(T, T) == []
    assert len(monotone_path(base_section(cx, 0), base_section(cx, 4))) == 4
    e = TauEdgeRef(1, 0)
    lo, hi = bottom_of(cx, [e]), top_of(cx, [e])
    path = monotone_path(lo, hi, [e])
    assert len(path) == len(interval(lo, hi))
    cur = lo
    for t in path:
        cur = cur.move_up(t)
        assert contains_edges(cur, [e])


def test_monotone_path_errors():
    cx = BUNDLES["RRL"]
    with pytest.raises(NotOrdered):
        monotone_path(base_section(cx, 3), base_section(cx, 1))
    e = base_section(cx, 0).edges()[0]
    with pytest.raises(NotContaining):
        monotone_path(base_section(cx, 0), base_section(cx, 9), [e])


def test_window_cap_env(monkeypatch):
    from veerlat.errors import WindowExceeded

    monkeypatch.setenv("VEERLAT_WINDOW", "3")
    cx = BUNDLES["two-component"]
    # a constraint on one component leaves the other free: T(E) has no bottom
    e = next(x for x in base_section(cx, 0).edges())
    with pytest.raises(WindowExceeded):
        bottom_of(cx, [e])
