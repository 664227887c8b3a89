"""Sections of the cyclic cover as order ideals of tetrahedra.

An ideal is stored as ``floor`` (every tetrahedron with a smaller index is
in) plus a finite set ``extra`` of members at or above ``floor``.  The
normal form has ``floor`` equal to the least missing index, so two sections
are equal iff their pairs are equal.

An edge lies on the section iff its creating tetrahedron is in the ideal and
its destroying tetrahedron is not.
"""

from __future__ import annotations

from .errors import (
    DeterminismViolation,
    EmptyConstraint,
    MoveIllegal,
    NotContaining,
    NotDisjoint,
    NotOrdered,
    WindowExceeded,
)
from .surface import IdealTriangulation
from .veering import TauEdgeRef, TriangleRef, window_cap


class Section:
    __slots__ = ("complex", "floor", "extra", "_boundary")

    def __init__(self, cx, floor, extra=()):
        members = {x for x in extra if x >= floor}
        while floor in members:
            members.discard(floor)
            floor += 1
        self.complex = cx
        self.floor = floor
        self.extra = frozenset(members)
        self._boundary = None

    # -- set view -------------------------------------------------------------

    def __contains__(self, j):
        return j < self.floor or j in self.extra

    def __eq__(self, other):
        return isinstance(other, Section) and self.floor == other.floor and self.extra == other.extra

    def __hash__(self):
        return hash((self.floor, self.extra))

    def __repr__(self):
        if not self.extra:
            return f"Section(<{self.floor})"
        return f"Section(<{self.floor} + {sorted(self.extra)})"

    def key(self):
        return (self.floor, tuple(sorted(self.extra)))

    @property
    def top_index(self):
        """One past the largest member."""
        return max(self.extra, default=self.floor - 1) + 1

    def members_between(self, lo, hi):
        return {j for j in range(lo, hi) if j in self}

    def is_ideal(self):
        cx = self.complex
        return all(all(d in self for d in cx.tet_down(x)) for x in self.extra)

    # -- boundary -------------------------------------------------------------

    def edges(self):
        """The tau-edges of this section, sorted."""
        if self._boundary is None:
            cx = self.complex
            m = cx.period
            lo = self.floor - cx.max_edge_life - 1
            creators = set(range(lo, self.floor)) | set(self.extra)
            out = []
            for j in creators:
                e = TauEdgeRef(j % m, j // m)
                if cx.destroyer(e) not in self:
                    out.append(e)
            self._boundary = tuple(sorted(out))
        return self._boundary

    def triangles(self):
        cx = self.complex
        m = cx.period
        lo = self.floor - cx.max_cover_gap - 1
        out = []
        for j in set(range(lo, self.floor)) | set(self.extra):
            for side in (0, 1):
                t = TriangleRef(j % m, j // m, side)
                if cx.triangle_destroyer(t) not in self:
                    out.append(t)
        return sorted(out)

    def triangulation(self):
        """The section's boundary as an IdealTriangulation on TauEdgeRef ids."""
        cx = self.complex
        tris = [(t, cx.triangle_sides(t)) for t in self.triangles()]
        slopes = None
        if cx.has_torus_model:
            slopes = {e: cx.slope(e) for e in self.edges()}
        return IdealTriangulation(tris, slopes, next_id=0)

    def check(self):
        n = len(self.edges())
        if n != self.complex.edge_count:
            raise AssertionError(f"{self!r} has {n} edges, expected {self.complex.edge_count}")
        return self

    # -- deck ------------------------------------------------------------------

    def deck(self, k=1):
        s = k * self.complex.period
        return Section(self.complex, self.floor - s, {x - s for x in self.extra})

    # -- moves -------------------------------------------------------------------

    def can_move_up(self, t):
        return t not in self and all(d in self for d in self.complex.tet_down(t))

    def can_move_down(self, t):
        return t in self and all(u not in self for u in self.complex.tet_up(t))

    def up_moves(self):
        """Tetrahedra that can be added, in increasing order."""
        cx = self.complex
        cand = set(range(self.floor, self.floor + cx.max_cover_gap + 1))
        for x in self.extra:
            cand.update(cx.tet_up(x))
        return sorted(t for t in cand if self.can_move_up(t))

    def down_moves(self):
        cx = self.complex
        cand = set(self.extra) | set(range(self.floor - cx.max_cover_gap - 1, self.floor))
        return sorted(t for t in cand if self.can_move_down(t))

    def move_up(self, t):
        if t in self:
            raise MoveIllegal(f"tetrahedron {t} is already below the section")
        missing = [d for d in self.complex.tet_down(t) if d not in self]
        if missing:
            raise MoveIllegal(f"tetrahedron {t}: bottom faces not on the section (needs {missing})")
        return Section(self.complex, self.floor, self.extra | {t}).check()

    def move_down(self, t):
        if t not in self:
            raise MoveIllegal(f"tetrahedron {t} is not below the section")
        blocking = [u for u in self.complex.tet_up(t) if u in self]
        if blocking:
            raise MoveIllegal(f"tetrahedron {t}: top faces are covered by {blocking}")
        if t < self.floor:
            extra = set(self.extra) | set(range(t + 1, self.floor))
            return Section(self.complex, t, extra).check()
        return Section(self.complex, self.floor, self.extra - {t}).check()


# -- constructors and lattice operations ---------------------------------------------


def base_section(cx, k):
    """Layer k of the sweep: all tetrahedra with index < k."""
    cap = window_cap()
    if abs(k) > cap * cx.period * 4:
        raise WindowExceeded(f"layer {k} is outside the window")
    return Section(cx, k)


def fiber_component(cx, e):
    """Index of the fiber component carrying the tau-edge e.

    Labels come from layer 0; each flip hands its label to the new edge, and
    the deck permutes labels from one level to the next.
    """
    labels, perm = _component_table(cx)
    sigma = perm if e.level >= 0 else {v: k for k, v in perm.items()}
    c = labels[TauEdgeRef(e.orbit, 0)]
    for _ in range(abs(e.level)):
        c = sigma[c]
    return c


def _component_table(cx):
    cached = getattr(cx, "_component_table", None)
    if cached is not None:
        return cached
    tri = base_section(cx, 0).triangulation()
    labels = {}
    for c, group in enumerate(tri.components()):
        for ti in group:
            for x in tri.triangles[ti][1]:
                labels[x] = c
    first = dict(labels)
    for j in range(cx.period):
        labels[cx.tet_top_edge(j)] = labels[cx.tet_bottom_edge(j)]
    # layer period is the deck image of layer 0, one level up
    perm = {first[x]: labels[x.shifted(1)] for x in first}
    for x in list(labels):
        if x.level != 0:
            del labels[x]
    cx._component_table = (labels, perm)
    return labels, perm


def join(a, b):
    floor = max(a.floor, b.floor)
    extra = {x for x in a.extra | b.extra if x >= floor}
    return Section(a.complex, floor, extra)


def meet(a, b):
    lo, hi = min(a.floor, b.floor), max(a.floor, b.floor)
    cand = set(a.extra) | set(b.extra) | set(range(lo, hi))
    return Section(a.complex, lo, {x for x in cand if x in a and x in b})


def leq(a, b):
    if a.floor > b.floor and any(x not in b for x in range(b.floor, a.floor)):
        return False
    return all(x in b for x in a.extra)


def interval(a, b):
    """Tetrahedra of U(a, b): members of the join that are not in the meet."""
    j, mt = join(a, b), meet(a, b)
    lo = mt.floor
    hi = j.top_index
    return frozenset(x for x in range(lo, hi) if x in j and x not in mt)


def contains_edges(T, E):
    edges = set(T.edges())
    return all(e in edges for e in E)


# -- constrained families ---------------------------------------------------------------


def check_disjoint(cx, E):
    E = sorted(set(E))
    for i, e in enumerate(E):
        for f in E[i + 1:]:
            if cx.crosses(e, f):
                raise NotDisjoint(f"edges {e} and {f} cross")
    return E


def _adaptive(run):
    """Call run(limit) with growing move budgets until it finishes."""
    w = 3
    cap = window_cap()
    while True:
        out = run(w)
        if out is not None:
            return out
        if w >= cap:
            raise WindowExceeded(f"no stable answer within {cap} periods")
        w = min(2 * w, cap)


def _lowest_missing_below(T, t):
    """A minimal tetrahedron of (down-closure of t) that is not in T."""
    cx = T.complex
    cur = t
    while True:
        below = [d for d in cx.tet_down(cur) if d not in T]
        if not below:
            return cur
        cur = min(below)


def _highest_present_above(T, t):
    cx = T.complex
    cur = t
    while True:
        above = [u for u in cx.tet_up(cur) if u in T]
        if not above:
            return cur
        cur = max(above)


def extend_to_section(cx, E, start=None):
    """A section whose boundary contains every edge of E.

    Starts at ``start`` (layer 0 by default) and moves up towards edges not
    yet created and down away from edges already destroyed.
    """
    E = check_disjoint(cx, E)
    T = start if start is not None else base_section(cx, 0)
    if not E:
        return T

    def run(w):
        cur = T
        budget = w * cx.period * max(1, len(E)) + sum(abs(cx.creator(e) - cur.floor) for e in E)
        for _ in range(budget):
            moved = False
            for e in E:
                c = cx.creator(e)
                if c not in cur:
                    cur = cur.move_up(_lowest_missing_below(cur, c))
                    moved = True
                    break
                d = cx.destroyer(e)
                if d in cur:
                    cur = cur.move_down(_highest_present_above(cur, d))
                    moved = True
                    break
            if not moved:
                return cur
        return None

    return _adaptive(run)


def _greedy(T, E, up):
    cx = T.complex
    E = set(E)

    def run(w):
        cur = T
        for _ in range(w * cx.period * cx.edge_count + 1):
            moves = cur.up_moves() if up else cur.down_moves()
            for t in moves:
                guard = cx.tet_bottom_edge(t) if up else cx.tet_top_edge(t)
                if guard not in E:
                    cur = cur.move_up(t) if up else cur.move_down(t)
                    break
            else:
                return cur
        return None

    return _adaptive(run)


def _extremum(cx, E, up):
    if not E:
        raise EmptyConstraint("T(empty set) has no top or bottom")
    E = check_disjoint(cx, E)
    first = _greedy(extend_to_section(cx, E), E, up)
    # second start: approach E from the side the greedy climbs towards
    levels = [cx.creator(e) for e in E] + [cx.destroyer(e) for e in E]
    far = (max(levels) + 2 * cx.period) if up else (min(levels) - 2 * cx.period)
    second = _greedy(extend_to_section(cx, E, start=base_section(cx, far)), E, up)
    if first != second:
        raise DeterminismViolation(f"greedy {'top' if up else 'bottom'} depends on the start: {first!r} vs {second!r}")
    return first


def top_of(cx, E):
    return _extremum(cx, E, up=True)


def bottom_of(cx, E):
    return _extremum(cx, E, up=False)


def is_phi_section(T):
    return leq(T.deck(1), T)


def monotone_path(T1, T2, E=()):
    """Tetrahedra to add, in order, to climb from T1 to T2 inside T(E)."""
    if not leq(T1, T2):
        raise NotOrdered("T1 is not below T2")
    for name, T in (("T1", T1), ("T2", T2)):
        if not contains_edges(T, E):
            raise NotContaining(f"{name} does not contain the constraint edges")
    path = sorted(interval(T1, T2))
    cur = T1
    for t in path:
        cur = cur.move_up(t)
        if not contains_edges(cur, E):
            raise AssertionError("path left T(E)")
    if cur != T2:
        raise AssertionError("path did not end at T2")
    return path
