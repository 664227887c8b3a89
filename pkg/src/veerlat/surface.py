r"""Punctured fiber surfaces: ideal triangulations, flips, arcs and proper graphs.

Conventions
-----------
A triangle is a cyclic triple of edge ids read counterclockwise.  Side ``i``
of a triangle runs from corner ``i`` to corner ``i+1``; corner ``i`` sits
between sides ``i-1`` and ``i``.  Two sides carrying the same edge id are
glued with opposite orientations, so every triangulation built from edge
labels alone is orientable.

Flip of edge e, with the quadrilateral read counterclockwise as a, b, c, d::

        R ------ b ------ P              R ------ b ------ P
        |             /  |               |  \             |
        a    t1    e     c     --->      a     \  f       c
        |      /     t2  |               |        \       |
        Q ------ d ------ S              Q ------ d ------ S

Triangles (e, a, b) and (e, c, d) become (f, b, c) and (f, d, a).  Some of
a, b, c, d may coincide (on the once-punctured torus a = c and b = d).

Normal coordinates record, for each edge, how many times an ideal arc
crosses it, with -1 on the edge the arc runs along.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import FlipIllegal, IncompatibleReference


@dataclass(frozen=True, order=True)
class Slope:
    """A reduced slope p/q on the once-punctured torus, with 1/0 for infinity.

    The integer pair is the homology vector (p, q).  ``closed=True`` means the
    simple closed curve of that slope; otherwise the ideal arc through the
    puncture.
    """

    p: int
    q: int
    closed: bool = False

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("slope 0/0 is not a curve")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text, closed=False):
        num, _, den = text.strip().partition("/")
        return cls(int(num), int(den) if den else 1, closed)

    @property
    def vector(self):
        return (self.p, self.q)

    def det(self, other):
        return self.p * other.q - self.q * other.p

    def as_arc(self):
        return Slope(self.p, self.q, False)

    def as_curve(self):
        return Slope(self.p, self.q, True)

    def same_slope(self, other):
        return self.p == other.p and self.q == other.q

    def height(self):
        return max(abs(self.p), abs(self.q))

    def __str__(self):
        return f"{self.p}/{self.q}"


def slope_sum(a, b):
    return Slope(a.p + b.p, a.q + b.q)


def slope_difference(a, b):
    return Slope(a.p - b.p, a.q - b.q)


def _min_rotation(triple):
    rots = [triple[i:] + triple[:i] for i in range(3)]
    return min(rots, key=repr)


class IdealTriangulation:
    """An ideal triangulation given by triangles that list their edge ids.

    ``slopes`` optionally attaches a torus slope to every edge; flips then
    keep slopes up to date.  Edge and triangle ids are arbitrary hashables and
    survive flips; the flipped edge is replaced by a fresh id.
    """

    def __init__(self, triangles, slopes=None, singular=(), next_id=None):
        tris = []
        for tid, sides in triangles:
            sides = tuple(sides)
            if len(sides) != 3:
                raise ValueError(f"triangle {tid!r} has {len(sides)} sides")
            tris.append((tid, sides))
        self.triangles = tuple(tris)
        self.slopes = dict(slopes) if slopes else None
        self.singular = frozenset(singular)
        occ = {}
        for ti, (_, sides) in enumerate(self.triangles):
            for i, e in enumerate(sides):
                occ.setdefault(e, []).append((ti, i))
        self._occurrences = occ
        self.edges = tuple(sorted(occ, key=repr))
        if next_id is None:
            ints = [x for x in list(occ) + [t for t, _ in self.triangles] if isinstance(x, int)]
            next_id = max(ints, default=-1) + 1
        self.next_id = next_id
        self.validate()

    # -- structure -----------------------------------------------------

    def validate(self):
        for e, where in self._occurrences.items():
            if len(where) != 2:
                raise ValueError(f"edge {e!r} lies on {len(where)} triangle sides, expected 2")
        ids = [t for t, _ in self.triangles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate triangle ids")
        if 2 * len(self.edges) != 3 * len(self.triangles):
            raise ValueError("edge and triangle counts are inconsistent")
        if self.slopes is not None and set(self.slopes) != set(self.edges):
            raise ValueError("slope table does not match edge set")
        # walking around each vertex must come back to where it started
        for cycle in self.vertex_links():
            if not cycle:
                raise ValueError("empty vertex link")

    @property
    def euler_characteristic(self):
        return -len(self.edges) // 3

    chi = euler_characteristic

    def vertex_links(self):
        """Corner cycles around each ideal vertex, as lists of (triangle, corner)."""
        nxt = {}
        for e, ((t1, i), (t2, j)) in self._occurrences.items():
            # rotating counterclockwise about the start of side i in t1 leads
            # across e into t2, arriving at the corner at the end of side j
            nxt[(t1, i)] = (t2, (j + 1) % 3)
            nxt[(t2, j)] = (t1, (i + 1) % 3)
        seen = set()
        cycles = []
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = nxt[start]
            while cur != start:
                if cur in seen:
                    raise ValueError("vertex link does not close up")
                seen.add(cur)
                cyc.append(cur)
                cur = nxt[cur]
            cycles.append(cyc)
        return cycles

    def vertex_count(self):
        return len(self.vertex_links())

    def vertex_of_corner(self):
        out = {}
        for k, cyc in enumerate(self.vertex_links()):
            for corner in cyc:
                out[corner] = k
        return out

    def edge_endpoints(self, e):
        ti, i = self._occurrences[e][0]
        corner = self.vertex_of_corner()
        return corner[(ti, i)], corner[(ti, (i + 1) % 3)]

    @property
    def puncture_count(self):
        return self.vertex_count() - len(self.singular)

    @property
    def genus(self):
        # closed-up surface: V - E + F = 2 - 2g per component; components are
        # found through shared edges
        comps = self.components()
        v = self.vertex_count()
        closed_chi = v - len(self.edges) + len(self.triangles)
        return (2 * len(comps) - closed_chi) // 2

    def components(self):
        parent = list(range(len(self.triangles)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (t1, _), (t2, _) in self._occurrences.values():
            parent[find(t1)] = find(t2)
        groups = {}
        for ti in range(len(self.triangles)):
            groups.setdefault(find(ti), []).append(ti)
        return list(groups.values())

    def canonical(self):
        """Combinatorial fingerprint that ignores triangle ids."""
        return (self.edges, tuple(sorted((_min_rotation(s) for _, s in self.triangles), key=repr)))

    def __eq__(self, other):
        return isinstance(other, IdealTriangulation) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"IdealTriangulation(edges={len(self.edges)}, triangles={len(self.triangles)})"

    # -- flips -----------------------------------------------------------

    def quadrilateral(self, e):
        """Return (t1, t2, (a, b, c, d)) for the two triangles around e."""
        if e not in self._occurrences:
            raise KeyError(f"no edge {e!r}")
        (t1, i), (t2, j) = self._occurrences[e]
        if t1 == t2:
            raise FlipIllegal(f"edge {e!r} has both sides on one triangle")
        s1 = self.triangles[t1][1]
        s2 = self.triangles[t2][1]
        a, b = s1[(i + 1) % 3], s1[(i + 2) % 3]
        c, d = s2[(j + 1) % 3], s2[(j + 2) % 3]
        return t1, t2, (a, b, c, d)

    def is_flippable(self, e):
        try:
            self.quadrilateral(e)
        except FlipIllegal:
            return False
        return True

    def flip(self, e, new_edge=None, new_triangles=None):
        t1, t2, (a, b, c, d) = self.quadrilateral(e)
        nid = self.next_id
        if new_edge is None:
            new_edge, nid = nid, nid + 1
        if new_triangles is None:
            new_triangles = (nid, nid + 1)
            nid += 2
        f = new_edge
        if f in self._occurrences and f != e:
            raise FlipIllegal(f"new edge id {f!r} already in use")
        tris = [tr for k, tr in enumerate(self.triangles) if k not in (t1, t2)]
        tris.append((new_triangles[0], (f, b, c)))
        tris.append((new_triangles[1], (f, d, a)))
        slopes = None
        if self.slopes is not None:
            slopes = dict(self.slopes)
            old = slopes.pop(e)
            sa, sb = slopes[a], slopes[b]
            cand = slope_sum(sa, sb)
            if cand.same_slope(old):
                cand = slope_difference(sa, sb)
            slopes[f] = cand
        ints = [x for x in (f, *new_triangles) if isinstance(x, int)]
        nid = max([nid, *(x + 1 for x in ints)])
        return IdealTriangulation(tris, slopes, self.singular, next_id=nid)

    def relabel(self, edge_map, triangle_map=None):
        tris = []
        for tid, sides in self.triangles:
            tid2 = triangle_map[tid] if triangle_map else tid
            tris.append((tid2, tuple(edge_map[x] for x in sides)))
        slopes = None
        if self.slopes is not None:
            slopes = {edge_map[k]: v for k, v in self.slopes.items()}
        return IdealTriangulation(tris, slopes, self.singular)


def torus_triangulation(x=Slope(1, 0), y=Slope(0, 1), z=None, ids=(0, 1, 2)):
    """The two-triangle triangulation of the once-punctured torus by slopes x, y, z.

    x and y must be Farey neighbours; z defaults to their sum.
    """
    if abs(x.det(y)) != 1:
        raise ValueError("x and y must meet once")
    if z is None:
        z = slope_sum(x, y)
    ex, ey, ez = ids
    tris = [(100, (ex, ey, ez)), (101, (ex, ey, ez))]
    return IdealTriangulation(tris, {ex: x, ey: y, ez: z}, next_id=max(102, max(ids) + 1))


# -- normal coordinates ---------------------------------------------------


@dataclass(frozen=True)
class NormalCoordinates:
    """An ideal arc recorded by its crossings with the edges of a triangulation."""

    reference: IdealTriangulation = field(compare=False, hash=False)
    weights: tuple
    ref_key: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if len(self.weights) != len(self.reference.edges):
            raise ValueError("one weight per edge is required")
        if not self.ref_key:
            object.__setattr__(self, "ref_key", self.reference.canonical())
        w = self.as_dict()
        for _, (x, y, z) in self.reference.triangles:
            a, b, c = (max(w[x], 0), max(w[y], 0), max(w[z], 0))
            if a > b + c + 2 or b > a + c + 2 or c > a + b + 2:
                raise ValueError("weights violate the triangle inequality")

    @classmethod
    def of_edge(cls, T, e):
        return cls(T, tuple(-1 if x == e else 0 for x in T.edges))

    @classmethod
    def from_dict(cls, T, weights):
        return cls(T, tuple(weights[x] for x in T.edges))

    def as_dict(self):
        return dict(zip(self.reference.edges, self.weights))

    def edge(self):
        """The edge this arc runs along, or None."""
        for x, w in zip(self.reference.edges, self.weights):
            if w == -1:
                return x
        return None

    def after_flip(self, e, flipped=None, new_edge=None):
        """Coordinates on the triangulation obtained by flipping e."""
        T = self.reference
        if flipped is None:
            flipped = T.flip(e, new_edge=new_edge)
        _, _, (a, b, c, d) = T.quadrilateral(e)
        w = self.as_dict()
        f = next(x for x in flipped.edges if x not in w)
        new = dict(w)
        old = new.pop(e)
        new[f] = max(w[a] + w[c], w[b] + w[d]) - old
        return NormalCoordinates.from_dict(flipped, new)

    def total_weight(self):
        return sum(max(x, 0) for x in self.weights)


def _shorten_to_edge(a, b, limit=10_000):
    """Flip a's reference until a becomes an edge, carrying b along."""
    for _ in range(limit):
        e = a.edge()
        if e is not None:
            return a, b
        T = a.reference
        w = a.as_dict()
        best = None
        for x in T.edges:
            if w[x] <= 0 or not T.is_flippable(x):
                continue
            _, _, (p, q, r, s) = T.quadrilateral(x)
            new = max(w[p] + w[r], w[q] + w[s]) - w[x]
            if new < w[x] and (best is None or new - w[x] < best[0]):
                best = (new - w[x], x)
        if best is None:
            raise ValueError("arc could not be shortened to an edge")
        x = best[1]
        flipped = T.flip(x)
        a = a.after_flip(x, flipped)
        b = b.after_flip(x, flipped)
    raise ValueError("shortening did not terminate")


def intersection_number(a, b):
    """Geometric intersection number of interiors of two arcs or curves."""
    if isinstance(a, Slope) and isinstance(b, Slope):
        det = abs(a.det(b))
        if det == 0:
            return 0
        if not a.closed and not b.closed:
            # both pass through the puncture, which is not an interior point
            return det - 1
        return det
    if isinstance(a, NormalCoordinates) and isinstance(b, NormalCoordinates):
        if a.ref_key != b.ref_key:
            raise IncompatibleReference("normal coordinates use different triangulations")
        a2, b2 = _shorten_to_edge(a, b)
        e = a2.edge()
        return max(b2.as_dict()[e], 0)
    raise IncompatibleReference("cannot compare a slope with normal coordinates")


def slope_normal_coordinates(T, target):
    """Normal coordinates of the arc of slope ``target`` on a torus triangulation.

    Walks the Farey tessellation from T to a triangulation containing the
    target, then carries the coordinates back by undoing the flips.
    """
    if T.slopes is None:
        raise IncompatibleReference("triangulation has no slope data")
    target = target.as_arc()
    path = []
    cur = T
    guard = 0
    while not any(s.same_slope(target) for s in cur.slopes.values()):
        guard += 1
        if guard > 10_000:
            raise RuntimeError("Farey walk did not reach the target")
        best = None
        for x in cur.edges:
            nxt = cur.flip(x)
            new_edge = next(y for y in nxt.edges if y not in cur.slopes)
            score = abs(nxt.slopes[new_edge].det(target))
            if best is None or score < best[0]:
                best = (score, x, nxt, new_edge)
        _, x, nxt, new_edge = best
        path.append((x, new_edge, cur))
        cur = nxt
    e = next(x for x, s in cur.slopes.items() if s.same_slope(target))
    coords = NormalCoordinates.of_edge(cur, e)
    for old_edge, new_edge, prev in reversed(path):
        back = coords.reference.flip(new_edge, new_edge=old_edge)
        coords = coords.after_flip(new_edge, back)
        coords = NormalCoordinates.from_dict(prev, coords.as_dict())
    return coords


# -- proper graphs ----------------------------------------------------------


class ProperGraph:
    """A graph made of edges of a triangulation, plus optional degenerate parts.

    ``isolated_vertices`` counts vertices the graph meets without edges and
    ``null_loops`` counts null-homotopic loops at singular vertices; both carry
    no essential class.
    """

    def __init__(self, triangulation, edges=(), isolated_vertices=0, null_loops=0):
        self.triangulation = triangulation
        self.edges = tuple(sorted(set(edges), key=repr))
        for e in self.edges:
            if e not in triangulation.edges:
                raise KeyError(f"edge {e!r} not in triangulation")
        self.isolated_vertices = isolated_vertices
        self.null_loops = null_loops

    @property
    def chi(self):
        return self.triangulation.euler_characteristic

    def vertex_count(self):
        met = set()
        for e in self.edges:
            met.update(self.triangulation.edge_endpoints(e))
        return len(met) + self.isolated_vertices + (1 if self.null_loops and not met else 0)

    def edge_count(self):
        return len(self.edges) + self.null_loops

    @property
    def essential(self):
        return bool(nearly_simple_arcs(self))


def nearly_simple_arcs(G):
    """Essential classes carried by G through paths meeting each vertex at most twice.

    Each edge carries its own arc (a loop at the puncture is still an arc
    there).  With torus slopes available, every two-edge cycle x.y or x.y^-1
    visits the puncture twice and carries the closed curve of slope x+y or
    x-y.
    """
    T = G.triangulation
    out = set()
    if T.slopes is not None:
        sl = [T.slopes[e] for e in G.edges]
        for s in sl:
            out.add(s.as_arc())
        for i, x in enumerate(sl):
            for y in sl[i + 1:]:
                out.add(slope_sum(x, y).as_curve())
                out.add(slope_difference(x, y).as_curve())
        return frozenset(out)
    for e in G.edges:
        out.add(NormalCoordinates.of_edge(T, e))
    return frozenset(out)


def chi_prime(Y):
    """max(|chi(Y)|, 1) for a subsurface descriptor or a bare Euler characteristic."""
    chi = Y if isinstance(Y, int) else Y.chi
    return max(abs(chi), 1)
