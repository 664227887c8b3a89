"""Layered veering triangulations of the cyclic cover, built from a flip sweep.

Indexing
--------
The sweep flips one edge per step.  Step ``j`` (any integer) is tetrahedron
``j``; its orbit is ``j mod m`` and its level ``j // m``, where ``m`` is the
number of flips per period.  The edge created by tetrahedron ``j`` is the
TauEdgeRef ``(j mod m, j // m)``, and the two triangles it creates are
``(j mod m, j // m, 0)`` and ``(..., 1)``.  The deck transformation moves
everything down one period: level ``l`` goes to ``l - 1``.  Because orbit
labels are the creating flip, the monodromy does not permute them; it acts
on slopes instead (slope of level l is A^l times the slope at level 0).

Layer ``k`` of the sweep is the triangulation between tetrahedra ``k - 1``
and ``k``.  An edge created by tetrahedron b and destroyed by tetrahedron d
lives on layers b+1 .. d.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .errors import BadScript, FlipIllegal, NotPseudoAnosov, Unveerable
from .quadratic import QuadraticIrrational
from .surface import IdealTriangulation, Slope, torus_triangulation

R_MATRIX = ((1, 1), (0, 1))
L_MATRIX = ((1, 0), (1, 1))
DEFAULT_WINDOW_CAP = 48


def window_cap():
    raw = os.environ.get("VEERLAT_WINDOW")
    if raw:
        return max(3, int(raw))
    return DEFAULT_WINDOW_CAP


class TauEdgeRef(NamedTuple):
    orbit: int
    level: int

    def shifted(self, k):
        return TauEdgeRef(self.orbit, self.level + k)

    def __str__(self):
        return f"{self.orbit}@{self.level}"

    @classmethod
    def parse(cls, text):
        orbit, _, level = text.partition("@")
        return cls(int(orbit), int(level or 0))


class TriangleRef(NamedTuple):
    orbit: int
    level: int
    side: int

    def shifted(self, k):
        return TriangleRef(self.orbit, self.level + k, self.side)


class Order(Enum):
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"
    # e == f: an edge does not cross itself, so this is incomparable too
    EQUAL = "equal"

    @property
    def comparable(self):
        return self in (Order.LESS, Order.GREATER)


# -- 2x2 integer matrices ---------------------------------------------------------


def mat_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def mat_inv(A):
    (a, b), (c, d) = A
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("matrix is not invertible over Z")
    return ((d * det, -b * det), (-c * det, a * det))


def mat_pow(A, k):
    if k < 0:
        return mat_pow(mat_inv(A), -k)
    out = ((1, 0), (0, 1))
    base = A
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_apply(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def word_matrix(word):
    M = ((1, 0), (0, 1))
    for ch in word:
        M = mat_mul(M, R_MATRIX if ch == "R" else L_MATRIX)
    return M


def expand_word(text):
    """Expand run notation such as ``R^6L`` or ``R6L2`` into a plain word."""
    out = []
    i = 0
    text = text.replace("^", "").replace(" ", "").upper()
    while i < len(text):
        ch = text[i]
        if ch not in "LR":
            raise ValueError(f"unexpected character {ch!r} in LR word")
        j = i + 1
        while j < len(text) and text[j].isdigit():
            j += 1
        count = int(text[i + 1:j]) if j > i + 1 else 1
        out.append(ch * count)
        i = j
    return "".join(out)


# -- eigen-data -------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenSlopes:
    """Expanding and contracting eigenvectors of an Anosov matrix, exactly.

    ``unstable`` has both entries positive for a positive matrix and
    ``stable`` has positive second entry.
    """

    unstable: tuple
    stable: tuple
    dilatation: QuadraticIrrational


def eigen_slopes(A):
    (a, b), (c, d) = A
    t = a + d
    disc = t * t - 4
    if abs(t) <= 2:
        raise NotPseudoAnosov(f"trace {t} is not hyperbolic")
    if t < 0:
        raise ValueError("eigen-slopes expect a positive trace")
    mu_plus = QuadraticIrrational(t, 1, disc) / 2
    mu_minus = QuadraticIrrational(t, -1, disc) / 2
    if b != 0:
        up = (QuadraticIrrational(b, 0, disc), mu_plus - a)
        down = (QuadraticIrrational(b, 0, disc), mu_minus - a)
    else:
        up = (mu_plus - d, QuadraticIrrational(c, 0, disc))
        down = (mu_minus - d, QuadraticIrrational(c, 0, disc))
    if up[0].sign() < 0 or (up[0].sign() == 0 and up[1].sign() < 0):
        up = (-up[0], -up[1])
    if down[1].sign() < 0 or (down[1].sign() == 0 and down[0].sign() < 0):
        down = (-down[0], -down[1])
    return EigenSlopes(up, down, mu_plus)


def slope_sign_color(slope, eig):
    """Red iff the slope is positive in the flat picture with eigen-directions as axes."""
    x = slope.vector
    d1 = eig.stable[1] * x[0] - eig.stable[0] * x[1]  # det(x, stable)
    d2 = eig.unstable[0] * x[1] - eig.unstable[1] * x[0]  # det(unstable, x)
    s = d1.sign() * d2.sign()
    if s == 0:
        raise ValueError(f"slope {slope} is an eigen-direction")
    return "red" if s > 0 else "blue"


# -- monodromy specs --------------------------------------------------------------------


@dataclass(frozen=True)
class FlipScript:
    initial: IdealTriangulation
    flips: tuple
    relabel: tuple  # sorted (final edge id, initial edge id) pairs

    @property
    def relabel_map(self):
        return dict(self.relabel)


@dataclass(frozen=True)
class MonodromySpec:
    kind: str  # "lr" | "matrix" | "script"
    word: str = ""
    matrix: tuple = ()
    script: FlipScript = None

    @classmethod
    def from_word(cls, word):
        word = expand_word(word)
        if not word:
            raise NotPseudoAnosov("empty LR word")
        if set(word) != {"L", "R"}:
            raise NotPseudoAnosov(f"word {word!r} uses a single letter; the monodromy is reducible")
        return cls("lr", word=word)

    @classmethod
    def from_matrix(cls, *entries):
        if len(entries) == 1:
            entries = tuple(entries[0])
        if len(entries) == 2:
            entries = tuple(entries[0]) + tuple(entries[1])
        a, b, c, d = (int(x) for x in entries)
        if a * d - b * c != 1:
            raise NotPseudoAnosov("matrix must have determinant 1")
        if abs(a + d) <= 2:
            raise NotPseudoAnosov(f"|trace| = {abs(a + d)} <= 2: not Anosov")
        return cls("matrix", word=matrix_to_word(((a, b), (c, d))), matrix=((a, b), (c, d)))

    @classmethod
    def from_script(cls, initial, flips, relabel):
        flips = tuple(flips)
        if not flips:
            raise BadScript("flip script is empty")
        return cls("script", script=FlipScript(initial, flips, tuple(sorted(dict(relabel).items(), key=repr))))

    def describe(self):
        if self.kind == "script":
            return f"flip script with {len(self.script.flips)} flips"
        if self.kind == "matrix":
            return f"matrix {self.matrix} ~ {self.word}"
        return self.word


def _factor_positive(B):
    """Write a nonnegative matrix of determinant 1 as a word in R and L."""
    letters = []
    cur = B
    for _ in range(10_000):
        if cur == ((1, 0), (0, 1)):
            word = "".join(reversed(letters))
            assert word_matrix(word) == B
            return word
        (a, b), (c, d) = cur
        if a >= b and c >= d:
            cur = ((a - b, b), (c - d, d))
            letters.append("L")
        elif b >= a and d >= c:
            cur = ((a, b - a), (c, d - c))
            letters.append("R")
        else:
            return None
        if min(cur[0] + cur[1]) < 0:
            return None
    return None


def matrix_to_word(A):
    """An LR word whose product is conjugate in SL(2, Z) to A (or to -A if trace < 0).

    Conjugates A by the continued-fraction convergent matrices of its
    attracting fixed slope until the result is nonnegative, then factors.
    """
    (a, b), (c, d) = A
    if a + d < 0:
        A = ((-a, -b), (-c, -d))
    eig = eigen_slopes(A)
    x = eig.unstable[0] / eig.unstable[1]
    C = ((1, 0), (0, 1))
    for k in range(400):
        if k % 2 == 0:
            B = mat_mul(mat_mul(mat_inv(C), A), C)
            if min(B[0] + B[1]) >= 0:
                word = _factor_positive(B)
                if word and set(word) == {"L", "R"}:
                    return word
        n = x.__floor__()
        C = mat_mul(C, ((n, 1), (1, 0)))
        x = 1 / (x - n)
    raise NotPseudoAnosov("could not reduce the matrix to a positive word")


def word_to_script(word):
    """The torus sweep for an LR word as a flip script with slope data.

    State (u, v) with third edge u + v.  R keeps u and drops v, L keeps v and
    drops u; either way the new third edge is the old sum plus the kept edge.
    """
    T = torus_triangulation(Slope(1, 0), Slope(0, 1))
    u, v, w = 0, 1, 2
    flips = []
    cur = T
    for ch in word:
        drop = v if ch == "R" else u
        nxt = cur.flip(drop)
        new = next(e for e in nxt.edges if e not in cur.edges)
        flips.append(drop)
        if ch == "R":
            u, v, w = u, w, new
        else:
            u, v, w = w, v, new
        cur = nxt
    relabel = {u: 0, v: 1, w: 2}
    return T, flips, relabel


# -- the complex ----------------------------------------------------------------------


class VeeringComplex:
    """The Z-periodic layered triangulation swept out by a periodic flip script."""

    def __init__(self, spec):
        self.spec = spec
        if spec.kind in ("lr", "matrix"):
            initial, flips, relabel = word_to_script(spec.word)
            self.monodromy = word_matrix(spec.word)
        else:
            s = spec.script
            initial, flips, relabel = s.initial, list(s.flips), s.relabel_map
            self.monodromy = None
        self.initial = initial
        self._unroll(initial, list(flips), dict(relabel))
        if self.monodromy is None and initial.slopes is not None:
            self.monodromy = self._infer_torus_matrix()
        self.eigen = eigen_slopes(self.monodromy) if self._torus_ok() else None
        self._check_slopes()
        self.colors = None

    # -- construction ---------------------------------------------------------

    def _unroll(self, T0, flips, sigma):
        m = len(flips)
        if m == 0:
            raise BadScript("flip script is empty")
        self.period = m
        cur = T0
        created_edge = []
        created_tris = []
        flipped_at = {}
        tri_killed_at = {}
        tet_data = []
        slopes_created = []
        for i, x in enumerate(flips):
            if x not in cur.edges:
                raise BadScript(f"flip {i}: edge {x!r} is not in the current triangulation")
            try:
                t1, t2, sides = cur.quadrilateral(x)
            except FlipIllegal as exc:
                raise BadScript(f"flip {i}: {exc}") from exc
            bottom_tris = (cur.triangles[t1][0], cur.triangles[t2][0])
            nxt = cur.flip(x)
            new = next(e for e in nxt.edges if e not in cur.edges)
            new_tris = tuple(t for t, _ in nxt.triangles if t not in {tt for tt, _ in cur.triangles})
            # order new triangles as (f, b, c) then (f, d, a)
            by_id = dict(nxt.triangles)
            new_tris = tuple(sorted(new_tris, key=lambda t: 0 if by_id[t][1] == sides[1] else 1))
            flipped_at[x] = i
            for t in bottom_tris:
                tri_killed_at[t] = i
            created_edge.append(new)
            created_tris.append(new_tris)
            tet_data.append((x, sides, bottom_tris))
            if nxt.slopes is not None:
                slopes_created.append(nxt.slopes[new])
            cur = nxt
        Tm = cur
        if set(sigma) != set(Tm.edges) or sorted(sigma.values(), key=repr) != sorted(T0.edges, key=repr):
            raise BadScript("relabeling is not a bijection from the final edges onto the initial edges")
        tri_sigma = self._match_triangles(Tm, T0, sigma)

        edge_origin = {e: i for i, e in enumerate(created_edge)}
        tri_origin = {}
        for i, pair in enumerate(created_tris):
            for s, t in enumerate(pair):
                tri_origin[t] = (i, s)
        inv_sigma = {v: k for k, v in sigma.items()}
        inv_tri_sigma = {v: k for k, v in tri_sigma.items()}

        def resolve(obj, origin, inverse, kind):
            # ref of an id in the period-0 history, as (orbit[, side], level)
            shift = 0
            seen = set()
            while obj not in origin:
                if obj in seen:
                    raise NotPseudoAnosov(f"{kind} {obj!r} is never flipped: the monodromy is reducible")
                seen.add(obj)
                obj = inverse[obj]
                shift -= 1
            return origin[obj], shift

        def edge_ref(e):
            orbit, level = resolve(e, edge_origin, inv_sigma, "edge")
            return TauEdgeRef(orbit, level)

        def tri_ref(t):
            (orbit, side), level = resolve(t, tri_origin, inv_tri_sigma, "triangle")
            return TriangleRef(orbit, level, side)

        def death(obj, killed, sig):
            # global index of the flip destroying obj (a period-0 history id)
            shift = 0
            seen = set()
            while obj not in killed:
                if obj in seen:
                    raise NotPseudoAnosov(f"{obj!r} is never flipped: the monodromy is reducible")
                seen.add(obj)
                obj = sig[obj]
                shift += m
            return killed[obj] + shift

        self.edge_death = tuple(death(e, flipped_at, sigma) for e in created_edge)
        self.tri_death = tuple(
            tuple(death(t, tri_killed_at, tri_sigma) for t in pair) for pair in created_tris
        )
        # triangle sides, recorded from the flips
        self.tri_sides = []
        self.tet_bottom = []
        self.tet_sides_table = []
        self.tet_bottom_tris = []
        for i, (x, sides, bottom_tris) in enumerate(tet_data):
            a, b, c, d = (edge_ref(e) for e in sides)
            f = TauEdgeRef(i, 0)
            self.tri_sides.append(((f, b, c), (f, d, a)))
            self.tet_bottom.append(edge_ref(x))
            self.tet_sides_table.append((a, b, c, d))
            self.tet_bottom_tris.append(tuple(tri_ref(t) for t in bottom_tris))
        self.initial_edges = tuple(sorted(edge_ref(e) for e in T0.edges))
        self.initial_triangles = tuple(sorted(tri_ref(t) for t, _ in T0.triangles))
        self.edge_count = len(T0.edges)
        self.chi = T0.euler_characteristic
        self._created_slopes = tuple(slopes_created) if len(slopes_created) == m else None
        self._initial_slopes = (
            {edge_ref(e): s for e, s in T0.slopes.items()} if T0.slopes is not None else None
        )

        for i in range(m):
            if self.edge_death[i] <= i:
                raise BadScript(f"edge orbit {i} dies before it is born")
        self.up_covers = tuple(tuple(sorted(set(self.tri_death[i]))) for i in range(m))
        self.down_covers = tuple(
            tuple(sorted({t.level * m + t.orbit for t in self.tet_bottom_tris[i]})) for i in range(m)
        )
        self.max_edge_life = max(self.edge_death[i] - i for i in range(m))
        self.max_cover_gap = max(max(self.up_covers[i]) - i for i in range(m))
        self.is_chain = all(self.up_covers[i] == (i + 1,) for i in range(m))

    @staticmethod
    def _match_triangles(Tm, T0, sigma):
        from .surface import _min_rotation

        pool = {}
        for tid, sides in T0.triangles:
            pool.setdefault(_min_rotation(sides), []).append(tid)
        out = {}
        for tid, sides in Tm.triangles:
            key = _min_rotation(tuple(sigma[e] for e in sides))
            if not pool.get(key):
                raise BadScript("relabeling does not carry triangles to triangles")
            out[tid] = pool[key].pop(0)
        return out

    def _infer_torus_matrix(self):
        # slopes of the final triangulation are A times the initial ones
        if self._created_slopes is None or self.edge_count != 3:
            return None
        init = {r: s for r, s in self._initial_slopes.items()}
        pairs = []
        for r, s in init.items():
            up = r.shifted(1)
            if up.level == 0:
                pairs.append((s, self._created_slopes[up.orbit]))
            else:
                pairs.append((s, init.get(up)))
        if any(t is None for _, t in pairs):
            return None
        (s1, t1), (s2, t2) = pairs[0], pairs[1]
        det_s = s1.p * s2.q - s2.p * s1.q
        for e1 in (1, -1):
            for e2 in (1, -1):
                x1, y1 = e1 * t1.p, e1 * t1.q
                x2, y2 = e2 * t2.p, e2 * t2.q
                # A = [t1 t2] [s1 s2]^-1
                inv = ((s2.q * det_s, -s2.p * det_s), (-s1.q * det_s, s1.p * det_s))
                A = mat_mul(((x1, x2), (y1, y2)), inv)
                if A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1:
                    continue
                if all(Slope(*mat_apply(A, s.vector)).same_slope(t) for s, t in pairs):
                    return A
        return None

    def _torus_ok(self):
        if self.monodromy is None:
            return False
        t = self.monodromy[0][0] + self.monodromy[1][1]
        return t > 2

    def _check_slopes(self):
        if self._initial_slopes is None or self.monodromy is None:
            return
        for r, s in self._initial_slopes.items():
            if not self.slope(r).same_slope(s):
                raise BadScript(f"slope bookkeeping mismatch on {r}")

    # -- basic queries -----------------------------------------------------------

    @property
    def has_torus_model(self):
        return self.monodromy is not None and self._created_slopes is not None

    def tetrahedra_per_period(self):
        return self.period

    def tet_orbit_level(self, j):
        return j % self.period, j // self.period

    def birth(self, e):
        """First layer containing e."""
        return e.level * self.period + e.orbit + 1

    def death(self, e):
        """Last layer containing e (the index of the tetrahedron destroying it)."""
        return e.level * self.period + self.edge_death[e.orbit]

    def creator(self, e):
        return e.level * self.period + e.orbit

    def destroyer(self, e):
        return self.death(e)

    def tet_bottom_edge(self, j):
        o, l = self.tet_orbit_level(j)
        return self.tet_bottom[o].shifted(l)

    def tet_top_edge(self, j):
        o, l = self.tet_orbit_level(j)
        return TauEdgeRef(o, l)

    def tet_sides(self, j):
        o, l = self.tet_orbit_level(j)
        return tuple(s.shifted(l) for s in self.tet_sides_rel(o))

    def tet_sides_rel(self, orbit):
        return self.tet_sides_table[orbit]

    def tet_up(self, j):
        o, l = self.tet_orbit_level(j)
        return tuple(x + l * self.period for x in self.up_covers[o])

    def tet_down(self, j):
        o, l = self.tet_orbit_level(j)
        return tuple(x + l * self.period for x in self.down_covers[o])

    def triangle_sides(self, t):
        sides = self.tri_sides[t.orbit][t.side]
        return tuple(s.shifted(t.level) for s in sides)

    def triangle_creator(self, t):
        return t.level * self.period + t.orbit

    def triangle_destroyer(self, t):
        return t.level * self.period + self.tri_death[t.orbit][t.side]

    @lru_cache(maxsize=200_000)
    def tet_leq(self, x, y):
        """x <= y in the order generated by shared faces (x below y)."""
        if x == y:
            return True
        if y < x:
            return False
        if self.is_chain:
            return True
        seen = {x}
        todo = deque([x])
        while todo:
            cur = todo.popleft()
            for nxt in self.tet_up(cur):
                if nxt == y:
                    return True
                if nxt < y and nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return False

    def crosses(self, e, f):
        """True iff the two tau-edges have intersecting interiors.

        Two edges are disjoint exactly when some section contains both, which
        happens iff neither one's destroying tetrahedron lies below the
        other's creating tetrahedron.
        """
        if e == f:
            return False
        return self.tet_leq(self.destroyer(e), self.creator(f)) or self.tet_leq(
            self.destroyer(f), self.creator(e)
        )

    def edge_order(self, e, f):
        """How e compares with f: LESS means e < f."""
        if e == f:
            return Order.EQUAL
        if not self.crosses(e, f):
            return Order.INCOMPARABLE
        if self.death(e) < self.birth(f):
            return Order.LESS
        return Order.GREATER

    def apply_deck(self, x, k=1):
        """Apply the k-th power of the deck transformation (levels drop by k)."""
        if isinstance(x, TauEdgeRef):
            return x.shifted(-k)
        if isinstance(x, TriangleRef):
            return x.shifted(-k)
        if isinstance(x, int):
            return x - k * self.period
        return x.deck(k)

    # -- torus data --------------------------------------------------------------

    def slope(self, e):
        if not self.has_torus_model:
            raise ValueError("slopes exist only for once-punctured torus bundles")
        s = self._created_slopes[e.orbit]
        return Slope(*mat_apply(mat_pow(self.monodromy, e.level), s.vector))

    def orbit_slopes(self, level=0):
        return [self.slope(TauEdgeRef(i, level)) for i in range(self.period)]

    def find_slope(self, s, max_level=None):
        """The TauEdgeRef realizing slope s, or None."""
        if not self.has_torus_model:
            return None
        cap = max_level if max_level is not None else 4 * window_cap()
        # levels grow the slope height geometrically; scan outward from 0
        for dist in range(cap + 1):
            for level in {dist, -dist}:
                A = mat_pow(self.monodromy, -level)
                base = Slope(*mat_apply(A, s.vector))
                for i, c in enumerate(self._created_slopes):
                    if c.same_slope(base):
                        return TauEdgeRef(i, level)
        return None

    # -- coloring ------------------------------------------------------------------

    def validate_veering(self):
        """Two-color the edge orbits so every equatorial square alternates.

        Returns ``{orbit: "red" | "blue"}``.  On torus bundles the coloring is
        oriented so that red edges have positive slope with respect to the
        eigen-directions, and every edge is checked against that rule.
        """
        m = self.period
        parent = list(range(m))
        parity = [0] * m

        def find(x):
            if parent[x] == x:
                return x, 0
            root, p = find(parent[x])
            parent[x] = root
            parity[x] ^= p
            return root, parity[x]

        def union(x, y, differ, tet):
            rx, px = find(x)
            ry, py = find(y)
            if rx == ry:
                if (px ^ py) != differ:
                    raise Unveerable(f"tetrahedron orbit {tet} cannot alternate colors", tet)
                return
            parent[rx] = ry
            parity[rx] = px ^ py ^ differ

        for t, (a, b, c, d) in enumerate(self.tet_sides_table):
            union(a.orbit, c.orbit, 0, t)
            union(b.orbit, d.orbit, 0, t)
            union(a.orbit, b.orbit, 1, t)
            union(c.orbit, d.orbit, 1, t)
        # parity_zero_red[root]: whether parity 0 in that component means red
        parity_zero_red = {}
        if self.eigen is not None:
            for i in range(m):
                root, p = find(i)
                want_red = slope_sign_color(self.slope(TauEdgeRef(i, 0)), self.eigen) == "red"
                base = parity_zero_red.setdefault(root, want_red == (p == 0))
                if ((p == 0) == base) != want_red:
                    raise Unveerable(f"edge orbit {i}: coloring disagrees with the slope-sign rule")
        colors = {}
        for i in range(m):
            root, p = find(i)
            red = (p == 0) == parity_zero_red.get(root, True)
            colors[i] = "red" if red else "blue"
        self.colors = colors
        return colors

    def color(self, e):
        if self.colors is None:
            self.validate_veering()
        return self.colors[e.orbit]

    # -- serialization -------------------------------------------------------------

    def to_tables(self):
        m = self.period
        colors = self.colors or self.validate_veering()
        orbits = []
        for i in range(m):
            row = {
                "orbit": i,
                "birth": i + 1,
                "death": self.edge_death[i],
                "color": colors[i],
            }
            if self.has_torus_model:
                row["slope"] = str(self.slope(TauEdgeRef(i, 0)))
            orbits.append(row)
        tets = []
        for i in range(m):
            tets.append(
                {
                    "orbit": i,
                    "bottom": str(self.tet_bottom[i]),
                    "top": str(TauEdgeRef(i, 0)),
                    "sides": [str(s) for s in self.tet_sides_table[i]],
                    "up": list(self.up_covers[i]),
                    "down": list(self.down_covers[i]),
                }
            )
        return {
            "period": m,
            "chi": self.chi,
            "edges_per_section": self.edge_count,
            "initial_edges": [str(e) for e in self.initial_edges],
            "orbits": orbits,
            "tetrahedra": tets,
            "monodromy": [list(r) for r in self.monodromy] if self.monodromy else None,
        }


def build_from_monodromy(spec):
    if not isinstance(spec, MonodromySpec):
        spec = MonodromySpec.from_word(spec)
    c = VeeringComplex(spec)
    return c


def tetrahedra_per_period(c):
    return c.tetrahedra_per_period()


def edge_order(c, e, f):
    return c.edge_order(e, f)


def apply_deck(c, x, k=1):
    return c.apply_deck(x, k)


def validate_veering(c):
    return c.validate_veering()
