"""Independent oracles and fixture builders shared by the tests."""

from __future__ import annotations

from collections import deque
from decimal import Decimal, getcontext
from fractions import Fraction
from math import gcd

from veerlat.surface import IdealTriangulation, Slope, torus_triangulation
from veerlat.veering import MonodromySpec, VeeringComplex

# -- straight lines on the unit square torus -------------------------------------------


GENERIC_A = (Fraction(1, 1009), Fraction(1, 1013))
GENERIC_B = (Fraction(1, 1019), Fraction(1, 1021))


def straight_line_crossings(a, b):
    """Count crossings of straight representatives on R^2 / Z^2.

    Arcs run through the marked point at the origin, which is not counted.
    Closed curves are pushed off it by offsets with large prime denominators,
    so for slopes of small height they miss the origin and each other's
    lattice translates.
    """
    (p, q), (r, s) = a.vector, b.vector
    oa = GENERIC_A if a.closed else (Fraction(0), Fraction(0))
    ob = GENERIC_B if b.closed else (Fraction(0), Fraction(0))
    det = p * s - q * r
    if det == 0:
        return 0
    hits = set()
    bound = abs(p) + abs(q) + abs(r) + abs(s) + 2
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            # oa + t (p, q) = ob + u (r, s) + (m, n), t, u in [0, 1)
            dx = ob[0] + m - oa[0]
            dy = ob[1] + n - oa[1]
            t = Fraction(dx * s - dy * r, det)
            u = Fraction(p * dy - q * dx, det)
            if 0 <= t < 1 and 0 <= u < 1:
                x = (oa[0] + t * p) % 1
                y = (oa[1] + t * q) % 1
                hits.add((x, y))
    hits.discard((Fraction(0), Fraction(0)))
    return len(hits)


# -- Farey graph by breadth-first search ------------------------------------------------------


def _reduced(p, q):
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def farey_bfs(s1, s2, height=None):
    """Distance by BFS over slopes with |p|, |q| <= height."""
    a, b = _reduced(*s1.vector), _reduced(*s2.vector)
    if a == b:
        return 0
    H = height or max(abs(x) for x in a + b) + 2
    verts = {
        _reduced(p, q) for p in range(-H, H + 1) for q in range(0, H + 1) if (p, q) != (0, 0) and gcd(p, q) == 1
    }
    dist = {a: 0}
    todo = deque([a])
    while todo:
        cur = todo.popleft()
        for v in verts:
            if v not in dist and abs(cur[0] * v[1] - cur[1] * v[0]) == 1:
                dist[v] = dist[cur] + 1
                if v == b:
                    return dist[v]
                todo.append(v)
    raise AssertionError("target not reached")


# -- slope-sign coloring with decimal eigenvectors ----------------------------------------------


def decimal_colors(cx, digits=60):
    """Red iff the edge's slope lies strictly between the unstable and stable lines
    on the side swept by the positive quadrant, with eigenvectors computed in Decimal.
    """
    getcontext().prec = digits
    (a, b), (c, d) = cx.monodromy
    assert a + d > 2, "positive words have trace above 2"
    tr = Decimal(a + d)
    disc = (tr * tr - 4).sqrt()
    mu_plus = (tr + disc) / 2
    mu_minus = (tr - disc) / 2
    v_plus = (Decimal(b), mu_plus - a)
    v_minus = (Decimal(b), mu_minus - a)
    if v_plus[0] < 0 or v_plus[1] < 0:
        v_plus = (-v_plus[0], -v_plus[1])
    if v_minus[1] < 0:
        v_minus = (-v_minus[0], -v_minus[1])
    out = {}
    for i in range(cx.period):
        s = cx.orbit_slopes()[i]
        x = (Decimal(s.p), Decimal(s.q))
        d1 = x[0] * v_minus[1] - x[1] * v_minus[0]
        d2 = v_plus[0] * x[1] - v_plus[1] * x[0]
        out[i] = "red" if (d1 > 0) == (d2 > 0) else "blue"
    return out


# -- fixtures ------------------------------------------------------------------------------------


def two_component_complex():
    """Two once-punctured tori swapped by the monodromy; one flip on each per period."""
    T = IdealTriangulation([("a0", (0, 1, 2)), ("a1", (0, 1, 2)), ("b0", (3, 4, 5)), ("b1", (3, 4, 5))])
    spec = MonodromySpec.from_script(T, [1, 3], {0: 3, 2: 4, 6: 5, 5: 0, 4: 1, 9: 2})
    return VeeringComplex(spec)


def two_component_script_json():
    return {
        "triangles": [["a0", [0, 1, 2]], ["a1", [0, 1, 2]], ["b0", [3, 4, 5]], ["b1", [3, 4, 5]]],
        "flips": [1, 3],
        "relabel": [[0, 3], [2, 4], [6, 5], [5, 0], [4, 1], [9, 2]],
    }


def flip_back_script():
    """Flip an edge and then flip the new edge straight back: no veering coloring."""
    T = torus_triangulation(Slope(1, 0), Slope(0, 1))
    return MonodromySpec.from_script(T, [0, 102], {1: 0, 2: 1, 105: 2})


def flip_back_script_json():
    return {
        "triangles": [[100, [0, 1, 2]], [101, [0, 1, 2]]],
        "flips": [0, 102],
        "relabel": [[1, 0], [2, 1], [105, 2]],
        "slopes": [[0, "1/0"], [1, "0/1"], [2, "1/1"]],
    }


def lr_words(max_len):
    out = []
    for n in range(2, max_len + 1):
        for k in range(2 ** n):
            w = "".join("R" if (k >> i) & 1 else "L" for i in range(n))
            if set(w) == {"L", "R"}:
                out.append(w)
    return out


def run_length_pivot_count(word):
    """Flip events at the pivot of the longest R-run: run length plus one neighbouring flip."""
    k = word.index("L")
    cyclic = word[k:] + word[:k]
    runs = [len(r) for r in cyclic.split("L") if r]
    return max(runs) + 1
