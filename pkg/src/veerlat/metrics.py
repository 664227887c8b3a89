"""Exact curve-graph distances on the torus models and distance-bound calculators.

Annular classes: fix the core slope c and a matrix M in SL(2, Z) with
M c = 1/0.  A slope a != c is sent to the rational x = M a, and the arcs of
the annulus about c that a projects to are the integers floor(x) and
ceil(x), the Farey neighbours of c on the side of a.  Arcs n and n' cross
|n - n'| times, and the distance is 1 + crossings, so equal arcs sit at
distance 1.  Changing M by a twist shifts every x by the same integer, so
diameters do not depend on the choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from .errors import EmptyProjection, InessentialGraph, NoBoundApplicable
from .surface import Slope, nearly_simple_arcs


@dataclass(frozen=True)
class UniversalConstants:
    D: int = 15
    annularProjDiam: int = 3
    projClose: int = 7
    immersionM: int = 38

    @property
    def topBottomSlack(self):
        return self.D + 1

    @property
    def staysClose(self):
        return 4 * self.D

    @property
    def rightPlace(self):
        return 2 * self.D + 11

    @property
    def pocketCut(self):
        return 16 * self.D

    @property
    def progressStep(self):
        return 2 * self.D

    @property
    def dichotomyFactor(self):
        return 9 * self.D

    @property
    def hypothesisGate(self):
        return 10 * self.D

    def self_check(self):
        expected = {
            "D": 15,
            "annularProjDiam": 3,
            "projClose": 7,
            "topBottomSlack": 16,
            "staysClose": 60,
            "rightPlace": 41,
            "pocketCut": 240,
            "progressStep": 30,
            "dichotomyFactor": 135,
            "hypothesisGate": 150,
            "immersionM": 38,
        }
        for name, value in expected.items():
            got = getattr(self, name)
            if got != value:
                raise AssertionError(f"constant {name} = {got}, expected {value}")
        return True


CONSTANTS = UniversalConstants()
CONSTANTS.self_check()


@dataclass(frozen=True)
class DistanceBound:
    kind: str  # "exact" | "upper" | "lower"
    value: int
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("exact", "upper", "lower"):
            raise ValueError(f"unknown bound kind {self.kind!r}")

    @property
    def upper(self):
        return self.value if self.kind in ("exact", "upper") else None

    @property
    def lower(self):
        return self.value if self.kind in ("exact", "lower") else None


# -- Farey graph ---------------------------------------------------------------


def _to_infinity(c):
    """A matrix in SL(2, Z) sending slope c to 1/0, as ((a, b), (cc, d))."""
    p, q = c.p, c.q
    # find x, y with p*y - q*x = 1, so [[p, x], [q, y]] sends 1/0 to c
    g, s, t = _ext_gcd(p, q)  # s*p + t*q = g = 1
    x, y = -t, s
    assert p * y - q * x == 1
    # inverse of [[p, x], [q, y]]
    return ((y, -x), (-q, p))


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def _apply(M, v):
    (a, b), (c, d) = M
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


@lru_cache(maxsize=None)
def _dist_from_infinity(p, q):
    # distance from 1/0 to the reduced slope p/q (q > 0)
    if q == 0:
        return 0
    if q == 1:
        return 1
    best = None
    for n in (floor(Fraction(p, q)), floor(Fraction(p, q)) + 1):
        # z -> -1/(z - n) sends n to infinity and p/q to -q/(p - n q)
        p2, q2 = -q, p - n * q
        if q2 < 0:
            p2, q2 = -p2, -q2
        d = 1 + _dist_from_infinity(p2, q2)
        if best is None or d < best:
            best = d
    return best


def farey_distance(s1, s2):
    """Exact distance in the Farey graph."""
    if s1.same_slope(s2):
        return 0
    M = _to_infinity(s1)
    p, q = _apply(M, s2.vector)
    t = Slope(p, q)
    return _dist_from_infinity(t.p, t.q)


# -- annular projections ---------------------------------------------------------


def twist_coordinate(core, a):
    """Position of a in the annular cover of core, as a rational or quadratic irrational.

    ``a`` is a Slope or a pair of numbers (for irrational directions).
    """
    M = _to_infinity(core)
    if isinstance(a, Slope):
        if a.same_slope(core):
            raise EmptyProjection(f"slope {a} does not cross the core {core}")
        x, y = _apply(M, a.vector)
        return Fraction(x, y)
    x, y = _apply(M, a)
    return x / y


def annular_arcs(core, a):
    """The arcs (integers) of the annulus about core that a projects to."""
    x = twist_coordinate(core, a)
    lo = floor(x)
    if x == lo:
        return frozenset({lo})
    return frozenset({lo, lo + 1})


def annular_distance(core, a, b):
    """1 + crossings between the canonical (floor) lifts of a and b."""
    for side, s in (("a", a), ("b", b)):
        if isinstance(s, Slope) and s.same_slope(core):
            raise EmptyProjection(f"{side} = {s} does not cross the core {core}", side)
    na = floor(twist_coordinate(core, a))
    nb = floor(twist_coordinate(core, b))
    return 1 + abs(na - nb)


def arc_set_diameter(arcs):
    """Diameter of a set of annular arcs under the 1 + crossings convention."""
    arcs = list(arcs)
    if not arcs:
        raise EmptyProjection("empty projection")
    return 1 + max(arcs) - min(arcs)


def dehn_twist(core, a, k):
    """Image of slope a under the k-th power of the twist about core."""
    det = a.det(core)
    # twist: v -> v + k * <v, c> c  (sign convention fixed, any fixed sign works)
    return Slope(a.p + k * det * core.p, a.q + k * det * core.q, a.closed)


# -- bound calculators ---------------------------------------------------------------

BOWDITCH_CAP = 64


def bowditch_bound(i, zeta):
    if zeta < 3:
        raise ValueError("zeta must be at least 3")
    if i < 0:
        raise ValueError("intersection number must be nonnegative")
    for n in range(BOWDITCH_CAP + 1):
        if 2 ** n * i <= zeta ** (n + 1):
            return DistanceBound("upper", 2 * (n + 1), f"n={n}: 2^n*i <= zeta^(n+1)")
    raise NoBoundApplicable(f"no n <= {BOWDITCH_CAP} satisfies 2^n*{i} <= {zeta}^(n+1)")


def ceil_log2(i):
    """Smallest k with 2^k >= i, for i >= 1."""
    return (i - 1).bit_length()


def chi_intersection_bound(i, chi):
    """Distance bound from an intersection number on a surface of Euler characteristic chi.

    The two threshold rules take precedence; the logarithmic rule is the
    fallback and is floored at 18 so the bound stays nondecreasing in i.
    """
    if i < 0:
        raise ValueError("intersection number must be nonnegative")
    x = abs(chi)
    if i == 0:
        return DistanceBound("upper", 1, "disjoint classes")
    if i <= 8 * x + 4:
        return DistanceBound("upper", 15, "i <= 8|chi|+4")
    if i <= 32 * x + 8:
        return DistanceBound("upper", 18, "i <= 32|chi|+8")
    # ceil(2 log2 i) = smallest k with 2^k >= i^2
    log_rule = ceil_log2(i * i) + 2
    return DistanceBound("upper", max(18, log_rule), "2*ceil-log2 rule")


def diam_as(G):
    """Upper bound on the diameter of the nearly simple arcs of a proper graph."""
    if not nearly_simple_arcs(G):
        raise InessentialGraph("graph carries no essential arc or curve")
    v = G.vertex_count()
    chi = G.chi
    if v <= 2 * abs(chi) + 1:
        return DistanceBound("upper", CONSTANTS.D, f"{v} vertices <= 2|chi|+1")
    b = chi_intersection_bound(4 * v, chi)
    return DistanceBound("upper", b.value, f"crossing estimate 4*{v}: {b.note}")

