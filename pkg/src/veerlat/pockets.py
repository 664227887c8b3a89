"""Subsurfaces, tau-projections, pockets and the inequality checks built on them.

Annuli are given by a core slope and are exact on torus bundles.  Subsurfaces
given by an explicit boundary edge set are supported for the lattice side
(pockets, retraction, overlap); their projections are exact only for the
whole fiber of a torus bundle and bound-only otherwise.

The region of a pocket is the set of tetrahedra lying over the interior of
Y: for an annulus, the tetrahedra whose equatorial square has the core as a
side; for an explicit boundary, those whose diagonals meet no boundary edge.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import ceil

from . import metrics
from .errors import (
    EmptyProjection,
    HypothesisUnmet,
    ModelUnsupported,
    NoOverlapFound,
    NotCompatible,
    NoT0InBand,
)
from .metrics import CONSTANTS, annular_arcs, arc_set_diameter, farey_distance
from .report import BOUND_ONLY, PASS, RECORDED, SKIPPED, CheckRecord, record
from .sections import (
    Section,
    base_section,
    fiber_component,
    bottom_of,
    check_disjoint,
    interval,
    join,
    leq,
    meet,
    monotone_path,
    top_of,
)
from .surface import ProperGraph, Slope, chi_prime, nearly_simple_arcs
from .veering import mat_apply, mat_pow, window_cap

D = CONSTANTS.D


@dataclass(frozen=True)
class SubsurfaceSpec:
    kind: str  # "annulus" | "boundary"
    core: Slope = None
    boundary: frozenset = frozenset()
    chi_value: int = None

    @classmethod
    def annulus(cls, core):
        if isinstance(core, str):
            core = Slope.parse(core)
        return cls("annulus", core=core.as_curve())

    @classmethod
    def explicit(cls, edges, chi=None):
        return cls("boundary", boundary=frozenset(edges), chi_value=chi)

    @property
    def is_annulus(self):
        return self.kind == "annulus"

    @property
    def chi(self):
        if self.is_annulus:
            return 0
        return self.chi_value

    def label(self):
        if self.is_annulus:
            return f"annulus[{self.core}]"
        return "boundary[" + ",".join(str(e) for e in sorted(self.boundary)) + "]"


def _chi(cx, Y):
    if Y.chi is not None:
        return Y.chi
    return cx.chi


def chi_prime_of(cx, Y):
    return chi_prime(_chi(cx, Y))


# -- boundary and projections -------------------------------------------------------


def pivot_slopes(cx):
    return [str(s) for s in cx.orbit_slopes()] if cx.has_torus_model else []


def tau_boundary(cx, Y):
    """The tau-edges realizing the boundary of Y."""
    if Y.is_annulus:
        ref = cx.find_slope(Y.core) if cx.has_torus_model else None
        if ref is None:
            raise NotCompatible(
                f"core {Y.core} is not a tau-edge slope; its annular projections stay close, "
                f"so there is no pocket to build",
                pivots=pivot_slopes(cx),
            )
        return frozenset({ref})
    check_disjoint(cx, Y.boundary)
    return frozenset(Y.boundary)


def _edges_of(K):
    return K.edges() if isinstance(K, Section) else tuple(K)


def in_interior(cx, Y, e):
    """Whether the tau-edge e meets the interior of Y."""
    if Y.is_annulus:
        return not cx.slope(e).same_slope(Y.core)
    if e in Y.boundary or any(cx.crosses(e, b) for b in Y.boundary):
        return False
    return fiber_component(cx, e) in _touched(cx, Y.boundary)


def _touched(cx, edges):
    return {fiber_component(cx, b) for b in edges}


def proj_tau(cx, Y, K):
    """Projection of a section or edge set to Y.

    Annulus: the annular arcs (integers) of every edge crossing the core.
    Otherwise: the nearly simple arcs of the edges inside Y.
    """
    edges = [e for e in _edges_of(K) if in_interior(cx, Y, e)]
    if Y.is_annulus:
        out = set()
        for e in edges:
            out |= annular_arcs(Y.core, cx.slope(e))
        return frozenset(out)
    if not edges:
        return frozenset()
    from .sections import extend_to_section

    host = K if isinstance(K, Section) else extend_to_section(cx, edges)
    G = ProperGraph(host.triangulation(), edges)
    return nearly_simple_arcs(G)


def projection_diameter(cx, Y, arcs):
    if Y.is_annulus:
        return arc_set_diameter(arcs)
    if not cx.has_torus_model or Y.boundary:
        raise ModelUnsupported("exact distances for this subsurface are not available")
    slopes = sorted({(a.p, a.q) for a in arcs})
    best = 0
    for i, x in enumerate(slopes):
        for y in slopes[i + 1:]:
            best = max(best, farey_distance(Slope(*x), Slope(*y)))
    return best


def dY(cx, Y, K1, K2):
    """Diameter of the union of the projections of K1 and K2."""
    p1 = proj_tau(cx, Y, K1) if not isinstance(K1, frozenset) or not _is_arcs(K1) else K1
    p2 = proj_tau(cx, Y, K2) if not isinstance(K2, frozenset) or not _is_arcs(K2) else K2
    if not p1:
        raise EmptyProjection("first argument has empty projection", "first")
    if not p2:
        raise EmptyProjection("second argument has empty projection", "second")
    return projection_diameter(cx, Y, p1 | p2)


def _is_arcs(s):
    return bool(s) and all(isinstance(x, (int, Slope)) for x in s)


def diameter_of(cx, Y, K):
    arcs = proj_tau(cx, Y, K)
    if not arcs:
        raise EmptyProjection("empty projection")
    return projection_diameter(cx, Y, arcs)


def lambda_projection(cx, Y):
    """Projections of the stable and unstable laminations: (pi(lambda-), pi(lambda+))."""
    if not Y.is_annulus or cx.eigen is None:
        raise ModelUnsupported("lamination projections need an annulus in a torus bundle")
    return (
        annular_arcs(Y.core, cx.eigen.stable),
        annular_arcs(Y.core, cx.eigen.unstable),
    )


def d_lambda(cx, Y):
    lo, hi = lambda_projection(cx, Y)
    return arc_set_diameter(lo | hi)


def compatibility_guard(cx, Y):
    """(status, measured) for the tau-compatibility thresholds."""
    if Y.is_annulus:
        d = d_lambda(cx, Y)
        return ("compatible" if d >= 4 else "below-threshold", d)
    return ("unchecked", None)


# -- pockets ------------------------------------------------------------------------


@dataclass
class Pocket:
    Y: SubsurfaceSpec
    kind: str  # "maximal" | "pinched" | "isolated"
    bottom: Section
    top: Section
    region: frozenset
    info: dict = field(default_factory=dict)

    @property
    def count(self):
        return len(self.region)


def over_interior(cx, Y, t):
    """Whether tetrahedron t lies over the interior of Y."""
    if Y.is_annulus:
        return any(cx.slope(s).same_slope(Y.core) for s in cx.tet_sides(t))
    b = cx.tet_bottom_edge(t)
    top = cx.tet_top_edge(t)
    return in_interior(cx, Y, b) and in_interior(cx, Y, top)


def region_between(cx, Y, T1, T2):
    return frozenset(t for t in interval(T1, T2) if over_interior(cx, Y, t))


class PocketContext:
    """Cached top and bottom of T(boundary of Y) for one complex."""

    def __init__(self, cx, Y):
        self.cx = cx
        self.Y = Y
        self.E = tau_boundary(cx, Y)
        self.top = top_of(cx, self.E)
        self.bottom = bottom_of(cx, self.E)

    def retract(self, T):
        a = meet(self.top, join(self.bottom, T))
        b = join(self.bottom, meet(self.top, T))
        if a != b:
            raise AssertionError(f"retraction formulas disagree: {a!r} vs {b!r}")
        return a

    def maximal(self):
        return Pocket(self.Y, "maximal", self.bottom, self.top, region_between(self.cx, self.Y, self.bottom, self.top))

    def pinched(self, T1, T2):
        return Pocket(self.Y, "pinched", T1, T2, region_between(self.cx, self.Y, T1, T2))


def maximal_pocket(cx, Y):
    return PocketContext(cx, Y).maximal()


def retract_to_pocket(cx, T, Y):
    return PocketContext(cx, Y).retract(T)


def overlap_index(cx, Y, horizon=None):
    """Least i > 0 with phi^i(Y) overlapping Y."""
    horizon = horizon or window_cap()
    if Y.is_annulus:
        if not cx.has_torus_model:
            raise ModelUnsupported("annuli need a torus bundle")
        v = Y.core.vector
        for i in range(1, horizon + 1):
            # phi acts on slopes by the inverse monodromy
            w = mat_apply(mat_pow(cx.monodromy, -i), v)
            img = Slope(*w)
            if img.same_slope(Y.core) or img.det(Y.core) != 0:
                return i
        raise NoOverlapFound(f"no overlap within {horizon} iterates")
    # an explicit Y is its boundary components cut along the boundary, so any
    # translate landing on a touched component overlaps it
    touched = _touched(cx, tau_boundary(cx, Y))
    for i in range(1, horizon + 1):
        if _touched(cx, [e.shifted(-i) for e in Y.boundary]) & touched:
            return i
    raise NoOverlapFound(f"no overlap within {horizon} iterates")


def isolated_pocket(cx, Y, research=False, gate=None):
    """The pocket clipped between a phi-section and its translate.

    ``research=True`` skips the distance hypothesis; ``gate`` overrides its
    threshold (default 10D).
    """
    gate = CONSTANTS.hypothesisGate if gate is None else gate
    dl = d_lambda(cx, Y)
    if dl < gate and not research:
        raise HypothesisUnmet(
            f"d_Y(lambda-, lambda+) = {dl} is below {gate}", measured=dl, threshold=gate
        )
    ctx = PocketContext(cx, Y)
    n = overlap_index(cx, Y)
    m = cx.period
    _, lam_plus = lambda_projection(cx, Y)
    lam_minus, _ = lambda_projection(cx, Y)
    lo = ctx.bottom.floor - 3 * m * max(1, n)
    hi = ctx.top.top_index + 3 * m * max(1, n)
    band = []
    for k in range(lo, hi + 1):
        T = base_section(cx, k)
        try:
            d = dY(cx, Y, T, lam_plus)
        except EmptyProjection:
            continue
        if 3 * D <= d <= 5 * D:
            band.append((abs(d - 4 * D), k, d))
    if not band:
        raise NoT0InBand(f"no layer between {lo} and {hi} has distance to lambda+ in [{3 * D}, {5 * D}]")
    _, k0, d0 = min(band)
    T0 = base_section(cx, k0)
    TN = T0.deck(n)
    upper = ctx.retract(T0)
    lower = ctx.retract(TN)
    region = region_between(cx, Y, lower, upper)
    info = {
        "N": n,
        "T0_layer": k0,
        "d_T0_lambda_plus": d0,
        "d_lambda": dl,
        "gate": gate,
        "gate_passed": dl >= gate,
        "cert_T0Y_lambda_plus": dY(cx, Y, upper, lam_plus),
        "cert_TNY_lambda_minus": dY(cx, Y, lower, lam_minus),
        "d_TN_lambda_minus": dY(cx, Y, TN, lam_minus),
    }
    horizon = n + 2 * m
    hits = []
    for i in range(1, horizon + 1):
        moved = {t - i * m for t in region}
        if moved & region:
            hits.append(i)
    span = (max(region) - min(region) + 1) if region else 0
    info["embedding_horizon"] = horizon
    info["embedding_hits"] = hits
    # beyond the horizon translates move the region by more than its index span
    info["beyond_horizon_by_levels"] = span < (horizon + 1) * m
    return Pocket(Y, "isolated", lower, upper, region, info)


def interior_identity(cx, Y, T1, T2, ctx=None):
    """Check: pinched pocket of the retractions == U(T1, T2) restricted to U_Y."""
    ctx = ctx or PocketContext(cx, Y)
    lhs = region_between(cx, Y, ctx.retract(T1), ctx.retract(T2))
    whole = ctx.maximal().region
    rhs = frozenset(t for t in interval(T1, T2) if t in whole)
    return lhs, rhs


# -- theorem checks ------------------------------------------------------------------


def pivot_annuli(cx):
    return [SubsurfaceSpec.annulus(s) for s in cx.orbit_slopes()]


def _sample_above(T, rng, steps):
    cur = T
    for _ in range(steps):
        moves = cur.up_moves()
        if not moves:
            break
        cur = cur.move_up(rng.choice(moves))
    return cur


def _checks_for(cx, Y, seed, research):
    rng = random.Random(f"{seed}:{Y.label()}")
    recs = []
    lab = Y.label()
    m = cx.period
    inputs = {"Y": lab, "F": m}
    cp = chi_prime_of(cx, Y)
    ctx = PocketContext(cx, Y)
    dl = d_lambda(cx, Y)
    lam_minus, lam_plus = lambda_projection(cx, Y)
    status, _ = compatibility_guard(cx, Y)
    inputs["guard"] = status

    lhs = cp * (dl - 16 * D)
    rhs = 2 * D * m
    recs.append(record(f"{lab}/main-inequality", "main-inequality", lhs, rhs, lhs <= rhs,
                       inputs=dict(inputs, d_lambda=dl), slack="d_lambda +-2 (annular convention)"))

    # tops sit near lambda+
    worst = 0
    for _ in range(20):
        Q = _sample_above(ctx.top, rng, rng.randint(0, 3 * m))
        worst = max(worst, dY(cx, Y, Q, lam_plus))
    recs.append(record(f"{lab}/top-near-lambda-plus", "top-near-lambda-plus", worst, D + 1, worst <= D + 1,
                       inputs=dict(inputs, samples=20), slack="+-1"))

    # single flips inside T(boundary) move the projection slowly
    path = monotone_path(ctx.bottom, ctx.top, ctx.E)
    cur = ctx.bottom
    worst_step = 0
    for t in path:
        nxt = cur.move_up(t)
        worst_step = max(worst_step, dY(cx, Y, cur, nxt))
        cur = nxt
    recs.append(record(f"{lab}/slowed-progress", "slowed-progress", worst_step, 2 * D, worst_step <= 2 * D,
                       inputs=dict(inputs, flips=len(path))))

    pocket = ctx.maximal()
    d_bt = dY(cx, Y, ctx.bottom, ctx.top)
    need = ceil(cp * d_bt / (2 * D))
    recs.append(record(f"{lab}/pocket-size", "pocket-size", pocket.count, need, pocket.count >= need,
                       inputs=dict(inputs, d_bottom_top=d_bt)))

    # stays close, and the annular diameter bound, on sampled layers
    worst_close = 0
    worst_diam = 0
    for _ in range(20):
        k = rng.randint(ctx.bottom.floor - 2 * m, ctx.top.top_index + 2 * m)
        T = base_section(cx, k)
        worst_diam = max(worst_diam, diameter_of(cx, Y, T))
        worst_close = max(worst_close, dY(cx, Y, T, ctx.retract(T)))
    recs.append(record(f"{lab}/stays-close", "stays-close", worst_close, 4 * D, worst_close <= 4 * D,
                       inputs=dict(inputs, samples=20)))
    recs.append(record(f"{lab}/annular-diameter", "annular-projection-diameter", worst_diam,
                       CONSTANTS.annularProjDiam, worst_diam <= CONSTANTS.annularProjDiam,
                       inputs=dict(inputs, samples=20)))

    # iterates of the core approach lambda-
    worst_iter = 0
    for n in range(1, 2 * m + 1):
        img = Slope(*mat_apply(mat_pow(cx.monodromy, -n), Y.core.vector))
        if img.same_slope(Y.core):
            continue
        arcs = annular_arcs(Y.core, img)
        worst_iter = max(worst_iter, arc_set_diameter(arcs | lam_minus))
    if dl >= 20:
        recs.append(record(f"{lab}/iterates-near-lambda-minus", "iterates-near-lambda-minus", worst_iter, 4,
                           worst_iter <= 4, inputs=dict(inputs, d_lambda=dl)))
    else:
        recs.append(CheckRecord(f"{lab}/iterates-near-lambda-minus", "iterates-near-lambda-minus", RECORDED,
                                inputs=dict(inputs, d_lambda=dl), lhs=worst_iter, rhs=4,
                                reason="hypothesis d_lambda >= 20 not met; value recorded only",
                                unconditional=False))

    # the tau-boundary and the core curve project to the same arcs here
    others = [Z for Z in pivot_annuli(cx) if not Z.core.same_slope(Y.core)][:3]
    worst_pc = 0
    for Z in others:
        tau_side = proj_tau(cx, Z, ctx.E)
        curve_side = annular_arcs(Z.core, Y.core)
        if tau_side:
            worst_pc = max(worst_pc, arc_set_diameter(tau_side | curve_side))
    recs.append(record(f"{lab}/projection-closeness", "projection-closeness", worst_pc, CONSTANTS.projClose,
                       worst_pc <= CONSTANTS.projClose, inputs=dict(inputs, others=len(others))))

    try:
        iso = isolated_pocket(cx, Y, research=research)
    except HypothesisUnmet as exc:
        recs.append(CheckRecord(f"{lab}/isolated-pocket", "isolated-pocket", SKIPPED, inputs=dict(inputs),
                                lhs=exc.measured, rhs=exc.threshold, reason=str(exc), unconditional=False))
    except NoT0InBand as exc:
        recs.append(CheckRecord(f"{lab}/isolated-pocket", "isolated-pocket", SKIPPED, inputs=dict(inputs),
                                reason=str(exc), unconditional=False))
    else:
        info = iso.info
        recs.append(record(f"{lab}/isolated-embedding", "isolated-pocket-embeds", len(info["embedding_hits"]), 0,
                           not info["embedding_hits"], inputs=dict(inputs, horizon=info["embedding_horizon"])))
        recs.append(record(f"{lab}/right-place", "right-place", info["d_TN_lambda_minus"], 2 * D + 11,
                           info["d_TN_lambda_minus"] <= 2 * D + 11, inputs=dict(inputs),
                           unconditional=info["gate_passed"]))
        recs.append(record(f"{lab}/band-certificate-plus", "band-certificate", info["cert_T0Y_lambda_plus"], 9 * D,
                           info["cert_T0Y_lambda_plus"] <= 9 * D, inputs=dict(inputs),
                           unconditional=info["gate_passed"]))
        recs.append(record(f"{lab}/band-certificate-minus", "band-certificate", info["cert_TNY_lambda_minus"],
                           7 * D, info["cert_TNY_lambda_minus"] <= 7 * D, inputs=dict(inputs),
                           unconditional=info["gate_passed"]))
        size_need = ceil(cp * dY(cx, Y, iso.bottom, iso.top) / (2 * D))
        recs.append(record(f"{lab}/isolated-pocket-size", "pocket-size", iso.count, size_need,
                           iso.count >= size_need, inputs=dict(inputs)))
    return recs


def theorem_checks(cx, Ys=None, seed=0, research=False, workers=4):
    """Evaluate every inequality on every subsurface; returns a list of CheckRecords."""
    Ys = list(Ys) if Ys is not None else pivot_annuli(cx)
    out = []
    todo = []
    for Y in Ys:
        if not Y.is_annulus:
            out.append(CheckRecord(f"{Y.label()}/main-inequality", "main-inequality", BOUND_ONLY,
                                   reason="no exact projection distances for this subsurface",
                                   unconditional=False))
            continue
        todo.append(Y)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for recs in pool.map(lambda Y: _checks_for(cx, Y, seed, research), todo):
            out.extend(recs)
    return sorted(out, key=lambda r: r.check_id)


__all__ = [
    "SubsurfaceSpec",
    "Pocket",
    "PocketContext",
    "tau_boundary",
    "proj_tau",
    "dY",
    "lambda_projection",
    "d_lambda",
    "maximal_pocket",
    "retract_to_pocket",
    "overlap_index",
    "isolated_pocket",
    "interior_identity",
    "theorem_checks",
    "pivot_annuli",
    "PASS",
    "metrics",
    "leq",
]
