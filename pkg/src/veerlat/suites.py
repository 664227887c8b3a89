"""Seeded property suites over one complex.

Each suite returns CheckRecords; one record summarizes one law over all of
its samples (lhs = violations found, rhs = 0) so reports stay small.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from .errors import DeterminismViolation, EmptyProjection, VeerlatError, WindowExceeded
from .metrics import CONSTANTS, arc_set_diameter, diam_as
from .pockets import (
    PocketContext,
    SubsurfaceSpec,
    d_lambda,
    dY,
    interior_identity,
    isolated_pocket,
    maximal_pocket,
    pivot_annuli,
    proj_tau,
    projection_diameter,
    theorem_checks,
)
from .report import RECORDED, SKIPPED, CheckRecord, record
from .sections import (
    base_section,
    bottom_of,
    contains_edges,
    extend_to_section,
    fiber_component,
    interval,
    is_phi_section,
    join,
    leq,
    meet,
    monotone_path,
    top_of,
)
from .surface import ProperGraph
from .veering import Order, TauEdgeRef

SUITES = ("lattice", "order", "projections", "pockets", "theorems")


def _rng(seed, name):
    return random.Random(f"{seed}:{name}")


def random_section(cx, rng, spread=2, walk=None):
    """A section reached from a random layer by a random walk of moves."""
    m = cx.period
    T = base_section(cx, rng.randint(-spread * m, spread * m))
    for _ in range(rng.randint(0, walk if walk is not None else 2 * m)):
        moves = [(True, t) for t in T.up_moves()] + [(False, t) for t in T.down_moves()]
        up, t = rng.choice(moves)
        T = T.move_up(t) if up else T.move_down(t)
    return T


def random_in_T(T, E, rng, steps):
    """Random walk inside T(E) starting at T."""
    cx = T.complex
    E = set(E)
    for _ in range(steps):
        moves = [(True, t) for t in T.up_moves() if cx.tet_bottom_edge(t) not in E]
        moves += [(False, t) for t in T.down_moves() if cx.tet_top_edge(t) not in E]
        if not moves:
            break
        up, t = rng.choice(moves)
        T = T.move_up(t) if up else T.move_down(t)
    return T


def window_edges(cx, periods=4):
    lo = -(periods // 2)
    return [TauEdgeRef(o, lvl) for lvl in range(lo, lo + periods) for o in range(cx.period)]


def random_disjoint_set(cx, rng, size):
    pool = window_edges(cx, 2)
    rng.shuffle(pool)
    out = []
    for e in pool:
        if all(not cx.crosses(e, f) for f in out):
            out.append(e)
        if len(out) >= size:
            break
    return out


def _members(T, lo, hi):
    return {x for x in range(lo, hi) if x in T}


def _span(*Ts):
    lo = min(T.floor for T in Ts) - 1
    hi = max(T.top_index for T in Ts) + 1
    return lo, hi


def _law(check_id, anchor, violations, samples, **kw):
    inputs = kw.pop("inputs", {})
    inputs = dict(inputs, samples=samples)
    return record(check_id, anchor, violations, 0, violations == 0, inputs=inputs, **kw)


# -- lattice ------------------------------------------------------------------------


def lattice_suite(cx, seed=0, samples=200):
    rng = _rng(seed, "lattice")
    bad = dict.fromkeys(
        ["commutative", "associative", "idempotent", "absorption", "distributive", "antisymmetry",
         "leq-meet-join", "interval-identity", "edge-count", "triangulation", "periodicity", "phi-section"],
        0,
    )
    for _ in range(samples):
        a, b, c = (random_section(cx, rng) for _ in range(3))
        if join(a, b) != join(b, a) or meet(a, b) != meet(b, a):
            bad["commutative"] += 1
        if join(join(a, b), c) != join(a, join(b, c)) or meet(meet(a, b), c) != meet(a, meet(b, c)):
            bad["associative"] += 1
        if join(a, a) != a or meet(a, a) != a:
            bad["idempotent"] += 1
        if join(a, meet(a, b)) != a or meet(a, join(a, b)) != a:
            bad["absorption"] += 1
        if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
            bad["distributive"] += 1
        if leq(a, b) and leq(b, a) and a != b:
            bad["antisymmetry"] += 1
        if not (leq(a, b) == (meet(a, b) == a) == (join(a, b) == b)):
            bad["leq-meet-join"] += 1
        # symmetric difference of the two ideals, by brute force over the span
        lo, hi = _span(a, b)
        brute = _members(a, lo, hi) ^ _members(b, lo, hi)
        if brute != set(interval(a, b)) or interval(a, b) != interval(meet(a, b), join(a, b)):
            bad["interval-identity"] += 1
        for T in (a, join(a, b), meet(a, b)):
            if len(T.edges()) != cx.edge_count:
                bad["edge-count"] += 1
            try:
                tri = T.triangulation()
                if tri.chi != cx.chi:
                    bad["triangulation"] += 1
            except VeerlatError:
                bad["triangulation"] += 1
        k = rng.randint(-3 * cx.period, 3 * cx.period)
        if base_section(cx, k + cx.period) != base_section(cx, k).deck(-1):
            bad["periodicity"] += 1
        if not is_phi_section(base_section(cx, k)):
            bad["phi-section"] += 1
    anchors = {
        "antisymmetry": "leq-antisymmetry",
        "interval-identity": "interval-of-meet-and-join",
        "edge-count": "section-edge-count",
        "triangulation": "section-edge-count",
        "periodicity": "sweep-periodicity",
        "phi-section": "sweep-by-phi-sections",
    }
    return [
        _law(f"lattice/{name}", anchors.get(name, "lattice-laws"), v, samples)
        for name, v in bad.items()
    ]


def constraint_suite(cx, seed=0, samples=100):
    rng = _rng(seed, "constraint")
    bad = dict.fromkeys(["extend", "dual-start", "path-length", "between", "closure"], 0)
    notes = []
    # on a disconnected fiber a constraint missing a component leaves T(E) unbounded
    disconnected = len(cx.initial.components()) > 1
    unbounded = 0
    for _ in range(samples):
        E = random_disjoint_set(cx, rng, rng.randint(1, max(1, cx.edge_count - 1)))
        try:
            T = extend_to_section(cx, E)
        except VeerlatError as exc:
            bad["extend"] += 1
            notes.append(str(exc))
            continue
        if not contains_edges(T, E):
            bad["extend"] += 1
            continue
        try:
            lo, hi = bottom_of(cx, E), top_of(cx, E)
        except DeterminismViolation as exc:
            bad["dual-start"] += 1
            notes.append(str(exc))
            continue
        except WindowExceeded as exc:
            if disconnected:
                unbounded += 1
            else:
                bad["dual-start"] += 1
                notes.append(str(exc))
            continue
        path = monotone_path(lo, hi, E)
        if len(path) != len(interval(lo, hi)):
            bad["path-length"] += 1
        S1 = random_in_T(T, E, rng, 2 * cx.period)
        S2 = random_in_T(T, E, rng, 2 * cx.period)
        if not all(leq(lo, S) and leq(S, hi) for S in (S1, S2)):
            bad["between"] += 1
        if not (contains_edges(join(S1, S2), E) and contains_edges(meet(S1, S2), E)):
            bad["closure"] += 1
    anchors = {
        "extend": "extension-nonempty",
        "dual-start": "top-and-bottom-of-constraint",
        "path-length": "monotone-connectivity",
        "between": "top-and-bottom-of-constraint",
        "closure": "constraint-sublattice",
    }
    recs = [
        _law(f"constraint/{name}", anchors[name], v, samples, reason="; ".join(notes[:3]))
        for name, v in bad.items()
    ]
    if disconnected:
        recs.append(CheckRecord("constraint/unbounded", "top-and-bottom-of-constraint", RECORDED,
                                inputs={"samples": samples}, lhs=unbounded,
                                reason="disconnected fiber: constraints missing a component have no top or bottom",
                                unconditional=False))
    return recs


# -- order ----------------------------------------------------------------------------


def order_suite(cx, seed=0, samples=200):
    rng = _rng(seed, "order")
    edges = window_edges(cx, 4)
    cross = {(e, f) for e in edges for f in edges if cx.crosses(e, f)}
    anti = trans = triples = 0
    for e, f in cross:
        if cx.edge_order(e, f) == cx.edge_order(f, e):
            anti += 1
    for e, f, g in combinations(edges, 3):
        if (e, f) in cross and (f, g) in cross and (e, g) in cross:
            triples += 1
            for x, y, z in ((e, f, g), (e, g, f), (f, e, g), (f, g, e), (g, e, f), (g, f, e)):
                if (
                    cx.edge_order(x, y) == Order.LESS
                    and cx.edge_order(y, z) == Order.LESS
                    and cx.edge_order(x, z) != Order.LESS
                ):
                    trans += 1
    flip_mono = sum(
        1 for j in range(cx.period) if cx.edge_order(cx.tet_bottom_edge(j), cx.tet_top_edge(j)) != Order.LESS
    )
    equi = 0
    for _ in range(samples):
        e, f = rng.choice(edges), rng.choice(edges)
        k = rng.randint(-3, 3)
        if cx.edge_order(e, f) != cx.edge_order(cx.apply_deck(e, k), cx.apply_deck(f, k)):
            equi += 1
        if cx.color(e) != cx.color(cx.apply_deck(e, k)):
            equi += 1

    # an edge is weakly below a section iff every section edge it crosses lies above it
    up_is_up = 0
    for _ in range(samples):
        T = random_section(cx, rng)
        f = TauEdgeRef(rng.randrange(cx.period), rng.randint(-2, 2))
        by_ideal = cx.creator(f) in T
        by_order = all(cx.edge_order(f, e) == Order.LESS for e in T.edges() if cx.crosses(f, e))
        if by_ideal != by_order:
            up_is_up += 1

    # leq through ideals versus leq through edge orders
    leq_dual = 0
    for _ in range(samples):
        a, b = random_section(cx, rng), random_section(cx, rng)
        bedges = b.edges()

        def below(f):
            return all(cx.edge_order(f, e) == Order.LESS for e in bedges if cx.crosses(f, e))

        if leq(a, b) != all(below(f) for f in a.edges()):
            leq_dual += 1
    return [
        _law("order/antisymmetry", "slope-order", anti, len(cross)),
        _law("order/transitivity", "slope-order", trans, triples),
        _law("order/flip-monotone", "slope-order", flip_mono, cx.period),
        _law("order/deck-equivariance", "deck-transformation", equi, samples),
        _law("order/up-is-up", "up-is-up", up_is_up, samples),
        _law("order/leq-dual", "up-is-up", leq_dual, samples),
    ]


# -- projections ------------------------------------------------------------------------


def projections_suite(cx, seed=0, samples=60):
    rng = _rng(seed, "projections")
    if not cx.has_torus_model:
        return [CheckRecord("projections/annular-diameter", "annular-projection-diameter", SKIPPED,
                            reason="no torus model: annular projections need slopes", unconditional=False)]
    recs = []
    worst = 0
    empty_boundary = 0
    nonempty_top = 0
    for Y in pivot_annuli(cx):
        ctx = PocketContext(cx, Y)
        if proj_tau(cx, Y, ctx.E):
            empty_boundary += 1
        if not proj_tau(cx, Y, ctx.top):
            nonempty_top += 1
        for _ in range(samples // 4 + 1):
            T = random_section(cx, rng, spread=3)
            arcs = proj_tau(cx, Y, T)
            if arcs:
                worst = max(worst, arc_set_diameter(arcs))
    recs.append(record("projections/annular-diameter", "annular-projection-diameter", worst,
                       CONSTANTS.annularProjDiam, worst <= CONSTANTS.annularProjDiam,
                       inputs={"annuli": cx.period}))
    recs.append(_law("projections/boundary-projects-empty", "annular-projection-diameter", empty_boundary, cx.period))
    recs.append(_law("projections/top-projects-nonempty", "annular-projection-diameter", nonempty_top, cx.period))

    whole = SubsurfaceSpec.explicit((), chi=cx.chi)
    worst_exact = worst_bound = 0
    for _ in range(samples):
        T = random_section(cx, rng, spread=3)
        arcs = proj_tau(cx, whole, T)
        worst_exact = max(worst_exact, projection_diameter(cx, whole, arcs))
        worst_bound = max(worst_bound, diam_as(ProperGraph(T.triangulation(), T.edges())).value)
    recs.append(record("projections/whole-fiber-diameter", "nonannular-diameter-D", worst_exact, CONSTANTS.D,
                       worst_exact <= CONSTANTS.D, inputs={"samples": samples, "metric": "farey"}))
    recs.append(record("projections/diam-as-bound", "nonannular-diameter-D", worst_bound, CONSTANTS.D,
                       worst_bound <= CONSTANTS.D, inputs={"samples": samples}))
    return recs


# -- pockets ----------------------------------------------------------------------------


def pockets_suite(cx, seed=0, samples=50, research=False):
    rng = _rng(seed, "pockets")
    if not cx.has_torus_model:
        return [CheckRecord("pockets/retraction", "retraction-formulas", SKIPPED,
                            reason="no torus model: pivot annuli need slopes", unconditional=False),
                _disjoint_regions(cx)]
    D = CONSTANTS.D
    bad = dict.fromkeys(["retract-formulas", "retract-idempotent", "retract-monotone", "retract-in-band",
                         "interior-identity", "pocket-count"], 0)
    worst_close = 0
    recs = []
    m = cx.period
    for Y in pivot_annuli(cx):
        ctx = PocketContext(cx, Y)
        # flip-event ledger: every tetrahedron between the pivot's creation and
        # destruction flips an edge of a square around it
        (e,) = ctx.E
        expected = cx.destroyer(e) - cx.creator(e) - 1
        if ctx.maximal().count != expected:
            bad["pocket-count"] += 1
        for _ in range(max(1, samples // m)):
            T1, T2 = random_section(cx, rng, 3), random_section(cx, rng, 3)
            try:
                r1, r2 = ctx.retract(T1), ctx.retract(T2)
            except AssertionError:
                bad["retract-formulas"] += 1
                continue
            if ctx.retract(r1) != r1:
                bad["retract-idempotent"] += 1
            if leq(T1, T2) and not leq(r1, r2):
                bad["retract-monotone"] += 1
            if not contains_edges(r1, ctx.E):
                bad["retract-in-band"] += 1
            lhs, rhs = interior_identity(cx, Y, T1, T2, ctx)
            if lhs != rhs:
                bad["interior-identity"] += 1
            try:
                worst_close = max(worst_close, dY(cx, Y, T1, r1))
            except EmptyProjection:
                pass
    anchors = {
        "retract-formulas": "retraction-formulas",
        "retract-idempotent": "retraction-formulas",
        "retract-monotone": "retraction-formulas",
        "retract-in-band": "retraction-formulas",
        "interior-identity": "interior-identity",
        "pocket-count": "maximal-pocket",
    }
    for name, v in bad.items():
        recs.append(_law(f"pockets/{name}", anchors[name], v, samples))
    recs.append(record("pockets/stays-close", "stays-close", worst_close, 4 * D, worst_close <= 4 * D,
                       inputs={"samples": samples}))

    # isolated pocket on the pivot with the largest lamination distance
    Y = max(pivot_annuli(cx), key=lambda Z: (_dl(cx, Z), str(Z.core)))
    try:
        iso = isolated_pocket(cx, Y, research=research)
    except VeerlatError as exc:
        recs.append(CheckRecord("pockets/isolated-embedding", "isolated-pocket-embeds", SKIPPED,
                                inputs={"Y": Y.label()}, reason=f"{type(exc).__name__}: {exc}",
                                unconditional=False))
    else:
        hits = iso.info["embedding_hits"]
        recs.append(record("pockets/isolated-embedding", "isolated-pocket-embeds", len(hits), 0, not hits,
                           inputs={"Y": Y.label(), "horizon": iso.info["embedding_horizon"],
                                   "gate_passed": iso.info["gate_passed"]}))
        recs.append(record("pockets/isolated-beyond-horizon", "isolated-pocket-embeds",
                           iso.info["beyond_horizon_by_levels"], True, iso.info["beyond_horizon_by_levels"],
                           inputs={"Y": Y.label()}))
    recs.append(_disjoint_regions(cx))
    return recs


def _disjoint_regions(cx):
    """Pockets of subsurfaces on different fiber components share no tetrahedra."""
    layer = base_section(cx, 0).edges()
    by_comp = {}
    for e in layer:
        by_comp.setdefault(fiber_component(cx, e), []).append(e)
    if len(by_comp) < 2:
        return CheckRecord("pockets/disjoint-regions", "disjoint-subsurfaces", RECORDED,
                           reason="connected fiber: distinct slopes on the once-punctured torus always cross",
                           unconditional=False)
    # Y lives on one component: its boundary is one edge there plus a full
    # layer of every other component, which leaves no interior elsewhere
    pockets = []
    for c, edges in sorted(by_comp.items()):
        rest = [e for d, es in by_comp.items() if d != c for e in es]
        for e in edges:
            pockets.append((c, set(maximal_pocket(cx, SubsurfaceSpec.explicit([e] + rest)).region)))
    shared = sum(1 for i, (c1, r1) in enumerate(pockets) for c2, r2 in pockets[i + 1:] if c1 != c2 and r1 & r2)
    return _law("pockets/disjoint-regions", "disjoint-subsurfaces", shared, len(pockets))


def _dl(cx, Y):
    return d_lambda(cx, Y)


# -- dispatch ----------------------------------------------------------------------------


def theorems_suite(cx, seed=0, research=False):
    if not cx.has_torus_model:
        return [CheckRecord("theorems/main-inequality", "main-inequality", SKIPPED,
                            reason="no torus model: no exact projection distances", unconditional=False)]
    return theorem_checks(cx, seed=seed, research=research)


def run_suites(cx, suite="all", seed=0, research=False):
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
    jobs = []
    if "lattice" in names:
        jobs += [lambda: lattice_suite(cx, seed), lambda: constraint_suite(cx, seed)]
    if "order" in names:
        jobs.append(lambda: order_suite(cx, seed))
    if "projections" in names:
        jobs.append(lambda: projections_suite(cx, seed))
    if "pockets" in names:
        jobs.append(lambda: pockets_suite(cx, seed, research=research))
    if "theorems" in names:
        jobs.append(lambda: theorems_suite(cx, seed, research))
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda f: f(), jobs))
    out = [r for rs in results for r in rs]
    return sorted(out, key=lambda r: r.check_id)
