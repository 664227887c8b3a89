"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict; ``conftest.py`` prints them at the end
of the pytest run, and ``python tests/test_acceptance.py`` prints them directly.
"""

import functools
import json
import math
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest  # noqa: E402
from helpers import decimal_colors, lr_words  # noqa: E402
from test_metrics import BOWDITCH_TABLE, CHI_TABLE  # noqa: E402

from veerlat import bundle  # noqa: E402
from veerlat.errors import EmptyProjection, NotPseudoAnosov  # noqa: E402
from veerlat.metrics import CONSTANTS, bowditch_bound, chi_intersection_bound, farey_distance  # noqa: E402
from veerlat.pockets import (  # noqa: E402
    PocketContext,
    SubsurfaceSpec,
    d_lambda,
    dY,
    interior_identity,
    isolated_pocket,
    pivot_annuli,
    theorem_checks,
)
from veerlat.report import FAIL, CheckReport  # noqa: E402
from veerlat.suites import (  # noqa: E402
    constraint_suite,
    lattice_suite,
    order_suite,
    pockets_suite,
    projections_suite,
    random_section,
)
from veerlat.surface import Slope, intersection_number  # noqa: E402
from veerlat.veering import build_from_monodromy, validate_veering  # noqa: E402

D = CONSTANTS.D
DESK = ("RL", "RRL", "RRLL", "R^6L")
MATRIX = ("RL", "RRL", "RRLL", "R^4L", "R^6L", "R^8L")
BASELINES = json.loads((Path(__file__).parent / "data" / "baselines.json").read_text())

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[number] = (title, False, f"{type(exc).__name__}: {str(exc).splitlines()[0][:120]}")
                raise
            took = time.perf_counter() - start
            RESULTS[number] = (title, True, f"{detail} ({took:.1f}s)")

        run.criterion = number
        return run

    return wrap


def _failures(records):
    return [r for r in records if r.status == FAIL]


def _by_id(records, prefix):
    return [r for r in records if r.check_id.startswith(prefix)]


@criterion(1, "construction of every LR word up to length 10")
def test_construction():
    words = lr_words(10)
    worst = 0.0
    for w in words:
        start = time.perf_counter()
        cx = build_from_monodromy(w)
        colors = validate_veering(cx)
        worst = max(worst, time.perf_counter() - start)
        assert cx.period == len(w), w
        assert colors == decimal_colors(cx), w
    assert worst < 1.0
    for w in ("R", "L", "RRRRRRRRRR", "LLLLL"):
        with pytest.raises(NotPseudoAnosov):
            build_from_monodromy(w)
    return f"{len(words)} words, slowest {worst * 1000:.1f} ms"


@criterion(2, "lattice suite on desk bundles")
def test_lattice_suite():
    worst = 0.0
    for w in DESK:
        start = time.perf_counter()
        recs = lattice_suite(build_from_monodromy(w), seed=0, samples=200)
        worst = max(worst, time.perf_counter() - start)
        assert not _failures(recs), [r.check_id for r in _failures(recs)]
        assert {"lattice/antisymmetry", "lattice/interval-identity"} <= {r.check_id for r in recs}
        assert all(r.inputs["samples"] >= 200 for r in recs)
    assert worst < 5.0
    return f"{len(DESK)} bundles x 200 samples, slowest {worst:.2f}s"


@criterion(3, "edge order suite")
def test_order_suite():
    triples = dual = 0
    for w in DESK:
        recs = order_suite(build_from_monodromy(w), seed=0)
        assert not _failures(recs)
        triples += _by_id(recs, "order/transitivity")[0].inputs["samples"]
        up = _by_id(recs, "order/up-is-up")[0]
        assert up.inputs["samples"] >= 200 and up.lhs == 0
        dual += up.inputs["samples"]
    return f"{triples} crossing triples, {dual} up-is-up pairs, zero disagreements"


@criterion(4, "constrained section suite")
def test_constraint_suite():
    total = 0
    for w in DESK:
        recs = constraint_suite(build_from_monodromy(w), seed=0, samples=100)
        assert not _failures(recs)
        ids = {r.check_id for r in recs}
        assert {"constraint/extend", "constraint/dual-start", "constraint/path-length"} <= ids
        total += _by_id(recs, "constraint/extend")[0].inputs["samples"]
    return f"{total} random disjoint edge sets"


@criterion(5, "projection suite")
def test_projection_suite():
    worst_annular = worst_graph = 0
    for w in DESK:
        recs = projections_suite(build_from_monodromy(w), seed=0)
        assert not _failures(recs)
        worst_annular = max(worst_annular, _by_id(recs, "projections/annular-diameter")[0].lhs)
        worst_graph = max(worst_graph, _by_id(recs, "projections/diam-as-bound")[0].lhs)
    assert worst_annular <= 3 and worst_graph <= D
    return f"annular diameter <= {worst_annular}, graph bound {worst_graph}"


@criterion(6, "bound calculators and Farey log bound")
def test_bound_calculators():
    for i, zeta, bound in BOWDITCH_TABLE:
        assert bowditch_bound(i, zeta).value == bound
    for i, chi, bound in CHI_TABLE:
        assert chi_intersection_bound(i, chi).value == bound
    rows = len(BOWDITCH_TABLE) + len(CHI_TABLE)
    assert rows >= 20
    boundaries = {(8 * abs(chi) + 4, chi) for chi in (-1, -2)} | {(32 * abs(chi) + 8, chi) for chi in (-1, -2)}
    assert boundaries <= {(i, chi) for i, chi, _ in CHI_TABLE}
    slopes = sorted({Slope(p, q) for p in range(-20, 21) for q in range(0, 21) if (p, q) != (0, 0)},
                    key=lambda s: (s.p, s.q))
    pairs = 0
    for a in slopes:
        for b in slopes:
            i = intersection_number(a.as_curve(), b.as_curve())
            if i:
                pairs += 1
                assert farey_distance(a, b) <= 2 * math.log2(i) + 2
    return f"{rows} table rows, {pairs} slope pairs"


@criterion(7, "top-near-lambda-plus and slowed progress on R^aL")
def test_pivot_progress():
    count = 0
    for a in (4, 6, 8):
        recs = theorem_checks(build_from_monodromy(f"R^{a}L"), seed=0)
        for anchor in ("top-near-lambda-plus", "slowed-progress"):
            chosen = [r for r in recs if r.anchor == anchor]
            assert chosen and not _failures(chosen)
            count += len(chosen)
        assert all(r.inputs["samples"] >= 20 for r in recs if r.anchor == "top-near-lambda-plus")
    return f"{count} pivot checks, zero violations"


@criterion(8, "retraction, stays-close, isolated embedding, interior identity")
def test_pocket_checks():
    for w in DESK:
        recs = pockets_suite(build_from_monodromy(w), seed=0, samples=50)
        assert not _failures(recs)
        assert _by_id(recs, "pockets/interior-identity")[0].inputs["samples"] >= 50
    cx = build_from_monodromy("R^6L")
    rng = random.Random(0)
    pairs = 0
    for Y in pivot_annuli(cx):
        ctx = PocketContext(cx, Y)
        for _ in range(50):
            a, b = random_section(cx, rng, 3), random_section(cx, rng, 3)
            ctx.retract(a)  # asserts the two formulas agree
            lhs, rhs = interior_identity(cx, Y, a, b, ctx)
            assert lhs == rhs
            try:
                assert dY(cx, Y, a, ctx.retract(a)) <= 4 * D
            except EmptyProjection:
                pass
            pairs += 1
    big = build_from_monodromy("R^200L")
    V = isolated_pocket(big, SubsurfaceSpec.annulus("1/0"))
    horizon = V.info["N"] + 2 * big.period
    assert V.info["embedding_horizon"] >= horizon
    assert V.info["embedding_hits"] == []
    return f"{pairs} sampled pairs; R^200L isolated pocket of {V.count} tetrahedra embeds for i <= {horizon}"


@criterion(9, "main inequality over the theorem matrix")
def test_theorem_matrix():
    start = time.perf_counter()
    checked = 0
    for w in MATRIX:
        cx = build_from_monodromy(w)
        recs = theorem_checks(cx, seed=0)
        main = [r for r in recs if r.anchor == "main-inequality"]
        assert len(main) == cx.period and not _failures(main)
        for Y in pivot_annuli(cx):
            pinned = BASELINES["pivots"][w][str(Y.core)]
            ctx = PocketContext(cx, Y)
            assert abs(dY(cx, Y, ctx.bottom, ctx.top) - pinned["d_bottom_top"]) <= 2
            assert abs(d_lambda(cx, Y) - pinned["d_lambda"]) <= 2
            checked += 1
    took = time.perf_counter() - start
    assert took < 60
    return f"{checked} pivot annuli across {len(MATRIX)} bundles"


@criterion(10, "deterministic reports and bundle round trip")
def test_determinism(tmp_path):
    from veerlat.suites import run_suites

    cx = build_from_monodromy("RRL")
    texts = {CheckReport(run_suites(cx, "all", seed=5), seed=5, subject="RRL").to_json(timestamps=False)
             for _ in range(2)}
    assert len(texts) == 1
    for w in DESK:
        path = tmp_path / f"{w}.json"
        c = build_from_monodromy(w)
        bundle.save(c, path)
        assert bundle.load(path).to_tables() == c.to_tables()
    return f"identical reports, {len(DESK)} bundles round-tripped"


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}: {detail}")
    return lines


if __name__ == "__main__":
    import tempfile

    tests = sorted((v for v in globals().values() if hasattr(v, "criterion")), key=lambda f: f.criterion)
    for fn in tests:
        try:
            if fn.criterion == 10:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except BaseException:  # the verdict is already recorded
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
