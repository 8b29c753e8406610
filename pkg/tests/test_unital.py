"""Unital axioms, tangent machinery, feet, and the subline property."""

import random

import pytest

from btunital.plane import big_plane_field, incident, normalize
from btunital.unital import (
    L_INF,
    P_INF,
    UnitalSet,
    build_bt_unital,
    collinear,
    feet_formula,
    has_subline_property,
    ovoid_poly,
    verify_unital,
)


def test_cardinality_and_members(ctx, unital):
    assert len(unital) == ctx.q ** 3 + 1 == 513
    assert P_INF in unital
    assert (1, 0, 0) in unital           # r = s = t = 0


def test_unital_axiom(ctx, unital):
    rep = verify_unital(ctx, unital.points)
    assert rep["ok"]
    assert rep["histogram"] == {1: 513, 9: 3648}
    assert rep["n_tangents"] == ctx.q ** 3 + 1
    assert rep["n_secants"] == ctx.q ** 4 - ctx.q ** 3 + ctx.q ** 2
    assert rep["line_at_infinity_tangent"]


def test_mutated_set_fails(ctx, unital):
    pts = set(unital.points)
    moved = next(p for p in sorted(pts) if p[0] == 1)
    pts.remove(moved)
    off = next((1, y, z) for y in range(ctx.big_order)
               for z in range(ctx.big_order) if (1, y, z) not in unital.points)
    pts.add(off)
    rep = verify_unital(ctx, pts)
    assert not rep["ok"] and rep["violations"]


def test_wrong_cardinality_rejected(ctx, unital):
    with pytest.raises(ValueError):
        verify_unital(ctx, list(unital.points)[:100])


def test_line_at_infinity_is_tangent_at_special_point(ctx, unital):
    assert unital.tangent_at(P_INF) == L_INF
    sec = unital.plane.pencil_indices(L_INF)
    on_linf = [i for i in sec if unital.mask[i]]
    assert len(on_linf) == 1


def test_tangent_counts_everywhere(ctx, unital):
    n = ctx.big_order
    q = ctx.q
    for i in range(unital.plane.size):
        p = unital.plane.triple(i)
        if p in unital:
            continue
        assert len(unital.tangent_lines(p)) == q + 1
    with pytest.raises(ValueError):
        unital.tangent_lines(P_INF)
    with pytest.raises(ValueError):
        unital.tangent_at((1, 0, 1) if (1, 0, 1) not in unital else (1, 0, 2))


def test_feet_direct_basics(ctx, unital):
    p = (1, 0, ctx.epsilon)
    feet = unital.feet_direct(p)
    assert len(feet) == ctx.q + 1
    f = big_plane_field(ctx)
    # each foot's tangent passes through p
    for foot in feet:
        assert incident(f, p, unital.tangent_at(foot))


def test_feet_collinear_iff_at_infinity(ctx, unital):
    rng = random.Random(9)
    for w in range(ctx.big_order):
        assert collinear(ctx, unital.feet_direct((0, 1, w)))
    for _ in range(200):
        p = (1, rng.randrange(64), rng.randrange(64))
        if p in unital:
            continue
        assert not collinear(ctx, unital.feet_direct(p))


def test_feet_formula_matches_oracle_samples(ctx, unital):
    rng = random.Random(13)
    checked = 0
    while checked < 300:
        p = (1, rng.randrange(64), rng.randrange(64))
        if p in unital:
            continue
        assert feet_formula(ctx, unital, p) == unital.feet_direct(p)
        checked += 1


def test_feet_formula_rejects_bad_points(ctx, unital):
    with pytest.raises(ValueError):
        feet_formula(ctx, unital, (0, 1, 0))
    with pytest.raises(ValueError):
        feet_formula(ctx, unital, (1, 0, 0))   # on the unital


def test_side_condition_solution_count(ctx, unital):
    sub = ctx.subfield()
    rng = random.Random(29)
    for _ in range(100):
        p = (1, rng.randrange(64), rng.randrange(64))
        if p in unital:
            continue
        y1, y2 = ctx.decompose(p[1])
        z1, z2 = ctx.decompose(p[2])
        n = sum(1 for s in sub for t in sub
                if ovoid_poly(ctx, s, t) == ctx.mul(y2, s) ^ ctx.mul(y1, t) ^ z2)
        assert n == ctx.q + 1


def test_subline_property_special_point_only(ctx, unital):
    assert has_subline_property(ctx, unital, P_INF)
    others = [p for p in sorted(unital.points) if p != P_INF][:40]
    assert not any(has_subline_property(ctx, unital, p) for p in others)
    with pytest.raises(ValueError):
        has_subline_property(ctx, unital, (1, 0, 1) if (1, 0, 1) not in unital
                             else (1, 0, 2))


def hermitian_unital(ctx):
    """The classical control: absolute points of x^(q+1)+y^(q+1)+z^(q+1)."""
    f = big_plane_field(ctx)
    k = ctx.q + 1
    pts = set()
    n = ctx.big_order
    for y in range(n):
        for z in range(n):
            if ctx.pow(1, k) ^ ctx.pow(y, k) ^ ctx.pow(z, k) == 0:
                pts.add((1, y, z))
    for z in range(n):
        if 1 ^ ctx.pow(z, k) == 0:
            pts.add((0, 1, z))
    return frozenset(pts)


def test_hermitian_control(ctx):
    pts = hermitian_unital(ctx)
    assert len(pts) == ctx.q ** 3 + 1
    rep = verify_unital(ctx, pts, expect_special=False)
    assert rep["ok"]
    h = UnitalSet(ctx, pts, special_point=None)
    # the classical unital has the subline property at every point
    for p in sorted(pts)[::16]:
        assert has_subline_property(ctx, h, p)


def test_secant_sections_through_special_point_are_baer(ctx, unital):
    from btunital.plane import is_baer_subline
    counts = unital.line_counts
    pen = unital.plane.pencil_indices(P_INF)
    secants = [i for i in pen if counts[i] == ctx.q + 1]
    assert len(secants) == ctx.q ** 2
    for i in secants[:10]:
        section = unital.secant_section(unital.plane.triple(int(i)))
        assert is_baer_subline(ctx, section)


def test_unital_axiom_e2(ctx2, unital2):
    assert len(unital2) == ctx2.q ** 3 + 1 == 32769
    import numpy as np
    counts = unital2.line_counts
    vals = np.unique(counts)
    assert set(vals.tolist()) == {1, ctx2.q + 1}
    assert int((counts == 1).sum()) == ctx2.q ** 3 + 1
