"""PG(4, q) spread, Tits ovoid, ovoidal cone, and the map to the plane."""

import pytest

from btunital.abb import (
    VERTEX,
    abb_map,
    abb_unital_equality,
    build_cone,
    build_spread,
    build_tits_ovoid,
    cone_meets_sigma_in_special,
    counting_identities,
    no_three_collinear,
    pgl_order,
    spread_is_partition,
    suzuki_order,
)
from btunital.unital import ovoid_poly


@pytest.fixture(scope="module")
def spread(ctx):
    return build_spread(ctx)


@pytest.fixture(scope="module")
def ovoid(ctx):
    return build_tits_ovoid(ctx)


@pytest.fixture(scope="module")
def cone(ctx, ovoid):
    return build_cone(ctx, ovoid)


def test_spread_partition(ctx, spread):
    assert len(spread.elements) == ctx.q ** 2 + 1 == 65
    assert spread_is_partition(ctx, spread)


def test_special_spread_line(ctx, spread):
    expected = {(0, 0, 0, 1, b) for b in ctx.subfield()} | {(0, 0, 0, 0, 1)}
    assert spread.special == expected
    assert len(spread.special) == ctx.q + 1


def test_spread_element_through_point(ctx, spread):
    elem = spread.elements[spread.element_of((0, 1, 0, 0, 0))]
    assert elem == frozenset(
        {(0, 1, b, 0, 0) for b in ctx.subfield()} | {(0, 0, 1, 0, 0)})


def test_ovoid(ctx, ovoid):
    assert len(ovoid.points) == ctx.q ** 2 + 1 == 65
    assert (1, 0, 0, 0) in ovoid.points          # s = t = 0
    assert (0, 0, 0, 1) in ovoid.points
    assert no_three_collinear(ctx, ovoid.points)


def test_ovoid_cap_detects_violation(ctx, ovoid):
    pts = set(ovoid.points)
    a = (1, 0, 0, 0)
    b = next(p for p in pts if p[0] == 1 and p != a)
    third = tuple(x ^ y for x, y in zip(a, b))    # a + b, collinear with both
    assert not no_three_collinear(ctx, pts | {third})


def test_ovoid_cap_e2(ctx2):
    ovoid = build_tits_ovoid(ctx2)
    assert len(ovoid.points) == ctx2.q ** 2 + 1 == 1025


def test_tangent_plane_accessor(ctx, ovoid):
    plane = ovoid.tangent_plane_at((1, 0, 0, 0))
    hits = [p for p in ovoid.points
            if (ctx.mul(plane[0], p[0]) ^ ctx.mul(plane[1], p[1])
                ^ ctx.mul(plane[2], p[2]) ^ ctx.mul(plane[3], p[3])) == 0]
    assert hits == [(1, 0, 0, 0)]
    with pytest.raises(ValueError):
        ovoid.tangent_plane_at((1, 0, 0, 1))   # f(0, 0) = 0, not on the ovoid


def test_cone(ctx, spread, cone):
    assert len(cone.points) == ctx.q ** 3 + ctx.q + 1 == 521
    affine = [p for p in cone.points if p[0] == 1]
    assert len(affine) == ctx.q ** 3 == 512
    assert cone_meets_sigma_in_special(ctx, cone, spread)
    assert VERTEX in cone.points


def test_cone_rejects_vertex_in_solid(ctx, ovoid):
    with pytest.raises(ValueError):
        build_cone(ctx, ovoid, vertex=(0, 1, 0, 0, 0))


def test_abb_map_examples(ctx, spread, cone):
    # the special spread line maps to the special unital point
    assert abb_map(ctx, spread.special, spread) == {(0, 0, 1)}
    # parametric cone points map onto the parametric unital points
    s, t, r = ctx.subfield()[3], ctx.subfield()[5], ctx.subfield()[2]
    f = ovoid_poly(ctx, s, t)
    img = abb_map(ctx, {(1, s, t, r, f)}, spread)
    assert img == {(1, s ^ ctx.mul(t, ctx.epsilon), r ^ ctx.mul(f, ctx.epsilon))}
    assert len(abb_map(ctx, cone.points, spread)) == ctx.q ** 3 + 1


def test_abb_map_rejects_partial_spread_element(ctx, spread):
    partial = set(list(spread.special)[:-1])
    with pytest.raises(ValueError):
        abb_map(ctx, partial, spread)


def test_abb_unital_equality(ctx):
    equal, diff = abb_unital_equality(ctx)
    assert equal and not diff


def test_abb_equality_fails_for_perturbed_cone(ctx, spread, ovoid):
    from btunital.abb import OvoidalCone
    from btunital.unital import build_bt_unital

    cone = build_cone(ctx, ovoid)
    pts = set(cone.points)
    moved = next(p for p in pts if p[0] == 1)
    pts.remove(moved)
    pts.add((1, moved[1] ^ 1, moved[2], moved[3], moved[4]))
    mapped = abb_map(ctx, pts, spread)
    direct = frozenset(build_bt_unital(ctx).points)
    assert mapped != direct and mapped ^ direct


def test_counting_identities():
    for q in (8, 32, 128):
        rep = counting_identities(q)
        assert rep["ok"], [c for c in rep["checks"] if not c["ok"]]
        assert not rep["printed_denominator_divides"]
    with pytest.raises(ValueError):
        counting_identities(16)   # not of the form 2^(2e+1)


def test_counting_values_at_q8():
    rep = counting_identities(8)
    byname = {c["name"]: c for c in rep["checks"]}
    assert byname["unitals_equal_cones"]["lhs"] == 16_257_024
    assert byname["cones_through_special_spread_line"]["rhs"] == 16_257_024
    # the corrected tangent-flag quotient
    num = 9 ** 2 * 8 ** 4 * 7 ** 2 * 73 * 65
    assert num // (8 ** 3 + 8 ** 2 + 8 + 1) == 7 ** 2 * 8 ** 4 * 9 * 73
    assert pgl_order(4, 8) % suzuki_order(8) == 0


def test_spread_partition_e2(ctx2):
    spread = build_spread(ctx2)
    assert len(spread.elements) == ctx2.q ** 2 + 1 == 1025
    assert spread_is_partition(ctx2, spread)


def test_abb_unital_equality_e2(ctx2):
    equal, diff = abb_unital_equality(ctx2)
    assert equal and not diff
