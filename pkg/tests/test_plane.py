"""PG(2, q^2) incidence, indexing, and Baer sublines."""

import random

import numpy as np
import pytest

from btunital.plane import (
    PlaneIndex,
    baer_subline,
    big_plane_field,
    incident,
    is_baer_subline,
    line_through,
    meet,
    normalize,
    sub_plane_field,
)


@pytest.fixture(scope="module")
def bigf(ctx):
    return big_plane_field(ctx)


@pytest.fixture(scope="module")
def plane(bigf):
    return PlaneIndex(bigf)


def test_plane_counts(ctx, plane):
    assert plane.size == 4161
    # every pencil (line's points, point's lines) has q^2+1 = 65 members
    for i in range(0, plane.size, 37):
        pen = plane.pencil_indices(plane.triple(i))
        assert len(pen) == 65
        assert len(set(pen.tolist())) == 65


def test_incidence_examples(bigf):
    assert incident(bigf, (0, 0, 1), (1, 0, 0))
    assert not incident(bigf, (1, 0, 0), (1, 0, 0))


def test_index_roundtrip(plane):
    for i in range(0, plane.size, 11):
        assert plane.index(plane.triple(i)) == i


def test_line_through_meet(bigf):
    assert line_through(bigf, (0, 0, 1), (0, 1, 0)) == (1, 0, 0)
    assert meet(bigf, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    with pytest.raises(ValueError):
        line_through(bigf, (0, 0, 1), (0, 0, 1))


def test_line_through_incidence_property(ctx, bigf, plane):
    rng = random.Random(11)
    for _ in range(100_000):
        p = plane.triple(rng.randrange(plane.size))
        q = plane.triple(rng.randrange(plane.size))
        if normalize(bigf, p) == normalize(bigf, q):
            continue
        ell = line_through(bigf, p, q)
        assert incident(bigf, p, ell) and incident(bigf, q, ell)


def test_duality(bigf, plane):
    rng = random.Random(5)
    for _ in range(2000):
        p = plane.triple(rng.randrange(plane.size))
        l = plane.triple(rng.randrange(plane.size))
        assert incident(bigf, p, l) == incident(bigf, l, p)


def test_pencil_matches_scalar_incidence(bigf, plane):
    rng = random.Random(3)
    for _ in range(20):
        t = plane.triple(rng.randrange(plane.size))
        pen = set(plane.pencil_indices(t).tolist())
        brute = {i for i in range(plane.size)
                 if incident(bigf, plane.triple(i), t)}
        assert pen == brute


def test_subfield_plane(ctx):
    f = sub_plane_field(ctx)
    plane = PlaneIndex(f)
    assert plane.size == 73          # PG(2, 8)
    for i in range(plane.size):
        assert plane.index(plane.triple(i)) == i
        assert len(plane.pencil_indices(plane.triple(i))) == 9


def _random_collinear_triple(ctx, bigf, plane, rng):
    while True:
        p0 = plane.triple(rng.randrange(plane.size))
        p1 = plane.triple(rng.randrange(plane.size))
        if normalize(bigf, p0) != normalize(bigf, p1):
            break
    lam = rng.randrange(1, ctx.big_order)
    p2 = tuple(a ^ ctx.mul(lam, b) for a, b in zip(p0, p1))
    return p0, p1, normalize(bigf, p2)


def test_baer_subline_basics(ctx, bigf, plane):
    rng = random.Random(17)
    for _ in range(25):
        p0, p1, p2 = _random_collinear_triple(ctx, bigf, plane, rng)
        s = baer_subline(ctx, p0, p1, p2)
        assert len(s) == ctx.q + 1
        assert {normalize(bigf, p0), normalize(bigf, p1), p2} <= s
        # order independence
        perm = [p2, p0, p1]
        assert baer_subline(ctx, *perm) == s
        # closure: rebuilding from any of its own triples returns the set
        pts = sorted(s)
        assert baer_subline(ctx, pts[3], pts[7], pts[1]) == s


def test_baer_subline_rejects_bad_input(ctx):
    with pytest.raises(ValueError):
        baer_subline(ctx, (0, 0, 1), (0, 0, 1), (0, 1, 0))
    with pytest.raises(ValueError):
        baer_subline(ctx, (0, 0, 1), (0, 1, 0), (1, 0, 0))  # not collinear


def test_is_baer_subline_standard_set(ctx):
    # the canonical PG(1, q) inside the line z = 0, as {(1, t, 0)} u {(0, 1, 0)}
    pts = {(1, t, 0) for t in ctx.subfield()} | {(0, 1, 0)}
    assert is_baer_subline(ctx, pts)


def test_is_baer_subline_negative_certificate(ctx, bigf, plane):
    rng = random.Random(23)
    p0, p1, p2 = _random_collinear_triple(ctx, bigf, plane, rng)
    good = baer_subline(ctx, p0, p1, p2)
    line = line_through(bigf, p0, p1)
    on_line = [plane.triple(int(i)) for i in plane.pencil_indices(line)]
    outside = [p for p in on_line if p not in good]
    bad = set(list(good)[1:]) | {outside[0]}
    assert not is_baer_subline(ctx, bad)
    with pytest.raises(ValueError):
        is_baer_subline(ctx, list(good)[:5])


def test_index_arrays_vectorized(bigf, plane):
    rng = np.random.default_rng(0)
    idx = rng.integers(0, plane.size, 500)
    trips = [plane.triple(int(i)) for i in idx]
    X = np.array([t[0] for t in trips])
    Y = np.array([t[1] for t in trips])
    Z = np.array([t[2] for t in trips])
    out = plane._index_arrays(X, Y, Z)
    assert np.array_equal(out, idx)
