"""Field tower: arithmetic axioms, epsilon/delta selection, sigma machinery."""

import pytest

from btunital.fields import FieldCtx, SubfieldError, _clmul, _reduce, build_context


def brute_epsilon(ctx):
    """Independent oracle: first element with eps^q = eps+1, delta != 1, tr(delta) = 1.

    Uses only repeated squaring and the raw tables, no FieldCtx search code.
    """
    q = ctx.q
    for cand in range(ctx.big_order):
        y = cand
        for _ in range(2 * ctx.e + 1):
            y = ctx.mul(y, y)
        if y != cand ^ 1:
            continue
        delta = ctx.mul(cand, cand) ^ cand
        tr, z = 0, delta
        for _ in range(2 * ctx.e + 1):
            tr ^= z
            z = ctx.mul(z, z)
        if delta != 1 and tr == 1:
            return cand
    raise AssertionError("no epsilon found")


def test_context_constants_e1(ctx):
    assert (ctx.q, ctx.big_order, ctx.sigma_exp) == (8, 64, 4)
    assert ctx.modulus == 0x43
    # frozen from the exhaustive scan below
    assert ctx.epsilon == 0x22
    assert ctx.delta == 0x16


def test_epsilon_matches_bruteforce_scan(ctx, ctx2):
    assert ctx.epsilon == brute_epsilon(ctx)
    assert ctx2.epsilon == brute_epsilon(ctx2)


def test_epsilon_delta_invariants(ctx, ctx2):
    for c in (ctx, ctx2):
        eps, delta = c.epsilon, c.delta
        assert c.frobenius(eps, 2 * c.e + 1) == eps ^ 1
        assert c.mul(eps, eps) == eps ^ delta
        assert c.in_subfield(delta) and delta != 1
        assert c.trace_abs(delta) == 1
        # delta^q = delta is forced: (eps^q)^2 + eps^q = eps^2 + eps
        assert c.frobenius(delta, 2 * c.e + 1) == delta


def test_unsupported_e():
    with pytest.raises(ValueError):
        build_context(4)


def test_gf4_reduction_example():
    # t * t = t + 1 in F_4 with modulus t^2 + t + 1
    assert _reduce(_clmul(0b10, 0b10), 0b111, 2) == 0b11


def test_mul_identity_and_inverses(ctx):
    n = ctx.big_order
    for x in range(n):
        assert ctx.mul(1, x) == x
        assert ctx.mul(0, x) == 0
        if x:
            assert ctx.mul(x, ctx.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_field_axioms_exhaustive_e1(ctx):
    n = ctx.big_order
    for x in range(n):
        for y in range(n):
            xy = ctx.mul(x, y)
            assert xy == ctx.mul(y, x)
            for z in range(0, n, 7):
                assert ctx.mul(x, ctx.mul(y, z)) == ctx.mul(xy, z)
                assert ctx.mul(x, y ^ z) == xy ^ ctx.mul(x, z)


def test_field_axioms_randomized_e2(ctx2):
    import random
    rng = random.Random(7)
    n = ctx2.big_order
    for _ in range(1_000_000):
        x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        assert ctx2.mul(x, ctx2.mul(y, z)) == ctx2.mul(ctx2.mul(x, y), z)
        assert ctx2.mul(x, y ^ z) == ctx2.mul(x, y) ^ ctx2.mul(x, z)


def test_pow(ctx):
    for x in range(1, ctx.big_order):
        assert ctx.pow(x, 0) == 1
        assert ctx.pow(x, 1) == x
        assert ctx.pow(x, 2) == ctx.mul(x, x)
        assert ctx.pow(x, -1) == ctx.inv(x)
        assert ctx.pow(x, ctx.big_order - 1) == 1
    assert ctx.pow(0, 0) == 1
    assert ctx.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        ctx.pow(0, -2)


def test_frobenius(ctx):
    n, deg = ctx.big_order, 4 * ctx.e + 2
    for x in range(n):
        assert ctx.frobenius(x, 0) == x
        assert ctx.frobenius(x, 1) == ctx.mul(x, x)
        assert ctx.frobenius(ctx.frobenius(x, 1), deg - 1) == x
    assert ctx.frobenius(ctx.epsilon, 2 * ctx.e + 1) == ctx.epsilon ^ 1


def test_sigma_on_subfield(ctx):
    for x in ctx.subfield():
        assert ctx.sigma(ctx.sigma(x)) == ctx.mul(x, x)
        assert ctx.sigma_root(ctx.sigma(x)) == x
        assert ctx.sigma(x) == ctx.pow(x, ctx.sigma_exp)
    assert ctx.sigma(0) == 0 and ctx.sigma(1) == 1
    with pytest.raises(SubfieldError):
        ctx.sigma(ctx.epsilon)
    with pytest.raises(SubfieldError):
        ctx.sigma_root(ctx.epsilon)


def test_exponent_inverse_pairs(ctx, ctx2):
    # e=1 sanity: (sigma+2)(1 - sigma/2) = 6 * (-1) = -6 = 1 mod 7
    assert (ctx.sigma_exp + 2) * (1 - ctx.sigma_exp // 2) % (ctx.q - 1) == 1
    for c in (ctx, ctx2):
        rep = c.exponent_inverse_check()
        assert rep["violations"] == []
        assert all(p["ok"] for p in rep["pairs"])


def test_traces(ctx):
    assert ctx.trace_rel(ctx.epsilon) == 1
    assert ctx.trace_abs(1) == 1          # 3 ones in characteristic 2
    assert ctx.trace_abs(ctx.frobenius(ctx.delta, ctx.e)) == 1
    for x in range(ctx.big_order):
        assert ctx.in_subfield(ctx.trace_rel(x))
        assert ctx.trace_abs(x, over_big=True) in (0, 1)
    with pytest.raises(SubfieldError):
        ctx.trace_abs(ctx.epsilon)


def test_decompose(ctx):
    assert ctx.decompose(0) == (0, 0)
    assert ctx.decompose(ctx.epsilon) == (0, 1)
    seen = set()
    for x1 in ctx.subfield():
        for x2 in ctx.subfield():
            x = ctx.recompose(x1, x2)
            assert ctx.decompose(x) == (x1, x2)
            seen.add(x)
    assert len(seen) == ctx.big_order
    for x in range(ctx.big_order):
        x1, x2 = ctx.decompose(x)
        assert ctx.in_subfield(x1) and ctx.in_subfield(x2)
        assert ctx.recompose(x1, x2) == x


def test_subfield_is_frobenius_fixed(ctx2):
    q = ctx2.q
    fixed = [x for x in range(ctx2.big_order)
             if ctx2.frobenius(x, 2 * ctx2.e + 1) == x]
    assert fixed == ctx2.subfield()
    assert len(fixed) == q


def test_e3_context_builds():
    c = build_context(3)
    assert c.q == 128 and c.big_order == 16384
    assert c.MUL is None          # too big for a full table, log/antilog only
    assert c.mul(c.epsilon, c.inv(c.epsilon)) == 1
    assert c.frobenius(c.epsilon, 7) == c.epsilon ^ 1
    assert c.trace_abs(c.delta) == 1
