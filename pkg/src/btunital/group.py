"""Semilinear collineations of PG(2, q^2) and the unital's stabiliser group.

A collineation is a nonsingular 3x3 matrix over F_{q^2} together with a
Frobenius exponent k: the action on a point row-vector x is

    x  ->  (x^(2^k)) . M

(componentwise Frobenius first, then multiplication from the right).
Matrices are normalized so the first nonzero entry in reading order is 1,
which makes the pair (matrix, frob) a canonical representative and lets
group elements be counted and compared as plain tuples.

The linear stabiliser of the unital consists of the q^2 upper-triangular
matrices M(u, v); together with the order-(16e+8) semilinear generator
psi they exhaust the full semilinear stabiliser of order q^2(4e+2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .fields import FieldCtx
from .unital import UnitalSet

Triple = tuple[int, int, int]

# Probe points, as subfield ranks (r, s, t) of affine unital points,
# applied in order by the membership early-rejection test.  Each generic
# probe rejects about (q-1)/q of non-stabilising candidates when the
# parameters are in general position; this sequence was tuned empirically
# over sampled scan shards at e = 1 (it leaves no false probe survivors
# there) and then frozen for reproducibility.
PROBE_PARAMS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (0, 1, 2),
    (2, 3, 1),
    (5, 2, 5),
    (3, 7, 4),
    (6, 5, 6),
    (1, 4, 7),
    (7, 6, 3),
)


def _normalize_matrix(ctx: FieldCtx, m: tuple) -> tuple:
    for entry in m:
        if entry:
            if entry == 1:
                return m
            s = ctx.inv(entry)
            return tuple(ctx.mul(x, s) for x in m)
    raise ValueError("zero matrix")


@dataclass(frozen=True)
class Collineation:
    """Canonical (matrix, frob) pair; matrix is row-major length 9."""

    matrix: tuple
    frob: int

    @classmethod
    def make(cls, ctx: FieldCtx, matrix, frob: int = 0) -> "Collineation":
        m = tuple(int(x) for x in matrix)
        if len(m) != 9:
            raise ValueError("matrix must have nine entries")
        if _det3(ctx, m) == 0:
            raise ValueError("matrix is singular")
        return cls(_normalize_matrix(ctx, m), frob % (4 * ctx.e + 2))


def identity(ctx: FieldCtx) -> Collineation:
    return Collineation((1, 0, 0, 0, 1, 0, 0, 0, 1), 0)


def _det3(ctx: FieldCtx, m: tuple) -> int:
    a, b, c, d, e, f, g, h, i = m
    return (ctx.mul(a, ctx.mul(e, i) ^ ctx.mul(f, h))
            ^ ctx.mul(b, ctx.mul(d, i) ^ ctx.mul(f, g))
            ^ ctx.mul(c, ctx.mul(d, h) ^ ctx.mul(e, g)))


def _matmul(ctx: FieldCtx, a: tuple, b: tuple) -> tuple:
    out = []
    for i in range(3):
        for j in range(3):
            v = 0
            for k in range(3):
                v ^= ctx.mul(a[3 * i + k], b[3 * k + j])
            out.append(v)
    return tuple(out)


def _matinv(ctx: FieldCtx, m: tuple) -> tuple:
    a, b, c, d, e, f, g, h, i = m
    det = _det3(ctx, m)
    di = ctx.inv(det)
    cof = (
        ctx.mul(e, i) ^ ctx.mul(f, h), ctx.mul(c, h) ^ ctx.mul(b, i), ctx.mul(b, f) ^ ctx.mul(c, e),
        ctx.mul(f, g) ^ ctx.mul(d, i), ctx.mul(a, i) ^ ctx.mul(c, g), ctx.mul(c, d) ^ ctx.mul(a, f),
        ctx.mul(d, h) ^ ctx.mul(e, g), ctx.mul(b, g) ^ ctx.mul(a, h), ctx.mul(a, e) ^ ctx.mul(b, d),
    )
    return tuple(ctx.mul(di, x) for x in cof)


def _norm_point(ctx: FieldCtx, p: Triple) -> Triple:
    x, y, z = p
    if x:
        s = ctx.inv(x)
        return (1, ctx.mul(y, s), ctx.mul(z, s))
    if y:
        return (0, 1, ctx.mul(z, ctx.inv(y)))
    if z:
        return (0, 0, 1)
    raise ValueError("zero point")


def act(ctx: FieldCtx, c: Collineation, p: Triple) -> Triple:
    """Image of a point: componentwise Frobenius, then right multiplication."""
    pf = tuple(ctx.frobenius(x, c.frob) for x in p)
    m = c.matrix
    return _norm_point(ctx, (
        ctx.mul(pf[0], m[0]) ^ ctx.mul(pf[1], m[3]) ^ ctx.mul(pf[2], m[6]),
        ctx.mul(pf[0], m[1]) ^ ctx.mul(pf[1], m[4]) ^ ctx.mul(pf[2], m[7]),
        ctx.mul(pf[0], m[2]) ^ ctx.mul(pf[1], m[5]) ^ ctx.mul(pf[2], m[8]),
    ))


def act_line(ctx: FieldCtx, c: Collineation, line: Triple) -> Triple:
    """Image of a line: P on l iff act(P) on act_line(l)."""
    lf = tuple(ctx.frobenius(x, c.frob) for x in line)
    mi = _matinv(ctx, c.matrix)
    return _norm_point(ctx, (
        ctx.mul(mi[0], lf[0]) ^ ctx.mul(mi[1], lf[1]) ^ ctx.mul(mi[2], lf[2]),
        ctx.mul(mi[3], lf[0]) ^ ctx.mul(mi[4], lf[1]) ^ ctx.mul(mi[5], lf[2]),
        ctx.mul(mi[6], lf[0]) ^ ctx.mul(mi[7], lf[1]) ^ ctx.mul(mi[8], lf[2]),
    ))


def compose(ctx: FieldCtx, c1: Collineation, c2: Collineation) -> Collineation:
    """c1 followed by c2: act(compose(c1, c2), P) = act(c2, act(c1, P))."""
    m1 = tuple(ctx.frobenius(x, c2.frob) for x in c1.matrix)
    return Collineation.make(ctx, _matmul(ctx, m1, c2.matrix), c1.frob + c2.frob)


def element_order(ctx: FieldCtx, c: Collineation, bound: int = 512) -> int:
    ident = identity(ctx)
    acc = c
    for n in range(1, bound + 1):
        if acc == ident:
            return n
        acc = compose(ctx, acc, c)
    raise ValueError(f"order exceeds bound {bound}")


def inverse(ctx: FieldCtx, c: Collineation) -> Collineation:
    deg = 4 * ctx.e + 2
    k = (-c.frob) % deg
    mi = _matinv(ctx, c.matrix)
    return Collineation.make(ctx, tuple(ctx.frobenius(x, k) for x in mi), k)


# -- the unital's linear stabiliser ---------------------------------------------


def m_uv(ctx: FieldCtx, u: int, v: int) -> Collineation:
    """The stabilising projectivity with parameters u, v in F_q."""
    if not (ctx.in_subfield(u) and ctx.in_subfield(v)):
        raise ValueError("u and v must lie in F_q")
    eps = ctx.epsilon
    return Collineation.make(ctx, (
        1, ctx.mul(u, eps), v ^ ctx.mul(ctx.sigma(u), eps),
        0, 1, u ^ ctx.mul(u, eps),
        0, 0, 1,
    ))


def group_elements(ctx: FieldCtx) -> dict[tuple[int, int], Collineation]:
    sub = ctx.subfield()
    return {(u, v): m_uv(ctx, u, v) for u in sub for v in sub}


def group_census(ctx: FieldCtx) -> dict:
    """Order histogram, commutativity and abelian invariants of {M(u,v)}.

    The histogram (1, q-1, q^2-q) for orders (1, 2, 4) forces the
    invariant decomposition (C_4)^k (C_2)^l with 2k+l = 4e+2 to have
    l = 0, i.e. the group is (C_4)^(2e+1).
    """
    elems = group_elements(ctx)
    hist: dict[int, int] = {}
    for c in elems.values():
        n = element_order(ctx, c, bound=4)
        hist[n] = hist.get(n, 0) + 1

    commutative = all(
        compose(ctx, a, b) == compose(ctx, b, a)
        for a in elems.values() for b in elems.values()
    )
    law_ok = all(
        compose(ctx, elems[(u, v)], elems[(s, t)])
        == elems[(u ^ s, t ^ v ^ ctx.mul(ctx.mul(s, u), ctx.delta))]
        for (u, v) in elems for (s, t) in elems
    )
    inverses_ok = all(
        compose(ctx, elems[(u, v)],
                elems[(u, v ^ ctx.mul(ctx.mul(u, u), ctx.delta))]) == identity(ctx)
        for (u, v) in elems
    )

    # solve (4^k - 2^k) 2^l = #order-4 subject to 2k + l = 4e + 2
    n4 = hist.get(4, 0)
    invariants = None
    for k in range(2 * ctx.e + 2):
        l = 4 * ctx.e + 2 - 2 * k
        if l >= 0 and (4 ** k - 2 ** k) * 2 ** l == n4:
            invariants = (k, l)
    return {
        "order": len(elems),
        "histogram": hist,
        "abelian": commutative,
        "law_matches": law_ok,
        "inverses_in_group": inverses_ok,
        "invariant_type": invariants,
        "is_c4_power": invariants == (2 * ctx.e + 1, 0),
    }


def build_psi(ctx: FieldCtx) -> Collineation:
    """The semilinear generator: squaring followed by a fixed matrix."""
    eps, delta = ctx.epsilon, ctx.delta
    dse = ctx.frobenius(delta, ctx.e)              # delta^(sigma/2)
    a = ctx.mul(dse, 1 ^ eps)
    return Collineation.make(ctx, (
        1, 1, eps,
        0, a, a,
        0, 0, ctx.pow(delta, ctx.sigma_exp + 1),
    ), frob=1)


def psi_trace_identity(ctx: FieldCtx) -> dict:
    """The fixed-point argument for psi^(4e+2) on the line at infinity.

    mu = delta^(sigma/2) * epsilon has absolute trace 1, and iterating
    psi 4e+2 times from (0,1,0) lands on (0, 1, trace(mu)/mu), which is
    therefore a different point, forcing psi^(4e+2) to have order 4.
    """
    psi = build_psi(ctx)
    mu = ctx.mul(ctx.frobenius(ctx.delta, ctx.e), ctx.epsilon)
    tr = ctx.trace_abs(mu, over_big=True)
    power = identity(ctx)
    for _ in range(4 * ctx.e + 2):
        power = compose(ctx, power, psi)
    image = act(ctx, power, (0, 1, 0))
    expected = (0, 1, ctx.mul(tr, ctx.inv(mu)))
    return {
        "mu": mu,
        "trace_abs_mu": tr,
        "image_of_010": image,
        "matches_trace_formula": image == expected,
        "moves_010": image != (0, 1, 0),
        "power_in_linear_group": power.frob == 0,
    }


def psi_powers(ctx: FieldCtx) -> list[Collineation]:
    psi = build_psi(ctx)
    out = [identity(ctx)]
    acc = psi
    while acc != out[0]:
        out.append(acc)
        acc = compose(ctx, acc, psi)
    return out


def semilinear_stabiliser(ctx: FieldCtx) -> set[Collineation]:
    """The group generated by {M(u,v)} and psi, as canonical elements."""
    return {
        compose(ctx, g, p)
        for g in group_elements(ctx).values()
        for p in psi_powers(ctx)
    }


def probe_points(ctx: FieldCtx) -> list[Triple]:
    from .unital import ovoid_poly

    eps = ctx.epsilon
    sub = ctx.subfield()
    out = []
    for (ri, si, ti) in PROBE_PARAMS:
        r, s, t = sub[ri], sub[si], sub[ti]
        out.append((1, s ^ ctx.mul(t, eps),
                    r ^ ctx.mul(ovoid_poly(ctx, s, t), eps)))
    return out


def stabilizes(ctx: FieldCtx, c: Collineation, unital: UnitalSet,
               probe_budget: int = len(PROBE_PARAMS)) -> bool:
    """Whether the collineation maps the unital onto itself.

    Probes a fixed sequence of unital points first and rejects on the
    first image falling outside; only survivors pay for the full
    513-point verification.
    """
    for p in probe_points(ctx)[:probe_budget]:
        if act(ctx, c, p) not in unital:
            return False
    return all(act(ctx, c, p) in unital for p in unital.points)


# -- point orbits under the linear stabiliser -----------------------------------


def orbit_representative(ctx: FieldCtx, p: Triple) -> tuple[int, int, Collineation]:
    """Canonical orbit representative (1, a, b*eps) of an admissible point.

    Returns (a, b) with b != a^(sigma+2) and the group element carrying
    the representative to p.
    """
    if p[0] == 0:
        raise ValueError("point lies on the line at infinity")
    p = _norm_point(ctx, p)
    y1, y2 = ctx.decompose(p[1])
    z1, z2 = ctx.decompose(p[2])
    a = y1
    u = y2
    v = z1 ^ ctx.mul(y1, y2)
    b = z2 ^ ctx.pow(y2, ctx.sigma_exp) ^ ctx.mul(y1, y2)
    if b == ctx.pow(a, ctx.sigma_exp + 2):
        raise ValueError("point lies on the unital")
    return a, b, m_uv(ctx, u, v)


def orbit_representatives(ctx: FieldCtx) -> list[tuple[int, int]]:
    """The q^2-q admissible representatives (1, a, b*eps), b != a^(sigma+2)."""
    out = []
    for a, b in product(ctx.subfield(), ctx.subfield()):
        if b != ctx.pow(a, ctx.sigma_exp + 2):
            out.append((a, b))
    return out


def representative_point(ctx: FieldCtx, a: int, b: int) -> Triple:
    return (1, a, ctx.mul(b, ctx.epsilon))
