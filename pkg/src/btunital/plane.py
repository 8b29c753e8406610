"""Points, lines and incidence of PG(2, F) for a table-backed field F.

Points and lines are triples of field elements (ints), normalized so the
leftmost nonzero coordinate is 1; equality is tuple equality after
normalization.  A line [a, b, c] contains the point (x, y, z) iff
a*x + b*y + c*z = 0.  The same code serves PG(2, q^2) (the ambient plane
of the unital) and PG(2, q) (where the feet systems reduce to conics and
ovals), via a small field adapter.

Every normalized triple also gets a dense integer index (affine block
first, then the y=1 slice of the z-axis line, then (0,0,1)); the
vectorized pencil routine returns index arrays directly so incidence
structures can be held as flat numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldCtx

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class PlaneField:
    """Field adapter: the elements of F with dense ranks and mul tables."""

    order: int
    elems: np.ndarray        # rank -> element code
    rank: np.ndarray         # element code -> rank (-1 outside F)
    MUL: np.ndarray          # full code x code product table
    INV: np.ndarray

    def mul(self, a: int, b: int) -> int:
        return int(self.MUL[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        return int(self.INV[a])


def big_plane_field(ctx: FieldCtx) -> PlaneField:
    """PG(2, q^2) coordinates: all of F_{q^2}."""
    if ctx.MUL is None:
        raise ValueError("full multiplication table unavailable for this field size")
    n = ctx.big_order
    return PlaneField(order=n, elems=np.arange(n, dtype=ctx.INV.dtype),
                      rank=np.arange(n, dtype=np.int64), MUL=ctx.MUL, INV=ctx.INV)


def sub_plane_field(ctx: FieldCtx) -> PlaneField:
    """PG(2, q) coordinates: the subfield F_q, ranked 0..q-1."""
    if ctx.MUL is None:
        raise ValueError("full multiplication table unavailable for this field size")
    return PlaneField(order=ctx.q, elems=ctx.SUBF.copy(),
                      rank=ctx.SUBF_RANK.astype(np.int64), MUL=ctx.MUL, INV=ctx.INV)


def normalize(f: PlaneField, t: Triple) -> Triple:
    x, y, z = t
    if x:
        s = f.inv(x)
        return (1, f.mul(y, s), f.mul(z, s))
    if y:
        s = f.inv(y)
        return (0, 1, f.mul(z, s))
    if z:
        return (0, 0, 1)
    raise ValueError("the zero triple is not a projective point")


def incident(f: PlaneField, point: Triple, line: Triple) -> bool:
    a, b, c = line
    x, y, z = point
    return (f.mul(a, x) ^ f.mul(b, y) ^ f.mul(c, z)) == 0


def line_through(f: PlaneField, p: Triple, q: Triple) -> Triple:
    """Dual coordinates of the unique line through two distinct points.

    The cross product works verbatim in characteristic two (minus is plus).
    """
    if normalize(f, p) == normalize(f, q):
        raise ValueError("line_through requires two distinct points")
    x1, y1, z1 = p
    x2, y2, z2 = q
    return normalize(f, (
        f.mul(y1, z2) ^ f.mul(z1, y2),
        f.mul(z1, x2) ^ f.mul(x1, z2),
        f.mul(x1, y2) ^ f.mul(y1, x2),
    ))


def meet(f: PlaneField, l1: Triple, l2: Triple) -> Triple:
    """The common point of two distinct lines (duality: same cross product)."""
    return line_through(f, l1, l2)


class PlaneIndex:
    """Dense indexing and vectorized pencils for PG(2, F).

    Index layout over normalized triples, o = |F|:
      (1, y, z) -> rank(y)*o + rank(z)         [0, o^2)
      (0, 1, z) -> o^2 + rank(z)               [o^2, o^2+o)
      (0, 0, 1) -> o^2 + o
    Points and lines share the scheme (the plane is self-dual under
    coordinate swap).
    """

    def __init__(self, f: PlaneField):
        self.f = f
        o = f.order
        self.size = o * o + o + 1

    def index(self, t: Triple) -> int:
        x, y, z = normalize(self.f, t)
        o, rank = self.f.order, self.f.rank
        if x == 1:
            return int(rank[y]) * o + int(rank[z])
        if y == 1:
            return o * o + int(rank[z])
        return o * o + o

    def triple(self, i: int) -> Triple:
        o, elems = self.f.order, self.f.elems
        if i < o * o:
            return (1, int(elems[i // o]), int(elems[i % o]))
        if i < o * o + o:
            return (0, 1, int(elems[i - o * o]))
        return (0, 0, 1)

    def _index_arrays(self, X, Y, Z):
        """Normalize coordinate arrays and return dense indices."""
        f, o = self.f, self.f.order
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        Z = np.asarray(Z, dtype=np.int64)
        s = np.where(X != 0, X, np.where(Y != 0, Y, Z))
        si = f.INV[s].astype(np.int64)
        Xn = f.MUL[X, si].astype(np.int64)
        Yn = f.MUL[Y, si].astype(np.int64)
        Zn = f.MUL[Z, si].astype(np.int64)
        ry = f.rank[Yn]
        rz = f.rank[Zn]
        out = np.where(
            Xn == 1, ry * o + rz,
            np.where(Yn == 1, o * o + rz, o * o + o),
        )
        return out

    def pencil_indices(self, t: Triple) -> np.ndarray:
        """Indices of all o+1 triples w with t . w = 0.

        Read t as a point to get the lines through it, or as a line to get
        the points on it; the formula is the same by self-duality.
        """
        f = self.f
        a, b, c = normalize(f, t)
        elems = f.elems.astype(np.int64)
        if a == 0 and b == 0:
            # z = 0: solutions (x, y, 0)
            w1, w2 = (1, 0, 0), (0, 1, 0)
        elif a == 0:
            # y + (c/b) z = 0 with b = 1 after normalization
            w1, w2 = (1, 0, 0), (0, c, 1)
        else:
            # x + b y + c z = 0 with a = 1
            w1, w2 = (b, 1, 0), (c, 0, 1)
        lam = elems
        X = np.concatenate(([w2[0]], f.MUL[w2[0], lam].astype(np.int64) ^ w1[0]))
        Y = np.concatenate(([w2[1]], f.MUL[w2[1], lam].astype(np.int64) ^ w1[1]))
        Z = np.concatenate(([w2[2]], f.MUL[w2[2], lam].astype(np.int64) ^ w1[2]))
        return self._index_arrays(X, Y, Z)

    def full_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(points_on_line, lines_through_point), each (size, o+1) int32.

        Only sensible for small planes; PG(2, 64) costs a couple of MB.
        """
        rows = np.empty((self.size, self.f.order + 1), dtype=np.int32)
        for i in range(self.size):
            rows[i] = np.sort(self.pencil_indices(self.triple(i)))
        # self-duality: the same table serves both directions
        return rows, rows


def baer_subline(ctx: FieldCtx, p0: Triple, p1: Triple, p2: Triple) -> frozenset[Triple]:
    """The unique Baer subline of PG(2, q^2) through three collinear points.

    Coordinatize the common line so the three points become (1,0), (0,1)
    and (1,1) of PG(1, q^2); the subline is the preimage of the standard
    PG(1, q) = {(1, t) : t in F_q} u {(0, 1)}.
    """
    f = big_plane_field(ctx)
    pts = [normalize(f, p) for p in (p0, p1, p2)]
    if len(set(pts)) != 3:
        raise ValueError("baer_subline needs three distinct points")
    p0, p1, p2 = pts
    ell = line_through(f, p0, p1)
    if not incident(f, p2, ell):
        raise ValueError("baer_subline needs collinear points")
    alpha, beta = _frame_coords(ctx, p0, p1, p2)
    a0 = [ctx.mul(alpha, c) for c in p0]
    b1 = [ctx.mul(beta, c) for c in p1]
    out = {normalize(f, tuple(a0[i] ^ ctx.mul(t, b1[i]) for i in range(3)))
           for t in ctx.subfield()}
    out.add(p1)
    return frozenset(out)


def _frame_coords(ctx: FieldCtx, p0: Triple, p1: Triple, p2: Triple) -> tuple[int, int]:
    """Solve p2 = alpha*p0 + beta*p1 via a nonsingular 2x2 coordinate minor."""
    for i in range(3):
        for j in range(i + 1, 3):
            det = ctx.mul(p0[i], p1[j]) ^ ctx.mul(p0[j], p1[i])
            if det:
                di = ctx.inv(det)
                alpha = ctx.mul(di, ctx.mul(p2[i], p1[j]) ^ ctx.mul(p2[j], p1[i]))
                beta = ctx.mul(di, ctx.mul(p0[i], p2[j]) ^ ctx.mul(p0[j], p2[i]))
                return alpha, beta
    raise ValueError("degenerate point pair")


def is_baer_subline(ctx: FieldCtx, points) -> bool:
    """True iff the q+1 given points are exactly a Baer subline."""
    f = big_plane_field(ctx)
    pts = [normalize(f, p) for p in points]
    s = frozenset(pts)
    if len(s) != ctx.q + 1:
        raise ValueError(f"a Baer subline has q+1 = {ctx.q + 1} points, got {len(s)}")
    it = iter(s)
    p0, p1, p2 = next(it), next(it), next(it)
    ell = line_through(f, p0, p1)
    if not all(incident(f, p, ell) for p in s):
        return False
    return baer_subline(ctx, p0, p1, p2) == s
