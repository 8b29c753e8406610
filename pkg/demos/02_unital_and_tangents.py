"""
Building the unital and reading its tangent structure
=====================================================

The Buekenhout-Tits unital has q^3 + 1 = 513 points in PG(2, 64); every
one of the 4161 lines meets it in exactly 1 or 9 points.  Points off the
unital see it through q + 1 = 9 tangent lines, whose touch points are
called their feet.
"""

import collections

from btunital import build_context, build_bt_unital
from btunital.unital import P_INF, feet_formula, has_subline_property, verify_unital

ctx = build_context(1)
unital = build_bt_unital(ctx)
print("points:", len(unital))

# the defining axiom, checked on every line of the plane
report = verify_unital(ctx, unital.points)
print("line-intersection histogram:", report["histogram"])
print("tangents:", report["n_tangents"], " secants:", report["n_secants"])

# the line x = 0 is tangent exactly at the special point (0, 0, 1)
print("tangent at (0,0,1):", unital.tangent_at(P_INF))

# feet of an affine point: nine touch points, computed two independent ways
p = (1, 0, ctx.epsilon)
feet_geo = unital.feet_direct(p)       # from the tangent lines
feet_par = feet_formula(ctx, unital, p)  # from the parametric description
print("\nfeet of (1, 0, eps): geometric == parametric:", feet_geo == feet_par)
print(sorted(feet_geo)[:3], "...")

# feet are collinear exactly for points on the tangent line at infinity
from btunital.unital import collinear
on_linf = (0, 1, 5)
print("feet of", on_linf, "collinear:", collinear(ctx, unital.feet_direct(on_linf)))
print("feet of", p, "collinear:", collinear(ctx, feet_geo))

# among all 513 unital points, only (0,0,1) sees every secant as a Baer subline
special = [q for q in sorted(unital.points)
           if has_subline_property(ctx, unital, q)]
print("\npoints with the Baer-secant property:", special)

# how many secants a point of the unital carries
counts = collections.Counter()
pen = unital.plane.pencil_indices(P_INF)
for i in pen:
    counts[int(unital.line_counts[i])] += 1
print("lines through (0,0,1) by unital-intersection size:", dict(counts))
