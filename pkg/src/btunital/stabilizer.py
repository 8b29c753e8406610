"""Exhaustive search for unital-stabilising collineations in the flag group.

Any collineation stabilising the unital must fix its unique subline-special
point (0,0,1) and therefore the tangent line x = 0, so it lies in the group
of semilinear maps x -> x^(2^k) M with

        [ 1  x12  x13 ]
    M = [ 0  x22  x23 ],    x22 * x33 != 0.
        [ 0   0   x33 ]

That reduction (verified separately by the subline-property scan) shrinks
the search to 64^3 * 63^2 matrices per Frobenius exponent, about 6.2e9
semilinear candidates at e = 1.  The scan shards this space by
(frob, x12); within a shard the probe images factor over the axes
(x22) x (x23, x33), so each membership probe is a few vectorized table
lookups on a 63 x 64 x 63 grid.  Probe one, the image of (1,0,0), depends
only on (x12, x13) and already rejects all but one x13 slice in eight.

Completed shards can be streamed to a checkpoint file (length-prefixed
binary records, see ``checkpoint`` below) so an interrupted scan resumes
where it stopped.
"""

from __future__ import annotations

import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fields import FieldCtx, build_context
from .group import PROBE_PARAMS, Collineation, probe_points
from .unital import UnitalSet, build_bt_unital


class BudgetExceeded(RuntimeError):
    """Scan would leave the supported candidate budget; pass force=True."""


@dataclass
class ShardResult:
    shard: int
    candidates: int
    survivors: list[tuple[int, int, int, int, int, int]]  # x12 x13 x22 x23 x33 frob
    probe_survivor_counts: list[int] = field(default_factory=list)


def shard_count(ctx: FieldCtx, semilinear: bool) -> int:
    frobs = 4 * ctx.e + 2 if semilinear else 1
    return frobs * ctx.big_order


def shard_candidates(ctx: FieldCtx) -> int:
    n = ctx.big_order
    return n * n * (n - 1) * (n - 1)


def _scan_tables(ctx: FieldCtx, unital: UnitalSet):
    """(FTAB, X2) so that (1, Y, Z) is on the unital iff X2[Z] == FTAB[Y]."""
    n = ctx.big_order
    ftab = np.empty(n, dtype=np.int64)
    from .unital import ovoid_poly
    for y in range(n):
        s, t = ctx.decompose(y)
        ftab[y] = ovoid_poly(ctx, s, t)
    # consistency with the actual point set
    affine = unital.point_indices[unital.point_indices < n * n]
    ys, zs = affine // n, affine % n
    if not np.all(ctx.X2[zs].astype(np.int64) == ftab[ys]):
        raise AssertionError("membership tables disagree with the unital")
    return ftab, ctx.X2.astype(np.int64)


def scan_shard(ctx: FieldCtx, unital: UnitalSet, shard: int,
               tables=None) -> ShardResult:
    """Exhaust one (frob, x12) shard of the candidate space."""
    n = ctx.big_order
    frob, x12 = divmod(shard, n)
    ftab, x2 = tables if tables is not None else _scan_tables(ctx, unital)
    MUL = ctx.MUL.astype(np.int64)
    FROB = ctx.FROB.astype(np.int64)

    nz = np.arange(1, n, dtype=np.int64)          # x22 and x33 ranges
    allv = np.arange(n, dtype=np.int64)           # x23 range
    probes = [(p[1], p[2]) for p in probe_points(ctx)[1:]]  # (Y, Z), affine

    survivors: list[tuple] = []
    probe_counts = [0] * (len(probes) + 1)
    grid_size = len(nz) * len(allv) * len(nz)

    for x13 in range(n):
        # probe one: the image of (1, 0, 0) is (1, x12, x13)
        if x2[x13] != ftab[x12]:
            continue
        probe_counts[0] += grid_size
        mask = np.ones((n - 1, n, n - 1), dtype=bool)
        for pi, (py, pz) in enumerate(probes):
            yk = int(FROB[frob, py])
            zk = int(FROB[frob, pz])
            yimg = x12 ^ MUL[yk, nz]                       # over x22
            need = ftab[yimg]
            zrow = x13 ^ MUL[yk, allv]                     # over x23
            zimg = zrow[:, None] ^ MUL[zk, nz][None, :]    # (x23, x33)
            have = x2[zimg]
            mask &= need[:, None, None] == have[None, :, :]
            alive = int(np.count_nonzero(mask))
            probe_counts[pi + 1] += alive
            if not alive:
                break
        for i22, i23, i33 in np.argwhere(mask):
            cand = (x12, x13, int(nz[i22]), int(allv[i23]), int(nz[i33]), frob)
            if _full_check(ctx, unital, cand):
                survivors.append(cand)
    return ShardResult(shard=shard, candidates=shard_candidates(ctx),
                       survivors=survivors, probe_survivor_counts=probe_counts)


def _full_check(ctx: FieldCtx, unital: UnitalSet, cand) -> bool:
    """Verify a probe survivor against every point of the unital."""
    x12, x13, x22, x23, x33, frob = cand
    n = ctx.big_order
    MUL = ctx.MUL.astype(np.int64)
    FROB = ctx.FROB.astype(np.int64)
    affine = unital.point_indices[unital.point_indices < n * n]
    ys = FROB[frob, affine // n]
    zs = FROB[frob, affine % n]
    yimg = x12 ^ MUL[ys, x22]
    zimg = x13 ^ MUL[ys, x23] ^ MUL[zs, x33]
    return bool(np.all(unital.mask[yimg * n + zimg]))
    # (0,0,1) is fixed by every candidate, so affine points suffice


def as_collineation(ctx: FieldCtx, cand) -> Collineation:
    x12, x13, x22, x23, x33, frob = cand
    return Collineation.make(
        ctx, (1, x12, x13, 0, x22, x23, 0, 0, x33), frob)


# -- checkpoint records ----------------------------------------------------------
#
# A checkpoint file is a flat sequence of little-endian records, one per
# completed shard:
#
#     u32 payload_length
#     payload:
#         u32 shard_id
#         u64 candidates_scanned
#         u32 n_survivors
#         n_survivors * (5 * u16 + u8):  x12 x13 x22 x23 x33, frob
#
# Records are append-only; rerunning with the same file skips the shards
# already present.

_HDR = struct.Struct("<IQI")
_SURV = struct.Struct("<5HB")


def checkpoint_append(path: str, result: ShardResult) -> None:
    payload = _HDR.pack(result.shard, result.candidates, len(result.survivors))
    for s in result.survivors:
        payload += _SURV.pack(*s)
    with open(path, "ab") as fh:
        fh.write(struct.pack("<I", len(payload)))
        fh.write(payload)


def checkpoint_load(path: str) -> dict[int, ShardResult]:
    out: dict[int, ShardResult] = {}
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except FileNotFoundError:
        return out
    off = 0
    while off + 4 <= len(data):
        (length,) = struct.unpack_from("<I", data, off)
        off += 4
        if off + length > len(data):
            break  # truncated trailing record; rescan that shard
        shard, cands, nsurv = _HDR.unpack_from(data, off)
        pos = off + _HDR.size
        survivors = []
        for _ in range(nsurv):
            *xs, frob = _SURV.unpack_from(data, pos)
            survivors.append((*xs, frob))
            pos += _SURV.size
        out[shard] = ShardResult(shard=shard, candidates=cands,
                                 survivors=survivors)
        off += length
    return out


# -- drivers ---------------------------------------------------------------------

_worker_state: dict = {}


def _worker_init(e: int):
    ctx = build_context(e)
    unital = build_bt_unital(ctx)
    _worker_state["ctx"] = ctx
    _worker_state["unital"] = unital
    _worker_state["tables"] = _scan_tables(ctx, unital)


def _worker_scan(shard: int) -> ShardResult:
    return scan_shard(_worker_state["ctx"], _worker_state["unital"], shard,
                      _worker_state["tables"])


def exhaustive_flag_stabilizer(ctx: FieldCtx, unital: UnitalSet,
                               semilinear: bool = True, threads: int = 1,
                               checkpoint: str | None = None,
                               force: bool = False, budget: int | None = None,
                               progress=None) -> dict:
    """Count and describe all unital stabilisers in the flag group.

    Returns a report with the exact stabiliser count, the survivors as
    canonical collineations, per-probe rejection statistics, and the
    scanned-candidate total.  At e >= 2 (or beyond an explicit candidate
    budget) the scan refuses to start unless force=True.
    """
    space = shard_count(ctx, semilinear) * shard_candidates(ctx)
    if not force and (ctx.e >= 2 or (budget is not None and space > budget)):
        raise BudgetExceeded(
            f"flag scan at e={ctx.e} means {space:.2e} candidates"
            + (f" (budget {budget:.2e})" if budget is not None else "")
            + "; pass force=True to run anyway")
    t0 = time.time()
    n_shards = shard_count(ctx, semilinear)
    done = checkpoint_load(checkpoint) if checkpoint else {}
    todo = [s for s in range(n_shards) if s not in done]
    resumed = n_shards - len(todo)

    probe_totals = [0] * len(PROBE_PARAMS)
    results: dict[int, ShardResult] = dict(done)
    if threads > 1 and todo:
        with ProcessPoolExecutor(max_workers=threads, initializer=_worker_init,
                                 initargs=(ctx.e,)) as pool:
            for res in pool.map(_worker_scan, todo, chunksize=4):
                results[res.shard] = res
                if checkpoint:
                    checkpoint_append(checkpoint, res)
                for i, c in enumerate(res.probe_survivor_counts):
                    probe_totals[i] += c
                if progress:
                    progress(len(results), n_shards)
    else:
        tables = _scan_tables(ctx, unital)
        for shard in todo:
            res = scan_shard(ctx, unital, shard, tables)
            results[res.shard] = res
            if checkpoint:
                checkpoint_append(checkpoint, res)
            for i, c in enumerate(res.probe_survivor_counts):
                probe_totals[i] += c
            if progress:
                progress(len(results), n_shards)

    survivors = sorted(s for res in results.values() for s in res.survivors)
    colls = [as_collineation(ctx, s) for s in survivors]
    linear = [c for c in colls if c.frob == 0]
    report = {
        "e": ctx.e,
        "semilinear": semilinear,
        "n_shards": n_shards,
        "resumed_shards": resumed,
        "candidates_scanned": sum(r.candidates for r in results.values()),
        "stabiliser_count": len(colls),
        "linear_count": len(linear),
        "survivors": survivors,
        "collineations": colls,
        "probe_survivor_totals": probe_totals,
        "probe_params": list(PROBE_PARAMS),
        "elapsed_s": time.time() - t0,
    }
    return report


def identify_survivors(ctx: FieldCtx, report: dict) -> dict:
    """Match the scan output against the known stabiliser description."""
    from .group import group_elements, semilinear_stabiliser

    found = set(report["collineations"])
    linear = {c for c in found if c.frob == 0}
    expected_linear = set(group_elements(ctx).values())
    out = {
        "linear_matches_muv": linear == expected_linear,
        "orbit_size": ((ctx.big_order - 1) ** 2 * ctx.big_order ** 3
                       // max(len(linear), 1)),
    }
    if report["semilinear"]:
        out["semilinear_matches_g_psi"] = found == semilinear_stabiliser(ctx)
    return out
