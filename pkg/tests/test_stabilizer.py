"""Sharded exhaustive stabiliser scan: correctness, checkpoints, resume."""

import os

import pytest

from btunital.group import group_elements, m_uv
from btunital.stabilizer import (
    BudgetExceeded,
    ShardResult,
    as_collineation,
    checkpoint_append,
    checkpoint_load,
    exhaustive_flag_stabilizer,
    identify_survivors,
    scan_shard,
    shard_candidates,
    shard_count,
)


def test_shard_arithmetic(ctx):
    assert shard_candidates(ctx) == 64 * 64 * 63 * 63
    assert shard_count(ctx, False) == 64
    assert shard_count(ctx, True) == 384
    assert shard_count(ctx, False) * shard_candidates(ctx) == 1_040_449_536
    assert shard_count(ctx, True) * shard_candidates(ctx) == 6_242_697_216


def test_single_shard_finds_known_survivors(ctx, unital):
    # the shard (frob 0, x12 = 0) must contain exactly the eight M(0, v)
    res = scan_shard(ctx, unital, 0)
    assert res.candidates == shard_candidates(ctx)
    found = {as_collineation(ctx, s) for s in res.survivors}
    expected = {m_uv(ctx, 0, v) for v in ctx.subfield()}
    assert found == expected


def test_linear_scan(ctx, unital):
    rep = exhaustive_flag_stabilizer(ctx, unital, semilinear=False)
    assert rep["stabiliser_count"] == 64
    assert rep["candidates_scanned"] == 1_040_449_536
    ident = identify_survivors(ctx, rep)
    assert ident["linear_matches_muv"]
    assert ident["orbit_size"] == 16_257_024
    assert {c for c in rep["collineations"]} == set(group_elements(ctx).values())


def test_checkpoint_roundtrip(tmp_path):
    path = str(tmp_path / "scan.ckpt")
    r1 = ShardResult(shard=3, candidates=12345, survivors=[(1, 2, 3, 4, 5, 0)])
    r2 = ShardResult(shard=7, candidates=99, survivors=[])
    checkpoint_append(path, r1)
    checkpoint_append(path, r2)
    loaded = checkpoint_load(path)
    assert set(loaded) == {3, 7}
    assert loaded[3].survivors == [(1, 2, 3, 4, 5, 0)]
    assert loaded[3].candidates == 12345
    assert loaded[7].survivors == []


def test_checkpoint_ignores_truncated_tail(tmp_path):
    path = str(tmp_path / "scan.ckpt")
    checkpoint_append(path, ShardResult(shard=1, candidates=5, survivors=[]))
    with open(path, "ab") as fh:
        fh.write(b"\xff\xff\xff\x7f")      # length prefix with no payload
    loaded = checkpoint_load(path)
    assert set(loaded) == {1}


def test_missing_checkpoint_is_empty(tmp_path):
    assert checkpoint_load(str(tmp_path / "nope.ckpt")) == {}


def test_scan_resumes_from_checkpoint(ctx, unital, tmp_path):
    path = str(tmp_path / "resume.ckpt")
    # pre-scan a few shards into the checkpoint by hand
    for shard in (0, 1, 2):
        checkpoint_append(path, scan_shard(ctx, unital, shard))
    rep = exhaustive_flag_stabilizer(ctx, unital, semilinear=False,
                                     checkpoint=path)
    assert rep["resumed_shards"] == 3
    assert rep["stabiliser_count"] == 64
    assert rep["candidates_scanned"] == 1_040_449_536
    # a rerun now resumes everything and rescans nothing
    rep2 = exhaustive_flag_stabilizer(ctx, unital, semilinear=False,
                                      checkpoint=path)
    assert rep2["resumed_shards"] == 64
    assert rep2["stabiliser_count"] == 64
    assert os.path.getsize(path) > 0


def test_budget_gate(ctx2, unital2, ctx, unital):
    with pytest.raises(BudgetExceeded):
        exhaustive_flag_stabilizer(ctx2, unital2, semilinear=False)
    with pytest.raises(BudgetExceeded):
        exhaustive_flag_stabilizer(ctx, unital, semilinear=True, budget=10 ** 6)


def test_parallel_scan_matches_serial(ctx, unital):
    rep = exhaustive_flag_stabilizer(ctx, unital, semilinear=False, threads=2)
    assert rep["stabiliser_count"] == 64
    assert identify_survivors(ctx, rep)["linear_matches_muv"]
