"""Report serialization and the command-line front end."""

import json

import pytest

from btunital import report as rpt
from btunital.cli import main


def _strip_runtimes(doc: dict) -> dict:
    out = json.loads(json.dumps(doc))
    for s in out["suites"]:
        s["runtime_s"] = 0
        if "payload" in s and "scan_seconds" in s.get("payload", {}):
            s["payload"]["scan_seconds"] = 0
    return out


def test_report_deterministic_apart_from_runtimes():
    r1 = rpt.build_report(rpt.run_suites(["build", "identities"], e=1), e=1)
    r2 = rpt.build_report(rpt.run_suites(["build", "identities"], e=1), e=1)
    s1 = rpt.report_json(_strip_runtimes(r1))
    s2 = rpt.report_json(_strip_runtimes(r2))
    assert s1 == s2


def test_report_header_fields():
    r = rpt.build_report(rpt.run_suites(["build"], e=1), e=1)
    assert r["artifact"]["name"] == "btunital"
    assert r["context"] == {"e": 1, "q": 8, "big_order": 64, "modulus": "43",
                            "epsilon": "22", "delta": "16", "sigma": 4}
    assert r["reproducibility"]["stabilizer_shards"] == 384
    assert len(r["reproducibility"]["probe_params"]) == 8


def test_cli_json_pass(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(["witnesses", "-e", "1", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    names = [s["name"] for s in doc["suites"]]
    assert names == ["witnesses"]
    assert doc["suites"][0]["status"] == "pass"


def test_cli_spectrum_csv(tmp_path):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "-e", "1", "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "point_rep_a,point_rep_b,k0,k1,k2,k3,k4"
    assert len(lines) == 57
    ks = [int(x) for row in lines[1:] for x in row.split(",")[2:]]
    assert max(ks[3::5] + ks[4::5]) <= 56   # k3, k4 columns stay small
    assert all(sum(int(x) for x in row.split(",")[2:]) == 4161
               for row in lines[1:])


def test_cli_group_census_csv(tmp_path):
    out = tmp_path / "census.csv"
    code = main(["group", "-e", "1", "--format", "csv", "--out", str(out)])
    assert code == 0
    assert out.read_text() == "element_order,count\n1,1\n2,7\n4,56\n"


def test_cli_csv_needs_csv_capable_suite(capsys):
    code = main(["build", "-e", "1", "--format", "csv"])
    assert code == 2


def test_cli_stabilizer_budget_error():
    code = main(["stabilizer", "-e", "2"])
    assert code == 2


def test_cli_stabilizer_checkpoint(tmp_path):
    out = tmp_path / "rep.json"
    ck = tmp_path / "scan.ckpt"
    code = main(["stabilizer", "-e", "1", "--out", str(out),
                 "--checkpoint", str(ck)])
    assert code == 0
    doc = json.loads(out.read_text())
    payload = doc["suites"][0]["payload"]
    assert payload["stabiliser_count"] == 64        # linear without --semilinear
    assert payload["candidates_scanned"] == 1_040_449_536
    assert ck.exists() and ck.stat().st_size > 0
    # resume: the second run scans nothing new
    code = main(["stabilizer", "-e", "1", "--out", str(out),
                 "--checkpoint", str(ck)])
    doc = json.loads(out.read_text())
    assert doc["suites"][0]["payload"]["resumed_shards"] == 64
    assert code == 0


def test_cli_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        main(["no-such-suite"])


def test_hex_encoding():
    assert rpt.hexval(0x22) == "22"
    assert rpt.hex_triple((1, 0, 0x3f)) == ["1", "0", "3f"]
