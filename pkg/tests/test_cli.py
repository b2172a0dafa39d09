import json
import subprocess
import sys

import jsonschema
import pytest

from isocount import closed_forms as cf
from isocount import cli, report



def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = cli.main([*argv, "--json", str(out)])
    doc = json.loads(out.read_text()) if out.exists() else None
    if doc is not None:
        jsonschema.validate(doc, report.report_schema())
    return code, doc


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv(report.CACHE_ENV, str(tmp_path / "cache"))


def test_count_examples(tmp_path):
    code, doc = run(tmp_path, "count", "--type", "2,2")
    assert code == 0 and doc["results"][0]["value"] == 15
    code, doc = run(tmp_path, "count", "--type", "1,1", "--r", "1")
    assert code == 0 and doc["results"][0]["value"] == 1
    code, doc = run(tmp_path, "count", "--type", "1,2,4", "--minimal")
    assert code == 0 and doc["results"][0]["value"] == 39
    code, doc = run(tmp_path, "count", "--type", "1,5", "--linear-system")
    assert code == 0 and doc["results"][0]["value"] == 25 * 6


def test_count_methods(tmp_path):
    code, doc = run(tmp_path, "count", "--type", "6,6", "--method", "enumerate")
    assert code == 0 and doc["results"][0]["value"] == 600
    assert doc["results"][0]["method"] == cf.ENUMERATION
    code, doc = run(tmp_path, "count", "--type", "6,6", "--method", "closed")
    assert code == 0 and doc["results"][0]["value"] == 600
    code, doc = run(tmp_path, "count", "--type", "2,4", "--method", "closed")
    assert code == cli.EXIT_ILL_POSED


def test_exit_codes(tmp_path):
    assert run(tmp_path, "count", "--type", "2,3")[0] == cli.EXIT_ILL_POSED
    assert run(tmp_path, "count", "--type", "1,2,4", "--r", "1/3")[0] == cli.EXIT_ILL_POSED
    assert run(tmp_path, "count", "--type", "1,2", "--minimal", "--r", "1")[0] == cli.EXIT_ILL_POSED
    code, doc = run(tmp_path, "count", "--type", "16,16", "--max-candidates", "10")
    assert code == cli.EXIT_BUDGET
    assert doc["results"][0]["status"] == "budget_exhausted"
    with pytest.raises(SystemExit) as info:
        cli.main(["count"])
    assert info.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        cli.main(["count", "--type", "2,2", "--r", "x/y"])
    assert info.value.code == cli.EXIT_USAGE


def test_table_custom(tmp_path):
    code, doc = run(tmp_path, "table", "custom", "--d-max", "3")
    assert code == 0
    rows = doc["results"]
    assert [(r["d1"], r["d2"], r["value"]) for r in rows] == [(1, 2, 3), (2, 2, 15), (1, 3, 4), (3, 3, 40)]
    assert all(r["match"] for r in rows)


def test_table_types(tmp_path):
    code, doc = run(tmp_path, "table", "types", "--p", "2", "--n", "3")
    assert code == 0
    assert {r["type"]: r["value"] for r in doc["results"]} == {"1": 960, "2_1": 360, "6_1": 15}
    assert all(r["match"] for r in doc["results"])
    assert run(tmp_path, "table", "types", "--p", "2")[0] == cli.EXIT_ILL_POSED


def test_table_published_flags_cells(tmp_path):
    code, doc = run(tmp_path, "table", "published")
    assert code == 0
    rows = {(r["d1"], r["d2"]): r for r in doc["results"]}
    assert len(rows) == 36
    assert rows[(16, 16)]["status"] == "internal_conflict" and rows[(16, 16)]["value"] == 11191
    assert rows[(2, 4)]["status"] == "table_erratum"
    assert rows[(12, 12)]["match"] is True


def test_table_budget_is_per_cell(tmp_path):
    code, doc = run(tmp_path, "table", "custom", "--d-max", "4", "--max-candidates", "5")
    assert code == 0
    statuses = [r["status"] for r in doc["results"]]
    assert "budget_exhausted" not in statuses  # closed forms need no enumeration here
    code, doc = run(tmp_path, "table", "published", "--max-candidates", "5")
    statuses = {(r["d1"], r["d2"]): r["status"] for r in doc["results"]}
    assert statuses[(16, 16)] == "budget_exhausted"
    assert statuses[(1, 2)] == "match"


def test_enumerate_outputs(tmp_path):
    out = tmp_path / "k12.jsonl"
    assert cli.main(["enumerate", "--type", "1,2", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3
    out = tmp_path / "k22.jsonl"
    assert cli.main(["enumerate", "--type", "2,2", "--out", str(out)]) == 0
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(recs) == 15
    for r in recs:
        inv = r["invariants"]
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    out = tmp_path / "k44.csv"
    assert cli.main(["enumerate", "--type", "4,4", "--emit", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()[1:]
    hist = {}
    for line in lines:
        t = line.rsplit(",", 1)[1]
        hist[t] = hist.get(t, 0) + 1
    assert hist == {"1": 120, "3": 30, "7": 1}


def test_enumerate_budget_removes_partial_file(tmp_path):
    out = tmp_path / "big.jsonl"
    code = cli.main(["enumerate", "--type", "16,16", "--out", str(out), "--max-candidates", "10"])
    assert code == cli.EXIT_BUDGET
    assert not out.exists()


def test_enumerate_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    cli.main(["enumerate", "--type", "4,8", "--out", str(a)])
    cli.main(["enumerate", "--type", "4,8", "--out", str(b), "--jobs", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_cache_does_not_change_results(tmp_path):
    args = ["count", "--type", "2,12", "--cache"]
    _, first = run(tmp_path, *args)
    _, second = run(tmp_path, *args)
    assert first["results"][0]["value"] == second["results"][0]["value"] == 156
    cache_file = tmp_path / "cache" / report.CountCache.FILENAME
    assert cache_file.exists()
    # corrupt the entry: it must be detected and recomputed, not trusted
    d = json.loads(cache_file.read_text().splitlines()[0])
    d["count"] = 204
    cache_file.write_text(json.dumps(d) + "\n")
    _, third = run(tmp_path, *args)
    assert third["results"][0]["value"] == 156


def test_verify_quick_passes_and_is_deterministic(tmp_path):
    path = tmp_path / "v.json"
    assert cli.main(["verify", "quick", "--json", str(path)]) == 0
    da = json.loads(path.read_text())
    assert cli.main(["verify", "quick", "--json", str(path)]) == 0
    db = json.loads(path.read_text())
    jsonschema.validate(da, report.report_schema())
    assert da["timing"]["total"] <= 60
    da.pop("timing"), db.pop("timing")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)
    conflicts = [r for r in da["results"] if r.get("status") == "internal_conflict"]
    assert [r["name"] for r in conflicts] == ["nu(16, 16)"]
    assert all(r["status"] != "fail" for r in da["results"])


def test_verify_catches_broken_type3_formula(tmp_path, monkeypatch):
    original = cf.nu_pp_by_type

    def broken(p, n, label):
        value = original(p, n, label)
        return value + 1 if label.kind == 3 else value

    monkeypatch.setattr(cf, "nu_pp_by_type", broken)
    out = tmp_path / "v.json"
    assert cli.main(["verify", "full", "--json", str(out)]) == cli.EXIT_MISMATCH
    doc = json.loads(out.read_text())
    failed = [r for r in doc["results"] if r["kind"] == "check" and r["status"] == "fail"]
    assert failed
    assert any(r["name"].startswith("type 3 ") for r in failed)
    assert {r["suite"] for r in failed} >= {"type_counts"}


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "isocount.cli", "count", "--type", "3,3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "40" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "isocount.cli", "count", "--type", "2,3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == cli.EXIT_ILL_POSED
