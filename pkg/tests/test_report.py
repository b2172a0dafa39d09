import io
import json

import jsonschema
import pytest

from isocount import closed_forms as cf
from isocount import report
from isocount.enumeration import enumerate_maximal_isotropic
from isocount.symplectic import make_module


def test_document_round_trip_and_schema():
    doc = report.ReportDocument(
        command=["count", "--type", "6,6"],
        inputs={"type": [6, 6]},
        results=[dict(report.count_to_dict(cf.nu((6, 6))), kind="nu")],
        warnings=["w"],
        timing={"total": 0.1},
    )
    text = doc.to_json()
    assert report.ReportDocument.from_json(text) == doc
    assert report.ReportDocument.from_json(text).to_json() == text
    jsonschema.validate(json.loads(text), report.report_schema())
    assert "timing" not in json.loads(doc.to_json(timing=False))


def test_schema_rejects_bad_documents():
    schema = report.report_schema()
    good = json.loads(report.ReportDocument(command=[], inputs={}).to_json())
    for key in ("tool_version", "results"):
        bad = dict(good)
        del bad[key]
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(bad, schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(dict(good, results=[{"value": 1}]), schema)


def test_subgroup_records():
    subs = enumerate_maximal_isotropic(make_module((4, 4)))
    recs = [report.subgroup_record(H) for H in subs]
    assert all(r["order"] == 16 for r in recs)
    assert recs[0]["type"] == "1"
    out = io.StringIO()
    assert report.write_jsonl(recs, out) == 151
    assert [json.loads(line) for line in out.getvalue().splitlines()] == recs
    out = io.StringIO()
    assert report.write_csv(recs, out) == 151
    lines = out.getvalue().splitlines()
    assert lines[0] == "basis,order,invariants,type"
    assert len(lines) == 152


def test_record_type_only_for_prime_power_square():
    H = enumerate_maximal_isotropic(make_module((2, 4)))[0]
    assert report.subgroup_record(H)["type"] is None
    H = enumerate_maximal_isotropic(make_module((6, 6)))[0]
    assert report.subgroup_record(H)["type"] is None


def test_cache_round_trip(tmp_path):
    c = report.CountCache(tmp_path)
    c.put((2, 4), 39, cf.ENUMERATION)
    c.flush()
    again = report.CountCache(tmp_path)
    assert again.get((2, 4)).count == 39
    assert again.rejected == 0


def test_cache_rejects_corruption(tmp_path):
    c = report.CountCache(tmp_path)
    c.put((2, 4), 39, cf.ENUMERATION)
    c.put((6, 6), 600, cf.PRODUCT)
    c.flush()
    path = tmp_path / report.CountCache.FILENAME
    lines = path.read_text().splitlines()
    tampered = json.loads(lines[0])
    tampered["count"] = 51
    path.write_text(json.dumps(tampered) + "\n" + lines[1] + "\nnot json\n")
    again = report.CountCache(tmp_path)
    assert again.get((2, 4)) is None
    assert again.get((6, 6)).count == 600
    assert again.rejected == 2


def test_cache_ignores_other_versions(tmp_path):
    entry = report.CacheEntry((2, 2), 15, cf.CLOSED_FORM, version="0.0.0")
    (tmp_path / report.CountCache.FILENAME).write_text(entry.to_line())
    c = report.CountCache(tmp_path)
    assert c.get((2, 2)) is None and c.rejected == 0


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(report.CACHE_ENV, str(tmp_path))
    assert report.cache_dir() == tmp_path
    assert report.CountCache().path.parent == tmp_path
