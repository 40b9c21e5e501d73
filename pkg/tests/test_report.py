import json

import jsonschema

from kminkowski.report import REPORT_SCHEMA, Report


def make():
    rep = Report("demo", {"n": 2, "metric": "+-", "maxDegree": 3, "seed": 0})
    rep.add("b.second", True, "fine")
    rep.add("a.first", True)
    rep.note("c.note", "informational")
    rep.skip("d.skipped", "not applicable")
    return rep


def test_sorted_and_schema_valid():
    rep = make()
    doc = json.loads(rep.to_json())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert [c["name"] for c in doc["checks"]] == ["a.first", "b.second", "c.note", "d.skipped"]
    assert doc["checks"][2]["detail"] == "note: informational"


def test_exit_codes():
    rep = make()
    assert rep.ok and rep.exit_code() == 0
    rep.add("e.broken", False, "boom")
    assert rep.exit_code() == 1
    assert [c.name for c in rep.failures()] == ["e.broken"]
    assert rep.to_text().endswith("summary: 5 checks, 1 failed")


def test_extend_with_prefix():
    rep = Report("outer", {"n": 2, "metric": "+-", "maxDegree": 1, "seed": 0})
    rep.extend(make(), "inner.")
    assert rep.checks[0].name == "inner.b.second"


def test_schema_rejects_missing_params():
    bad = {"suite": "x", "params": {"n": 2}, "checks": []}
    try:
        jsonschema.validate(bad, REPORT_SCHEMA)
    except jsonschema.ValidationError:
        return
    raise AssertionError("schema accepted incomplete params")
