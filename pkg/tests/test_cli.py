import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import assume, given

from kminkowski.calculus import build_calculus, wedge
from kminkowski.cli import ParseError, main, parse_expression, poincare_degree
from kminkowski.coaction import build_context
from kminkowski.minkowski import Metric
from kminkowski.report import REPORT_SCHEMA

from conftest import elements, one_forms

CTX2 = build_context(Metric.minkowski(2))
CTX3 = build_context(Metric.minkowski(3))
CAL2 = build_calculus(CTX2.metric)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---- parser ---------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("x1*x0", "x0*x1 - i*k^-1*x1"),
    ("phi", "x0^2 - x1^2 + i*k^-1*x0"),
    ("L[0,1]*a[0]", "a[0]*L[0,1] - i*k^-1*L[0,0]*L[0,1]"),
    (" x1 * x0 - x0*x1 ", "-i*k^-1*x1"),
    ("(x0 + x1)^2", "x0^2 + 2*x0*x1 + x1^2 - i*k^-1*x1"),
    ("k^-2*x0 + k*x1", "k^-2*x0 + k*x1"),
    ("1/2*i*k^-1", "1/2*i*k^-1"),
    ("3 - 3", "0"),
    ("t0*x0", "x0*t0 + 1/2*tau"),
    ("t1^t0", "-t0^t1"),
    ("x1*tau^t1", "x1*tau^t1"),
])
def test_parse_examples(text, expected):
    assert str(parse_expression(text, CTX2)) == expected


@pytest.mark.parametrize("text, pos", [
    ("x2", 0),
    ("x0 +", 4),
    ("3*(x0", 5),
    ("x0 $ x1", 3),
    ("a[5]", 2),
    ("x0 + t0", 3),
    ("x0*a[0]", 2),
    ("t0*t1", 2),
    ("x0^t1", 2),
    ("", 0),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_expression(text, CTX2)
    assert e.value.pos == pos
    assert str(e.value).startswith(f"position {pos}:")


@given(elements(CTX2.M.presentation, 4, 4))
def test_roundtrip_minkowski(e):
    assert parse_expression(str(e), CTX2) == e


@given(elements(CTX3.M.presentation, 3, 4))
def test_roundtrip_minkowski_n3(e):
    assert parse_expression(str(e), CTX3) == e


@given(elements(CTX2.P.presentation, 2, 3))
def test_roundtrip_poincare(e):
    # constants carry no generator, so they always parse into M
    assume(e.degree() > 0)
    assert parse_expression(str(e), CTX2) == e


@given(one_forms(CAL2))
def test_roundtrip_one_forms(f):
    assume(f)
    assert parse_expression(str(f), CTX2) == f


@given(one_forms(CAL2, 1), one_forms(CAL2, 1))
def test_roundtrip_two_forms(f, g):
    w = wedge(f, g)
    assume(w)
    assert parse_expression(str(w), CTX2) == w


# ---- commands -------------------------------------------------------------

def test_d_example(capsys):
    code, out, _ = run(capsys, "d", "--n", "2", "x0*x1")
    assert code == 0
    assert out.strip() == "x1*t0 + (x0 + i*k^-1)*t1"


@pytest.mark.parametrize("argv, expected", [
    (["normalize", "--n", "2", "x1*x0"], "x0*x1 - i*k^-1*x1"),
    (["comm", "--n", "2", "x0", "x1"], "i*k^-1*x1"),
    (["comm", "--n", "2", "t0", "x0"], "1/2*tau"),
    (["wedge", "--n", "2", "t1", "t0"], "-t0^t1"),
    (["d", "--n", "2", "x0*t1"], "t0^t1"),
    (["coact", "--n", "2", "tau"], "(1 (x) 1)*tau"),
    (["coact", "--n", "2", "x1"], "a[1] (x) 1 + L[1,0] (x) x0 + L[1,1] (x) x1"),
])
def test_expression_verbs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert (code, out.strip()) == (0, expected)


@pytest.mark.parametrize("argv", [
    ["normalize", "--n", "2", "x5"],
    ["normalize", "--n", "1", "x0"],
    ["classify", "--max-degree", "0"],
    ["classify", "--n", "3", "--metric", "+-+-"],
    ["wedge", "--n", "2", "t0"],
    ["d", "--n", "2", "a[0]"],
    ["classify", "--n", "2", "x0"],
    ["bogus"],
    ["classify", "--format", "xml"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as e:
        code = main(argv)
        raise SystemExit(code)
    assert e.value.code == 2
    assert "error" in capsys.readouterr().err


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "--n", "2", "--max-degree", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    dims = {c["name"]: c["detail"] for c in doc["checks"]}
    assert dims["classify.seed[x0].quotient-dim"] == "quotient = 0"
    assert dims["classify.full-tensor.quotient-dim"] == "quotient = 0"
    assert dims["classify.traceless.quotient-dim"].endswith("quotient = 3")
    assert doc["params"] == {"n": 2, "metric": "+-", "maxDegree": 4, "seed": 0}


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "calculus-check", "--n", "2", "--seed", "5")
    _, js, _ = run(capsys, "calculus-check", "--n", "2", "--seed", "5", "--format", "json")
    doc = json.loads(js)
    jsonschema.validate(doc, REPORT_SCHEMA)
    from_json = {(c["name"], c["status"]) for c in doc["checks"]}
    from_text = set()
    for line in text.splitlines():
        if line.startswith("["):
            status, rest = line[1:].split("]", 1)
            from_text.add((rest.split("  -- ")[0].strip(), status.strip().lower()))
    assert from_text == from_json
    assert "params: n=2, metric=+-, maxDegree=4, seed=5" in text


def test_expression_json_validates(capsys):
    _, js, _ = run(capsys, "d", "--n", "3", "--format", "json", "phi")
    doc = json.loads(js)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["checks"][0]["status"] == "pass"


def test_same_seed_same_bytes(capsys):
    _, a, _ = run(capsys, "calculus-check", "--n", "3", "--seed", "11", "--format", "json")
    _, b, _ = run(capsys, "calculus-check", "--n", "3", "--seed", "11", "--format", "json")
    assert a == b


def test_hopf_check_n2(capsys):
    code, out, _ = run(capsys, "hopf-check", "--n", "2")
    assert code == 0
    assert "minkowski.coassociativity" in out and "poincare.antipode-left-mod-ortho" in out


def test_poincare_degree_cap():
    assert poincare_degree(2, 4) == 2
    assert poincare_degree(3, 1) == 1
    assert poincare_degree(4, 4) == 1


def test_console_module_entry():
    r = subprocess.run([sys.executable, "-m", "kminkowski", "normalize", "--n", "2", "phi"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.strip() == "x0^2 - x1^2 + i*k^-1*x0"
