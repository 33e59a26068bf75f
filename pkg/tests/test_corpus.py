import random

import pytest
import yaml

from lnd_lab.corpus import corpus_files, load, parse_expect, run_corpus, run_document, validate
from lnd_lab.errors import SchemaError

DAN_DOC = {
    "name": "standard pair",
    "algebra": {"catalog": "danielewski(n=1,p=y^2+1)"},
    "checks": [
        {"op": "certify", "derivations": ["D1", "D2"], "expect": "certified"},
        {"op": "chain", "derivation": "D1", "var": "z", "expect": "equals:2*y, 2*x, 0"},
        {"op": "ml", "derivations": ["D1", "D2"], "N": 6, "expect": "basis:[1]"},
    ],
}

PRINTED_DOC = {
    "name": "printed table",
    "algebra": {"vars": ["x", "y", "z", "w"], "order": "lex", "relations": ["x*z - y*w - 1"]},
    "derivations": {"P1": {"x": "0", "y": "z", "z": "0", "w": "x"}},
    "checks": [
        {"op": "define", "derivation": "P1", "expect": "well-definedness-error"},
        {"op": "residue", "derivation": "P1", "expect": "equals:-x*y - z*w"},
    ],
}


def test_danielewski_document_passes():
    report = run_document(DAN_DOC)
    assert report.ok and report.counts() == {"pass": 3, "fail": 0, "error": 0}


def test_printed_table_document_passes():
    assert run_document(PRINTED_DOC).ok


def test_empty_check_list(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("name: nothing\nchecks: []\n")
    report = run_corpus(path)
    assert report.ok and report.results == []


def test_failure_is_reported_and_run_continues():
    doc = dict(DAN_DOC, checks=[
        {"op": "deg", "derivation": "D1", "elem": "z", "expect": "nat:3"},
        {"op": "deg", "derivation": "nope", "elem": "z", "expect": "nat:2"},
        {"op": "deg", "derivation": "D1", "elem": "z", "expect": 2},
    ])
    report = run_document(doc)
    assert [r.status for r in report.results] == ["fail", "error", "pass"]
    assert report.results[0].actual == "nat:2"
    assert not report.ok


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"checks": []}, "<document>"),
        ({"name": "x", "checks": [{"op": "gb"}]}, "checks/0"),
        ({"name": "x", "checks": [{"op": "frobnicate", "expect": True}]}, "checks/0/op"),
        ({"name": "x", "checks": [{"op": "gb", "expect": "maybe"}]}, "checks/0/expect"),
        ({"name": "x", "algebra": {"vars": "x"}, "checks": []}, "algebra"),
    ],
)
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as info:
        validate(doc, "mem.yaml")
    assert info.value.path == "mem.yaml"
    assert info.value.field.startswith(field)


def test_bad_yaml(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("name: [unclosed\n")
    with pytest.raises(SchemaError):
        load(path)


def test_expect_vocabulary():
    assert parse_expect("certified") == ("certified", None)
    assert parse_expect(True) == ("true", None)
    assert parse_expect(3) == ("nat", 3)
    assert parse_expect("nat:4") == ("nat", 4)
    assert parse_expect("equals:x + 1") == ("equals", "x + 1")
    assert parse_expect("basis:[1, x]") == ("basis", ["1", "x"])
    with pytest.raises(ValueError):
        parse_expect("nat:-1")


def test_bundled_corpus_is_complete():
    names = {p.stem for p in corpus_files()}
    assert {"danielewski", "sl2", "koras_russell", "finston_maubach", "rigid_circle", "rigid_cusp",
            "danielewski_counterexample", "affine", "empty"} <= names
    for p in corpus_files():
        validate(yaml.safe_load(p.read_text()), str(p))


@pytest.mark.parametrize("stem", ["danielewski", "sl2", "finston_maubach", "affine", "poly_core", "empty"])
def test_bundled_file_passes(stem):
    (path,) = [p for p in corpus_files() if p.stem == stem]
    report = run_corpus(path)
    assert report.ok, [r for r in report.results if r.status != "pass"]


def test_check_order_does_not_change_outcomes():
    (path,) = [p for p in corpus_files() if p.stem == "sl2"]
    doc = load(path)
    base = {(r.op, r.expected): r.status for r in run_document(doc).results}
    checks = list(doc["checks"])
    random.Random(7).shuffle(checks)
    shuffled = run_document(dict(doc, checks=checks))
    assert {(r.op, r.expected): r.status for r in shuffled.results} == base
