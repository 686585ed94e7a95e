import json

import pytest
from jsonschema import Draft202012Validator

from hyperconv.cap import CapSpace, Completion
from hyperconv.conv import ConvSpace
from hyperconv.document import dump_space, family_labels, format_family, parse_hyper_filter, parse_set, parse_space
from hyperconv.errors import AxiomError, InputError, SizeLimitError
from hyperconv.filesystem import fixture_path, list_fixtures, read_fixture, resolve_space_source, schema_path
from hyperconv.setcalc import Carrier
from hyperconv.values import INF, ONE, ZERO

ABC = Carrier(("a", "b", "c"))


def _cap_doc(**overrides):
    doc = {
        "kind": "cap",
        "carrier": ["a", "b"],
        "completion": "explicit",
        "lambda": [
            {"kernel": ["a"], "values": {"a": "0", "b": "1"}},
            {"kernel": ["b"], "values": {"a": "1", "b": "0"}},
            {"kernel": ["a", "b"], "values": {"a": "1", "b": "1"}},
        ],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_fixtures_are_listed():
    assert list_fixtures() == ["P3", "Q2"]
    assert fixture_path("P3.json") == fixture_path("P3")


def test_fixture_names_are_validated():
    with pytest.raises(ValueError):
        fixture_path("../P3")
    with pytest.raises(ValueError):
        fixture_path("nope")


def test_resolve_space_source_falls_back_to_fixtures(tmp_path):
    doc = tmp_path / "space.json"
    doc.write_text(read_fixture("Q2"), encoding="utf-8")
    assert resolve_space_source(str(doc)) == doc
    assert resolve_space_source("Q2") == fixture_path("Q2")
    with pytest.raises(ValueError):
        resolve_space_source(str(tmp_path / "missing.json"))


def test_p3_round_trip(p3):
    assert isinstance(p3, ConvSpace)
    assert p3.name == "P3"
    assert parse_space(json.dumps(dump_space(p3))) == p3


def test_q2_round_trip(q2):
    assert isinstance(q2, CapSpace)
    assert q2.completion is Completion.PRAP
    again = parse_space(json.dumps(dump_space(q2)).encode("utf-8"))
    assert again.table == q2.table
    assert again.completion is Completion.PRAP


def test_explicit_cap_document():
    space = parse_space(_cap_doc())
    assert space.table[0b11] == (ONE, ONE)


def test_monotone_violation_is_rejected():
    doc = _cap_doc(**{"lambda": [
        {"kernel": ["a"], "values": {"a": "0", "b": "1"}},
        {"kernel": ["b"], "values": {"a": "1", "b": "0"}},
        {"kernel": ["a", "b"], "values": {"a": "0", "b": "0"}},
    ]})
    with pytest.raises(AxiomError) as exc:
        parse_space(doc)
    assert exc.value.axiom == "monotone"


def test_prap_accepts_only_singletons():
    with pytest.raises(InputError, match="unitários"):
        parse_space(_cap_doc(completion="prap"))


@pytest.mark.parametrize(
    "doc, message",
    [
        ("{not json", "linha 1"),
        (json.dumps([1, 2]), "objeto"),
        (json.dumps({"kind": "conv"}), "carrier"),
        (json.dumps({"kind": "weird", "carrier": ["a"]}), "kind"),
        (_cap_doc(completion="other"), "completion"),
        (_cap_doc(**{"lambda": [{"kernel": ["z"], "values": {}}]}), "lambda\\[0\\].kernel"),
        (_cap_doc(**{"lambda": [{"kernel": ["a"], "values": {"a": "x", "b": "0"}}]}), "lambda\\[0\\].values"),
        (_cap_doc(**{"lambda": [{"kernel": ["a"], "values": {"a": "0"}}]}), "faltam"),
        (_cap_doc(**{"lambda": [{"kernel": ["a"], "values": {"a": "0", "b": "1"}}]}), "ausente"),
    ],
)
def test_malformed_documents_cite_the_field(doc, message):
    with pytest.raises(InputError, match=message):
        parse_space(doc)


def test_carrier_size_limit(monkeypatch):
    monkeypatch.setenv("HYPERCONV_MAX_N", "2")
    with pytest.raises(SizeLimitError):
        parse_space(read_fixture("P3"))


def test_parse_set_forms():
    assert parse_set("{a,c}", ABC) == 0b101
    assert parse_set("a, b", ABC) == 0b011
    assert parse_set('["c"]', ABC) == 0b100
    assert parse_set("{}", ABC) == 0
    with pytest.raises(InputError):
        parse_set("{z}", ABC)


def test_parse_hyper_filter():
    assert parse_hyper_filter('{"kernel": [["a"], ["b", "c"]]}', ABC) == [0b001, 0b110]
    assert parse_hyper_filter('[["c"]]', ABC) == [0b100]
    with pytest.raises(InputError):
        parse_hyper_filter('{"kernel": []}', ABC)


def test_family_formatting():
    family = {0b110, 0, 0b100}
    assert format_family(ABC, family) == "{{}, {c}, {b,c}}"
    assert family_labels(ABC, family) == [[], ["c"], ["b", "c"]]


def test_infinite_values_are_written_as_inf(q2):
    doc = dump_space(q2)
    assert doc["lambda"][1]["values"] == {"0": "inf", "1": "0"}
    assert q2.distance(1, 0) is INF
    assert q2.distance(0, 0) == ZERO


@pytest.mark.parametrize("name", ["P3", "Q2"])
def test_documents_match_space_schema(name):
    validator = Draft202012Validator(json.loads(schema_path("space").read_text(encoding="utf-8")))
    raw = json.loads(read_fixture(name))
    validator.validate(raw)
    validator.validate(dump_space(parse_space(read_fixture(name))))
    validator.validate(json.loads(_cap_doc()))
    assert not validator.is_valid({"kind": "cap", "carrier": ["a"]})
    negative = {"kind": "cap", "carrier": ["a"], "lambda": [{"kernel": ["a"], "values": {"a": "-1"}}]}
    assert not validator.is_valid(negative)


def test_schema_path_rejects_unknown_schema():
    with pytest.raises(ValueError):
        schema_path("nope")
