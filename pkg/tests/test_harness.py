import json

import pytest
from jsonschema import Draft202012Validator

from hyperconv.checkstatus import CheckStatus
from hyperconv.document import dump_space
from hyperconv.errors import InputError, SizeLimitError
from hyperconv.filesystem import schema_path
from hyperconv.harness import (
    InstanceSpec,
    SearchTarget,
    all_checks,
    emit_report,
    fixture_instances,
    generate,
    run_scenario,
    run_suite,
    save_result,
    search_counterexample,
    select_checks,
    suite_report,
)
from hyperconv.harness.generators import SMALL_GRID, canonical_form
from hyperconv.harness.mutants import broken_trunc_sub, disabled_monotone_validator
from hyperconv.harness.scenarios import cap_random_specs, scenario_instances


def _count(spec):
    return sum(1 for _ in generate(spec))


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 9)])
def test_exhaustive_conv_counts(n, expected):
    assert _count(InstanceSpec("conv", n, mode="exhaustive")) == expected


@pytest.mark.slow
def test_exhaustive_conv_count_n3():
    assert _count(InstanceSpec("conv", 3, mode="exhaustive")) == 2744


def test_exhaustive_cap_counts():
    assert _count(InstanceSpec("cap", 2, SMALL_GRID, "exhaustive", shape="table")) == 36
    assert _count(InstanceSpec("cap", 2, SMALL_GRID, "exhaustive", shape="prap")) == 9


def test_exhaustive_bounds():
    with pytest.raises(SizeLimitError):
        list(generate(InstanceSpec("conv", 4, mode="exhaustive")))
    with pytest.raises(InputError):
        list(generate(InstanceSpec("cap", 2, shape="round")))


def test_random_stream_is_deterministic():
    spec = InstanceSpec("cap", 3, mode="random", seed=7, count=5, shape="prap")
    first = [dump_space(i.space) for i in generate(spec)]
    second = [dump_space(i.space) for i in generate(spec)]
    assert first == second
    assert len(first) == 5


def test_start_offsets_indices():
    spec = InstanceSpec("conv", 2, mode="exhaustive")
    assert [i.index for i in generate(spec, start=10)] == list(range(10, 19))


def test_dedup_keeps_one_per_isomorphism_class():
    spec = InstanceSpec("conv", 2, mode="exhaustive", dedup=True)
    kept = list(generate(spec))
    assert len(kept) < 9
    assert len({canonical_form(i.space) for i in kept}) == len(kept)


def test_cap_random_preset_split():
    specs = cap_random_specs(3, seed=0, count=1000)
    assert [s.shape for s in specs] == ["table", "prap", "quasimetric", "table"]
    assert sum(s.count for s in specs[:3]) == 1000
    assert specs[3].count == 100
    assert len({s.seed for s in specs}) == 4


def test_registry_selection():
    ids = [c.id for c in all_checks()]
    assert len(ids) == len(set(ids))
    assert "cap.tower-round-trip" in ids
    chosen = [c.id for c in select_checks(["values.*"])]
    assert chosen == ["values.trunc-sub-laws", "values.oslash-laws"]
    with pytest.raises(InputError):
        select_checks(["no.such-check"])
    with pytest.raises(InputError):
        select_checks(["nothing.*"])


def test_global_checks_pass():
    result = run_suite([], checks=["values.*", "setcalc.*", "oracle.lambda-V", "fixtures.*", "validators.*"])
    assert result.status is CheckStatus.PASS


def test_fixture_checks_pass():
    checks = ["conv.closed-open-duality", "conv.reflectors", "cap.tower-round-trip", "cap.embedding-round-trip"]
    result = run_suite(fixture_instances(), checks=checks)
    assert result.instances == 2
    assert result.status is CheckStatus.PASS
    # embedding só se aplica ao P3
    assert result.check("cap.embedding-round-trip").passed == 1


def test_broken_trunc_sub_is_caught():
    with broken_trunc_sub():
        result = run_suite([], checks=["values.trunc-sub-laws"])
    report = result.check("values.trunc-sub-laws")
    assert report.status is CheckStatus.FAIL
    assert report.witnesses
    assert run_suite([], checks=["values.trunc-sub-laws"]).status is CheckStatus.PASS


def test_disabled_monotone_validator_is_caught():
    with disabled_monotone_validator():
        result = run_suite([], checks=["validators.monotone"])
    assert result.status is CheckStatus.FAIL
    assert run_suite([], checks=["validators.monotone"]).status is CheckStatus.PASS


def test_small_random_scenario():
    result = run_scenario("cap-random", seed=1, count=9, checks=["cap.tower-round-trip", "cap.classify-characterizations"])
    assert result.instances == 9
    assert result.status is CheckStatus.PASS


def test_reports_are_byte_stable(tmp_path):
    runs = [run_scenario("fixtures", seed=42, checks=["cap.*", "fixtures.*"]) for _ in range(2)]
    first, second = (emit_report(suite_report(r)) for r in runs)
    assert first == second

    out = tmp_path / "results" / "report.json"
    save_result(runs[0], out)
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["schema_version"] == 1
    assert data["command"] == "verify"
    assert data["seed"] == 42
    assert len(data["spec_hash"]) == 64
    assert all("seconds" not in c for c in data["checks"])


def test_reports_match_report_schema():
    validator = Draft202012Validator(json.loads(schema_path("report").read_text(encoding="utf-8")))
    result = run_scenario("fixtures", seed=42, checks=["cap.*", "fixtures.*"])
    validator.validate(json.loads(emit_report(suite_report(result))))
    validator.validate(json.loads(emit_report(suite_report(result, timing=True))))
    search = search_counterexample("lK-vs-lV", max_n=3)
    validator.validate(json.loads(emit_report(search.to_report())))
    assert not validator.is_valid({**suite_report(result), "status": "OK"})


def test_unknown_scenario():
    with pytest.raises(InputError):
        scenario_instances("nope")


def test_search_finds_lower_kuratowski_witness():
    result = search_counterexample("lK-vs-lV", max_n=3)
    assert result.found
    assert result.target is SearchTarget.LK_VS_LV
    assert result.witness["carrier_mode"] == "all"
    assert result.to_report()["summary"]["found"] is True


def test_search_terminates_with_report():
    result = search_counterexample("strict-remark-inclusion", max_n=2, count=0)
    assert result.found or result.exhausted
    with pytest.raises(InputError):
        search_counterexample("nope")
    with pytest.raises(InputError):
        search_counterexample("lK-vs-lV", max_n=0)


@pytest.mark.slow
def test_fixtures_suite_passes():
    assert run_scenario("fixtures", seed=42).status is CheckStatus.PASS


@pytest.mark.slow
def test_exhaustive_conv_suite_passes():
    assert run_scenario("conv-exhaustive", seed=42, max_n=3).status is CheckStatus.PASS


@pytest.mark.slow
def test_random_cap_suite_passes():
    assert run_scenario("cap-random", seed=42, max_n=3).status is CheckStatus.PASS
