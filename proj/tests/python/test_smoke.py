import json
import math
import os
from pathlib import Path

import pytest

import itp

DATA_DIR = Path(os.environ["ITP_DATA_DIR"])


@pytest.fixture(scope="module")
def dataset():
    return itp.load_dataset(str(DATA_DIR / "case_study" / "dataset.json"))


@pytest.fixture(scope="module")
def rules_text():
    return (DATA_DIR / "case_study" / "rules.json").read_text()


@pytest.fixture(scope="module")
def plan_text():
    return (DATA_DIR / "case_study" / "plan_omit_reading_support.json").read_text()


def test_validate_fixture(dataset):
    result = itp.validate(dataset)
    assert result["valid"] is True
    assert result["violations"] == []


def test_dataset_roundtrip(dataset):
    text = itp.dataset_to_json(dataset)
    again = itp.parse_dataset(text)
    assert itp.dataset_to_json(again) == text


def test_profile_totals(dataset):
    doc = itp.profile(dataset)
    assert doc["total_reported"] == 236
    assert doc["total_accepted"] == 189
    assert doc["reading_rate_loc_per_hour"] == pytest.approx(620.69, abs=0.01)
    per_part = doc["per_part"]
    assert len(per_part) == 12
    assert sum(p["defect_content"] for p in per_part.values()) == 189
    assert per_part["I"]["defect_density"] == pytest.approx(4 / 444)


def test_monitor_clean(dataset, rules_text):
    report = itp.monitor(dataset, rules_text)
    assert report["has_warning"] is False
    names = {check["name"] for check in report["checks"]}
    assert "reading_rate" in names


def test_prioritize_plan(dataset, rules_text):
    doc = itp.prioritize(dataset, rules_text)
    plan = doc["plan"]
    assert plan["deprioritized"] == ["git.t1", "git.t2"]
    assert len(plan["prioritized"]) == 14
    assert plan["predicted_effort_saved_fraction"] == pytest.approx(16 / 206)
    assert plan["predicted_cases_omitted_fraction"] == pytest.approx(6 / 82)
    parts = doc["prioritization"]["part_provenance"]
    assert set(parts) == {
        "CL",
        "GC",
        "SGIT",
        "VID",
        "checklist_creation",
        "interaction",
        "report_generation",
    }


def test_evaluate_stored_plan(dataset, rules_text, plan_text):
    result = itp.evaluate(dataset, plan_text, rules_text)
    assert result["effort_saved_fraction"] == pytest.approx(47 / 206)
    assert result["cases_omitted_fraction"] == pytest.approx(20 / 82)
    assert result["test_defects_total"] == 13
    assert [m["defect_id"] for m in result["missed"]] == ["id10", "id8", "id9"]
    assert all(m["functional"] is False for m in result["missed"])
    verdicts = {v["assumption_id"]: v["verdict"] for v in result["verdicts"]}
    assert verdicts == {
        "equal-distribution": "supported",
        "pareto-types-top2": "supported",
    }


def test_evaluate_uses_plan_assumptions_without_rules(dataset, plan_text):
    result = itp.evaluate(dataset, plan_text)
    assert len(result["verdicts"]) == 2
    assert result["effort_saved_fraction"] == pytest.approx(47 / 206)


def test_generate_dataset_deterministic():
    scenario = (DATA_DIR / "scenarios" / "pareto.json").read_text()
    first = itp.generate_dataset(scenario, 41)
    second = itp.generate_dataset(scenario, 41)
    other = itp.generate_dataset(scenario, 42)
    assert itp.dataset_to_json(first) == itp.dataset_to_json(second)
    assert itp.dataset_to_json(first) != itp.dataset_to_json(other)
    assert itp.validate(first)["valid"] is True


def test_simulate_ranks_informed_strategy_first():
    scenario = (DATA_DIR / "scenarios" / "pareto.json").read_text()
    strategies = (DATA_DIR / "scenarios" / "strategies.json").read_text()
    result = itp.simulate(scenario, strategies, runs=50, seed=7)
    assert result["runs"] == 50
    by_id = result["strategies"]
    assert by_id["pareto-top20"]["mean_recall"] > by_id["random-20"]["mean_recall"]
    wins = result["pairwise_wins"]["pareto-top20"]["random-20"]
    assert wins > 25
    repeat = itp.simulate(scenario, strategies, runs=50, seed=7)
    assert repeat == result


def test_input_error_on_malformed_payloads(dataset):
    with pytest.raises(itp.InputError):
        itp.parse_dataset("{not json")
    with pytest.raises(itp.InputError):
        itp.load_dataset(str(DATA_DIR / "does_not_exist.json"))
    with pytest.raises(itp.InputError):
        itp.prioritize(dataset, json.dumps({"format_version": 1, "strategies": []}))


def test_pipeline_error_surfaces(dataset):
    plan = json.dumps(
        {
            "format_version": 1,
            "plan": {"prioritized": ["ghost.case"], "deprioritized": []},
        }
    )
    with pytest.raises(itp.InputError):
        itp.evaluate(dataset, plan)


def test_math_sanity(dataset, rules_text, plan_text):
    derived = itp.prioritize(dataset, rules_text)["plan"]
    stored = itp.evaluate(dataset, plan_text)
    assert derived["predicted_effort_saved_fraction"] < stored["effort_saved_fraction"]
    assert math.isclose(
        stored["effort_saved_fraction"] * 206, 47, rel_tol=0, abs_tol=1e-9
    )
