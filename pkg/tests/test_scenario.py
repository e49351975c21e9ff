"""Scenario documents: strict parsing, defaults, round trips, hashing."""

import json

import pytest

from pandecon.epidemic import PhaseSchedule
from pandecon.errors import ScenarioError, ValidationError
from pandecon.scenario import (
    document_hash,
    fixture_path,
    list_fixtures,
    load_fixture,
    load_ledger_config,
    load_scenario,
    parse_scenario,
    save_scenario,
    scenario_hash,
    scenario_to_dict,
)

SCENARIO_FIXTURES = (
    "default",
    "early_seeding",
    "early_containment",
    "late_response",
    "premature_relaxation",
    "docs_two_percent",
)


def _minimal_doc():
    return {
        "name": "unit",
        "epidemic": {
            "population": 1e6,
            "initial_infected": 10,
            "beta0": 0.25,
            "gamma": 0.1,
            "ifr": 0.01,
            "import_rate": 2.0,
            "horizon_days": 60,
        },
        "effects": {
            "contact_cut": [0.0, 0.4, 0.8],
            "import_cut": [0.0, 0.6, 0.95],
        },
        "schedule": {"boundaries": [15.0, 30.0, 45.0]},
        "econ": {
            "y_peace": 100.0,
            "y_moral": 95.0,
            "y_min": 70.0,
            "lambda": 0.5,
        },
    }


def test_packaged_fixtures_load_and_validate():
    names = list_fixtures()
    for name in SCENARIO_FIXTURES:
        assert name in names
        scn = load_fixture(name)
        scn.validate()
    assert "debt_demo" in names
    config = load_ledger_config(fixture_path("debt_demo"))
    assert config.periods == 3
    assert config.financing == "internal_debt"


def test_unknown_fields_rejected_by_dotted_name():
    doc = _minimal_doc()
    doc["surprise"] = 1
    with pytest.raises(ScenarioError, match="unknown field '<scenario>.surprise'"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["epidemic"]["r0"] = 2.5
    with pytest.raises(ScenarioError, match="unknown field 'epidemic.r0'"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["econ"]["y_war"] = 1.0
    with pytest.raises(ScenarioError, match="unknown field 'econ.y_war'"):
        parse_scenario(doc)


def test_missing_required_field_named():
    doc = _minimal_doc()
    del doc["econ"]["lambda"]
    with pytest.raises(ScenarioError, match="missing required field 'econ.lambda'"):
        parse_scenario(doc)

    doc = _minimal_doc()
    del doc["epidemic"]["gamma"]
    with pytest.raises(ScenarioError, match="'epidemic.gamma'"):
        parse_scenario(doc)


def test_type_errors_name_the_field():
    doc = _minimal_doc()
    doc["epidemic"]["beta0"] = "fast"
    with pytest.raises(ScenarioError, match="'epidemic.beta0' must be a number"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["epidemic"]["ifr"] = True
    with pytest.raises(ScenarioError, match="'epidemic.ifr' must be a number"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["epidemic"]["horizon_days"] = 60.5
    with pytest.raises(ScenarioError, match="'epidemic.horizon_days' must be an integer"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["name"] = 7
    with pytest.raises(ScenarioError, match="'name' must be a string"):
        parse_scenario(doc)


def test_defaults_applied_and_echoed():
    scn = parse_scenario(_minimal_doc())
    assert scn.version == "1"
    assert scn.epidemic.step_days == 0.25
    assert scn.econ.escalation_rate == 0.0
    assert scn.pinned_intensities is None

    echoed = scenario_to_dict(scn)
    assert echoed["version"] == "1"
    assert echoed["epidemic"]["step_days"] == 0.25
    assert echoed["econ"]["escalation_rate"] == 0.0
    assert echoed["pinned_intensities"] is None


def test_milestone_defaults():
    doc = _minimal_doc()
    doc["schedule"] = {"milestones": {}}
    doc["epidemic"]["horizon_days"] = 240
    scn = parse_scenario(doc)
    assert scn.milestones.spread_threshold == 1e-4
    assert scn.milestones.tail_threshold == 0.1
    assert scn.boundaries is None


def test_schedule_must_carry_exactly_one_form():
    doc = _minimal_doc()
    doc["schedule"] = {"boundaries": [15.0], "milestones": {}}
    with pytest.raises(ScenarioError, match="exactly one"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["schedule"] = {}
    with pytest.raises(ScenarioError, match="exactly one"):
        parse_scenario(doc)


def test_pinned_intensity_validation():
    doc = _minimal_doc()
    doc["pinned_intensities"] = [0, None]
    with pytest.raises(ValidationError, match="expected 4"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["pinned_intensities"] = [5, None, None, None]
    with pytest.raises(ValidationError, match="intensity alphabet"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["pinned_intensities"] = ["low", None, None, None]
    with pytest.raises(ScenarioError, match=r"pinned_intensities\[0\]"):
        parse_scenario(doc)

    doc = _minimal_doc()
    doc["pinned_intensities"] = [0, None, None, 2]
    scn = parse_scenario(doc)
    assert scn.pinned_intensities == (0, None, None, 2)


def test_save_load_round_trip(tmp_path):
    for name in SCENARIO_FIXTURES:
        original = load_fixture(name)
        target = tmp_path / (name + ".json")
        save_scenario(original, target)
        reloaded = load_scenario(target)
        assert reloaded == original
        assert scenario_hash(reloaded) == scenario_hash(original)


def test_json_error_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x",,}\n')
    with pytest.raises(ScenarioError, match="line 1 column 14"):
        load_scenario(bad)


def test_document_hash_is_order_independent_and_sensitive():
    a = {"x": 1, "y": [1, 2]}
    b = {"y": [1, 2], "x": 1}
    assert document_hash(a) == document_hash(b)
    assert document_hash({"x": 1, "y": [1, 2, 3]}) != document_hash(a)


def test_scenario_hash_tracks_content():
    doc = _minimal_doc()
    h1 = scenario_hash(parse_scenario(doc))
    doc["epidemic"]["beta0"] = 0.26
    h2 = scenario_hash(parse_scenario(doc))
    assert h1 != h2
    assert len(h1) == 64


def test_milestone_schedule_resolution_is_cached_and_consistent():
    scn = load_fixture("default")
    first = scn.schedule()
    second = scn.schedule()
    assert first is second
    assert isinstance(first, PhaseSchedule)
    assert len(first.boundaries) == 3
    assert scn.n_phases == 4


def test_ledger_config_strictness(tmp_path):
    doc = {
        "periods": 3,
        "cohort_income": 100.0,
        "gov_spending": 30.0,
        "financing": "tax",
    }
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps(doc))
    config = load_ledger_config(path)
    assert config.interest_rate == 0.0
    assert config.ricardian is False
    assert config.bondholder_share == 0.5

    doc["typo"] = 1
    path.write_text(json.dumps(doc))
    with pytest.raises(ScenarioError, match="typo"):
        load_ledger_config(path)

    del doc["typo"]
    doc["ricardian"] = "yes"
    path.write_text(json.dumps(doc))
    with pytest.raises(ScenarioError, match="ricardian"):
        load_ledger_config(path)


def test_fixture_hashes_are_stable_across_loads():
    for name in SCENARIO_FIXTURES:
        assert scenario_hash(load_fixture(name)) == scenario_hash(load_fixture(name))
