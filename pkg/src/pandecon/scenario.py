"""Scenario documents: strict JSON in, canonical JSON out.

A scenario bundles epidemic parameters, intervention effects, a phase schedule
(explicit boundaries or milestone thresholds), economic parameters, and
optional per-phase intensity pins. Parsing is strict: unknown fields are
rejected by name, defaults are applied and then echoed on serialization, and a
load/save round trip reproduces the scenario exactly. The canonical compact
serialization is hashed (sha256) so runs can be traced to their inputs.
"""

import functools
import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from .debt import LedgerConfig
from .epidemic import EpidemicParams, InterventionEffect, Milestones, PhaseSchedule, derive_schedule
from .errors import ScenarioError, ValidationError
from .losses import EconomicParams


@dataclass(frozen=True)
class Scenario:
    name: str
    version: str
    epidemic: EpidemicParams
    effects: InterventionEffect
    boundaries: tuple
    milestones: Milestones
    econ: EconomicParams
    pinned_intensities: tuple

    def validate(self):
        if not self.name:
            raise ValidationError("scenario name must be non-empty")
        self.epidemic.validate()
        self.effects.validate()
        if (self.boundaries is None) == (self.milestones is None):
            raise ValidationError(
                "schedule must carry exactly one of 'boundaries' or 'milestones'"
            )
        if self.boundaries is not None:
            PhaseSchedule(self.boundaries).validate(self.epidemic.horizon_days)
        else:
            self.milestones.validate()
        self.econ.validate()
        if self.effects.n_levels != 3:
            raise ValidationError(
                "economic loss accounting requires exactly 3 intervention levels "
                "(got %d)" % self.effects.n_levels
            )
        if self.pinned_intensities is not None:
            if len(self.pinned_intensities) != self.n_phases:
                raise ValidationError(
                    "pinned_intensities has %d entries, expected %d (one per phase)"
                    % (len(self.pinned_intensities), self.n_phases)
                )
            for p, pin in enumerate(self.pinned_intensities):
                if pin is not None and not 0 <= pin < self.effects.n_levels:
                    raise ValidationError(
                        "pinned_intensities[%d] = %r is outside the intensity alphabet"
                        % (p, pin)
                    )

    @property
    def n_phases(self):
        if self.boundaries is not None:
            return len(self.boundaries) + 1
        return 4

    def schedule(self):
        """Resolve to concrete boundaries (derives and caches for milestones)."""
        return _resolved_schedule(self)


@functools.lru_cache(maxsize=None)
def _resolved_schedule(scenario):
    if scenario.boundaries is not None:
        return PhaseSchedule(scenario.boundaries)
    return derive_schedule(scenario.epidemic, scenario.milestones)


def _as_object(value, where):
    if not isinstance(value, dict):
        raise ScenarioError("'%s' must be a JSON object" % where)
    return value


def _fields(data, where, schema):
    """Strict field extraction: unknown keys rejected, defaults applied."""
    _as_object(data, where)
    for key in sorted(data):
        if key not in schema:
            raise ScenarioError("unknown field '%s.%s'" % (where, key))
    out = {}
    for key, default in schema.items():
        if key in data:
            out[key] = data[key]
        elif default is _REQUIRED:
            raise ScenarioError("missing required field '%s.%s'" % (where, key))
        else:
            out[key] = default
    return out


_REQUIRED = object()


def _num(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError("'%s' must be a number (got %r)" % (where, value))
    return float(value)


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError("'%s' must be an integer (got %r)" % (where, value))
    return value


def _num_list(value, where):
    if not isinstance(value, list):
        raise ScenarioError("'%s' must be a list of numbers" % where)
    return tuple(_num(v, where) for v in value)


def parse_scenario(doc, origin="<scenario>"):
    """Build a validated Scenario from a decoded JSON document."""
    top = _fields(
        doc,
        origin,
        {
            "name": _REQUIRED,
            "version": "1",
            "epidemic": _REQUIRED,
            "effects": _REQUIRED,
            "schedule": _REQUIRED,
            "econ": _REQUIRED,
            "pinned_intensities": None,
        },
    )

    epi = _fields(
        top["epidemic"],
        "epidemic",
        {
            "population": _REQUIRED,
            "initial_infected": _REQUIRED,
            "beta0": _REQUIRED,
            "gamma": _REQUIRED,
            "ifr": _REQUIRED,
            "import_rate": _REQUIRED,
            "horizon_days": _REQUIRED,
            "step_days": 0.25,
        },
    )
    params = EpidemicParams(
        population=_num(epi["population"], "epidemic.population"),
        initial_infected=_num(epi["initial_infected"], "epidemic.initial_infected"),
        beta0=_num(epi["beta0"], "epidemic.beta0"),
        gamma=_num(epi["gamma"], "epidemic.gamma"),
        ifr=_num(epi["ifr"], "epidemic.ifr"),
        import_rate=_num(epi["import_rate"], "epidemic.import_rate"),
        horizon_days=_int(epi["horizon_days"], "epidemic.horizon_days"),
        step_days=_num(epi["step_days"], "epidemic.step_days"),
    )

    eff = _fields(
        top["effects"],
        "effects",
        {"contact_cut": _REQUIRED, "import_cut": _REQUIRED},
    )
    effects = InterventionEffect(
        contact_cut=_num_list(eff["contact_cut"], "effects.contact_cut"),
        import_cut=_num_list(eff["import_cut"], "effects.import_cut"),
    )

    sched = _as_object(top["schedule"], "schedule")
    if set(sched) == {"boundaries"}:
        boundaries = _num_list(sched["boundaries"], "schedule.boundaries")
        milestones = None
    elif set(sched) == {"milestones"}:
        ms = _fields(
            sched["milestones"],
            "schedule.milestones",
            {"spread_threshold": 1e-4, "tail_threshold": 0.1},
        )
        boundaries = None
        milestones = Milestones(
            spread_threshold=_num(ms["spread_threshold"], "schedule.milestones.spread_threshold"),
            tail_threshold=_num(ms["tail_threshold"], "schedule.milestones.tail_threshold"),
        )
    else:
        raise ScenarioError(
            "'schedule' must carry exactly one of 'boundaries' or 'milestones' (got %s)"
            % (sorted(sched) or "nothing")
        )

    eco = _fields(
        top["econ"],
        "econ",
        {
            "y_peace": _REQUIRED,
            "y_moral": _REQUIRED,
            "y_min": _REQUIRED,
            "lambda": _REQUIRED,
            "escalation_rate": 0.0,
        },
    )
    econ = EconomicParams(
        y_peace=_num(eco["y_peace"], "econ.y_peace"),
        y_moral=_num(eco["y_moral"], "econ.y_moral"),
        y_min=_num(eco["y_min"], "econ.y_min"),
        lambda_=_num(eco["lambda"], "econ.lambda"),
        escalation_rate=_num(eco["escalation_rate"], "econ.escalation_rate"),
    )

    pinned = top["pinned_intensities"]
    if pinned is not None:
        if not isinstance(pinned, list):
            raise ScenarioError("'pinned_intensities' must be a list of levels or nulls")
        pinned = tuple(
            None if v is None else _int(v, "pinned_intensities[%d]" % k)
            for k, v in enumerate(pinned)
        )

    if not isinstance(top["name"], str):
        raise ScenarioError("'name' must be a string")
    if not isinstance(top["version"], str):
        raise ScenarioError("'version' must be a string")

    scenario = Scenario(
        name=top["name"],
        version=top["version"],
        epidemic=params,
        effects=effects,
        boundaries=boundaries,
        milestones=milestones,
        econ=econ,
        pinned_intensities=pinned,
    )
    scenario.validate()
    return scenario


def load_scenario(path):
    """Read, parse and validate a scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            "invalid JSON in %s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from None
    return parse_scenario(doc, origin=str(path))


def scenario_to_dict(scenario):
    """Plain-dict form with every default filled in (echoed on save)."""
    if scenario.boundaries is not None:
        schedule = {"boundaries": list(scenario.boundaries)}
    else:
        schedule = {
            "milestones": {
                "spread_threshold": scenario.milestones.spread_threshold,
                "tail_threshold": scenario.milestones.tail_threshold,
            }
        }
    return {
        "name": scenario.name,
        "version": scenario.version,
        "epidemic": {
            "population": scenario.epidemic.population,
            "initial_infected": scenario.epidemic.initial_infected,
            "beta0": scenario.epidemic.beta0,
            "gamma": scenario.epidemic.gamma,
            "ifr": scenario.epidemic.ifr,
            "import_rate": scenario.epidemic.import_rate,
            "horizon_days": scenario.epidemic.horizon_days,
            "step_days": scenario.epidemic.step_days,
        },
        "effects": {
            "contact_cut": list(scenario.effects.contact_cut),
            "import_cut": list(scenario.effects.import_cut),
        },
        "schedule": schedule,
        "econ": {
            "y_peace": scenario.econ.y_peace,
            "y_moral": scenario.econ.y_moral,
            "y_min": scenario.econ.y_min,
            "lambda": scenario.econ.lambda_,
            "escalation_rate": scenario.econ.escalation_rate,
        },
        "pinned_intensities": (
            None if scenario.pinned_intensities is None else list(scenario.pinned_intensities)
        ),
    }


def save_scenario(scenario, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")


def document_hash(doc):
    """sha256 of the canonical compact JSON serialization."""
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def scenario_hash(scenario):
    return document_hash(scenario_to_dict(scenario))


def load_ledger_config(path):
    """Read and validate a debt-ledger configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            "invalid JSON in %s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from None
    fields = _fields(
        doc,
        str(path),
        {
            "periods": _REQUIRED,
            "cohort_income": _REQUIRED,
            "gov_spending": _REQUIRED,
            "financing": _REQUIRED,
            "interest_rate": 0.0,
            "crowding_out_share": 0.0,
            "marginal_product": 0.0,
            "ricardian": False,
            "bondholder_share": 0.5,
        },
    )
    if not isinstance(fields["financing"], str):
        raise ScenarioError("'financing' must be a string")
    if not isinstance(fields["ricardian"], bool):
        raise ScenarioError("'ricardian' must be a boolean")
    config = LedgerConfig(
        periods=_int(fields["periods"], "periods"),
        cohort_income=_num(fields["cohort_income"], "cohort_income"),
        gov_spending=_num(fields["gov_spending"], "gov_spending"),
        financing=fields["financing"],
        interest_rate=_num(fields["interest_rate"], "interest_rate"),
        crowding_out_share=_num(fields["crowding_out_share"], "crowding_out_share"),
        marginal_product=_num(fields["marginal_product"], "marginal_product"),
        ricardian=fields["ricardian"],
        bondholder_share=_num(fields["bondholder_share"], "bondholder_share"),
    )
    config.validate()
    return config


def ledger_config_to_dict(config):
    return {
        "periods": config.periods,
        "cohort_income": config.cohort_income,
        "gov_spending": config.gov_spending,
        "financing": config.financing,
        "interest_rate": config.interest_rate,
        "crowding_out_share": config.crowding_out_share,
        "marginal_product": config.marginal_product,
        "ricardian": config.ricardian,
        "bondholder_share": config.bondholder_share,
    }


def fixture_path(name):
    """Filesystem path of a packaged example scenario (without .json suffix)."""
    return resources.files("pandecon") / "fixtures" / (name + ".json")


def load_fixture(name):
    return load_scenario(fixture_path(name))


def list_fixtures():
    folder = resources.files("pandecon") / "fixtures"
    return sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json"))
