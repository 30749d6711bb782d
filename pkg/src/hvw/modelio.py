"""Reading and writing model files.

A model file is UTF-8 JSON with three blocks:

    {
      "sites": [{"name": ..., "measurements": [...], "outcomes": [...]}, ...],
      "lambda": [...],            <- present exactly for hidden-variable models
      "weights": [
        {"outcome": [...], "measurement": [...], "lambda": ..., "p": "3/8"},
        ...
      ]
    }

Each weight row assigns an exact rational to one (outcome tuple, context[,
hidden state]) cell; omitted cells have weight 0. Probabilities are strings
like "3/8" (integers are also accepted); floats are rejected. Serialization is
canonical: rows sorted by context, then outcome, then hidden state, fractions
in lowest terms, so equal models serialize byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .errors import InputError, ModelFormatError
from .models import EmpiricalModel, HiddenVariableModel, Site

Model = EmpiricalModel | HiddenVariableModel

_TOP_KEYS = {"sites", "lambda", "weights"}
_SITE_KEYS = {"name", "measurements", "outcomes"}
_ROW_KEYS = {"outcome", "measurement", "lambda", "p"}


def parse_fraction(value: object, where: str) -> Fraction:
    """Exact rational from a JSON value; floats are refused outright."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ModelFormatError(f"{where}: probability must be an exact rational string, got {value!r}")
    if not isinstance(value, (str, int)):
        raise ModelFormatError(f"{where}: probability must be a string like \"3/8\", got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"{where}: not a valid rational: {value!r}") from exc


def _string_list(value: object, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise ModelFormatError(f"{where}: expected a list of strings, got {value!r}")
    return value


def _parse_site(entry: object, index: int) -> Site:
    where = f"sites[{index}]"
    if not isinstance(entry, dict):
        raise ModelFormatError(f"{where}: expected an object, got {entry!r}")
    extra = set(entry) - _SITE_KEYS
    if extra:
        raise ModelFormatError(f"{where}: unknown keys {sorted(extra)}")
    missing = _SITE_KEYS - set(entry)
    if missing:
        raise ModelFormatError(f"{where}: missing keys {sorted(missing)}")
    name = entry["name"]
    if not isinstance(name, str):
        raise ModelFormatError(f"{where}: site name must be a string, got {name!r}")
    return Site(
        name=name,
        measurements=tuple(_string_list(entry["measurements"], f"{where}.measurements")),
        outcomes=tuple(_string_list(entry["outcomes"], f"{where}.outcomes")),
    )


def model_from_dict(data: object) -> Model:
    """Build a model from parsed JSON data, with pointed diagnostics."""
    if not isinstance(data, dict):
        raise ModelFormatError(f"model must be a JSON object, got {type(data).__name__}")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise ModelFormatError(f"unknown top-level keys {sorted(extra)}")
    for required in ("sites", "weights"):
        if required not in data:
            raise ModelFormatError(f"missing top-level key {required!r}")
    if not isinstance(data["sites"], list):
        raise ModelFormatError("\"sites\" must be a list")
    sites = [_parse_site(entry, i) for i, entry in enumerate(data["sites"])]

    hidden_states: list[str] | None = None
    if "lambda" in data:
        hidden_states = _string_list(data["lambda"], "lambda")

    rows = data["weights"]
    if not isinstance(rows, list):
        raise ModelFormatError("\"weights\" must be a list")
    weights: dict = {}
    for i, row in enumerate(rows):
        where = f"weights[{i}]"
        if not isinstance(row, dict):
            raise ModelFormatError(f"{where}: expected an object, got {row!r}")
        extra = set(row) - _ROW_KEYS
        if extra:
            raise ModelFormatError(f"{where}: unknown keys {sorted(extra)}")
        for required in ("outcome", "measurement", "p"):
            if required not in row:
                raise ModelFormatError(f"{where}: missing key {required!r}")
        outcome = tuple(_string_list(row["outcome"], f"{where}.outcome"))
        measurement = tuple(_string_list(row["measurement"], f"{where}.measurement"))
        value = parse_fraction(row["p"], where)
        if hidden_states is None:
            if "lambda" in row:
                raise ModelFormatError(f"{where}: row names a hidden state but the model declares no \"lambda\" block")
            key = (outcome, measurement)
        else:
            if "lambda" not in row:
                raise ModelFormatError(f"{where}: model declares hidden states, row is missing \"lambda\"")
            lam = row["lambda"]
            if not isinstance(lam, str):
                raise ModelFormatError(f"{where}.lambda: expected a string, got {lam!r}")
            key = (outcome, measurement, lam)
        if key in weights:
            raise ModelFormatError(f"{where}: duplicate weight row for {key}")
        weights[key] = value

    if hidden_states is None:
        return EmpiricalModel(sites, weights)
    return HiddenVariableModel(sites, hidden_states, weights)


def parse_model(text: str) -> Model:
    """Parse a model file's content."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    return model_from_dict(data)


def model_to_dict(model: Model) -> dict:
    """Canonical JSON-ready form of a model (deterministic row order)."""
    if not isinstance(model, (EmpiricalModel, HiddenVariableModel)):
        raise InputError(f"not a model: {model!r}")
    data: dict = {
        "sites": [
            {"name": site.name, "measurements": list(site.measurements), "outcomes": list(site.outcomes)}
            for site in model.sites
        ]
    }
    rows = []
    if isinstance(model, HiddenVariableModel):
        data["lambda"] = list(model.lambda_set)
        lambda_rank = {lam: i for i, lam in enumerate(model.lambda_set)}
        for (outcome, context, lam), value in sorted(
            model.weights.items(),
            key=lambda item: (
                model.context_sort_key(item[0][1]),
                model.outcome_sort_key(item[0][0]),
                lambda_rank[item[0][2]],
            ),
        ):
            rows.append(
                {"outcome": list(outcome), "measurement": list(context), "lambda": lam, "p": str(value)}
            )
    else:
        for (outcome, context), value in sorted(
            model.weights.items(),
            key=lambda item: (model.context_sort_key(item[0][1]), model.outcome_sort_key(item[0][0])),
        ):
            rows.append({"outcome": list(outcome), "measurement": list(context), "p": str(value)})
    data["weights"] = rows
    return data


def serialize_model(model: Model) -> str:
    """Canonical text form; equal models produce byte-identical output."""
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n"


def load_model(path: str) -> Model:
    """Read and parse a model file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_model(text)


def save_model(model: Model, path: str) -> None:
    """Write a model file in canonical form."""
    text = serialize_model(model)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc
