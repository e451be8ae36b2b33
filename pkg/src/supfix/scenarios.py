"""Scenario file format: JSON descriptions of runnable problem instances.

Each scenario is one JSON object with a "kind" field choosing the solver
path and a "seed" pinning the random instance.  Structural validation is
jsonschema; the handful of semantic rules a schema cannot express (bound
ordering, length agreement) are checked here as well.  All violations
raise ScenarioFormatError, which the runner maps to exit code 4.
"""

from __future__ import annotations

import jsonschema

from .errors import ScenarioFormatError

_SEED = {"type": "integer", "minimum": 0, "maximum": 2**32 - 1}

SCENARIO_SCHEMAS: dict[str, dict] = {
    "box_fixed_point": {
        "type": "object",
        "additionalProperties": False,
        "required": ["kind", "seed"],
        "properties": {
            "kind": {"const": "box_fixed_point"},
            "seed": _SEED,
            "dim": {"type": "integer", "minimum": 1, "maximum": 64},
            "max_order": {"type": "integer", "minimum": 1, "maximum": 512},
            "tol": {"type": "number", "exclusiveMinimum": 0.0},
            "sample_box": {
                "type": "object",
                "additionalProperties": False,
                "required": ["lo", "hi"],
                "properties": {
                    "lo": {"type": "array", "items": {"type": "number", "minimum": -2.0, "maximum": 2.0}},
                    "hi": {"type": "array", "items": {"type": "number", "minimum": -2.0, "maximum": 2.0}},
                },
            },
        },
    },
    "fiber_fixed_point": {
        "type": "object",
        "additionalProperties": False,
        "required": ["kind", "seed"],
        "properties": {
            "kind": {"const": "fiber_fixed_point"},
            "seed": _SEED,
            "fibers": {"type": "integer", "minimum": 1, "maximum": 16},
            "fiber_dim": {"type": "integer", "minimum": 1, "maximum": 8},
            "max_order": {"type": "integer", "minimum": 1, "maximum": 512},
            "tol": {"type": "number", "exclusiveMinimum": 0.0},
        },
    },
    "matrix_derivation": {
        "type": "object",
        "additionalProperties": False,
        "required": ["kind", "seed", "group"],
        "properties": {
            "kind": {"const": "matrix_derivation"},
            "seed": _SEED,
            "group": {"enum": ["q8", "s3", "c12"]},
            "method": {"enum": ["orbit_center", "averaging", "least_squares"]},
            "corrupt": {"type": "boolean"},
            "check_cocycle": {"type": "boolean"},
            "similarity": {"type": "boolean"},
        },
    },
    "group_algebra_derivation": {
        "type": "object",
        "additionalProperties": False,
        "required": ["kind", "seed", "group"],
        "properties": {
            "kind": {"const": "group_algebra_derivation"},
            "seed": _SEED,
            "group": {"type": "string", "pattern": "^(cyclic|symmetric):[0-9]+$"},
            "corrupt": {"type": "boolean"},
            "check_cocycle": {"type": "boolean"},
        },
    },
    "urns_certificate": {
        "type": "object",
        "additionalProperties": False,
        "required": ["kind", "seed"],
        "properties": {
            "kind": {"const": "urns_certificate"},
            "seed": _SEED,
            "fibers": {"type": "integer", "minimum": 1, "maximum": 16},
            "fiber_dim": {"type": "integer", "minimum": 1, "maximum": 8},
            "points": {"type": "integer", "minimum": 2, "maximum": 200},
            "samples": {"type": "integer", "minimum": 0, "maximum": 1000},
            "constant": {"type": "number", "exclusiveMinimum": 0.0, "exclusiveMaximum": 1.0},
        },
    },
}

SCENARIO_DEFAULTS: dict[str, dict] = {
    "box_fixed_point": {"dim": 8, "max_order": 48, "tol": 1e-10},
    "fiber_fixed_point": {"fibers": 5, "fiber_dim": 3, "max_order": 48, "tol": 1e-9},
    "matrix_derivation": {
        "method": "least_squares",
        "corrupt": False,
        "check_cocycle": True,
        "similarity": True,
    },
    "group_algebra_derivation": {"corrupt": False, "check_cocycle": True},
    "urns_certificate": {"fibers": 4, "fiber_dim": 3, "points": 10, "samples": 50},
}


def validate_scenario(obj) -> dict:
    """Validate and return the scenario with defaults filled in."""
    if not isinstance(obj, dict):
        raise ScenarioFormatError("scenario must be a JSON object")
    kind = obj.get("kind")
    if kind not in SCENARIO_SCHEMAS:
        raise ScenarioFormatError(
            f"unknown scenario kind {kind!r}; expected one of {sorted(SCENARIO_SCHEMAS)}"
        )
    try:
        jsonschema.validate(obj, SCENARIO_SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise ScenarioFormatError(f"invalid {kind} scenario: {exc.message}") from None

    merged = {**SCENARIO_DEFAULTS[kind], **obj}
    if kind == "box_fixed_point" and "sample_box" in merged:
        box = merged["sample_box"]
        lo, hi = box["lo"], box["hi"]
        if len(lo) != len(hi):
            raise ScenarioFormatError("sample_box lo and hi must have the same length")
        if len(lo) != merged["dim"]:
            raise ScenarioFormatError(
                f"sample_box has {len(lo)} coordinates but dim is {merged['dim']}"
            )
        for i, (a, b) in enumerate(zip(lo, hi)):
            if a > b:
                raise ScenarioFormatError(
                    f"sample_box coordinate {i} has lo={a} > hi={b}"
                )
    return merged


def validate_suite(obj) -> list[dict]:
    if isinstance(obj, dict):
        if "scenarios" not in obj:
            raise ScenarioFormatError('suite object must carry a "scenarios" array')
        obj = obj["scenarios"]
    if not isinstance(obj, list) or not obj:
        raise ScenarioFormatError("suite must be a nonempty array of scenarios")
    return [validate_scenario(s) for s in obj]
