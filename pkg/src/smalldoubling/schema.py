"""Published JSON schema for run records.

Every emitted record validates against RECORD_SCHEMA, and its payload must
carry the keys listed for its command; `recheck` refuses records that do not.
"""

from __future__ import annotations

import jsonschema

from .errors import UsageError

SCHEMA_VERSION = 1

COMMANDS = (
    "doubling",
    "connectivity",
    "atoms",
    "kneser",
    "corollary-kn",
    "theorem-main",
    "petridis",
    "conv-gap",
    "conv-smooth",
    "search-kneser-failure",
)

_RATIONAL = {"type": "string", "pattern": r"^-?\d+/\d+$"}
_SUBSET = {
    "type": "object",
    "required": ["indices", "labels"],
    "properties": {
        "indices": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "labels": {"type": "array", "items": {"type": "string"}},
    },
}

RECORD_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "smalldoubling run record",
    "type": "object",
    "required": ["schema_version", "tool", "command", "config", "payload"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {
            "type": "object",
            "required": ["name", "version"],
            "properties": {
                "name": {"type": "string"},
                "version": {"type": "string"},
            },
        },
        "command": {"enum": list(COMMANDS)},
        "config": {
            "type": "object",
            "required": ["group"],
            "properties": {
                "group": {"type": "object"},
                "sets": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                    },
                },
                "epsilon": _RATIONAL,
                "K": _RATIONAL,
                "seed": {"type": "integer"},
                "budget": {"type": "integer", "minimum": 0},
                "caps": {"type": "object"},
            },
        },
        "payload": {"type": "object"},
        "meta": {"type": "object"},
    },
}

# Keys every payload of a given command must carry (values are checked by
# recheck's field-by-field replay, so the schema stays structural).
PAYLOAD_KEYS = {
    "doubling": ("set_a", "square", "ratio", "epsilon"),
    "connectivity": ("set_s", "k", "solver", "kappa", "identity_atom", "atom_is_subgroup"),
    "atoms": (
        "set_s",
        "k",
        "identity_atom",
        "atom_is_subgroup",
        "atoms",
        "atoms_are_left_cosets",
        "atoms_pairwise_disjoint",
        "ok",
    ),
    "kneser": ("set_a", "set_b", "sum", "stabilizer", "lhs", "rhs", "holds", "equality"),
    "corollary-kn": (
        "set_a",
        "epsilon",
        "square",
        "stabilizer",
        "h_bound_ok",
        "cover",
        "cover_bound_ok",
        "holds",
    ),
    "theorem-main": (
        "set_a",
        "set_s",
        "epsilon",
        "k",
        "hypotheses_ok",
        "atom",
        "branch",
        "bound_h_size",
        "sharp_h_bound",
        "cover",
        "violations",
    ),
    "petridis": ("set_a", "set_s", "x", "k", "verified_c_count", "exhaustive", "ok"),
    "conv-gap": (
        "set_a",
        "epsilon_star",
        "support",
        "min_on_support",
        "gap_holds",
        "forbidden_interval_clean",
        "hypothesis_vacuous",
    ),
    "conv-smooth": ("set_a", "set_s", "autocorrelation", "smoothed", "mass"),
    "search-kneser-failure": (
        "strategy",
        "seed",
        "budget",
        "pairs_checked",
        "exhausted",
        "finding_count",
        "findings",
    ),
}

SUBSET_SCHEMA = _SUBSET  # exposed for tests


def validate_record(record: dict) -> None:
    """Raise UsageError when `record` does not match the published schema."""
    try:
        jsonschema.validate(record, RECORD_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"record does not match the schema: {exc.message}") from exc
    command = record["command"]
    missing = [key for key in PAYLOAD_KEYS[command] if key not in record["payload"]]
    if missing:
        raise UsageError(
            f"{command} payload is missing required field(s): {', '.join(missing)}"
        )
