import json

import pytest

from smalldoubling import UsageError
from smalldoubling.certificates import (
    DEFAULT_CAPS,
    SCHEMA_VERSION,
    exit_code_for,
    make_record,
    recheck,
    run,
)

CONFIGS = {
    "doubling": {
        "group": {"preset": "cyclic", "n": 20},
        "sets": {"A": [0, 1, 2, 3, 4]},
    },
    "connectivity": {
        "group": {"preset": "cyclic", "n": 8},
        "sets": {"S": [0, 1]},
        "K": "1/2",
        "solver": "subgroup_restricted",
    },
    "connectivity-brute": (
        "connectivity",
        {
            "group": {"preset": "quaternion", "n": 2},
            "sets": {"S": [0, 4]},
            "K": "2/3",
            "solver": "brute_force",
            "fragments": True,
        },
    ),
    "atoms": {
        "group": {"preset": "cyclic", "n": 6},
        "sets": {"S": [0, 3]},
        "K": "1/2",
    },
    "kneser": {
        "group": {"preset": "cyclic", "n": 6},
        "sets": {"A": [0, 1], "B": [0, 1]},
    },
    "corollary-kn": {
        "group": {"preset": "cyclic", "n": 20},
        "sets": {"A": [0, 1, 2, 3, 4]},
        "epsilon": "1/5",
    },
    "theorem-main": {
        "group": {"preset": "symmetric", "n": 3},
        "sets": {"A": [0, 2], "S": [0, 2]},
        "epsilon": "1/1",
    },
    "petridis": {
        "group": {"preset": "cyclic", "n": 8},
        "sets": {"A": [0, 1], "S": [0, 1]},
        "mode": "exhaustive",
        "budget": 255,
    },
    "conv-gap": {
        "group": {"preset": "cyclic", "n": 8},
        "sets": {"A": [0, 1]},
    },
    "conv-smooth": {
        "group": {"preset": "cyclic", "n": 8},
        "sets": {"A": [0, 1], "S": [0, 1]},
        "threshold": "1/3",
    },
    "search-kneser-failure": {
        "group": {"preset": "symmetric", "n": 3},
        "strategy": "random",
        "seed": 11,
        "budget": 400,
    },
}


def all_cases():
    for key, value in CONFIGS.items():
        if isinstance(value, tuple):
            yield key, value[0], value[1]
        else:
            yield key, key, value


@pytest.mark.parametrize("case,command,config", list(all_cases()), ids=lambda v: str(v))
def test_run_recheck_roundtrip(case, command, config):
    if not isinstance(config, dict):
        return
    payload = run(command, config)
    record = make_record(command, config, payload, wall_time_s=0.5)
    roundtripped = json.loads(json.dumps(record))
    report = recheck(roundtripped)
    assert report.ok, report.diffs
    assert exit_code_for(command, payload) == 0


def test_expected_payload_values():
    payload = run("doubling", CONFIGS["doubling"])
    assert payload["ratio"] == "9/5" and payload["epsilon"] == "1/5"

    payload = run("connectivity", CONFIGS["connectivity"])
    assert payload["kappa"] == "3/2"
    assert payload["identity_atom"]["indices"] == [0]
    assert payload["atom_is_subgroup"] is True

    payload = run("theorem-main", CONFIGS["theorem-main"])
    assert payload["branch"] == "single_right_coset"
    assert payload["atom"]["labels"] == ["e", "(1 2)"]

    payload = run("corollary-kn", CONFIGS["corollary-kn"])
    assert payload["cover"]["count"] == 9 and payload["holds"] is True

    payload = run("petridis", CONFIGS["petridis"])
    assert payload["k"] == "3/2" and payload["ok"] is True
    assert payload["verified_c_count"] == 255 and payload["exhaustive"] is True

    payload = run("search-kneser-failure", CONFIGS["search-kneser-failure"])
    assert payload["finding_count"] == 0 and payload["pairs_checked"] == 400


def _leaf_paths(value, path=()):
    if isinstance(value, dict):
        for key, sub in value.items():
            yield from _leaf_paths(sub, path + (key,))
    elif isinstance(value, list):
        if value:
            for i, sub in enumerate(value):
                yield from _leaf_paths(sub, path + (i,))
        else:
            yield path  # empty list: mutate by appending
    else:
        yield path


def _mutate(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    if isinstance(value, str):
        if "/" in value and value.split("/")[0].lstrip("-").isdigit():
            num, den = value.split("/")
            return f"{int(num) + 1}/{den}"
        return value + "?"
    if value is None:
        return 0
    if isinstance(value, list) and not value:
        return [0]
    raise AssertionError(f"unexpected leaf {value!r}")


def _apply_mutation(record, path):
    copy = json.loads(json.dumps(record))
    target = copy["payload"]
    for step in path[:-1]:
        target = target[step]
    if isinstance(target[path[-1]], list) and not target[path[-1]]:
        target[path[-1]] = [0]
    else:
        target[path[-1]] = _mutate(target[path[-1]])
    return copy


@pytest.mark.parametrize("case,command,config", list(all_cases()), ids=lambda v: str(v))
def test_single_field_perturbations_are_rejected(case, command, config):
    payload = run(command, config)
    record = make_record(command, config, payload)
    paths = list(_leaf_paths(record["payload"]))
    assert paths
    for path in paths:
        tampered = _apply_mutation(record, path)
        report = recheck(tampered)
        assert not report.ok, f"mutation at payload.{path} went undetected"
        assert report.diffs


def test_tampered_config_is_rejected():
    config = dict(CONFIGS["kneser"])
    payload = run("kneser", config)
    record = make_record("kneser", config, payload)
    tampered = json.loads(json.dumps(record))
    tampered["config"]["sets"]["A"] = [0, 2]
    report = recheck(tampered)
    assert not report.ok


def test_recheck_rejects_malformed_records():
    with pytest.raises(UsageError):
        recheck([1, 2, 3])
    with pytest.raises(UsageError):
        recheck({"schema_version": 99, "command": "kneser", "config": {}, "payload": {}})
    with pytest.raises(UsageError):
        recheck(
            {"schema_version": SCHEMA_VERSION, "command": "bogus", "config": {}, "payload": {}}
        )
    with pytest.raises(UsageError):
        recheck({"schema_version": SCHEMA_VERSION, "command": "kneser", "config": {}, "payload": 3})
    with pytest.raises(UsageError):
        run("kneser", {"group": {"preset": "cyclic", "n": 6}})  # missing sets
    with pytest.raises(UsageError):
        run("nonsense", {})


def test_repeated_runs_are_byte_identical():
    for case, command, config in all_cases():
        blobs = {
            json.dumps(run(command, config), sort_keys=True).encode() for _ in range(3)
        }
        assert len(blobs) == 1, f"{case} is not deterministic"


def test_default_caps_are_spec_defaults():
    assert DEFAULT_CAPS == {"order_cap": 64, "bruteforce_cap": 16, "subset_cap": 20}


def test_records_validate_against_published_schema():
    from smalldoubling.schema import PAYLOAD_KEYS, validate_record

    assert set(PAYLOAD_KEYS) == {command for _, command, _ in all_cases()}
    for case, command, config in all_cases():
        record = make_record(command, config, run(command, config), wall_time_s=0.1)
        validate_record(record)  # raises on violation

    good = make_record("kneser", CONFIGS["kneser"], run("kneser", CONFIGS["kneser"]))
    broken = json.loads(json.dumps(good))
    del broken["payload"]["holds"]
    with pytest.raises(UsageError):
        validate_record(broken)
    with pytest.raises(UsageError):
        recheck(broken)
    mangled = json.loads(json.dumps(good))
    mangled["config"]["epsilon"] = "0.5"  # decimals are not rationals
    with pytest.raises(UsageError):
        validate_record(mangled)
