"""Certificates: JSON payloads for every verifier, plus offline rechecking.

A run record is {schema_version, tool, command, config, payload}; the config
is everything needed to replay the run, and replaying must reproduce the
payload byte for byte.  `recheck` does exactly that and reports field-level
diffs, so any tampered certificate is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import connectivity as conn_mod
from . import convolution as conv_mod
from . import groups, setalg, theorems
from .errors import UsageError
from .rationals import parse_rational, rational_str
from .schema import validate_record
from .subsets import Subset

SCHEMA_VERSION = 1
TOOL_NAME = "smalldoubling"
TOOL_VERSION = "0.1.0"

DEFAULT_CAPS = {
    "order_cap": groups.DEFAULT_ORDER_CAP,
    "bruteforce_cap": conn_mod.DEFAULT_BRUTEFORCE_CAP,
    "subset_cap": theorems.DEFAULT_SUBSET_SEARCH_CAP,
}


def subset_payload(G: groups.GroupTable, X: Subset) -> dict:
    indices = list(X.elements())
    return {"indices": indices, "labels": [G.labels[i] for i in indices]}


def cover_payload(G: groups.GroupTable, cert: setalg.CoverCertificate) -> dict:
    return {
        "subgroup": subset_payload(G, cert.subgroup),
        "side": cert.side,
        "representatives": list(cert.representatives),
        "representative_labels": [G.labels[i] for i in cert.representatives],
        "covered": subset_payload(G, cert.covered),
        "count": cert.count,
    }


def function_payload(f: conv_mod.GroupFunction) -> list[str]:
    return [rational_str(v) for v in f.values]


def kneser_payload(G: groups.GroupTable, rep: theorems.KneserReport) -> dict:
    return {
        "set_a": subset_payload(G, rep.A),
        "set_b": subset_payload(G, rep.B),
        "sum": subset_payload(G, rep.sum),
        "stabilizer": subset_payload(G, rep.H),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "holds": rep.holds,
        "equality": rep.equality,
    }


# --- config plumbing ---------------------------------------------------------


def _caps(config: dict) -> dict:
    caps = dict(DEFAULT_CAPS)
    caps.update(config.get("caps", {}))
    return caps


def _group(config: dict) -> groups.GroupTable:
    if "group" not in config:
        raise UsageError("config is missing the group spec")
    return groups.from_spec(config["group"], order_cap=_caps(config)["order_cap"])


def _named_set(config: dict, G: groups.GroupTable, name: str) -> Subset:
    sets = config.get("sets", {})
    if name not in sets:
        raise UsageError(f"config is missing set {name!r}")
    indices = sets[name]
    if not isinstance(indices, list) or not all(isinstance(i, int) for i in indices):
        raise UsageError(f"set {name!r} must be a list of element indices")
    try:
        return G.subset(indices)
    except ValueError as exc:
        raise UsageError(f"set {name!r}: {exc}") from exc


def _rational(config: dict, key: str) -> Fraction:
    if key not in config:
        raise UsageError(f"config is missing {key!r}")
    try:
        return parse_rational(str(config[key]))
    except ValueError as exc:
        raise UsageError(f"{key}: {exc}") from exc


# --- runners -----------------------------------------------------------------


def _run_doubling(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    rep = setalg.doubling_ratio(G, A)
    return {
        "group": G.name,
        "set_a": subset_payload(G, rep.A),
        "square": subset_payload(G, rep.square),
        "cardinality_a": rep.A.cardinality,
        "cardinality_square": rep.square.cardinality,
        "ratio": rational_str(rep.ratio),
        "epsilon": rational_str(rep.epsilon),
    }


def _run_connectivity(config: dict) -> dict:
    G = _group(config)
    S = _named_set(config, G, "S")
    K = _rational(config, "K")
    params = conn_mod.CostParams(S=S, K=K)
    solver = config.get("solver", "subgroup_restricted")
    want_fragments = bool(config.get("fragments", False))
    if solver == "brute_force":
        res = conn_mod.connectivity_bruteforce(
            G,
            params,
            collect_fragments=want_fragments,
            fragment_cap=int(config.get("fragment_cap", conn_mod.DEFAULT_FRAGMENT_CAP)),
            classify_atom=bool(config.get("classify_atom", True)),
            bruteforce_cap=_caps(config)["bruteforce_cap"],
        )
    elif solver == "subgroup_restricted":
        if want_fragments:
            raise UsageError("fragment inventories need the brute_force solver")
        res = conn_mod.connectivity_subgroup_solver(G, params)
    else:
        raise UsageError(f"unknown solver {solver!r}")
    return {
        "group": G.name,
        "set_s": subset_payload(G, S),
        "k": rational_str(params.K),
        "solver": res.solver,
        "kappa": rational_str(res.kappa),
        "identity_atom": (
            None if res.identity_atom is None else subset_payload(G, res.identity_atom)
        ),
        "atom_is_subgroup": res.atom_is_subgroup,
        "fragment_total": res.fragment_total,
        "fragments": (
            None
            if res.fragments is None
            else [subset_payload(G, f) for f in res.fragments]
        ),
    }


def _run_atoms(config: dict) -> dict:
    G = _group(config)
    S = _named_set(config, G, "S")
    K = _rational(config, "K")
    rep = conn_mod.verify_atom_proposition(
        G,
        conn_mod.CostParams(S=S, K=K),
        bruteforce_cap=_caps(config)["bruteforce_cap"],
    )
    return {
        "group": G.name,
        "set_s": subset_payload(G, S),
        "k": rational_str(rep.params.K),
        "kappa": rational_str(rep.kappa),
        "identity_atom": subset_payload(G, rep.identity_atom),
        "atom_is_subgroup": rep.atom_is_subgroup,
        "atoms": [subset_payload(G, a) for a in rep.atoms],
        "atoms_are_left_cosets": rep.atoms_are_left_cosets,
        "atoms_pairwise_disjoint": rep.atoms_pairwise_disjoint,
        "ok": rep.ok,
    }


def _run_kneser(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    B = _named_set(config, G, "B")
    rep = theorems.kneser_check(G, A, B)
    payload = kneser_payload(G, rep)
    payload["group"] = G.name
    return payload


def _run_corollary(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    epsilon = _rational(config, "epsilon")
    rep = theorems.kneser_corollary_check(G, A, epsilon)
    return {
        "group": G.name,
        "set_a": subset_payload(G, rep.A),
        "epsilon": rational_str(rep.epsilon),
        "square": subset_payload(G, rep.square),
        "stabilizer": subset_payload(G, rep.H),
        "h_bound": rational_str(rep.H_bound),
        "h_bound_ok": rep.H_bound_ok,
        "cover": cover_payload(G, rep.cover),
        "cover_bound": rational_str(rep.cover_bound),
        "cover_bound_ok": rep.cover_bound_ok,
        "holds": rep.holds,
    }


def _run_theorem_main(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    S = _named_set(config, G, "S")
    epsilon = _rational(config, "epsilon")
    rep = theorems.weak_kneser_check(G, A, S, epsilon)
    return {
        "group": G.name,
        "set_a": subset_payload(G, rep.A),
        "set_s": subset_payload(G, rep.S),
        "epsilon": rational_str(rep.epsilon),
        "k": rational_str(rep.K),
        "hypotheses_ok": rep.hypotheses_ok,
        "kappa": rational_str(rep.kappa),
        "atom": subset_payload(G, rep.atom),
        "branch": rep.branch,
        "bound_h_size": rational_str(rep.bound_H_size),
        "sharp_h_bound": rational_str(rep.sharp_H_bound),
        "cover": None if rep.cover is None else cover_payload(G, rep.cover),
        "violations": list(rep.violations),
    }


def _run_petridis(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    S = _named_set(config, G, "S")
    mode = config.get("mode", "exhaustive")
    budget = int(config.get("budget", 1 << 20))
    seed = config.get("seed")
    result = theorems.petridis_minimizer(
        G, A, S, subset_cap=_caps(config)["subset_cap"]
    )
    verification = theorems.petridis_verify(G, result, mode, budget=budget, seed=seed)
    return {
        "group": G.name,
        "set_a": subset_payload(G, A),
        "set_s": subset_payload(G, S),
        "x": subset_payload(G, result.X),
        "k": rational_str(result.K),
        "mode": verification.mode,
        "verified_c_count": verification.checked,
        "exhaustive": verification.mode == "exhaustive",
        "equality_at_identity": verification.equality_at_identity,
        "violations": [subset_payload(G, v) for v in verification.violations],
        "ok": verification.ok,
    }


def _run_conv_gap(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    rep = conv_mod.gap_check(G, A)
    f = conv_mod.autocorrelation(G, A)
    return {
        "group": G.name,
        "set_a": subset_payload(G, rep.A),
        "epsilon_star": rational_str(rep.epsilon_star),
        "support": subset_payload(G, rep.support),
        "min_on_support": rational_str(rep.min_on_support),
        "gap_holds": rep.gap_holds,
        "forbidden_interval_clean": rep.forbidden_interval_clean,
        "hypothesis_vacuous": rep.hypothesis_vacuous,
        "autocorrelation": function_payload(f),
    }


def _run_conv_smooth(config: dict) -> dict:
    G = _group(config)
    A = _named_set(config, G, "A")
    S = _named_set(config, G, "S")
    f = conv_mod.autocorrelation(G, A)
    F = conv_mod.smoothed(G, S, f)
    payload = {
        "group": G.name,
        "set_a": subset_payload(G, A),
        "set_s": subset_payload(G, S),
        "autocorrelation": function_payload(f),
        "smoothed": function_payload(F),
        "mass": rational_str(F.mass),
        "threshold": None,
        "level_set": None,
    }
    if config.get("threshold") is not None:
        threshold = _rational(config, "threshold")
        payload["threshold"] = rational_str(threshold)
        payload["level_set"] = subset_payload(G, conv_mod.level_set(G, F, threshold))
    return payload


def _run_search_kneser_failure(config: dict) -> dict:
    G = _group(config)
    strategy = config.get("strategy", "exhaustive")
    seed = config.get("seed")
    budget = config.get("budget")
    rep = theorems.kneser_failure_search(
        G, strategy, seed=seed, budget=None if budget is None else int(budget)
    )
    return {
        "group": G.name,
        "strategy": rep.strategy,
        "seed": rep.seed,
        "budget": rep.budget,
        "pairs_checked": rep.pairs_checked,
        "exhausted": rep.exhausted,
        "finding_count": len(rep.findings),
        "findings": [kneser_payload(G, r) for r in rep.findings],
    }


RUNNERS = {
    "doubling": _run_doubling,
    "connectivity": _run_connectivity,
    "atoms": _run_atoms,
    "kneser": _run_kneser,
    "corollary-kn": _run_corollary,
    "theorem-main": _run_theorem_main,
    "petridis": _run_petridis,
    "conv-gap": _run_conv_gap,
    "conv-smooth": _run_conv_smooth,
    "search-kneser-failure": _run_search_kneser_failure,
}


def run(command: str, config: dict) -> dict:
    """Execute one verifier from its replayable config; returns the payload."""
    if command not in RUNNERS:
        raise UsageError(f"unknown command {command!r}")
    return RUNNERS[command](config)


def make_record(command: str, config: dict, payload: dict, wall_time_s=None) -> dict:
    record = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "command": command,
        "config": config,
        "payload": payload,
    }
    if wall_time_s is not None:
        record["meta"] = {"wall_time_s": wall_time_s}
    validate_record(record)
    return record


def exit_code_for(command: str, payload: dict) -> int:
    """0 for a verified certificate, 1 for a finding / theory violation."""
    if command == "kneser":
        return 0 if payload["holds"] else 1
    if command == "corollary-kn":
        return 0 if payload["holds"] else 1
    if command == "theorem-main":
        return 0 if payload["branch"] != "violation" else 1
    if command == "petridis":
        return 0 if payload["ok"] else 1
    if command == "atoms":
        return 0 if payload["ok"] else 1
    if command == "connectivity":
        return 0 if payload["atom_is_subgroup"] in (True, None) else 1
    if command == "conv-gap":
        if payload["hypothesis_vacuous"]:
            return 0
        return 0 if payload["gap_holds"] and payload["forbidden_interval_clean"] else 1
    if command == "search-kneser-failure":
        return 1 if payload["finding_count"] else 0
    return 0


# --- offline recheck -----------------------------------------------------------


@dataclass(frozen=True)
class RecheckReport:
    ok: bool
    diffs: tuple[tuple[str, Any, Any], ...]  # (path, stored, recomputed)


def _diff(path: str, stored, recomputed, out: list) -> None:
    if isinstance(stored, dict) and isinstance(recomputed, dict):
        for key in sorted(set(stored) | set(recomputed)):
            if key not in stored:
                out.append((f"{path}.{key}", "<missing>", recomputed[key]))
            elif key not in recomputed:
                out.append((f"{path}.{key}", stored[key], "<missing>"))
            else:
                _diff(f"{path}.{key}", stored[key], recomputed[key], out)
        return
    if isinstance(stored, list) and isinstance(recomputed, list):
        if len(stored) != len(recomputed):
            out.append((f"{path}.length", len(stored), len(recomputed)))
            return
        for i, (s, r) in enumerate(zip(stored, recomputed)):
            _diff(f"{path}[{i}]", s, r, out)
        return
    if stored != recomputed or type(stored) is not type(recomputed):
        out.append((path, stored, recomputed))


def recheck(record: dict) -> RecheckReport:
    """Replay a record's config and compare the payload field by field."""
    if not isinstance(record, dict):
        raise UsageError("certificate must be a JSON object")
    if record.get("schema_version") != SCHEMA_VERSION:
        raise UsageError(
            f"unsupported schema_version {record.get('schema_version')!r}"
        )
    command = record.get("command")
    if command not in RUNNERS:
        raise UsageError(f"unknown command {command!r} in certificate")
    validate_record(record)
    config = record["config"]
    stored = record["payload"]
    recomputed = run(command, config)
    diffs: list[tuple[str, Any, Any]] = []
    _diff("payload", stored, recomputed, diffs)
    return RecheckReport(ok=not diffs, diffs=tuple(diffs))
