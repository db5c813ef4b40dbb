"""Command-line front end.

Every subcommand runs one verifier and emits a versioned JSON run record
(config + certificate payload).  Exit codes: 0 verified, 1 a finding
(theorem violation, failed recheck, discovered Kneser failure), 2 usage or
precondition errors.  Rationals cross this boundary only as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import certificates, groups
from .errors import SmallDoublingError, TheoryViolation, UsageError
from .rationals import parse_rational

_INLINE_GROUP_RE = re.compile(r"^(cyclic|dihedral|symmetric|sym|quaternion):(\d+)$")

_SET_NAMES = {
    "doubling": ("A",),
    "connectivity": ("S",),
    "atoms": ("S",),
    "kneser": ("A", "B"),
    "corollary-kn": ("A",),
    "theorem-main": ("A", "S"),
    "petridis": ("A", "S"),
    "conv-gap": ("A",),
    "conv-smooth": ("A", "S"),
    "search-kneser-failure": (),
}


@dataclass
class RunConfig:
    """Validated invocation: everything a run record needs to replay."""

    command: str
    group_spec: dict
    sets: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    format: str = "json"
    out: Optional[str] = None

    def to_config_dict(self) -> dict:
        config = {"group": self.group_spec, "caps": self.caps}
        if self.sets:
            config["sets"] = self.sets
        config.update(self.options)
        return config


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of sys.exit so main() owns codes
        raise UsageError(message)


def parse_group_spec(text: str) -> dict:
    """Inline spec like cyclic:12 or sym:3xcyclic:2, or a path to a JSON file."""
    candidate = Path(text)
    if text.endswith(".json") or candidate.is_file():
        try:
            spec = json.loads(candidate.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read group file {text}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"group file {text} is not valid JSON: {exc}") from exc
        if not isinstance(spec, dict):
            raise UsageError(f"group file {text} must hold a JSON object")
        return spec
    parts = text.split("x")
    specs = []
    for part in parts:
        m = _INLINE_GROUP_RE.match(part.strip())
        if m is None:
            raise UsageError(
                f"bad group spec {part!r} (expected kind:n, e.g. cyclic:12, "
                "sym:3, dihedral:4, quaternion:2, or a JSON file path)"
            )
        kind = {"sym": "symmetric"}.get(m.group(1), m.group(1))
        specs.append({"preset": kind, "n": int(m.group(2))})
    if len(specs) == 1:
        return specs[0]
    return {"preset": "direct_product", "factors": specs}


def parse_set_elements(G: groups.GroupTable, text: str) -> list[int]:
    """Comma-separated element indices, or labels where unambiguous."""
    label_index = {label: i for i, label in enumerate(G.labels)}
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token.isdigit():
            value = int(token)
            if value >= G.order:
                raise UsageError(f"element index {value} outside group of order {G.order}")
            out.append(value)
        elif token in label_index:
            out.append(label_index[token])
        else:
            raise UsageError(f"unknown element {token!r} in group {G.name}")
    return sorted(set(out))


def _parse_rational_arg(text: str, what: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _parse_epsilon(text: str):
    value = _parse_rational_arg(text, "epsilon")
    if not 0 < value <= 1:
        raise UsageError(f"epsilon must lie in (0, 1], got {value}")
    return value


def _add_common(parser: argparse.ArgumentParser, *, sets: tuple[str, ...]) -> None:
    parser.add_argument("--group", required=True, help="group spec or JSON file")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="NAME=ELEMS",
        help="named set, e.g. A=0,1,2 (labels allowed)",
    )
    for name in sets:
        parser.add_argument(
            f"--set{name}", dest=f"set_{name}", metavar="ELEMS",
            help=f"shorthand for --set {name}=...",
        )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", help="write the record to this file (atomically)")
    parser.add_argument("--order-cap", type=int, default=None)
    parser.add_argument("--bruteforce-cap", type=int, default=None)
    parser.add_argument("--subset-cap", type=int, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="smalldoubling", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {certificates.TOOL_VERSION}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("doubling", help="exact doubling ratio |A*A|/|A|")
    _add_common(p, sets=("A",))

    p = sub.add_parser("connectivity", help="connectivity kappa and identity atom")
    _add_common(p, sets=("S",))
    p.add_argument("--K", required=True, help="expansion rate as p/q")
    p.add_argument("--solver", choices=("subgroup", "brute"), default="subgroup")
    p.add_argument("--fragments", action="store_true", help="collect the fragment inventory")
    p.add_argument("--fragment-cap", type=int, default=None)
    p.add_argument(
        "--no-atom",
        action="store_true",
        help="fragments-only output (required for K = 1)",
    )

    p = sub.add_parser("atoms", help="verify that atoms are the left cosets of one subgroup")
    _add_common(p, sets=("S",))
    p.add_argument("--K", required=True, help="expansion rate as p/q")

    p = sub.add_parser("kneser", help="Kneser sumset inequality in an abelian group")
    _add_common(p, sets=("A", "B"))

    p = sub.add_parser("corollary-kn", help="covering corollary for |A+A| <= (2-e)|A|")
    _add_common(p, sets=("A",))
    p.add_argument("--epsilon", required=True, help="rate in (0,1] as p/q")

    p = sub.add_parser(
        "theorem-main", help="weak Kneser-type structure theorem for |A*S| <= (2-e)|S|"
    )
    _add_common(p, sets=("A", "S"))
    p.add_argument("--epsilon", required=True, help="rate in (0,1] as p/q")

    p = sub.add_parser("petridis", help="minimizer X of |X*S|/|X| and its verification")
    _add_common(p, sets=("A", "S"))
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=None)

    conv = sub.add_parser("conv", help="convolution tools")
    conv_sub = conv.add_subparsers(dest="conv_command", required=True)
    p = conv_sub.add_parser("gap", help="gap in the range of the autocorrelation of A")
    _add_common(p, sets=("A",))
    p = conv_sub.add_parser("smooth", help="double averaging of the autocorrelation by S")
    _add_common(p, sets=("A", "S"))
    p.add_argument("--threshold", default=None, help="optional level-set threshold p/q")

    search = sub.add_parser("search", help="counterexample searches")
    search_sub = search.add_subparsers(dest="search_command", required=True)
    p = search_sub.add_parser(
        "kneser-failure", help="hunt for Kneser failures in a nonabelian group"
    )
    _add_common(p, sets=())
    p.add_argument("--strategy", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("recheck", help="replay a certificate and compare field by field")
    p.add_argument("certificate", help="path to a run-record JSON file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the recheck report to this file")
    return parser


def _env_cap(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from exc


def _resolve_caps(args) -> dict:
    caps = dict(certificates.DEFAULT_CAPS)
    for key, flag, env in (
        ("order_cap", "order_cap", "SMALLDOUBLING_ORDER_CAP"),
        ("bruteforce_cap", "bruteforce_cap", "SMALLDOUBLING_BRUTEFORCE_CAP"),
        ("subset_cap", "subset_cap", "SMALLDOUBLING_SUBSET_CAP"),
    ):
        value = getattr(args, flag, None)
        if value is None:
            value = _env_cap(env)
        if value is not None:
            caps[key] = value
    return caps


def _collect_sets(args, G: groups.GroupTable, names: tuple[str, ...]) -> dict:
    raw: dict[str, str] = {}
    for entry in args.set:
        if "=" not in entry:
            raise UsageError(f"--set needs NAME=ELEMS, got {entry!r}")
        name, _, elems = entry.partition("=")
        raw[name.strip()] = elems
    for name in names:
        alias = getattr(args, f"set_{name}", None)
        if alias is not None:
            raw[name] = alias
    missing = [name for name in names if name not in raw]
    if missing:
        raise UsageError(f"missing required set(s): {', '.join(missing)}")
    unknown = [name for name in raw if name not in names]
    if unknown:
        raise UsageError(f"unexpected set name(s): {', '.join(unknown)}")
    return {name: parse_set_elements(G, text) for name, text in raw.items()}


def _build_run_config(args, command: str) -> RunConfig:
    caps = _resolve_caps(args)
    group_spec = parse_group_spec(args.group)
    # Building the group now surfaces bad specs and cap violations as usage
    # errors before any solver runs.
    G = groups.from_spec(group_spec, order_cap=caps["order_cap"])
    sets = _collect_sets(args, G, _SET_NAMES[command])

    options: dict = {}
    if command == "connectivity":
        _parse_rational_arg(args.K, "K")  # fail fast on junk
        options["K"] = args.K
        options["solver"] = {"subgroup": "subgroup_restricted", "brute": "brute_force"}[
            args.solver
        ]
        options["fragments"] = bool(args.fragments)
        if args.fragment_cap is not None:
            options["fragment_cap"] = args.fragment_cap
        if args.no_atom:
            options["classify_atom"] = False
    elif command == "atoms":
        _parse_rational_arg(args.K, "K")
        options["K"] = args.K
    elif command in ("corollary-kn", "theorem-main"):
        _parse_epsilon(args.epsilon)
        options["epsilon"] = args.epsilon
    elif command == "petridis":
        options["mode"] = args.mode
        options["budget"] = args.budget
        if args.mode == "sampled" and args.seed is None:
            raise UsageError("sampled mode requires --seed")
        if args.seed is not None:
            options["seed"] = args.seed
    elif command == "search-kneser-failure":
        options["strategy"] = args.strategy
        if args.strategy == "random":
            if args.seed is None or args.budget is None:
                raise UsageError("random strategy requires --seed and --budget")
        if args.seed is not None:
            options["seed"] = args.seed
        if args.budget is not None:
            options["budget"] = args.budget
    elif command == "conv-smooth":
        if args.threshold is not None:
            _parse_rational_arg(args.threshold, "threshold")
            options["threshold"] = args.threshold

    return RunConfig(
        command=command,
        group_spec=group_spec,
        sets=sets,
        options=options,
        caps=caps,
        format=args.format,
        out=args.out,
    )


def _render_text(value, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key in value:
            lines.extend(_render_text(value[key], f"{prefix}.{key}" if prefix else key))
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{prefix} = [{', '.join(str(v) for v in value)}]"]
        lines = []
        for i, v in enumerate(value):
            lines.extend(_render_text(v, f"{prefix}[{i}]"))
        return lines
    return [f"{prefix} = {value}"]


def _emit(document: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(_render_text(document)) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, target)


def _error_document(exc: Exception) -> dict:
    code = exc.code if isinstance(exc, SmallDoublingError) else type(exc).__name__
    return {"error": {"code": code, "message": str(exc)}}


def _run_recheck(args) -> int:
    path = Path(args.certificate)
    try:
        record = json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read certificate {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate {path} is not valid JSON: {exc}") from exc
    report = certificates.recheck(record)
    document = {
        "command": "recheck",
        "certificate": str(path),
        "ok": report.ok,
        "diffs": [
            {"path": p, "stored": s, "recomputed": r} for p, s, r in report.diffs
        ],
    }
    _emit(document, args.format, args.out)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        command = args.command
        if command == "conv":
            command = f"conv-{args.conv_command}"
        elif command == "search":
            command = f"search-{args.search_command}"

        if command == "recheck":
            return _run_recheck(args)

        run_config = _build_run_config(args, command)
        config = run_config.to_config_dict()
        started = time.perf_counter()
        payload = certificates.run(command, config)
        wall = time.perf_counter() - started
        record = certificates.make_record(command, config, payload, wall_time_s=wall)
        _emit(record, run_config.format, run_config.out)
        return certificates.exit_code_for(command, payload)
    except UsageError as exc:
        sys.stderr.write(json.dumps(_error_document(exc)) + "\n")
        return 2
    except TheoryViolation as exc:
        sys.stderr.write(json.dumps(_error_document(exc)) + "\n")
        return 1
    except (SmallDoublingError, ValueError) as exc:
        sys.stderr.write(json.dumps(_error_document(exc)) + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
