"""Command-line front end.

Spaces are read from a JSON document. It may be one space object, a list
of space objects, or ``{"spaces": [...]}``. Each space looks like::

    {"name": "X", "base": 1, "twist": 1, "overrides": {"3": -1}}

Exit codes: 0 affirmative/success, 1 negative verdict, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .arith import Sign, legendre, primes_up_to
from .errors import HPGenusError
from .ktheory import naturality_sides, rector_congruence_sign
from .maps import compute_T, contains, degree_set, factor_through_standard, lambda_embedding_exists, map_components
from .rector import (
    RectorInvariant,
    admits_essential_map,
    equivalent,
    evaluate,
    has_maximal_torus,
    make_invariant,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class SpaceConfig:
    name: str
    base: int
    twist: Sign
    overrides: dict

    def invariant(self) -> RectorInvariant:
        return make_invariant(self.base, self.twist, self.overrides)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "base": self.base,
            "twist": int(self.twist),
            "overrides": {str(p): int(s) for p, s in sorted(self.overrides.items())},
        }


def _parse_space(obj, where: str) -> SpaceConfig:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - {"name", "base", "twist", "overrides"}
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    name = obj.get("name", "")
    where = f"{where} ({name!r})" if name else where
    base = obj.get("base")
    if isinstance(base, bool) or not isinstance(base, int):
        raise ConfigError(f"{where}: 'base' must be an integer, got {base!r}")
    try:
        twist = Sign.parse(obj.get("twist", 1))
        overrides = {}
        for key, value in (obj.get("overrides") or {}).items():
            if not str(key).strip().isdigit():
                raise ConfigError(f"{where}: override key {key!r} is not a decimal prime")
            overrides[int(key)] = Sign.parse(value)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    cfg = SpaceConfig(str(name), base, twist, overrides)
    try:
        cfg.invariant()
    except HPGenusError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    return cfg


def load_spaces(text: str, source: str = "<input>") -> dict[str, SpaceConfig]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(doc, dict) and "spaces" in doc:
        doc = doc["spaces"]
    items = doc if isinstance(doc, list) else [doc]
    spaces: dict[str, SpaceConfig] = {}
    for i, obj in enumerate(items):
        cfg = _parse_space(obj, f"{source}: space #{i}")
        key = cfg.name or f"#{i}"
        if key in spaces:
            raise ConfigError(f"{source}: duplicate space name {key!r}")
        spaces[key] = cfg
    if not spaces:
        raise ConfigError(f"{source}: no spaces defined")
    return spaces


def _select(spaces: dict[str, SpaceConfig], names: Optional[list[str]], count: int) -> list[SpaceConfig]:
    if not names:
        if len(spaces) == count:
            return list(spaces.values())
        raise ConfigError(f"choose {count} space(s) with --space; available: {', '.join(spaces)}")
    if len(names) != count:
        raise ConfigError(f"this command takes exactly {count} --space argument(s)")
    missing = [n for n in names if n not in spaces]
    if missing:
        raise ConfigError(f"unknown space {missing[0]!r}; available: {', '.join(spaces)}")
    return [spaces[n] for n in names]


def _sign_str(s) -> str:
    return "+1" if int(s) > 0 else "-1"


def first_difference(a: RectorInvariant, b: RectorInvariant) -> Optional[int]:
    """Smallest prime where two invariants differ, or None if equivalent."""
    if equivalent(a, b):
        return None
    checked, bound = 1, 64
    while True:
        for p in primes_up_to(bound):
            if p > checked and evaluate(a, p) != evaluate(b, p):
                return p
        checked, bound = bound, bound * 2


def _invariant_fields(inv: RectorInvariant) -> dict:
    return {
        "base": inv.base,
        "twist": int(inv.twist),
        "overrides": {str(p): int(s) for p, s in inv.overrides.items()},
    }


def cmd_describe(cfg: SpaceConfig, bound: int) -> tuple[dict, int]:
    inv = cfg.invariant()
    table = {str(p): int(evaluate(inv, p)) for p in primes_up_to(bound)}
    decision = admits_essential_map(inv)
    result = {
        "canonical": _invariant_fields(inv),
        "values": table,
        "maximal_torus": has_maximal_torus(inv),
        "all_plus_one": has_maximal_torus(inv),
        "essential_map": decision.exists,
    }
    if decision:
        result["witness"] = decision.witness
        result["exceptional"] = sorted(decision.exceptional)
    return result, EXIT_OK


def cmd_tx(cfg: SpaceConfig) -> tuple[dict, int]:
    inv = cfg.invariant()
    if not admits_essential_map(inv):
        return {"essential_map": False, "reason": "twist -1: the invariant is cofinitely opposite to a quadratic character"}, EXIT_NEGATIVE
    T, family = compute_T(inv)
    result = {"essential_map": True, "T": T}
    cert = {"m": family.cofinite_value, "n": {str(q): n for q, n in family.exceptional.items()}}
    return {**result, "certificate": cert}, EXIT_OK


def cmd_degrees(cfg: SpaceConfig, limit: int) -> tuple[dict, int]:
    inv = cfg.invariant()
    if not admits_essential_map(inv):
        return {"essential_map": False}, EXIT_NEGATIVE
    ds = degree_set(inv)
    return {
        "essential_map": True,
        "T": ds.T,
        "sign": int(ds.sign),
        "description": ds.describe(),
        "members": list(ds.members(limit)),
    }, EXIT_OK


def cmd_check_map(cfg: SpaceConfig, degree: int) -> tuple[dict, int]:
    inv = cfg.invariant()
    if not admits_essential_map(inv):
        return {"realizable": False, "reason": "no essential map from CP^inf"}, EXIT_NEGATIVE
    ds = degree_set(inv)
    if not contains(ds, degree):
        return {"realizable": False, "T": ds.T, "reason": f"degree is not {ds.describe()}"}, EXIT_NEGATIVE
    g = factor_through_standard(inv, degree)
    components, cofinite = map_components(compute_T(inv).certificate, degree)
    return {
        "realizable": True,
        "T": ds.T,
        "self_map_degree": g,
        "components": {str(q): str(c.value) for q, c in components.items()},
        "cofinite_component": str(cofinite.value),
    }, EXIT_OK


def cmd_verify_congruence(cfg: SpaceConfig, p: int, k: int) -> tuple[dict, int]:
    inv = cfg.invariant()
    value = evaluate(inv, p)
    left, right = naturality_sides(p, k, value)
    resolved = rector_congruence_sign(p, k)
    consistent = resolved == value
    result = {
        "prime": p,
        "k": k,
        "modulus": p * p,
        "coefficient_degree": p + 1,
        "left": left[p + 1],
        "right": right[p + 1],
        "resolved_sign": int(resolved),
        "legendre": int(legendre(k, p)),
        "rector_value": int(value),
        "consistent": consistent,
    }
    return result, EXIT_OK if consistent else EXIT_NEGATIVE


def cmd_equiv(a: SpaceConfig, b: SpaceConfig) -> tuple[dict, int]:
    diff = first_difference(a.invariant(), b.invariant())
    result = {"equivalent": diff is None}
    if diff is not None:
        result["differ_at"] = diff
    return result, EXIT_OK if diff is None else EXIT_NEGATIVE


def cmd_embed(cfg: SpaceConfig) -> tuple[dict, int]:
    ok = lambda_embedding_exists(cfg.invariant())
    return {"embeds": ok}, EXIT_OK if ok else EXIT_NEGATIVE


def _human(query: str, names: list[str], result: dict) -> str:
    name = names[0] if names else ""
    if query == "describe":
        inv = result["canonical"]
        ov = ", ".join(f"{p} -> {_sign_str(s)}" for p, s in inv["overrides"].items()) or "none"
        lines = [
            f"space {name}: base {inv['base']}, twist {_sign_str(inv['twist'])}, overrides {ov}",
            f"  p    ({name or 'X'}/p)",
        ]
        lines += [f"  {p:<4} {_sign_str(s)}" for p, s in result["values"].items()]
        torus = "yes; invariant ≡ +1" if result["maximal_torus"] else "no"
        lines.append(f"maximal torus: {torus}")
        if result["essential_map"]:
            ex = ", ".join(str(q) for q in result["exceptional"])
            lines.append(f"essential maps from CP^inf: yes (k = {result['witness']}, exceptional primes {{{ex}}})")
        else:
            lines.append("essential maps from CP^inf: no")
        return "\n".join(lines)
    if query == "tx":
        if not result["essential_map"]:
            return f"{name}: no essential map from CP^inf ({result['reason']})"
        cert = result["certificate"]
        ns = ", ".join(f"n_{q} = {n}" for q, n in cert["n"].items())
        label = f"T_{name}" if name else "T"
        return f"{label} = {result['T']}, certificate: m = {cert['m']}, {ns}"
    if query == "degrees":
        if not result["essential_map"]:
            return f"{name}: no essential map from CP^inf"
        shown = ", ".join(str(d) for d in result["members"])
        return f"degrees of essential maps CP^inf -> {name}: {result['description']}\n  {shown}"
    if query == "check-map":
        if not result["realizable"]:
            return f"not realizable: {result['reason']}"
        comps = ", ".join(f"deg_{q} = {v}" for q, v in result["components"].items())
        return (
            f"realizable; f ≃ g ∘ i_{name} with deg g = {result['self_map_degree']}\n"
            f"  local components: {comps}, cofinite {result['cofinite_component']}"
        )
    if query == "verify-congruence":
        p = result["prime"]
        lines = f"coefficient of x^{p + 1} mod {result['modulus']}: f*psi^p = {result['left']}, psi^p f* = {result['right']}"
        sign = _sign_str(result["resolved_sign"])
        if result["consistent"]:
            return f"{lines}\nsign {sign} = ({name}/{p}): consistent"
        return f"{lines}\nsign {sign} != ({name}/{p}) = {_sign_str(result['rector_value'])}: inconsistent"
    if query == "equiv":
        if result["equivalent"]:
            return "equivalent"
        return f"not equivalent (differ at p = {result['differ_at']})"
    if query == "embed":
        if result["embeds"]:
            return f"K({name}) embeds in K(CP^inf) as a sub-lambda-ring"
        return f"K({name}) does not embed in K(CP^inf) as a sub-lambda-ring"
    raise AssertionError(query)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="JSON file with space definitions ('-' for stdin)")
    common.add_argument("--space", "-s", action="append", help="space name (repeat for equiv)")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--prime-bound", type=int, default=100, help="largest prime tabulated (default 100)")

    parser = argparse.ArgumentParser(prog="hpgenus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("describe", parents=[common], help="canonical form and table of Rector invariants")
    sub.add_parser("tx", parents=[common], help="minimal degree T and a certificate family")
    deg = sub.add_parser("degrees", parents=[common], help="degree set of essential maps")
    deg.add_argument("--limit", type=int, default=1000, help="list members up to this absolute value")
    chk = sub.add_parser("check-map", parents=[common], help="is there a map CP^inf -> X of this degree?")
    chk.add_argument("--degree", "-d", type=int, required=True)
    ver = sub.add_parser("verify-congruence", parents=[common], help="Adams-operation congruence at an odd prime")
    ver.add_argument("--prime", "-p", type=int, required=True)
    ver.add_argument("--k", "-k", type=int, required=True, help="degree of the test map")
    sub.add_parser("equiv", parents=[common], help="are two spaces homotopy equivalent?")
    sub.add_parser("embed", parents=[common], help="does K(X) embed in K(CP^inf) as a lambda-ring?")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.input == "-":
            text, source = sys.stdin.read(), "<stdin>"
        else:
            text, source = Path(args.input).read_text(), args.input
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc.strerror}", file=stderr)
        return EXIT_USAGE
    try:
        spaces = load_spaces(text, source)
        count = 2 if args.command == "equiv" else 1
        chosen = _select(spaces, args.space, count)
        cfg = chosen[0]
        if args.command == "describe":
            result, code = cmd_describe(cfg, args.prime_bound)
        elif args.command == "tx":
            result, code = cmd_tx(cfg)
        elif args.command == "degrees":
            result, code = cmd_degrees(cfg, args.limit)
        elif args.command == "check-map":
            result, code = cmd_check_map(cfg, args.degree)
        elif args.command == "verify-congruence":
            result, code = cmd_verify_congruence(cfg, args.prime, args.k)
        elif args.command == "equiv":
            result, code = cmd_equiv(*chosen)
        else:
            result, code = cmd_embed(cfg)
    except (ConfigError, HPGenusError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    names = [c.name for c in chosen]
    if args.format == "machine":
        inputs = {"spaces": [c.as_dict() for c in chosen]}
        for key in ("degree", "prime", "k", "limit"):
            if hasattr(args, key):
                inputs[key] = getattr(args, key)
        if args.command == "describe":
            inputs["prime_bound"] = args.prime_bound
        payload = {"query": args.command, "inputs": inputs, "result": result}
        if "certificate" in result:
            payload["certificate"] = result.pop("certificate")
        print(json.dumps(payload, indent=2, ensure_ascii=False), file=stdout)
    else:
        print(_human(args.command, names, result), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
