"""Command-line front end.

Every command prints one line of deterministic JSON.  The small arithmetic
commands (``hj``, ``classt``, ``lct``) print a bare object; ``atlas`` prints a
bare array of pair reports; everything else is wrapped in an envelope
``{"command", "version", "result", "documented_facts"}``.

Exit codes: 0 on success, 1 when ``verify-paper`` finds a failing identity,
2 on usage errors (bad arguments, unreadable input).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__, golden, hjsing, pairs, reduction
from .birational import ContractionError, contract
from .jsonio import dumps, format_rational
from .picard import LatticeError, SurfaceModel

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_SING = {
    "type": "object",
    "required": ["type", "label"],
    "properties": {"type": {"enum": ["quotient", "ADE", "simple_elliptic"]}, "label": {"type": "string"}},
}
_FACT = {"type": "object", "required": ["statement", "source"],
         "properties": {"statement": {"type": "string"}, "source": {"type": "string"}}}

SCHEMAS: dict[str, dict] = {
    "ReportEnvelope": {
        "type": "object",
        "required": ["command", "version", "result", "documented_facts"],
        "properties": {
            "command": {"type": "array", "items": {"type": "string"}},
            "version": {"type": "string"},
            "result": {},
            "documented_facts": {"type": "array", "items": _FACT},
        },
        "additionalProperties": False,
    },
    "PairReport": {
        "type": "object",
        "required": ["stratum", "surface_sings", "curve_sings", "k_squared", "anticanonical_identity",
                     "ampleness", "avoids_sings", "boundary", "k3_sings", "genus", "documented_facts"],
        "properties": {
            "stratum": {"type": "object", "required": ["key", "label"]},
            "surface_sings": {"type": "array", "items": _SING},
            "curve_sings": {"type": "array", "items": _SING},
            "k_squared": _RATIONAL,
            "anticanonical_identity": {"type": "boolean"},
            "ampleness": {"type": "object", "required": ["verdict", "witnesses", "relative_to"],
                          "properties": {"verdict": {"enum": ["Ample", "NefNotAmple", "NotNef"]}}},
            "avoids_sings": {"type": "boolean"},
            "boundary": {"type": "object", "required": ["label", "dimension", "j_fiber_dimension"]},
            "k3_sings": {"type": "array", "items": _SING},
            "genus": {"type": ["integer", "null"]},
            "documented_facts": {"type": "array", "items": _FACT},
        },
    },
    "ContractedSurface": {
        "type": "object",
        "required": ["resolution", "plan", "singularities", "smooth_blow_downs", "discrepancy",
                     "picard_rank", "k_squared"],
        "properties": {
            "discrepancy": {"type": "object", "additionalProperties": _RATIONAL},
            "k_squared": _RATIONAL,
            "picard_rank": {"type": "integer"},
        },
    },
    "ScenarioTrace": {
        "type": "object",
        "required": ["scenario", "final_report", "matches_builder", "notes", "identities_checked"],
        "properties": {
            "steps": {"type": "array", "items": {
                "type": "object", "required": ["step", "before", "after", "identities"],
                "properties": {"identities": {"type": "array", "items": {
                    "type": "object", "required": ["name", "passed", "detail"]}}}}},
        },
    },
    "VerifyResult": {
        "type": "object",
        "required": ["passed", "failed", "checks"],
        "properties": {"passed": {"type": "integer"}, "failed": {"type": "integer"},
                       "checks": {"type": "array", "items": {"type": "object",
                                                             "required": ["name", "group", "passed"]}}},
    },
    "HjChain": {"type": "object", "required": ["chain"],
                "properties": {"chain": {"type": "array", "items": {"type": "integer", "minimum": 2}}}},
    "Lct": {"type": "object", "required": ["lct"], "properties": {"lct": _RATIONAL}},
}


class UsageError(Exception):
    pass


def _parse_quotient(text: str) -> hjsing.CyclicQuotient:
    try:
        r, a = (int(x) for x in text.split("/"))
        return hjsing.CyclicQuotient(r, a)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"expected r/a with 1 <= a < r coprime, got {text!r}: {exc}") from None


def _parse_chain(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _verdict_json(v: hjsing.Verdict) -> dict:
    if isinstance(v, hjsing.DuVal):
        return {"verdict": "DuVal", "ade": str(v.ade)}
    if isinstance(v, hjsing.ClassT):
        return {"verdict": "T", "p": v.params.p, "q": v.params.q, "d": v.params.d}
    return {"verdict": "NotT"}


def _envelope(argv: Sequence[str], result, facts=()) -> dict:
    return {"command": list(argv), "version": __version__, "result": result,
            "documented_facts": [f.to_json() for f in facts]}


def _load_surface(path: str) -> SurfaceModel:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        return SurfaceModel.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read surface from {path!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    # the output flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-schema", action="store_true", default=argparse.SUPPRESS,
                        help="print the report schemas and exit")
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS,
                        help="plain text summary instead of JSON")
    p = argparse.ArgumentParser(prog="stablepairs", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def command(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    hj = command("hj", help="Hirzebruch-Jung continued fractions")
    hj_sub = hj.add_subparsers(dest="hj_command", metavar="expand|contract", required=True)
    hj_sub.add_parser("expand", parents=[common], help="r/a -> chain").add_argument("quotient", help="r/a, e.g. 20/9")
    hj_sub.add_parser("contract", parents=[common], help="chain -> r/a").add_argument("chain", help="c1,c2,..., e.g. 3,2,2,2,3")

    command("classt", help="classify 1/r(1,a) as du Val, class T or neither").add_argument(
        "quotient", help="r/a")

    lct = command("lct", help="log canonical threshold of y^p = x^q")
    lct.add_argument("p", type=int)
    lct.add_argument("q", type=int)

    con = command("contract", help="contract named curves on a surface given as JSON")
    con.add_argument("--surface", required=True, help="surface JSON file, or - for stdin")
    con.add_argument("--plan", default="", help="comma separated tracked curve names")

    bp = command("build-pair", help="construct and verify the pair of one stratum")
    bp.add_argument("--stratum", required=True, help="e.g. quintic-11111, trigonal-2-4, bielliptic")

    command("atlas", help="all strata, sorted by key")
    command("strata", help="list the stratum keys")

    red = command("reduce", help="replay a stable reduction scenario")
    red.add_argument("--scenario", required=True, choices=sorted(reduction.SCENARIOS))
    red.add_argument("--trace", action="store_true", help="include every step")

    command("verify-paper", help="run the golden identity suite")
    return p


def _human(command: str, payload) -> str:
    if command in ("hj", "classt", "lct"):
        return " ".join(f"{k}={v}" for k, v in sorted(payload.items()))
    if command == "strata":
        return "\n".join(payload)
    if command == "atlas":
        return "\n".join(_human_report(r) for r in payload)
    result = payload["result"]
    if command == "build-pair":
        return _human_report(result)
    if command == "contract":
        sings = ", ".join(s["label"] for s in result["singularities"]) or "smooth"
        return f"singularities: {sings}\npicard rank: {result['picard_rank']}\nK^2: {result['k_squared']}"
    if command == "reduce":
        lines = [f"scenario {result['scenario']}: {result['identities_checked']} identities checked"]
        for step in result.get("steps", []):
            lines.append(f"  {step['step']['kind']}: " + ", ".join(i["name"] for i in step["identities"]))
        if result["final_report"]:
            lines.append("final: " + _human_report(result["final_report"]))
        lines.append(f"matches builder: {result['matches_builder']}")
        return "\n".join(lines)
    if command == "verify-paper":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in result["checks"]]
        lines.append(f"{result['passed']} passed, {result['failed']} failed")
        return "\n".join(lines)
    return dumps(payload)


def _human_report(r: dict) -> str:
    sings = " + ".join(s["label"] for s in r["surface_sings"]) or "smooth"
    k3 = " + ".join(s["label"] for s in r["k3_sings"]) or "smooth"
    return (f"{r['stratum']['key']:<18} X: {sings:<22} K3: {k3:<24} {r['boundary']['label']:<8} "
            f"K^2={r['k_squared']} -K {r['ampleness']['verdict']}")


def run(args: argparse.Namespace, argv: Sequence[str]) -> tuple[object, int]:
    cmd = args.command
    if cmd == "hj":
        if args.hj_command == "expand":
            return {"chain": hjsing.hj_expand(_parse_quotient(args.quotient))}, 0
        chain = _parse_chain(args.chain)
        try:
            s = hjsing.hj_contract(chain)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {"r": s.r, "a": s.a, "label": str(s)}, 0
    if cmd == "classt":
        return _verdict_json(hjsing.classify_class_t(_parse_quotient(args.quotient))), 0
    if cmd == "lct":
        try:
            return {"lct": format_rational(hjsing.lct_cusp(args.p, args.q))}, 0
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if cmd == "contract":
        S = _load_surface(args.surface)
        names = [n.strip() for n in args.plan.split(",") if n.strip()]
        try:
            cs = contract(S, names)
        except (ContractionError, KeyError, LatticeError) as exc:
            raise UsageError(f"cannot contract {names}: {exc}") from None
        return _envelope(argv, cs.to_json()), 0
    if cmd == "build-pair":
        try:
            spec = pairs.parse_stratum(args.stratum)
        except pairs.StratumError as exc:
            raise UsageError(str(exc)) from None
        _, report = pairs.build_pair(spec)
        return _envelope(argv, report.to_json(), report.documented_facts), 0
    if cmd == "atlas":
        return [r.to_json() for r in pairs.atlas()], 0
    if cmd == "strata":
        return [s.key for s in pairs.all_strata()], 0
    if cmd == "reduce":
        try:
            trace = reduction.run_scenario(args.scenario)
        except reduction.ScenarioError as exc:
            print(str(exc), file=sys.stderr)
            return _envelope(argv, {"scenario": args.scenario, "error": str(exc)}), 1
        facts = [pairs.Fact(note, "recorded") for note in trace.notes]
        return _envelope(argv, trace.to_json(steps=args.trace), facts), 0
    if cmd == "verify-paper":
        results = golden.run_all()
        failed = [r for r in results if not r.passed]
        for r in failed:
            print(f"FAILED: {r.name}: {r.detail}", file=sys.stderr)
        payload = {"passed": len(results) - len(failed), "failed": len(failed),
                   "checks": [r.to_json() for r in results]}
        return _envelope(argv, payload), 1 if failed else 0
    raise UsageError("no command given")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    if getattr(args, "json_schema", False):
        print(dumps(SCHEMAS))
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        payload, code = run(args, argv)
    except UsageError as exc:
        print(f"stablepairs: error: {exc}", file=sys.stderr)
        return 2
    print(_human(args.command, payload) if getattr(args, "human", False) else dumps(payload))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
