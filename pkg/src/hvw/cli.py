"""Command line front end.

Subcommands: check, construct, equiv, nogo, classify, canon, random. Output
is deterministic for fixed inputs, so runs can be diffed byte for byte.

Exit codes follow one convention everywhere: 0 means the property holds, the
models are equivalent, the membership test is feasible, or the command simply
succeeded; 1 means the property fails, the models differ, the system is
infeasible, or an impossibility argument was confirmed; 2 means the command
line or the input could not be used at all.

The size guard for combinatorial enumerations resolves in this order: the
--guard flag, the HVW_GUARD environment variable, then the built-in default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from .classify import ClassificationReport, classify_all
from .constructions import ConstructionMethod, construct
from .errors import InputError, WorkbenchError
from .models import (
    DEFAULT_GUARD,
    EmpiricalModel,
    HiddenVariableModel,
    PropertyVerdict,
    equivalent_empirical,
    equivalent_models,
    project_to_empirical,
)
from .modelio import load_model, model_to_dict, save_model, serialize_model
from .nogo import (
    BellReport,
    EprReport,
    KsReport,
    canonical_model,
    epr_escape_hvm,
    verify_bell,
    verify_epr,
    verify_ks,
)
from .properties import PropertyId, check_property
from .randgen import generate_random_model, grid_sites

GUARD_ENV_VAR = "HVW_GUARD"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _resolve_guard(flag: int | None) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(GUARD_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InputError(f"{GUARD_ENV_VAR} must be an integer, got {raw!r}") from None
        if value <= 0:
            raise InputError(f"{GUARD_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_GUARD


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _verdict_lines(name: str, verdict: PropertyVerdict, indent: str = "") -> list[str]:
    if verdict.holds:
        return [f"{indent}{name}: holds"]
    assert verdict.witness is not None
    return [f"{indent}{name}: fails", f"{indent}  {verdict.witness.describe()}"]


def _write_model(model: EmpiricalModel | HiddenVariableModel, out: str | None) -> None:
    if out is None:
        sys.stdout.write(serialize_model(model))
    else:
        save_model(model, out)


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_check(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    verdict = check_property(model, args.property)
    if args.format == "json":
        _print_json(
            {
                "command": "check",
                "property": args.property,
                "verdict": verdict.to_dict(),
            }
        )
    else:
        print("\n".join(_verdict_lines(args.property, verdict)))
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def _cmd_construct(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    source = project_to_empirical(model) if isinstance(model, HiddenVariableModel) else model
    method = ConstructionMethod(args.method)
    guard = _resolve_guard(args.guard)
    hvm = construct(source, method, guard=guard)
    agreement = equivalent_empirical(source, hvm)
    if not agreement.holds:
        raise AssertionError("constructed model disagrees with its source")
    if args.format == "json":
        payload = {
            "command": "construct",
            "method": args.method,
            "lambda_size": len(hvm.lambda_set),
            "equivalent": True,
        }
        if args.out is None:
            payload["model"] = model_to_dict(hvm)
        else:
            save_model(hvm, args.out)
            payload["out"] = args.out
        _print_json(payload)
    else:
        if args.out is None:
            sys.stdout.write(serialize_model(hvm))
        else:
            save_model(hvm, args.out)
            print(
                f"{args.method}: wrote equivalent completion with "
                f"{len(hvm.lambda_set)} hidden states to {args.out}"
            )
    return EXIT_OK


def _cmd_equiv(args: argparse.Namespace) -> int:
    left = load_model(args.left)
    right = load_model(args.right)
    verdict = equivalent_models(left, right)
    if args.format == "json":
        _print_json({"command": "equiv", "verdict": verdict.to_dict()})
    else:
        print("\n".join(_verdict_lines("equivalent", verdict)))
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def _epr_text(report: EprReport) -> str:
    lines = ["single-state completion of the anti-correlated pair:"]
    lines.append(f"  p(a=+_a | a=A, b=B, λ) = {report.marginal}")
    lines.append(f"  p(a=+_a | a=A, b=B, b=-_b, λ) = {report.pinned_by_partner}")
    lines.extend(_verdict_lines("outcome independence", report.oi_single_state, "  "))
    lines.append("two-state escape (single-valuedness dropped):")
    lines.extend(_verdict_lines("strong determinism", report.escape_sd, "  "))
    lines.extend(_verdict_lines("lambda independence", report.escape_li, "  "))
    lines.extend(_verdict_lines("outcome independence", report.escape_oi, "  "))
    lines.extend(_verdict_lines("matches the original", report.escape_equivalent, "  "))
    if report.confirmed:
        lines.append(
            "no-go confirmed: single-valuedness and outcome independence "
            "cannot hold together on this model"
        )
    else:
        lines.append("no-go NOT confirmed")
    return "\n".join(lines)


def _bell_text(report: BellReport) -> str:
    lines = []
    if report.certificate is not None:
        cert = report.certificate
        lines.append("counting certificate over response atoms 1..8:")
        for eq in cert.equations:
            atoms = ",".join(str(a) for a in eq.atoms)
            lines.append(
                f"  directions ({eq.i},{eq.j}): p{{{atoms}}} = "
                f"{eq.plus_plus} + {eq.minus_minus} = {eq.rhs}"
            )
        twice = "yes" if cert.atoms_counted_twice else "no"
        lines.append(
            f"  every atom counted twice: {twice}; equations sum to "
            f"2 x {cert.aggregate_value}, so total atom mass {cert.aggregate_value} > 1: "
            + ("impossible" if cert.impossible else "not settled")
        )
    if report.polytope is not None:
        poly = report.polytope
        lines.append("deterministic-mixture membership:")
        lines.append(f"  strategies enumerated: {poly.strategy_count}")
        if poly.feasible:
            lines.append("  feasible: the model is a mixture of deterministic strategies")
        else:
            lines.append(
                "  infeasible: a verified separating certificate rules out every mixture"
            )
    lines.append("single-state completion keeps LI and PI but not OI:")
    escape = report.escape
    lines.extend(_verdict_lines("lambda independence", escape.li, "  "))
    lines.extend(_verdict_lines("parameter independence", escape.pi, "  "))
    lines.extend(_verdict_lines("outcome independence", escape.oi, "  "))
    lines.append(
        f"  p(A=+ | A=1, B=1, B=-, λ) = {escape.conditional_with_partner} vs "
        f"p(A=+ | A=1, B=1, λ) = {escape.conditional_alone}"
    )
    if report.confirmed:
        lines.append(
            "no-go confirmed: no lambda-independent completion of this model "
            "satisfies both independence conditions"
        )
    else:
        lines.append("no-go NOT confirmed")
    return "\n".join(lines)


def _ks_text(report: KsReport) -> str:
    lines = []
    lines.extend(_verdict_lines("exchangeability", report.exchangeability))
    ok = "yes" if report.winner_pattern_ok else "no"
    lines.append(f"each context selects exactly one winning label: {ok}")
    lines.extend(_verdict_lines("non-contextuality", report.non_contextuality))
    if report.coloring_count is not None:
        lines.append(
            f"coloring search: {report.coloring_count} valid colorings among "
            f"{report.coloring_candidates} winner patterns"
        )
    if report.parity is not None:
        parity = report.parity
        even = "all even" if parity.all_counts_even else "not all even"
        odd = "odd" if parity.column_count_odd else "even"
        lines.append(
            f"parity certificate: label occurrence counts {even}, "
            f"column count {parity.column_count} is {odd}: {parity.verdict}"
        )
    if report.confirmed:
        lines.append(
            "no-go confirmed: no context-free 0/1 assignment reproduces this model"
        )
    else:
        lines.append("no-go NOT confirmed")
    return "\n".join(lines)


def _cmd_nogo(args: argparse.Namespace) -> int:
    guard = _resolve_guard(args.guard)
    if args.argument == "epr":
        if args.method is not None:
            raise InputError("the epr argument has a single method; omit --method")
        report = verify_epr()
        text = _epr_text(report)
    elif args.argument == "bell":
        method = args.method or "both"
        if method not in ("certificate", "polytope", "both"):
            raise InputError(
                f"unknown bell method {method!r}; expected certificate, polytope, or both"
            )
        report = verify_bell(method=method, guard=guard)
        text = _bell_text(report)
    else:
        method = args.method or "both"
        if method not in ("coloring", "parity", "both"):
            raise InputError(
                f"unknown ks method {method!r}; expected coloring, parity, or both"
            )
        report = verify_ks(method=method, guard=guard)
        text = _ks_text(report)
    if args.format == "json":
        _print_json({"command": "nogo", "argument": args.argument, "report": report.to_dict()})
    else:
        print(text)
    return EXIT_NEGATIVE if report.confirmed else EXIT_OK


def _classification_text(report: ClassificationReport) -> str:
    lines = ["regions (implication-closed property sets):"]
    for entry in report.regions:
        region = "{" + ", ".join(entry.verdict.region) + "}" if entry.verdict.region else "{}"
        lines.append(f"  {region}: {entry.note}")
        for evidence in entry.evidence:
            held = "holds" if evidence.all_hold else "FAILS"
            match = "equivalent" if evidence.equivalent else "NOT equivalent"
            lines.append(
                f"    checked on sample via {evidence.method}: "
                f"every region property {held}, completion {match}"
            )
    lines.append(
        f"achievable: {report.achievable_count}, impossible: {report.impossible_count}"
    )
    lines.append(report.split_note)
    return "\n".join(lines)


def _cmd_classify(args: argparse.Namespace) -> int:
    guard = _resolve_guard(args.guard)
    sample = None
    if args.sample is not None:
        loaded = load_model(args.sample)
        sample = (
            project_to_empirical(loaded)
            if isinstance(loaded, HiddenVariableModel)
            else loaded
        )
    report = classify_all(sample=sample, guard=guard)
    if args.format == "json":
        _print_json({"command": "classify", "report": report.to_dict()})
    else:
        print(_classification_text(report))
    return EXIT_OK


def _cmd_canon(args: argparse.Namespace) -> int:
    if args.name == "epr-escape":
        model: EmpiricalModel | HiddenVariableModel = epr_escape_hvm()
    else:
        model = canonical_model(args.name)
    _write_model(model, args.out)
    return EXIT_OK


def _cmd_random(args: argparse.Namespace) -> int:
    if args.seed is None:
        raise InputError("the random command requires --seed")
    guard = _resolve_guard(args.guard)
    sites = grid_sites(args.sites, args.measurements, args.outcomes)
    model = generate_random_model(
        args.seed, sites, lambda_size=args.hidden, guard=guard
    )
    _write_model(model, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly


def _common_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand: --format, --seed, --guard."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output rendering (default: text)",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help="generator seed (only the random command reads it)",
    )
    common.add_argument(
        "--guard",
        type=_positive_int,
        default=None,
        metavar="N",
        help=f"size cap for enumerations (default: ${GUARD_ENV_VAR} or {DEFAULT_GUARD})",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvw",
        description="Exact workbench for finite hidden-variable models.",
    )
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser(
        "check", parents=[common], help="test one property of a model file"
    )
    p_check.add_argument("model", help="path to a model file")
    p_check.add_argument(
        "--property",
        required=True,
        choices=tuple(p.value for p in PropertyId),
        help="property to test",
    )
    p_check.set_defaults(func=_cmd_check)

    p_construct = sub.add_parser(
        "construct", parents=[common], help="complete an empirical model with hidden states"
    )
    p_construct.add_argument("model", help="path to a model file")
    p_construct.add_argument(
        "--method",
        required=True,
        choices=tuple(m.value for m in ConstructionMethod),
        help="completion to apply",
    )
    p_construct.add_argument("--out", default=None, help="write the result here")
    p_construct.set_defaults(func=_cmd_construct)

    p_equiv = sub.add_parser(
        "equiv", parents=[common], help="compare the predictions of two model files"
    )
    p_equiv.add_argument("left", help="path to a model file")
    p_equiv.add_argument("right", help="path to a model file")
    p_equiv.set_defaults(func=_cmd_equiv)

    p_nogo = sub.add_parser(
        "nogo", parents=[common], help="rerun one of the impossibility arguments"
    )
    p_nogo.add_argument("argument", choices=("epr", "bell", "ks"))
    p_nogo.add_argument(
        "--method",
        default=None,
        help="bell: certificate|polytope|both; ks: coloring|parity|both",
    )
    p_nogo.set_defaults(func=_cmd_nogo)

    p_classify = sub.add_parser(
        "classify",
        parents=[common],
        help="classify all property regions as achievable or impossible",
    )
    p_classify.add_argument(
        "--sample",
        default=None,
        help="model file to recheck achievable regions against",
    )
    p_classify.set_defaults(func=_cmd_classify)

    p_canon = sub.add_parser(
        "canon", parents=[common], help="emit one of the built-in models"
    )
    p_canon.add_argument("name", choices=("epr", "bell", "ks", "epr-escape"))
    p_canon.add_argument("--out", default=None, help="write the model here")
    p_canon.set_defaults(func=_cmd_canon)

    p_random = sub.add_parser(
        "random", parents=[common], help="generate a reproducible random model"
    )
    p_random.add_argument("--sites", type=_positive_int, default=2)
    p_random.add_argument("--measurements", type=_positive_int, default=2)
    p_random.add_argument("--outcomes", type=_positive_int, default=2)
    p_random.add_argument(
        "--hidden",
        type=_positive_int,
        default=None,
        help="hidden state count; omit for an empirical model",
    )
    p_random.add_argument("--out", default=None, help="write the model here")
    p_random.set_defaults(func=_cmd_random)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_ERROR
        return EXIT_OK if code == 0 else EXIT_ERROR
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main_entry() -> None:
    raise SystemExit(main())
