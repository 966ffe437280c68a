"""Command-line interface: validate, prune, configure, derive, enumerate, serve.

Exit codes are stable across commands: 0 success, 1 domain findings
(validation errors, conflicts, incomplete derivations), 2 usage or IO
problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .engine import (
    ValueState,
    apply_requirements,
    derive_decision_table,
    prune_by_area,
    render_decision_table,
)
from .errors import VarkitError
from .io import parse_answers, parse_model, render_variant_table, write_model
from .model import VariabilityModel, validate_model
from .oracle import enumerate_configurations
from .product import derive_customized_product, parse_product_model, write_product_model
from .session import Configuration, ConfigurationSession, PropagationOutcome, new_session


def _print_findings(findings, stream) -> None:
    for f in findings:
        kind = "WARNING" if f.code in ("EMPTY_MODEL", "CASCADE_REMOVED") else "ERROR"
        print(f"{kind} {f.code} {f.where}: {f.message}", file=stream)


def _load_valid(path: str) -> VariabilityModel:
    model = parse_model(Path(path).read_bytes())
    report = validate_model(model)
    if report.errors:
        _print_findings(report.errors, sys.stderr)
        raise SystemExit(1)
    return model


def _print_conflicts(outcome: PropagationOutcome) -> None:
    for c in outcome.conflicts:
        print(f"conflict [{c.ref}]: {c.reason}")


def _print_configuration(session: ConfigurationSession) -> None:
    result = session.current_configuration()
    if isinstance(result, Configuration):
        print(f"Configuration for area {result.area!r}:")
        for variant_id, values in result.selections:
            print(f"  {variant_id} = {', '.join(values)}")
    else:
        print("INCOMPLETE: undecided " + ", ".join(result.undecided))


def _session_from_answers(model: VariabilityModel, doc, area: str):
    """Replay an answers document onto a fresh session; None on conflict."""
    session = new_session(model, area)
    for a in doc.answers:
        outcome = session.answer(a.variant, a.values)
        if outcome.rejected:
            _print_conflicts(outcome)
            return None
    for ref in doc.exclusions:
        outcome = session.answer(ref, ())
        if outcome.rejected:
            _print_conflicts(outcome)
            return None
    return session


def _resolve_area(cli_area: str | None, doc_area: str) -> str | None:
    if cli_area and cli_area != doc_area:
        print(f"error: --area {cli_area!r} does not match the answers area {doc_area!r}", file=sys.stderr)
        return None
    return cli_area or doc_area


def cmd_validate(args) -> int:
    model = parse_model(Path(args.model).read_bytes())
    report = validate_model(model)
    _print_findings(report.errors, sys.stdout)
    _print_findings(report.warnings, sys.stdout)
    print(f"{len(report.errors)} errors, {len(report.warnings)} warnings")
    return 1 if report.errors else 0


def cmd_prune(args) -> int:
    model = _load_valid(args.model)
    pruned, warnings = prune_by_area(model, args.area)
    _print_findings(warnings, sys.stderr)
    data = write_model(pruned)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_table(args) -> int:
    model = _load_valid(args.model)
    if args.area:
        model, warnings = prune_by_area(model, args.area)
        _print_findings(warnings, sys.stderr)
    print(render_decision_table(derive_decision_table(model)), end="")
    return 0


def cmd_render(args) -> int:
    model = _load_valid(args.model)
    print(render_variant_table(model), end="")
    return 0


def cmd_configure(args) -> int:
    model = _load_valid(args.model)
    if args.interactive:
        if not args.area:
            print("error: --interactive needs --area", file=sys.stderr)
            return 2
        return _interactive(new_session(model, args.area))
    doc = parse_answers(Path(args.answers).read_bytes())
    area = _resolve_area(args.area, doc.area)
    if area is None:
        return 2
    session = _session_from_answers(model, doc, area)
    if session is None:
        return 1
    if args.output:
        pruned, _ = prune_by_area(model, area)
        narrowed, warnings = apply_requirements(pruned, doc)
        _print_findings(warnings, sys.stderr)
        Path(args.output).write_bytes(write_model(narrowed))
    _print_configuration(session)
    return 0


def _interactive(session: ConfigurationSession) -> int:
    while True:
        pending = session.pending_decisions()
        if not pending:
            _print_configuration(session)
            return 0
        answerable = [p for p in pending if not p.blocked]
        for p in pending:
            if p.blocked:
                print(f"[blocked] {p.row.name}: needs {', '.join(p.unmet_guard)}")
        if not answerable:
            print("INCOMPLETE: undecided " + ", ".join(p.row.trace for p in pending))
            return 1
        row = answerable[0].row
        print(f"{row.name} [{row.trace}] — {row.question}")
        for value_id, name in row.options:
            state = session.value_states[value_id]
            marker = "" if state is ValueState.PENDING else f" ({state.value})"
            print(f"  {value_id} {name}{marker}")
        print("value id(s), or empty line to exclude:")
        line = sys.stdin.readline()
        if not line:
            _print_configuration(session)
            return 0
        tokens = line.replace(",", " ").split()
        try:
            outcome = session.answer(row.trace, tokens)
        except VarkitError as exc:
            print(f"error [{exc.code}]: {exc}")
            continue
        if outcome.rejected:
            _print_conflicts(outcome)
            continue
        if outcome.forced:
            print("forced: " + ", ".join(outcome.forced))
        if outcome.excluded:
            print("excluded: " + ", ".join(outcome.excluded))


def cmd_derive(args) -> int:
    model = _load_valid(args.model)
    doc = parse_answers(Path(args.answers).read_bytes())
    area = _resolve_area(args.area, doc.area)
    if area is None:
        return 2
    session = _session_from_answers(model, doc, area)
    if session is None:
        return 1
    result = session.current_configuration()
    if not isinstance(result, Configuration):
        print("INCOMPLETE: undecided " + ", ".join(result.undecided))
        return 1
    product = parse_product_model(Path(args.product).read_bytes())
    derived, report = derive_customized_product(product, result, model, force=args.force)
    _print_findings(report.warnings, sys.stderr)
    Path(args.output).write_bytes(write_product_model(derived))
    print(f"kept {len(derived.elements)} elements, removed {len(report.removed_elements)}")
    if report.removed_elements:
        print("removed: " + ", ".join(report.removed_elements))
    for edge in report.dangling:
        print(f"dangling: {edge.source} -> {edge.target}")
    return 0


def cmd_enumerate(args) -> int:
    model = _load_valid(args.model)
    configs = enumerate_configurations(model, args.area)
    if args.count_only:
        print(len(configs))
        return 0
    for cfg in configs:
        parts = [f"{vid}={','.join(values)}" for vid, values in cfg.selections]
        print(" ".join(parts) if parts else "(none)")
    print(f"{len(configs)} configurations")
    return 0


def cmd_serve(args) -> int:
    from .service import run_service

    run_service(
        host=args.host or os.environ.get("VARKIT_HOST", "127.0.0.1"),
        port=args.port or int(os.environ.get("VARKIT_PORT", "8000")),
        model_dir=args.model_dir or os.environ.get("VARKIT_MODEL_DIR"),
        ui_dir=args.ui_dir or os.environ.get("VARKIT_UI_DIR"),
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varkit",
        description="Variant modelling and product derivation for system families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a variant model against the structural rules")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("prune", help="restrict a model to one applicable area")
    p.add_argument("model")
    p.add_argument("--area", required=True)
    p.add_argument("-o", "--output", help="write the pruned model here instead of stdout")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("table", help="print the decision table")
    p.add_argument("model")
    p.add_argument("--area", help="prune to this area first")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("render", help="print the variant model as a table")
    p.add_argument("model")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("configure", help="apply answers to a model, batch or interactively")
    p.add_argument("model")
    p.add_argument("--area")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--answers", help="answers document to apply")
    group.add_argument("--interactive", action="store_true")
    p.add_argument("-o", "--output", help="write the narrowed model here")
    p.set_defaults(func=cmd_configure)

    p = sub.add_parser("derive", help="derive a customized product model end to end")
    p.add_argument("model")
    p.add_argument("--area")
    p.add_argument("--answers", required=True)
    p.add_argument("--product", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--force", action="store_true", help="keep elements with unresolved tags instead of aborting")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("enumerate", help="list every complete configuration (brute force)")
    p.add_argument("model")
    p.add_argument("--area", required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("serve", help="start the configuration service")
    p.add_argument("--port", type=int)
    p.add_argument("--model-dir", help="directory of .vml.xml files to preload")
    p.add_argument("--ui-dir", help="static directory to serve at /")
    p.add_argument("--host")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VarkitError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
