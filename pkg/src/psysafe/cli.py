"""Command-line front door: parse -> resolve -> analyze -> report.

Subcommands::

    psysafe check <files...> [--strict] [--config <path>] [--coverage]
    psysafe psysil <S> <E> <C>
    psysafe report <files...> --format json|md [--out <path>]
    psysafe trace <files...> --from <ID> [--dir up|down|both]
    psysafe fmt <files...>

Exit codes are stable for CI: 0 success (warnings allowed unless
``--strict``), 1 error-severity findings (or warnings under ``--strict``),
2 parse/resolution failure or unreadable input, 64 usage error.

Diagnostics go to stderr in ``file:line:col: severity[PSYnnn]: message``
form; stdout carries only the requested artifact (level, report, tree, or
canonical form). Setting ``NO_COLOR`` disables ANSI coloring.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .diagnostics import (Diagnostic, DiagnosticError, Severity,
                          SourceSpan, diag, format_diagnostic)
from .lints import LintConfig, apply_config, parse_config, run_lints
from .loader import load_model
from .model import (AnalysisModel, ControllabilityClass, ExposureClass,
                    PsySilLevel, SeverityClass, UcaKind)
from .printer import print_canonical
from .psysil import determine_psysil
from .report import build_report, emit_json, emit_markdown
from .structure import uca_category_coverage, validate_structure
from .tracegraph import format_trace_tree
from . import __version__

EX_OK = 0
EX_FINDINGS = 1
EX_DATA = 2
EX_USAGE = 64


class _ArgumentParser(argparse.ArgumentParser):
    """argparse variant that exits 64 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _use_color() -> bool:
    return sys.stderr.isatty() and not os.environ.get("NO_COLOR")


def _print_diagnostics(diags: Sequence[Diagnostic]) -> None:
    color = _use_color()
    for d in diags:
        print(format_diagnostic(d, color=color), file=sys.stderr)


def _findings_exit(diags: Sequence[Diagnostic], strict: bool) -> int:
    if any(d.severity is Severity.ERROR for d in diags):
        return EX_FINDINGS
    if strict and any(d.severity is Severity.WARNING for d in diags):
        return EX_FINDINGS
    return EX_OK


def _load_config(files: Sequence[str], explicit: str | None,
                 strict: bool) -> LintConfig:
    """Read the lint config: --config wins, else a psysafe.conf next to
    the first input file; defaults otherwise."""
    if explicit is not None:
        path = Path(explicit)
    else:
        candidate = Path(files[0]).parent / "psysafe.conf" if files else None
        if candidate is None or not candidate.is_file():
            return LintConfig(strict=strict)
        path = candidate
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiagnosticError([diag(
            "PSY000", f"cannot read config file: {exc}",
            SourceSpan(str(path), 1, 1, 1, 1))]) from exc
    config, diags = parse_config(text, str(path), strict=strict)
    if any(d.severity is Severity.ERROR for d in diags):
        raise DiagnosticError(diags)
    return config


def _analyze(files: Sequence[str], config: LintConfig
             ) -> tuple[AnalysisModel, list[Diagnostic], LintConfig]:
    model, allows = load_model(files)
    config = LintConfig(overrides=config.overrides, strict=config.strict,
                        allows=allows)
    diags = apply_config(validate_structure(model.structure, model.spans),
                         config)
    diags.extend(run_lints(model, config))
    diags.sort(key=lambda d: (d.span.file, d.span.start_line,
                              d.span.start_col, d.rule))
    return model, diags, config


def _format_coverage(model: AnalysisModel) -> str:
    rows = uca_category_coverage(model)
    header = ["action"] + [kind.value for kind in UcaKind]
    table = [header]
    for row in rows:
        table.append([row.action] + [", ".join(row.ucas_for(kind)) or "-"
                                     for kind in UcaKind])
    widths = [max(len(line[i]) for line in table)
              for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i])
                       for i, cell in enumerate(line)).rstrip()
             for line in table]
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    try:
        config = _load_config(args.files, args.config, args.strict)
        model, diags, _ = _analyze(args.files, config)
    except DiagnosticError as err:
        _print_diagnostics(err.diagnostics)
        return EX_DATA
    _print_diagnostics(diags)
    if args.coverage:
        print(_format_coverage(model), end="")
    return _findings_exit(diags, args.strict)


def cmd_psysil(args) -> int:
    try:
        s = SeverityClass[args.severity]
        e = ExposureClass[args.exposure]
        c = ControllabilityClass[args.controllability]
    except KeyError as exc:
        print(f"psysafe psysil: invalid class {exc.args[0]!r}; expected "
              "S1-S3, E1-E4, C1-C3", file=sys.stderr)
        return EX_USAGE
    level = determine_psysil(s, e, c)
    print("QM" if level is PsySilLevel.QM else f"PsySIL {level.name}")
    return EX_OK


def cmd_report(args) -> int:
    try:
        config = _load_config(args.files, None, False)
        model, diags, config = _analyze(args.files, config)
    except DiagnosticError as err:
        _print_diagnostics(err.diagnostics)
        return EX_DATA
    report = build_report(model, config)
    text = emit_json(report) if args.format == "json" \
        else emit_markdown(report)
    _print_diagnostics(diags)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return _findings_exit(diags, False)


def cmd_trace(args) -> int:
    try:
        model, _ = load_model(args.files)
    except DiagnosticError as err:
        _print_diagnostics(err.diagnostics)
        return EX_DATA
    try:
        tree = format_trace_tree(model, args.from_id, args.dir)
    except KeyError:
        print(f"psysafe trace: unknown entity ID {args.from_id!r}",
              file=sys.stderr)
        return EX_DATA
    print(tree, end="")
    return EX_OK


def cmd_fmt(args) -> int:
    try:
        model, _ = load_model(args.files)
    except DiagnosticError as err:
        _print_diagnostics(err.diagnostics)
        return EX_DATA
    print(print_canonical(model), end="")
    return EX_OK


def build_arg_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="psysafe",
        description="Psychological-safety hazard analysis for "
                    "human/autonomous-vehicle interaction models.")
    parser.add_argument("--version", action="version",
                        version=f"psysafe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_ArgumentParser)

    p_check = sub.add_parser("check", help="parse, resolve, validate the "
                             "control structure, and run all lints")
    p_check.add_argument("files", nargs="+", metavar="FILE")
    p_check.add_argument("--strict", action="store_true",
                         help="warnings fail the run")
    p_check.add_argument("--config", metavar="PATH",
                         help="lint config file (default: psysafe.conf "
                         "next to the first input)")
    p_check.add_argument("--coverage", action="store_true",
                         help="print the UCA kind coverage table")
    p_check.set_defaults(func=cmd_check)

    p_psysil = sub.add_parser("psysil",
                              help="determine the PsySIL level for an "
                              "(S, E, C) triple")
    p_psysil.add_argument("severity", metavar="S")
    p_psysil.add_argument("exposure", metavar="E")
    p_psysil.add_argument("controllability", metavar="C")
    p_psysil.set_defaults(func=cmd_psysil)

    p_report = sub.add_parser("report", help="emit a full analysis report")
    p_report.add_argument("files", nargs="+", metavar="FILE")
    p_report.add_argument("--format", required=True,
                          choices=("json", "md"))
    p_report.add_argument("--out", metavar="PATH",
                          help="write to a file instead of stdout")
    p_report.set_defaults(func=cmd_report)

    p_trace = sub.add_parser("trace", help="print the traceability "
                             "subgraph reachable from an entity")
    p_trace.add_argument("files", nargs="+", metavar="FILE")
    p_trace.add_argument("--from", dest="from_id", required=True,
                         metavar="ID")
    p_trace.add_argument("--dir", choices=("up", "down", "both"),
                         default="both")
    p_trace.set_defaults(func=cmd_trace)

    p_fmt = sub.add_parser("fmt", help="print the canonical form")
    p_fmt.add_argument("files", nargs="+", metavar="FILE")
    p_fmt.set_defaults(func=cmd_fmt)

    return parser


def run(argv: Sequence[str]) -> int:
    """Entry point returning the process exit code."""
    parser = build_arg_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    return args.func(args)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
