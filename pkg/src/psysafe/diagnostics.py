"""Source spans, diagnostics, and the published rule catalog.

Every finding the tool can emit carries a rule ID from :data:`RULES`. Rule
IDs are stable across releases; retired IDs are never reused (PSY008 is
retired).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SourceSpan:
    """Half-open region of a source file.

    Lines and columns are 1-based; ``end_col`` points one past the last
    character. Columns count Unicode scalar values, not bytes.
    """

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


#: Span used for findings that do not originate from a source file
#: (e.g. models built programmatically).
SYNTHETIC_SPAN = SourceSpan("<model>", 1, 1, 1, 1)


@dataclass(frozen=True)
class LintRule:
    id: str
    default_severity: Severity
    description: str


_CATALOG = [
    LintRule("PSY000", Severity.ERROR,
             "syntax, lexical, or configuration error in an input file"),
    LintRule("PSY001", Severity.WARNING,
             "a loss must derive from the violation of at least one stake"),
    LintRule("PSY002", Severity.ERROR,
             "a hazard must lead to at least one loss"),
    LintRule("PSY003", Severity.ERROR,
             "a hazard must be prevented by at least one safety goal"),
    LintRule("PSY004", Severity.WARNING,
             "a safety goal must yield at least one responsibility"),
    LintRule("PSY005", Severity.WARNING,
             "a hazard should be traced by at least one unsafe control action"),
    LintRule("PSY006", Severity.WARNING,
             "an unsafe control action should have at least one loss scenario"),
    LintRule("PSY007", Severity.WARNING,
             "a hazard should carry a risk assessment"),
    LintRule("PSY009", Severity.WARNING,
             "human entities should state sa_level and psych_state; "
             "non-human controllers should declare a process model"),
    LintRule("PSY010", Severity.WARNING,
             "every control action needs a feedback path from its target "
             "back to its source"),
    LintRule("PSY011", Severity.ERROR,
             "every reference must resolve to an existing entity of the "
             "expected kind"),
    LintRule("PSY012", Severity.ERROR,
             "a responsibility assignee must be part of the control structure"),
    LintRule("PSY013", Severity.ERROR,
             "entity IDs must be unique across the model"),
    LintRule("PSY014", Severity.ERROR,
             "control actions flow down the hierarchy, feedback flows up"),
]

RULES: dict[str, LintRule] = {rule.id: rule for rule in _CATALOG}


@dataclass(frozen=True)
class Diagnostic:
    """A single finding: parse error, resolution error, or lint result."""

    rule: str
    severity: Severity
    message: str
    span: SourceSpan
    related: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f"unknown rule ID {self.rule!r}")


def diag(rule: str, message: str, span: SourceSpan,
         related: tuple[str, ...] = ()) -> Diagnostic:
    """Build a diagnostic at the rule's default severity."""
    return Diagnostic(rule, RULES[rule].default_severity, message, span, related)


def sort_key(d: Diagnostic) -> tuple:
    return (d.span.file, d.span.start_line, d.span.start_col, d.rule, d.message)


def sort_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=sort_key)


_COLORS = {Severity.ERROR: "\x1b[31m", Severity.WARNING: "\x1b[33m",
           Severity.INFO: "\x1b[36m"}


def format_diagnostic(d: Diagnostic, color: bool = False) -> str:
    """Render ``file:line:col: severity[PSYnnn]: message``.

    This line format is a stability guarantee; CI scripts grep it.
    """
    sev = f"{d.severity}[{d.rule}]"
    if color:
        sev = f"{_COLORS[d.severity]}{sev}\x1b[0m"
    return (f"{d.span.file}:{d.span.start_line}:{d.span.start_col}: "
            f"{sev}: {d.message}")


class DiagnosticError(Exception):
    """Raised when a pipeline stage fails; carries every finding, sorted."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sort_diagnostics(diagnostics)
        super().__init__("; ".join(format_diagnostic(d)
                                   for d in self.diagnostics))
