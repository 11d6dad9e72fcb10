"""Recursive-descent parser for the ``.psy`` language.

The grammar is keyword-led and LL(1): every declaration starts with a
distinct keyword, so recovery after a syntax error skips to the next
declaration keyword and at most one diagnostic is emitted per broken
declaration.

Grammar (terminals quoted, ``ID`` = identifier, ``STRING``, ``INT``)::

    file        := [ analysis ] { decl }
    analysis    := "analysis" STRING "{" "sae_level" "=" INT
                   [ "boundary" STRING ] "}"
    decl        := stakeholder | stake | loss | hazard | goal | entity
                 | action | feedback | resp | uca | scenario | assess
    stakeholder := "stakeholder" ID STRING
    stake       := "stake" ID STRING "of" ID
    loss        := "loss" ID STRING "violates" idlist
    hazard      := "hazard" ID STRING "leads_to" idlist [ "context" STRING ]
    goal        := "goal" ID STRING "prevents" idlist
    entity      := ("controller"|"process") ID STRING "level" INT
                   [ "{" { entprop } "}" ]
    entprop     := "human" | "sa_level" INT | "psych_state" STRING
                 | "algorithm" STRING | "process_model" STRING
    action      := "action" ID STRING "from" ID "to" ID
    feedback    := "feedback" ID STRING "from" ID "to" ID
    resp        := "resp" ID STRING "of" ID "from" idlist
    uca         := "uca" ID "on" ID "kind" ucakind "context" STRING
                   "hazards" idlist
    ucakind     := "not_provided" | "provided" | "wrong_timing"
                 | "wrong_duration"
    scenario    := "scenario" ID "for" ID "factor" factor STRING
    factor      := "controller_failure" | "inadequate_algorithm"
                 | "unsafe_input" | "inadequate_process_model"
    assess      := "assess" ID "severity" ("S1"|"S2"|"S3")
                   "exposure" ("E1".."E4") "controllability" ("C1".."C3")
                   [ "rationale" STRING ]
    idlist      := ID { "," ID }

A single model may span several files: each file allows at most one
``analysis`` header (as its first construct), and merging enforces exactly
one header across the concatenation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .diagnostics import Diagnostic, SourceSpan, diag
from .lexer import DECL_KEYWORDS, Token, TokenKind


@dataclass(frozen=True)
class RawHeader:
    title: str
    sae_level: int
    boundary: str | None
    span: SourceSpan


@dataclass(frozen=True)
class RawStakeholder:
    id: str
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class RawStake:
    id: str
    description: str
    holder: str
    span: SourceSpan


@dataclass(frozen=True)
class RawLoss:
    id: str
    description: str
    violates: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RawHazard:
    id: str
    description: str
    leads_to: tuple[str, ...]
    context: str | None
    span: SourceSpan


@dataclass(frozen=True)
class RawGoal:
    id: str
    description: str
    prevents: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RawEntity:
    id: str
    name: str
    level: int
    is_process: bool
    is_human: bool
    sa_level: int | None
    psych_state: str | None
    algorithm: str | None
    process_model: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RawEdge:
    """A control action or feedback link (``is_feedback`` selects which)."""
    id: str
    label: str
    source: str
    target: str
    is_feedback: bool
    span: SourceSpan


@dataclass(frozen=True)
class RawResponsibility:
    id: str
    description: str
    assignee: str
    derived_from: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RawUca:
    id: str
    on: str
    kind: str
    context: str
    hazards: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RawScenario:
    id: str
    for_ref: str
    factor: str
    description: str
    span: SourceSpan


@dataclass(frozen=True)
class RawAssessment:
    hazard: str
    severity: str
    exposure: str
    controllability: str
    rationale: str | None
    span: SourceSpan


RawDecl = Union[RawStakeholder, RawStake, RawLoss, RawHazard, RawGoal,
                RawEntity, RawEdge, RawResponsibility, RawUca, RawScenario,
                RawAssessment]


@dataclass(frozen=True)
class RawModel:
    """Parse result; declarations in source order, nothing resolved."""
    header: RawHeader | None
    decls: tuple[RawDecl, ...]


SEVERITY_CODES = ("S1", "S2", "S3")
EXPOSURE_CODES = ("E1", "E2", "E3", "E4")
CONTROLLABILITY_CODES = ("C1", "C2", "C3")
UCA_KINDS = ("not_provided", "provided", "wrong_timing", "wrong_duration")
FACTORS = ("controller_failure", "inadequate_algorithm", "unsafe_input",
           "inadequate_process_model")


class _ParseFailure(Exception):
    """Internal: aborts the current declaration after a diagnostic."""


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.file = file
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token plumbing ---------------------------------------------------

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def _end_span(self) -> SourceSpan:
        if self.tokens:
            last = self.tokens[-1].span
            return SourceSpan(self.file, last.end_line, last.end_col,
                              last.end_line, last.end_col)
        return SourceSpan(self.file, 1, 1, 1, 1)

    def fail(self, message: str, span: SourceSpan | None = None):
        if span is None:
            tok = self.peek()
            span = tok.span if tok else self._end_span()
        self.diagnostics.append(diag("PSY000", message, span))
        raise _ParseFailure()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected '{word}', found end of file")
        if tok.kind is not TokenKind.KEYWORD or tok.text != word:
            self.fail(f"expected '{word}', found {tok.text!r}")
        return self.advance()

    def expect_punct(self, ch: str) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected '{ch}', found end of file")
        if tok.kind is not TokenKind.PUNCT or tok.text != ch:
            self.fail(f"expected '{ch}', found {tok.text!r}")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what}, found end of file")
        if tok.kind is not TokenKind.IDENT:
            self.fail(f"expected {what}, found {tok.text!r}")
        return self.advance()

    def expect_string(self, what: str = "string") -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what}, found end of file")
        if tok.kind is not TokenKind.STRING:
            self.fail(f"expected {what}, found {tok.text!r}")
        return self.advance()

    def expect_int(self, what: str = "integer") -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what}, found end of file")
        if tok.kind is not TokenKind.INT:
            self.fail(f"expected {what}, found {tok.text!r}")
        return self.advance()

    def expect_code(self, codes: tuple[str, ...], what: str) -> str:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what}, found end of file")
        if tok.kind is not TokenKind.IDENT or tok.text not in codes:
            self.fail(f"expected {what} ({', '.join(codes)}), "
                      f"found {tok.text!r}")
        return self.advance().text

    def idlist(self) -> tuple[str, ...]:
        ids = [self.expect_ident().text]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind is TokenKind.PUNCT and tok.text == ",":
                self.advance()
                ids.append(self.expect_ident().text)
            else:
                return tuple(ids)

    def decl_span(self, start: Token) -> SourceSpan:
        prev = self.tokens[self.pos - 1].span
        return SourceSpan(self.file, start.span.start_line,
                          start.span.start_col, prev.end_line, prev.end_col)

    # -- declarations -----------------------------------------------------

    def header(self, kw: Token) -> RawHeader:
        title = self.expect_string("analysis title").value
        self.expect_punct("{")
        self.expect_keyword("sae_level")
        self.expect_punct("=")
        sae_tok = self.expect_int("SAE level")
        if sae_tok.value not in (2, 3, 4, 5):
            self.diagnostics.append(diag(
                "PSY000", f"sae_level must be between 2 and 5, got "
                f"{sae_tok.value}", sae_tok.span))
        boundary = None
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "boundary":
            self.advance()
            boundary = self.expect_string("boundary note").value
        self.expect_punct("}")
        return RawHeader(title, sae_tok.value, boundary, self.decl_span(kw))

    def stakeholder(self, kw: Token) -> RawStakeholder:
        ident = self.expect_ident().text
        name = self.expect_string("stakeholder name")
        if not name.value:
            self.diagnostics.append(diag(
                "PSY000", "stakeholder name must not be empty", name.span))
        return RawStakeholder(ident, name.value, self.decl_span(kw))

    def stake(self, kw: Token) -> RawStake:
        ident = self.expect_ident().text
        description = self.expect_string().value
        self.expect_keyword("of")
        holder = self.expect_ident("stakeholder ID").text
        return RawStake(ident, description, holder, self.decl_span(kw))

    def loss(self, kw: Token) -> RawLoss:
        ident = self.expect_ident().text
        description = self.expect_string().value
        self.expect_keyword("violates")
        violates = self.idlist()
        return RawLoss(ident, description, violates, self.decl_span(kw))

    def hazard(self, kw: Token) -> RawHazard:
        ident = self.expect_ident().text
        description = self.expect_string().value
        self.expect_keyword("leads_to")
        leads_to = self.idlist()
        context = None
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "context":
            self.advance()
            context = self.expect_string("context note").value
        return RawHazard(ident, description, leads_to, context,
                         self.decl_span(kw))

    def goal(self, kw: Token) -> RawGoal:
        ident = self.expect_ident().text
        description = self.expect_string().value
        self.expect_keyword("prevents")
        prevents = self.idlist()
        return RawGoal(ident, description, prevents, self.decl_span(kw))

    def entity(self, kw: Token) -> RawEntity:
        is_process = kw.text == "process"
        ident = self.expect_ident().text
        name = self.expect_string("entity name").value
        self.expect_keyword("level")
        level_tok = self.expect_int("hierarchy level")
        if level_tok.value < 1:
            self.diagnostics.append(diag(
                "PSY000", "hierarchy level must be 1 or greater",
                level_tok.span))
        is_human = False
        sa_level: int | None = None
        psych_state: str | None = None
        algorithm: str | None = None
        process_model: list[str] = []
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.PUNCT and tok.text == "{":
            self.advance()
            while True:
                tok = self.peek()
                if tok is None:
                    self.fail("expected '}' to close entity block, "
                              "found end of file")
                if tok.kind is TokenKind.PUNCT and tok.text == "}":
                    self.advance()
                    break
                if tok.kind is not TokenKind.KEYWORD:
                    self.fail(f"expected entity property, found {tok.text!r}")
                if tok.text == "human":
                    self.advance()
                    is_human = True
                elif tok.text == "sa_level":
                    self.advance()
                    sa_tok = self.expect_int("SA level")
                    if sa_tok.value not in (1, 2, 3):
                        self.diagnostics.append(diag(
                            "PSY000", "sa_level must be 1, 2, or 3",
                            sa_tok.span))
                    sa_level = sa_tok.value
                elif tok.text == "psych_state":
                    self.advance()
                    psych_state = self.expect_string().value
                elif tok.text == "algorithm":
                    self.advance()
                    algorithm = self.expect_string().value
                elif tok.text == "process_model":
                    self.advance()
                    process_model.append(self.expect_string().value)
                else:
                    self.fail(f"expected entity property, found {tok.text!r}")
        span = self.decl_span(kw)
        if not is_human and (sa_level is not None or psych_state is not None):
            self.diagnostics.append(diag(
                "PSY000", f"entity '{ident}' declares sa_level or "
                "psych_state but is not marked human", span))
        return RawEntity(ident, name, level_tok.value, is_process, is_human,
                         sa_level, psych_state, algorithm,
                         tuple(process_model), span)

    def edge(self, kw: Token) -> RawEdge:
        ident = self.expect_ident().text
        label = self.expect_string("edge label").value
        self.expect_keyword("from")
        source = self.expect_ident("entity ID").text
        self.expect_keyword("to")
        target = self.expect_ident("entity ID").text
        return RawEdge(ident, label, source, target,
                       kw.text == "feedback", self.decl_span(kw))

    def resp(self, kw: Token) -> RawResponsibility:
        ident = self.expect_ident().text
        description = self.expect_string().value
        self.expect_keyword("of")
        assignee = self.expect_ident("entity ID").text
        self.expect_keyword("from")
        derived_from = self.idlist()
        return RawResponsibility(ident, description, assignee, derived_from,
                                 self.decl_span(kw))

    def uca(self, kw: Token) -> RawUca:
        ident = self.expect_ident().text
        self.expect_keyword("on")
        on = self.expect_ident("control action or feedback ID").text
        self.expect_keyword("kind")
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.KEYWORD or \
                tok.text not in UCA_KINDS:
            self.fail("expected UCA kind (" + ", ".join(UCA_KINDS) + ")")
        kind = self.advance().text
        self.expect_keyword("context")
        context = self.expect_string("context").value
        self.expect_keyword("hazards")
        hazards = self.idlist()
        return RawUca(ident, on, kind, context, hazards, self.decl_span(kw))

    def scenario(self, kw: Token) -> RawScenario:
        ident = self.expect_ident().text
        self.expect_keyword("for")
        for_ref = self.expect_ident("UCA or control action ID").text
        self.expect_keyword("factor")
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.KEYWORD or \
                tok.text not in FACTORS:
            self.fail("expected causal factor (" + ", ".join(FACTORS) + ")")
        factor = self.advance().text
        description = self.expect_string().value
        return RawScenario(ident, for_ref, factor, description,
                           self.decl_span(kw))

    def assess(self, kw: Token) -> RawAssessment:
        hazard = self.expect_ident("hazard ID").text
        self.expect_keyword("severity")
        severity = self.expect_code(SEVERITY_CODES, "severity class")
        self.expect_keyword("exposure")
        exposure = self.expect_code(EXPOSURE_CODES, "exposure class")
        self.expect_keyword("controllability")
        controllability = self.expect_code(CONTROLLABILITY_CODES,
                                           "controllability class")
        rationale = None
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and \
                tok.text == "rationale":
            self.advance()
            rationale = self.expect_string("rationale").value
        return RawAssessment(hazard, severity, exposure, controllability,
                             rationale, self.decl_span(kw))

    _DECL_PARSERS = {
        "stakeholder": stakeholder,
        "stake": stake,
        "loss": loss,
        "hazard": hazard,
        "goal": goal,
        "controller": entity,
        "process": entity,
        "action": edge,
        "feedback": edge,
        "resp": resp,
        "uca": uca,
        "scenario": scenario,
        "assess": assess,
    }

    # -- driver -----------------------------------------------------------

    def recover(self) -> None:
        """Skip to the next declaration keyword (or EOF)."""
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.KEYWORD and \
                    (tok.text in DECL_KEYWORDS or tok.text == "analysis"):
                return
            self.advance()

    def file_(self) -> RawModel:
        header: RawHeader | None = None
        decls: list[RawDecl] = []
        first = True
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.KEYWORD and tok.text == "analysis":
                kw = self.advance()
                try:
                    parsed = self.header(kw)
                except _ParseFailure:
                    self.recover()
                    first = False
                    continue
                if header is not None or not first:
                    self.diagnostics.append(diag(
                        "PSY000", "analysis header must be the first and "
                        "only header of the model", parsed.span))
                else:
                    header = parsed
                first = False
                continue
            if tok.kind is TokenKind.KEYWORD and tok.text in self._DECL_PARSERS:
                kw = self.advance()
                try:
                    decls.append(self._DECL_PARSERS[tok.text](self, kw))
                except _ParseFailure:
                    self.recover()
                first = False
                continue
            self.diagnostics.append(diag(
                "PSY000", f"expected a declaration, found {tok.text!r}",
                tok.span))
            self.advance()
            self.recover()
            first = False
        return RawModel(header, tuple(decls))


def parse(tokens: list[Token],
          file: str = "<input>") -> tuple[RawModel, list[Diagnostic]]:
    """Parse a token stream into a RawModel.

    Returns the model alongside any syntax diagnostics; with k independent
    syntax errors in k declarations, exactly k diagnostics come back and
    the remaining declarations still parse.
    """
    p = _Parser(tokens, file)
    model = p.file_()
    return model, p.diagnostics


def merge_raw_models(models: list[tuple[str, RawModel]]) \
        -> tuple[RawModel, list[Diagnostic]]:
    """Concatenate per-file parse results in argument order.

    Exactly one analysis header must exist and it must precede every
    declaration, i.e. it lives in the first file.
    """
    diagnostics: list[Diagnostic] = []
    headers = [(name, m.header) for name, m in models if m.header is not None]
    if not headers:
        first = models[0][0] if models else "<input>"
        diagnostics.append(diag(
            "PSY000", "no analysis header found; a model starts with "
            "'analysis \"title\" { sae_level = N }'",
            SourceSpan(first, 1, 1, 1, 1)))
        header = None
    else:
        header = headers[0][1]
        for _, extra in headers[1:]:
            diagnostics.append(diag(
                "PSY000", "duplicate analysis header", extra.span))
        if models and models[0][1].header is None:
            diagnostics.append(diag(
                "PSY000", "the analysis header must appear in the first "
                "input file", header.span))
    decls: list[RawDecl] = []
    for _, m in models:
        decls.extend(m.decls)
    return RawModel(header, tuple(decls)), diagnostics
