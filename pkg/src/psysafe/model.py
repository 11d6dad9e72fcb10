"""Resolved domain types of the psychological-safety risk model.

The model follows a stake/loss/hazard/goal chain: stakeholders hold
psychological stakes; violating a stake is a loss; hazards are potential
sources of losses; safety goals prevent hazards; responsibilities derive
from goals and are assigned to control-structure entities. Unsafe control
actions (UCAs) trace hazards to the control structure and loss scenarios
explain how UCAs come about.

Resolved models are immutable and safe to share across threads; resolution
itself is a pure function of its input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .diagnostics import (Diagnostic, DiagnosticError, SourceSpan,
                          SYNTHETIC_SPAN, diag)
from . import parser as raw


class SeverityClass(enum.IntEnum):
    """Severity of psychological harm, by how long the effect lasts."""

    S1 = 1  # marginal, short term
    S2 = 2  # moderate, medium term
    S3 = 3  # critical, long term

    @property
    def label(self) -> str:
        return {1: "Marginal", 2: "Moderate", 3: "Critical"}[self.value]

    @property
    def effect(self) -> str:
        return {
            1: "Short term (e.g. increased heart rate, increase in blood "
               "pressure, adrenaline release)",
            2: "Medium term (e.g. psychological strain, psychosomatic "
               "health symptoms)",
            3: "Long term (e.g. depression, anxiety, cardiovascular "
               "disease)",
        }[self.value]


class ExposureClass(enum.IntEnum):
    """Probability of being in the relevant operational situation."""

    E1 = 1
    E2 = 2
    E3 = 3
    E4 = 4

    @property
    def label(self) -> str:
        return {1: "Very Low", 2: "Low", 3: "Medium", 4: "High"}[self.value]


class ControllabilityClass(enum.IntEnum):
    """Ability of the autonomy or the person to avoid the harm."""

    C1 = 1
    C2 = 2
    C3 = 3

    @property
    def label(self) -> str:
        return {1: "Simple", 2: "Normal", 3: "Difficult"}[self.value]


class PsySilLevel(enum.IntEnum):
    """Psychological safety integrity level; QM means none required."""

    QM = 0
    A = 1
    B = 2
    C = 3
    D = 4


class UcaKind(enum.Enum):
    """The four ways a control action can be unsafe."""

    NOT_PROVIDED = "not_provided"
    PROVIDED = "provided"
    WRONG_TIMING = "wrong_timing"
    WRONG_DURATION = "wrong_duration"


class CausalFactor(enum.Enum):
    """Causal-factor categories for loss scenarios."""

    CONTROLLER_FAILURE = "controller_failure"
    INADEQUATE_ALGORITHM = "inadequate_algorithm"
    UNSAFE_INPUT = "unsafe_input"
    INADEQUATE_PROCESS_MODEL = "inadequate_process_model"


class ScenarioType(enum.Enum):
    """Scenario explains a UCA occurring, or a safe action executed badly."""

    UCA_OCCURRENCE = "uca_occurrence"
    IMPROPER_EXECUTION = "improper_execution"


class EntityKind(enum.Enum):
    STAKEHOLDER = "stakeholder"
    STAKE = "stake"
    LOSS = "loss"
    HAZARD = "hazard"
    GOAL = "goal"
    CONTROLLER = "controller"
    PROCESS = "process"
    ACTION = "action"
    FEEDBACK = "feedback"
    RESPONSIBILITY = "responsibility"
    UCA = "uca"
    SCENARIO = "scenario"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Stakeholder:
    id: str
    name: str


@dataclass(frozen=True)
class Stake:
    id: str
    description: str
    holder: str


@dataclass(frozen=True)
class Loss:
    id: str
    description: str
    violates: frozenset[str]


@dataclass(frozen=True)
class Hazard:
    id: str
    description: str
    leads_to: frozenset[str]
    #: Free-text note on system state, external conditions, and
    #: psychological state.
    context: str | None = None


@dataclass(frozen=True)
class SafetyGoal:
    id: str
    description: str
    prevents: frozenset[str]


@dataclass(frozen=True)
class Responsibility:
    id: str
    description: str
    assignee: str
    derived_from: frozenset[str]


@dataclass(frozen=True)
class Entity:
    """Controller or controlled process in the control structure.

    ``level`` is the hierarchy rank, 1 = highest authority. Humans may
    carry an SA level (1 perception, 2 comprehension, 3 projection) and a
    psychological-state note; non-human controllers describe their control
    algorithm and process models.
    """

    id: str
    name: str
    level: int
    kind: EntityKind  # CONTROLLER or PROCESS
    is_human: bool = False
    sa_level: int | None = None
    psych_state: str | None = None
    algorithm: str | None = None
    process_model: tuple[str, ...] = ()


@dataclass(frozen=True)
class ControlAction:
    id: str
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class FeedbackLink:
    id: str
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class ControlStructure:
    entities: tuple[Entity, ...] = ()
    actions: tuple[ControlAction, ...] = ()
    feedbacks: tuple[FeedbackLink, ...] = ()

    def entity(self, entity_id: str) -> Entity | None:
        for e in self.entities:
            if e.id == entity_id:
                return e
        return None


@dataclass(frozen=True)
class Uca:
    id: str
    #: Control action or feedback link the UCA is about.
    on: str
    kind: UcaKind
    context: str
    hazards: frozenset[str]


@dataclass(frozen=True)
class LossScenario:
    id: str
    #: UCA (type 1) or control action (type 2) the scenario explains.
    for_ref: str
    scenario_type: ScenarioType
    factor: CausalFactor
    description: str


@dataclass(frozen=True)
class RiskAssessment:
    hazard: str
    severity: SeverityClass
    exposure: ExposureClass
    controllability: ControllabilityClass
    rationale: str | None = None


@dataclass(frozen=True, eq=True)
class AnalysisModel:
    """Fully resolved model; all cross-references are known to exist.

    Collections are sorted by entity ID, so two models with the same
    declarations compare equal regardless of declaration order. Source
    spans are excluded from equality.
    """

    title: str
    sae_level: int
    boundary: str | None = None
    stakeholders: tuple[Stakeholder, ...] = ()
    stakes: tuple[Stake, ...] = ()
    losses: tuple[Loss, ...] = ()
    hazards: tuple[Hazard, ...] = ()
    goals: tuple[SafetyGoal, ...] = ()
    responsibilities: tuple[Responsibility, ...] = ()
    structure: ControlStructure = ControlStructure()
    ucas: tuple[Uca, ...] = ()
    scenarios: tuple[LossScenario, ...] = ()
    assessments: Mapping[str, RiskAssessment] = field(default_factory=dict)
    spans: Mapping[str, SourceSpan] = field(default_factory=dict,
                                            compare=False)
    _kinds: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        kinds: dict[str, EntityKind] = {}
        for coll, kind in (
                (self.stakeholders, EntityKind.STAKEHOLDER),
                (self.stakes, EntityKind.STAKE),
                (self.losses, EntityKind.LOSS),
                (self.hazards, EntityKind.HAZARD),
                (self.goals, EntityKind.GOAL),
                (self.responsibilities, EntityKind.RESPONSIBILITY),
                (self.structure.actions, EntityKind.ACTION),
                (self.structure.feedbacks, EntityKind.FEEDBACK),
                (self.ucas, EntityKind.UCA),
                (self.scenarios, EntityKind.SCENARIO)):
            for item in coll:
                kinds[item.id] = kind
        for ent in self.structure.entities:
            kinds[ent.id] = ent.kind
        object.__setattr__(self, "_kinds", kinds)

    def kind_of(self, entity_id: str) -> EntityKind | None:
        return self._kinds.get(entity_id)

    def span_of(self, entity_id: str) -> SourceSpan:
        return self.spans.get(entity_id, SYNTHETIC_SPAN)

    @property
    def entity_ids(self) -> Iterable[str]:
        return self._kinds.keys()


def entity_kind(model: AnalysisModel, entity_id: str) -> EntityKind | None:
    """Declaration kind of an ID, or None when the ID is unknown."""
    return model.kind_of(entity_id)


class ResolveError(DiagnosticError):
    """Resolution failed; ``diagnostics`` lists every PSY011/PSY013 found."""


def resolve(model: raw.RawModel) -> AnalysisModel:
    """Resolve a parse result into an AnalysisModel.

    Checks ID uniqueness (PSY013) and that every reference names an
    existing entity of the expected kind (PSY011); nothing is silently
    dropped. Raises :class:`ResolveError` with all findings on failure.
    """
    diags: list[Diagnostic] = []

    if model.header is None:
        diags.append(diag("PSY000", "model has no analysis header",
                          SourceSpan("<input>", 1, 1, 1, 1)))
        raise ResolveError(diags)
    if model.header.sae_level not in (2, 3, 4, 5):
        diags.append(diag("PSY000",
                          f"sae_level must be between 2 and 5, got "
                          f"{model.header.sae_level}", model.header.span))

    # Pass 1: declaration kinds and duplicate IDs.
    kinds: dict[str, EntityKind] = {}
    spans: dict[str, SourceSpan] = {}
    assessments_seen: dict[str, SourceSpan] = {}
    for decl in model.decls:
        if isinstance(decl, raw.RawAssessment):
            if decl.hazard in assessments_seen:
                diags.append(diag(
                    "PSY013", f"duplicate assessment for hazard "
                    f"'{decl.hazard}'", decl.span, (decl.hazard,)))
            assessments_seen[decl.hazard] = decl.span
            continue
        if decl.id in kinds:
            diags.append(diag(
                "PSY013", f"duplicate declaration of '{decl.id}'",
                decl.span, (decl.id,)))
            continue
        kinds[decl.id] = _decl_kind(decl)
        spans[decl.id] = decl.span

    # Pass 2: reference checks.
    def check_ref(owner: str, ref: str, expected: tuple[EntityKind, ...],
                  span: SourceSpan, what: str) -> None:
        found = kinds.get(ref)
        names = " or ".join(k.value for k in expected)
        if found is None:
            diags.append(diag(
                "PSY011", f"unknown {names} '{ref}' referenced by "
                f"{owner}", span, (owner, ref)))
        elif found not in expected:
            diags.append(diag(
                "PSY011", f"{what} of {owner} must reference a {names}, "
                f"but '{ref}' is a {found.value}", span, (owner, ref)))

    K = EntityKind
    for decl in model.decls:
        span = decl.span
        if isinstance(decl, raw.RawStake):
            check_ref(decl.id, decl.holder, (K.STAKEHOLDER,), span, "holder")
        elif isinstance(decl, raw.RawLoss):
            for ref in decl.violates:
                check_ref(decl.id, ref, (K.STAKE,), span, "violates")
        elif isinstance(decl, raw.RawHazard):
            for ref in decl.leads_to:
                check_ref(decl.id, ref, (K.LOSS,), span, "leads_to")
        elif isinstance(decl, raw.RawGoal):
            for ref in decl.prevents:
                check_ref(decl.id, ref, (K.HAZARD,), span, "prevents")
        elif isinstance(decl, raw.RawEdge):
            what = "feedback" if decl.is_feedback else "action"
            check_ref(decl.id, decl.source, (K.CONTROLLER, K.PROCESS),
                      span, f"{what} source")
            check_ref(decl.id, decl.target, (K.CONTROLLER, K.PROCESS),
                      span, f"{what} target")
        elif isinstance(decl, raw.RawResponsibility):
            # Existence only: non-structure assignees are a lint (PSY012),
            # not a resolution failure.
            if decl.assignee not in kinds:
                diags.append(diag(
                    "PSY011", f"unknown entity '{decl.assignee}' referenced "
                    f"by {decl.id}", span, (decl.id, decl.assignee)))
            for ref in decl.derived_from:
                check_ref(decl.id, ref, (K.GOAL,), span, "derived_from")
        elif isinstance(decl, raw.RawUca):
            check_ref(decl.id, decl.on, (K.ACTION, K.FEEDBACK), span, "on")
            for ref in decl.hazards:
                check_ref(decl.id, ref, (K.HAZARD,), span, "hazards")
        elif isinstance(decl, raw.RawScenario):
            check_ref(decl.id, decl.for_ref, (K.UCA, K.ACTION), span, "for")
        elif isinstance(decl, raw.RawAssessment):
            check_ref(f"assessment of '{decl.hazard}'", decl.hazard,
                      (K.HAZARD,), span, "hazard")

    if diags:
        raise ResolveError(diags)

    # Pass 3: build the resolved, ID-sorted model.
    stakeholders = []
    stakes = []
    losses = []
    hazards = []
    goals = []
    responsibilities = []
    entities = []
    actions = []
    feedbacks = []
    ucas = []
    scenarios = []
    assessments: dict[str, RiskAssessment] = {}
    for decl in model.decls:
        if isinstance(decl, raw.RawStakeholder):
            stakeholders.append(Stakeholder(decl.id, decl.name))
        elif isinstance(decl, raw.RawStake):
            stakes.append(Stake(decl.id, decl.description, decl.holder))
        elif isinstance(decl, raw.RawLoss):
            losses.append(Loss(decl.id, decl.description,
                               frozenset(decl.violates)))
        elif isinstance(decl, raw.RawHazard):
            hazards.append(Hazard(decl.id, decl.description,
                                  frozenset(decl.leads_to), decl.context))
        elif isinstance(decl, raw.RawGoal):
            goals.append(SafetyGoal(decl.id, decl.description,
                                    frozenset(decl.prevents)))
        elif isinstance(decl, raw.RawEntity):
            entities.append(Entity(
                decl.id, decl.name, decl.level,
                K.PROCESS if decl.is_process else K.CONTROLLER,
                decl.is_human, decl.sa_level, decl.psych_state,
                decl.algorithm, decl.process_model))
        elif isinstance(decl, raw.RawEdge):
            if decl.is_feedback:
                feedbacks.append(FeedbackLink(decl.id, decl.label,
                                              decl.source, decl.target))
            else:
                actions.append(ControlAction(decl.id, decl.label,
                                             decl.source, decl.target))
        elif isinstance(decl, raw.RawResponsibility):
            responsibilities.append(Responsibility(
                decl.id, decl.description, decl.assignee,
                frozenset(decl.derived_from)))
        elif isinstance(decl, raw.RawUca):
            ucas.append(Uca(decl.id, decl.on, UcaKind(decl.kind),
                            decl.context, frozenset(decl.hazards)))
        elif isinstance(decl, raw.RawScenario):
            stype = (ScenarioType.UCA_OCCURRENCE
                     if kinds[decl.for_ref] is K.UCA
                     else ScenarioType.IMPROPER_EXECUTION)
            scenarios.append(LossScenario(decl.id, decl.for_ref, stype,
                                          CausalFactor(decl.factor),
                                          decl.description))
        elif isinstance(decl, raw.RawAssessment):
            assessments[decl.hazard] = RiskAssessment(
                decl.hazard,
                SeverityClass[decl.severity],
                ExposureClass[decl.exposure],
                ControllabilityClass[decl.controllability],
                decl.rationale)
            spans[f"assess {decl.hazard}"] = decl.span

    by_id = lambda item: item.id  # noqa: E731

    return AnalysisModel(
        title=model.header.title,
        sae_level=model.header.sae_level,
        boundary=model.header.boundary,
        stakeholders=tuple(sorted(stakeholders, key=by_id)),
        stakes=tuple(sorted(stakes, key=by_id)),
        losses=tuple(sorted(losses, key=by_id)),
        hazards=tuple(sorted(hazards, key=by_id)),
        goals=tuple(sorted(goals, key=by_id)),
        responsibilities=tuple(sorted(responsibilities, key=by_id)),
        structure=ControlStructure(
            entities=tuple(sorted(entities, key=by_id)),
            actions=tuple(sorted(actions, key=by_id)),
            feedbacks=tuple(sorted(feedbacks, key=by_id))),
        ucas=tuple(sorted(ucas, key=by_id)),
        scenarios=tuple(sorted(scenarios, key=by_id)),
        assessments=assessments,
        spans=spans,
    )


def _decl_kind(decl: raw.RawDecl) -> EntityKind:
    K = EntityKind
    if isinstance(decl, raw.RawStakeholder):
        return K.STAKEHOLDER
    if isinstance(decl, raw.RawStake):
        return K.STAKE
    if isinstance(decl, raw.RawLoss):
        return K.LOSS
    if isinstance(decl, raw.RawHazard):
        return K.HAZARD
    if isinstance(decl, raw.RawGoal):
        return K.GOAL
    if isinstance(decl, raw.RawEntity):
        return K.PROCESS if decl.is_process else K.CONTROLLER
    if isinstance(decl, raw.RawEdge):
        return K.FEEDBACK if decl.is_feedback else K.ACTION
    if isinstance(decl, raw.RawResponsibility):
        return K.RESPONSIBILITY
    if isinstance(decl, raw.RawUca):
        return K.UCA
    if isinstance(decl, raw.RawScenario):
        return K.SCENARIO
    raise TypeError(f"not a declaration: {decl!r}")
